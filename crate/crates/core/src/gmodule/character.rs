use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::GModuleError;
use crate::permgrp::PermGroup;

/// A character `G -> (Z/m)^×`, given by its values on the group generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloCharacter {
    #[serde(with = "crate::format::bigint")]
    pub modulus: BigInt,
    #[serde(with = "crate::format::bigint_vec")]
    pub values: Vec<BigInt>,
}

impl CycloCharacter {
    pub fn new(modulus: BigInt, values: Vec<BigInt>) -> CycloCharacter {
        let values = values.iter().map(|v| reduce(v, &modulus)).collect();
        CycloCharacter { modulus, values }
    }

    pub fn trivial(modulus: BigInt, ngens: usize) -> CycloCharacter {
        CycloCharacter::new(modulus, vec![BigInt::one(); ngens])
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v == &reduce(&BigInt::one(), &self.modulus))
    }

    /// Values on every element of `group`; fails with `GroupTooSmall` if the
    /// generator values do not define a homomorphism on `group`.
    pub fn on_group(&self, group: &PermGroup) -> Result<Vec<BigInt>, GModuleError> {
        if self.values.len() != group.generators().len() {
            return Err(GModuleError::DimensionMismatch(format!(
                "character has {} values for {} generators",
                self.values.len(),
                group.generators().len()
            )));
        }
        for (k, v) in self.values.iter().enumerate() {
            if !self.modulus.is_zero() && !v.gcd(&self.modulus).is_one() {
                return Err(GModuleError::NotAUnit { generator: k });
            }
        }
        let m = self.modulus.clone();
        group
            .extend_hom(reduce(&BigInt::one(), &m), &self.values, |a, b| reduce(&(a * b), &m))
            .map_err(|_| GModuleError::GroupTooSmall(
                "the character does not factor through the given group".into(),
            ))
    }

    /// The same character read modulo a divisor `n` of the modulus.
    pub fn reduced(&self, n: &BigInt) -> Result<CycloCharacter, GModuleError> {
        if self.is_trivial() {
            return Ok(CycloCharacter::trivial(n.clone(), self.values.len()));
        }
        if n.is_zero() || !self.modulus.is_multiple_of(n) {
            return Err(GModuleError::GroupTooSmall(format!(
                "character known modulo {} cannot be read modulo {n}",
                self.modulus
            )));
        }
        Ok(CycloCharacter::new(n.clone(), self.values.clone()))
    }
}

fn reduce(v: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        v.clone()
    } else {
        v.mod_floor(m)
    }
}
