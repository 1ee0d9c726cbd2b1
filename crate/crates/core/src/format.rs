//! JSON helpers. Integers are written as decimal strings so that values of
//! any size survive a round trip through tools with 64-bit numbers.

use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::abgroup::IntMatrix;
use crate::permgrp::{Perm, PermError, PermGroup};

fn parse(s: &str) -> Result<BigInt, String> {
    s.trim().parse::<BigInt>().map_err(|_| format!("not a decimal integer: {s:?}"))
}

/// Accepts either a JSON string or a JSON integer.
#[derive(Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Str(String),
    Int(i64),
}

impl IntRepr {
    fn into_bigint<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            IntRepr::Str(s) => parse(&s).map_err(E::custom),
            IntRepr::Int(i) => Ok(BigInt::from(i)),
        }
    }
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?.into_bigint()
    }
}

pub mod bigint_vec {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?.into_iter().map(IntRepr::into_bigint).collect()
    }
}

pub mod bigint_mat {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for row in v {
            let r: Vec<String> = row.iter().map(ToString::to_string).collect();
            seq.serialize_element(&r)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<IntRepr>>::deserialize(d)?
            .into_iter()
            .map(|row| row.into_iter().map(IntRepr::into_bigint).collect())
            .collect()
    }
}

pub mod bigint_mats {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(v: &[Vec<Vec<BigInt>>], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for m in v {
            let r: Vec<Vec<String>> =
                m.iter().map(|row| row.iter().map(ToString::to_string).collect()).collect();
            seq.serialize_element(&r)?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Vec<BigInt>>>, D::Error> {
        Vec::<Vec<Vec<IntRepr>>>::deserialize(d)?
            .into_iter()
            .map(|m| {
                m.into_iter()
                    .map(|row| row.into_iter().map(IntRepr::into_bigint).collect())
                    .collect()
            })
            .collect()
    }
}

pub mod prime {
    use super::*;

    pub fn serialize<S: Serializer>(v: &u64, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        let b = IntRepr::deserialize(d)?.into_bigint::<D::Error>()?;
        u64::try_from(b).map_err(|_| serde::de::Error::custom("prime out of range"))
    }
}

pub mod prime_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[u64], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(ToString::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<u64>, D::Error> {
        Vec::<IntRepr>::deserialize(d)?
            .into_iter()
            .map(|r| {
                let b = r.into_bigint::<D::Error>()?;
                u64::try_from(b).map_err(|_| serde::de::Error::custom("prime out of range"))
            })
            .collect()
    }
}

/// Current version of every file format.
pub const VERSION: u32 = 1;

/// A permutation group by degree and generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupSpec {
    pub fn of(group: &PermGroup) -> GroupSpec {
        GroupSpec { degree: group.degree(), generators: group.generators().to_vec() }
    }

    pub fn build(&self) -> Result<Arc<PermGroup>, PermError> {
        PermGroup::enumerated(self.degree, self.generators.clone())
    }
}

pub fn check_version(found: u32, what: &str) -> Result<(), String> {
    if found == VERSION {
        Ok(())
    } else {
        Err(format!("unsupported {what} version {found}, expected {VERSION}"))
    }
}

/// Integer matrix given as a list of rows.
pub fn matrix_from_rows(rows: &[Vec<BigInt>], nrows: usize, ncols: usize) -> Result<IntMatrix, String> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(format!("expected a {nrows}x{ncols} matrix"));
    }
    Ok(IntMatrix::from_vec(nrows, ncols, rows.iter().flatten().cloned().collect()))
}

pub fn matrix_to_rows(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}
