//! G-modules, permutation modules and Hecke operators.
//!
//! A [`HeckeSum`] stores a G-map `⊕ Z[G/H_s] -> ⊕ Z[G/J_t]` by its
//! coefficients on double cosets `H_s g J_t`. The same coefficients act on
//! fixed points of any module `V` through `T_{HgJ}(x) = Σ g_i⁻¹ x`, summed
//! over `HgJ = ⊔ H g_i`, after [`HeckeSum::dualize`].

mod character;
mod dual;
mod hecke;
mod module;

pub use character::CycloCharacter;
pub use dual::{dual_module, torsion_model};
pub use hecke::{hecke_apply, HeckeSum, PermModuleSpec};
pub use module::GModule;

use num_bigint::BigInt;
use thiserror::Error;

use crate::permgrp::PermError;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GModuleError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("coordinate orders must be 0 or at least 2: {0:?}")]
    BadOrders(Vec<BigInt>),
    #[error("action matrix of generator {generator} does not respect the coordinate orders")]
    NotEndomorphism { generator: usize },
    #[error("action matrix of generator {generator} is not invertible")]
    NonInvertibleAction { generator: usize },
    #[error("generator actions do not define a group action (generator {generator}, element {element})")]
    NotMultiplicative { generator: usize, element: usize },
    #[error("character value at generator {generator} is not a unit")]
    NotAUnit { generator: usize },
    #[error("group too small: {0}")]
    GroupTooSmall(String),
    #[error("element is not fixed by the subgroup")]
    NotInvariant,
    #[error("map does not commute with generator {generator}")]
    NotEquivariant { generator: usize },
    #[error(transparent)]
    Perm(#[from] PermError),
}
