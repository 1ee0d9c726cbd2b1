//! Exact linear algebra over the integers: normal forms, kernels, images,
//! quotients and solvability for finitely generated abelian groups.
//!
//! Elements are integer column vectors modulo the column span of a relation
//! matrix, and every homomorphism uses the column convention.

mod group;
mod matrix;
mod normal_form;

pub use group::{AbHom, Decomposition, FgAbGroup, FinAbGroup, GroupStructure};
pub use matrix::{is_zero_vec, vec_from_i64, IntMatrix};
pub use normal_form::{
    column_echelon, hnf_column, integer_kernel, rank, same_lattice, smith_diagonal, snf, solve_integer,
    ColumnEchelon, Snf,
};
