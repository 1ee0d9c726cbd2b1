//! Equivariant maps between permutation modules as sums of double cosets.

use std::sync::Arc;

use num_bigint::BigInt;
use selmer::abgroup::vec_from_i64;
use selmer::gmodule::{HeckeSum, PermModuleSpec};
use selmer::permgrp::{Perm, PermGroup, Subgroup};

fn main() {
    let s3: Arc<PermGroup> = PermGroup::symmetric(3);
    let h = Subgroup::generated(&s3, vec![Perm::from_cycles(3, &[&[0, 1]]).unwrap()]).unwrap();
    let p = PermModuleSpec::new(&s3, vec![h]);
    let mut t = HeckeSum::zero(p.clone(), p.clone());
    println!("End(Z[S3/H]) has {} double-coset basis elements", t.basis_len());
    t.coeffs_mut()[0][0][1] = BigInt::from(1);
    println!("T = {:?}", t.to_matrix());

    let t2 = t.compose(&t);
    println!("T∘T = {:?}", t2.coeffs()[0][0]);
    let rhs = HeckeSum::scalar(&p, BigInt::from(2)).add(&t);
    println!("T∘T = 2 + T: {}", t2 == rhs);

    let sum = HeckeSum::from_matrix(&p, &p, &t2.to_matrix()).unwrap();
    println!("recovered from its matrix: {}", sum == t2);
    println!("adjoint has matrix {:?}", t.dualize().to_matrix());

    let x = vec_from_i64(&[1, 0, 0]);
    println!("T applied to the first coset: {:?}", t.to_matrix().mul_vec(&x));
}
