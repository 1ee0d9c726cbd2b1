//! Resolving the dual of a module by permutation modules, checking the
//! resolution, and pseudo-inverses of Hecke sums.

use num_bigint::BigInt;
use selmer::abgroup::{vec_from_i64, IntMatrix};
use selmer::files::{to_json, ResolutionFile};
use selmer::gmodule::{CycloCharacter, GModule, HeckeSum, PermModuleSpec};
use selmer::permgrp::{PermGroup, Subgroup};
use selmer::report::ResolutionReport;
use selmer::resolution::{cokernel_exponent, pseudo_inverse, resolve};

fn main() {
    let c2 = PermGroup::cyclic(2);
    let chi = CycloCharacter::new(BigInt::from(3), vec![BigInt::from(2)]);
    let m = GModule::trivial(c2.clone(), vec_from_i64(&[3])).unwrap();
    let r = resolve(&m, &chi, 2).unwrap();
    r.verify().unwrap();
    print!("{}", ResolutionReport::new(&r).text());
    println!("d_0^* = {:?}", r.d_star[0].to_matrix());
    println!("resolution file is {} bytes", to_json(&ResolutionFile::of(&r)).len());

    // Φ = 1 + 3σ on Z[G]: finite index with cokernel Z/8.
    let p = PermModuleSpec::new(&c2, vec![Subgroup::trivial(&c2)]);
    let mut phi = HeckeSum::zero(p.clone(), p.clone());
    phi.coeffs_mut()[0][0][0] = BigInt::from(1);
    phi.coeffs_mut()[0][0][1] = BigInt::from(3);
    println!("Φ = {:?}, cokernel exponent {:?}", phi.to_matrix(), cokernel_exponent(&phi));
    match pseudo_inverse(&phi) {
        Ok(pi) => println!("Ψ = {:?}, Φ∘Ψ = {}·id", pi.psi.to_matrix(), pi.k),
        Err(e) => println!("no pseudo-inverse within |G|^2: {e}"),
    }

    // The augmentation Z[G] -> Z only splits up to |G|.
    let z = PermModuleSpec::new(&c2, vec![Subgroup::whole(&c2)]);
    let mut aug = HeckeSum::zero(p, z);
    aug.coeffs_mut()[0][0][0] = BigInt::from(1);
    let pi = pseudo_inverse(&aug).unwrap();
    println!("augmentation {:?}: Ψ = {:?}, k = {}", aug.to_matrix(), pi.psi.to_matrix(), pi.k);
    assert_eq!(aug.to_matrix().mul(&pi.psi.to_matrix()), IntMatrix::identity(1).scale(&pi.k));
}
