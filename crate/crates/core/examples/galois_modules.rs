//! Galois modules, their twisted duals and torsion models of permutation
//! modules.

use num_bigint::BigInt;
use selmer::abgroup::{vec_from_i64, IntMatrix};
use selmer::gmodule::{dual_module, torsion_model, CycloCharacter, GModule, PermModuleSpec};
use selmer::permgrp::{PermGroup, Subgroup};

fn main() {
    // μ3 over Q: Z/3 with complex conjugation acting by -1.
    let c2 = PermGroup::cyclic(2);
    let chi = CycloCharacter::new(BigInt::from(3), vec![BigInt::from(2)]);
    let mu3 = GModule::new(c2.clone(), vec_from_i64(&[3]), vec![IntMatrix::from_rows(&[vec_from_i64(&[2])])]).unwrap();
    let dual = dual_module(&mu3, &chi).unwrap();
    println!("dual of μ3 acts by {:?}", dual.gen_action()[0]);

    let triv = GModule::trivial(c2.clone(), vec_from_i64(&[3])).unwrap();
    println!("dual of Z/3 acts by {:?}", dual_module(&triv, &chi).unwrap().gen_action()[0]);

    let (inv, incl) = mu3.invariants(&Subgroup::whole(&c2));
    println!("(μ3)^G ≅ {} via {:?}", inv.structure(), incl.matrix);

    let p = PermModuleSpec::new(&c2, vec![Subgroup::trivial(&c2), Subgroup::whole(&c2)]);
    let model = torsion_model(&p, &BigInt::from(3), &chi).unwrap();
    println!("torsion model of Z[G] ⊕ Z over Z/3, generator acts by {:?}", model.gen_action()[0]);
}
