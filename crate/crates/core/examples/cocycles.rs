//! First cohomology of finite modules by brute force, and exactness of dual
//! sequences at torsion levels.

use num_bigint::BigInt;
use selmer::abgroup::{vec_from_i64, IntMatrix};
use selmer::cocycle::{h1_finite, verify_torsion_exactness};
use selmer::gmodule::{CycloCharacter, GModule};
use selmer::permgrp::PermGroup;
use selmer::resolution::{dual_sequence, resolve};

fn main() {
    let c2 = PermGroup::cyclic(2);
    let c4 = PermGroup::cyclic(4);
    let s3 = PermGroup::symmetric(3);
    let cases = [
        ("H¹(Z/2, Z/2)", GModule::trivial(c2.clone(), vec_from_i64(&[2])).unwrap()),
        ("H¹(Z/2, Z/3 with -1)", GModule::new(c2.clone(), vec_from_i64(&[3]), vec![IntMatrix::from_rows(&[vec_from_i64(&[2])])]).unwrap()),
        ("H¹(Z/4, Z/2 ⊕ Z/4)", GModule::trivial(c4, vec_from_i64(&[2, 4])).unwrap()),
        ("H¹(S3, Z/3)", GModule::trivial(s3, vec_from_i64(&[3])).unwrap()),
    ];
    for (name, m) in &cases {
        println!("{name} ≅ {}", h1_finite(m).unwrap());
    }

    let chi = CycloCharacter::new(BigInt::from(3), vec![BigInt::from(2)]);
    let m = GModule::trivial(c2, vec_from_i64(&[3])).unwrap();
    let ds = dual_sequence(&resolve(&m, &chi, 2).unwrap());
    for n in 2..=9 {
        let ok = verify_torsion_exactness(&ds, &BigInt::from(n)).is_ok();
        println!("torsion level {n}: {}", if ok { "exact" } else { "not exact" });
    }
}
