//! Loading arithmetic fixtures and querying S-units, valuations, class
//! groups and the subgroups a fixture must cover.

use num_bigint::BigInt;
use selmer::abgroup::vec_from_i64;
use selmer::gmodule::{CycloCharacter, GModule};
use selmer::oracle::{load_fixture, FieldRequests};
use selmer::permgrp::Subgroup;
use selmer::resolution::resolve;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
    let fx = load_fixture(format!("{dir}/q-sqrt-5.json")).unwrap();
    println!("{}: generators {:?}, prime pool {:?}", fx.name(), fx.names(), fx.pool());

    let g = fx.group.clone();
    let one = Subgroup::trivial(&g);
    let all = Subgroup::whole(&g);
    for s in [vec![2], vec![2, 3, 5]] {
        let (units, _) = fx.sunits_for(&one, &s).unwrap();
        let (fixed, _) = fx.sunits_for(&all, &s).unwrap();
        println!("S = {s:?}: S-units of N ≅ {}, of Q ≅ {}", units.structure(), fixed.structure());
    }
    println!("valuations at 3 (one row per place): {:?}", fx.full_valuation(3).unwrap());
    println!("primes above {{2}} span Cl(N): {}", fx.spanning_check(&[one.clone()], &[2]).unwrap());
    println!("primes above {{5}} span Cl(N): {}", fx.spanning_check(&[one], &[5]).unwrap());

    let m = GModule::trivial(g, vec_from_i64(&[2])).unwrap();
    let r = resolve(&m, &CycloCharacter::new(BigInt::from(2), vec![BigInt::from(1)]), 2).unwrap();
    let req = FieldRequests::new(&r, &[3, 5]);
    println!("field requests: {} subgroups, pool {:?}", req.subgroups.len(), req.pool);
    println!("fixture covers them: {}", fx.covers(&req).is_ok());
}
