//! Selmer groups cut out of H¹_S by local conditions, and the ramification
//! test at primes outside the module exponent.

use num_bigint::BigInt;
use selmer::abgroup::vec_from_i64;
use selmer::gmodule::{CycloCharacter, GModule};
use selmer::oracle::load_fixture;
use selmer::report::SelmerReport;
use selmer::resolution::{dual_sequence, resolve};
use selmer::selmer::{selmer_group, unramified_test, Condition, SelmerSystem};

fn main() {
    let fx = load_fixture(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/q-trivial.json")).unwrap();
    let m = GModule::trivial(fx.group.clone(), vec_from_i64(&[2])).unwrap();
    let ds = dual_sequence(&resolve(&m, &CycloCharacter::trivial(BigInt::from(2), 0), 2).unwrap());

    let custom = |l: &str| Condition::Custom { label: l.into() };
    let systems = [
        ("relaxed at 2", SelmerSystem::unramified().with(2, Condition::Relaxed)),
        ("trivial at 2", SelmerSystem::unramified().with(2, custom("trivial"))),
        ("full at 2", SelmerSystem::unramified().with(2, custom("full"))),
        ("unramified everywhere", SelmerSystem::unramified()),
        ("relaxed at 2 and 3", SelmerSystem::unramified().with(2, Condition::Relaxed).with(3, Condition::Relaxed)),
    ];
    for (name, sys) in systems {
        let sel = selmer_group(&sys, &ds, &fx, None).unwrap();
        println!("== {name}");
        print!("{}", SelmerReport::new(&sel, &fx).text());
    }

    for (x, name) in [(&[0, 0, 1, 0], "3"), (&[1, 0, 0, 0], "-1"), (&[0, 0, 2, 0], "9")] {
        let ok = unramified_test(&vec_from_i64(x), 3, &ds, &fx).unwrap();
        println!("class of {name} unramified at 3: {ok}");
    }
}
