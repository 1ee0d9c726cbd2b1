mod common;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use common::*;
use selmer::abgroup::{vec_from_i64, AbHom, IntMatrix};
use selmer::gmodule::{CycloCharacter, GModule, PermModuleSpec};
use selmer::oracle::{ArithmeticFixture, FixtureFile};
use selmer::permgrp::Subgroup;
use selmer::resolution::{dual_sequence, resolve, DualSequence};
use selmer::selmer::{
    h1s, select_s, selmer_group, unramified_test, validate_custom, Condition, H1SGroup, SelmerError, SelmerSystem,
};

fn custom(label: &str) -> Condition {
    Condition::Custom { label: label.into() }
}

/// All elements of the finite group spanned by the representatives.
fn elements(h: &H1SGroup) -> Vec<Vec<BigInt>> {
    let mut out = vec![vec![BigInt::zero(); h.levels[1].ambient.ngens()]];
    for (rep, d) in h.reps.iter().zip(h.group.invariant_factors()) {
        let d: u32 = d.try_into().unwrap();
        let mut next = Vec::new();
        for e in &out {
            for k in 0..d {
                next.push(e.iter().zip(rep).map(|(a, b)| a + b * BigInt::from(k)).collect());
            }
        }
        out = next;
    }
    out
}

#[test]
fn h1s_grows_injectively_with_s() {
    for name in ["q-trivial.json", "q-sqrt-5.json"] {
        let fx = fixture(name);
        let ds = kummer(&fx);
        let small = h1s(&ds, &fx, &[2]).unwrap();
        for big_s in [vec![2, 3], vec![2, 5], vec![2, 3, 5]] {
            let large = h1s(&ds, &fx, &big_s).unwrap();
            for x in elements(&small) {
                let nonzero = !small.is_coboundary(&x);
                assert!(large.class_of(&x).is_some(), "{name}: not a cocycle for {big_s:?}");
                assert_eq!(large.is_coboundary(&x), !nonzero, "{name}: {x:?} for {big_s:?}");
            }
        }
    }
}

#[test]
fn coboundaries_come_from_level_zero_s_units() {
    let fx = fixture("q-sqrt-5.json");
    let ds = kummer(&fx);
    for s in [vec![2], vec![2, 3, 5]] {
        let h = h1s(&ds, &fx, &s).unwrap();
        let op0 = ds.d[0].operator_matrix(&fx.sunits);
        let d0 = AbHom::new(h.levels[0].group.clone(), h.levels[1].ambient.clone(), op0.mul(&h.levels[0].incl));
        for b in &h.b1_gens {
            assert!(d0.solve(b).is_some());
            assert!(h.is_coboundary(b));
        }
    }
}

#[test]
fn unramified_test_depends_only_on_the_class() {
    let fx = fixture("q-trivial.json");
    let ds = kummer(&fx);
    let h = h1s(&ds, &fx, &[2, 3, 5]).unwrap();
    for x in elements(&h) {
        for p in [3, 5] {
            let base = unramified_test(&x, p, &ds, &fx).unwrap();
            for b in &h.b1_gens {
                let y: Vec<BigInt> = x.iter().zip(b).map(|(u, v)| u + v).collect();
                assert_eq!(unramified_test(&y, p, &ds, &fx).unwrap(), base);
            }
        }
    }
}

#[test]
fn unramified_test_matches_valuation_parity() {
    // Over Q the class of ±2^a 3^b 5^c is unramified at an odd p exactly when
    // the exponent of p is even.
    let fx = fixture("q-trivial.json");
    let ds = kummer(&fx);
    for e in 0..16i64 {
        let x = vec_from_i64(&[e & 1, e >> 1 & 1, e >> 2 & 1, e >> 3 & 1]);
        assert_eq!(unramified_test(&x, 3, &ds, &fx).unwrap(), e >> 2 & 1 == 0);
        assert_eq!(unramified_test(&x, 5, &ds, &fx).unwrap(), e >> 3 & 1 == 0);
    }
}

#[test]
fn relaxed_inside_s_is_h1s() {
    for name in ["q-trivial.json", "q-sqrt-5.json"] {
        let fx = fixture(name);
        let ds = kummer(&fx);
        let sys = SelmerSystem::unramified()
            .with(2, Condition::Relaxed)
            .with(3, Condition::Relaxed)
            .with(5, Condition::Relaxed);
        let sel = selmer_group(&sys, &ds, &fx, None).unwrap();
        let h = h1s(&ds, &fx, &[2, 3, 5]).unwrap();
        assert_eq!(sel.s_used, vec![2, 3, 5]);
        assert_eq!(sel.group, h.group);
        assert_eq!(sel.reps, h.reps);
    }
}

#[test]
fn selmer_is_monotone_in_the_conditions() {
    let fx = fixture("q-trivial.json");
    let ds = kummer(&fx);
    let order = |sys: &SelmerSystem| selmer_group(sys, &ds, &fx, Some(&[2, 3])).unwrap().group.order();
    let at2 = [custom("trivial"), custom("unramified"), custom("full"), Condition::Relaxed];
    let at3 = [Condition::Unramified, Condition::Relaxed];
    for c3 in &at3 {
        let orders: Vec<BigInt> =
            at2.iter().map(|c2| order(&SelmerSystem::unramified().with(2, c2.clone()).with(3, c3.clone()))).collect();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]), "{orders:?}");
    }
    for c2 in &at2 {
        let strict = order(&SelmerSystem::unramified().with(2, c2.clone()));
        let loose = order(&SelmerSystem::unramified().with(2, c2.clone()).with(3, Condition::Relaxed));
        assert!(strict <= loose);
        assert!(loose <= strict * 2u32);
    }
    // No nontrivial class in <-1, 2, 3> is a square in Q_2.
    assert_eq!(order(&SelmerSystem::unramified().with(2, custom("trivial")).with(3, Condition::Relaxed)), BigInt::one());
    assert_eq!(order(&SelmerSystem::unramified().with(2, Condition::Relaxed).with(3, Condition::Relaxed)), BigInt::from(8));
}

#[test]
fn unramified_at_two_needs_local_data_over_the_quadratic_field() {
    let fx = fixture("q-sqrt-5.json");
    let ds = kummer(&fx);
    let err = selmer_group(&SelmerSystem::unramified(), &ds, &fx, None).unwrap_err();
    assert_eq!(err, SelmerError::NeedsLocalData(2));
    // 5 ramifies in Q(sqrt(-5)).
    let sys = SelmerSystem::unramified().with(2, Condition::Relaxed);
    assert_eq!(selmer_group(&sys, &ds, &fx, Some(&[2, 5])).unwrap_err(), SelmerError::NeedsLocalData(5));
    // 3 does not, so the valuation test applies there.
    let sel = selmer_group(&sys, &ds, &fx, Some(&[2, 3])).unwrap();
    assert_eq!(sel.group.order(), BigInt::from(4));
    assert_eq!(sel.h1s.order(), BigInt::from(8));
    assert_eq!(sel.diagnostics[1].method, "unramified-test");
}

#[test]
fn s_selection() {
    let fx = fixture("q-trivial.json");
    let ds = kummer(&fx);
    assert_eq!(select_s(&SelmerSystem::unramified(), &ds, &fx).unwrap(), vec![2]);
    let sys = SelmerSystem::unramified().with(5, custom("anything"));
    assert_eq!(select_s(&sys, &ds, &fx).unwrap(), vec![2, 5]);
    let sys = SelmerSystem::unramified().with(11, Condition::Relaxed);
    assert_eq!(select_s(&sys, &ds, &fx).unwrap_err(), SelmerError::MissingPrime(11));
    let sys = SelmerSystem::unramified().with(3, Condition::Unramified);
    assert_eq!(select_s(&sys, &ds, &fx).unwrap(), vec![2]);
}

fn modified_sqrt5(edit: impl FnOnce(&mut FixtureFile)) -> ArithmeticFixture {
    let mut file: FixtureFile =
        serde_json::from_str(include_str!("../fixtures/q-sqrt-5.json")).unwrap();
    edit(&mut file);
    ArithmeticFixture::from_file(file).unwrap()
}

/// `Z/2[G]` over `Q` with `G = Gal(Q(sqrt(-5))/Q)`, whose level-0 field is
/// `Q(sqrt(-5))` itself.
fn induced(fx: &ArithmeticFixture) -> DualSequence {
    let g = fx.group.clone();
    let p = PermModuleSpec::new(&g, vec![Subgroup::trivial(&g)]);
    let m = GModule::new(g.clone(), vec![big(2), big(2)], vec![p.action_matrix(g.generator_index(0))]).unwrap();
    let chi = CycloCharacter::new(big(2), vec![big(1)]);
    dual_sequence(&resolve(&m, &chi, 2).unwrap())
}

#[test]
fn s_selection_follows_the_class_group() {
    let fx = fixture("q-sqrt-5.json");
    let ds = induced(&fx);
    assert_eq!(select_s(&SelmerSystem::unramified(), &ds, &fx).unwrap(), vec![2]);

    // If the prime above 2 were principal only the primes above 3 would
    // generate the class group.
    let fx = modified_sqrt5(|f| f.class_data[0].prime_classes[0].classes = vec![vec![big(0)]]);
    assert_eq!(select_s(&SelmerSystem::unramified(), &ds, &fx).unwrap(), vec![2, 3]);
    let err = selmer_group(&SelmerSystem::unramified().with(2, Condition::Relaxed), &ds, &fx, Some(&[2, 5])).unwrap_err();
    assert!(matches!(err, SelmerError::InvalidS(_)));

    let fx = modified_sqrt5(|f| {
        for pc in &mut f.class_data[0].prime_classes {
            for c in &mut pc.classes {
                *c = vec![big(0)];
            }
        }
    });
    assert_eq!(select_s(&SelmerSystem::unramified(), &ds, &fx).unwrap_err(), SelmerError::PoolExhausted);
}

#[test]
fn induced_module_sees_the_units_of_the_bigger_field() {
    // H¹_S(Q, Z/2[G]) = H¹_S(Q(sqrt(-5)), Z/2) = O_S^× / 2 once S spans the class group.
    let fx = fixture("q-sqrt-5.json");
    let ds = induced(&fx);
    let trivial = Subgroup::trivial(&fx.group);
    for s in [vec![2], vec![2, 3], vec![2, 3, 5]] {
        let (units, _) = fx.sunits_for(&trivial, &s).unwrap();
        let rank = units.structure().free_rank;
        let h = h1s(&ds, &fx, &s).unwrap();
        assert_eq!(h.order(), BigInt::one() << (rank + 1), "S = {s:?}");
    }
}

#[test]
fn custom_condition_validation() {
    let fx = fixture("q-trivial.json");
    let ds = kummer(&fx);
    let h = h1s(&ds, &fx, &[2]).unwrap();
    for label in ["trivial", "full", "unramified"] {
        validate_custom(fx.local_condition(2, label).unwrap(), &h, &ds).unwrap();
    }
    let mut zero = fx.local_condition(2, "trivial").unwrap().clone();
    zero.map = IntMatrix::zeros(zero.map.rows(), zero.map.cols());
    validate_custom(&zero, &h, &ds).unwrap();

    let mut wide = zero.clone();
    wide.map = IntMatrix::zeros(3, 5);
    assert!(matches!(validate_custom(&wide, &h, &ds), Err(SelmerError::NotWellDefined(_))));

    // Into Z/4 the square 2^2 no longer dies.
    let mut leaky = zero.clone();
    leaky.target = vec_from_i64(&[4, 2, 2]);
    leaky.map[(0, 1)] = big(1);
    let err = validate_custom(&leaky, &h, &ds).unwrap_err();
    assert!(err.to_string().contains("coboundary"), "{err}");

    let mut blocks = zero;
    blocks.level1_blocks.push(Subgroup::trivial(&fx.group));
    assert!(matches!(validate_custom(&blocks, &h, &ds), Err(SelmerError::NotWellDefined(_))));
}

#[test]
fn cubic_generator_is_the_unit_of_q_zeta3() {
    let fx = fixture("q-zeta3.json");
    let ds = cubic(&fx);
    let sel = selmer_group(&SelmerSystem::unramified().with(3, Condition::Relaxed), &ds, &fx, None).unwrap();
    assert_eq!(sel.group.to_string(), "Z/3");
    assert_eq!(sel.s_used, vec![3]);
    let again = selmer_group(&SelmerSystem::unramified().with(3, Condition::Relaxed), &ds, &fx, None).unwrap();
    assert_eq!(sel.reps, again.reps);
}
