mod common;

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use common::*;
use selmer::abgroup::{hnf_column, integer_kernel, rank, same_lattice, snf, solve_integer, AbHom, FgAbGroup, IntMatrix};
use selmer::cocycle::{h1_finite, verify_torsion_exactness};
use selmer::gmodule::{dual_module, torsion_model, CycloCharacter, GModule, HeckeSum, PermModuleSpec};
use selmer::permgrp::{PermGroup, Subgroup};
use selmer::resolution::{dual_sequence, resolve};

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn groups() -> Vec<Arc<PermGroup>> {
    resolution_groups().into_iter().map(|(_, g)| g).collect()
}

/// A random subgroup generated by up to two elements.
fn subgroup(g: &Arc<PermGroup>, picks: &[usize]) -> Subgroup {
    let gens = picks.iter().map(|&i| g.element(i % g.order()).clone()).collect();
    Subgroup::generated(g, gens).unwrap()
}

fn random_hecke(g: &Arc<PermGroup>, src: &[Vec<usize>], dst: &[Vec<usize>], coeffs: &[i64]) -> HeckeSum {
    let s = PermModuleSpec::new(g, src.iter().map(|p| subgroup(g, p)).collect());
    let t = PermModuleSpec::new(g, dst.iter().map(|p| subgroup(g, p)).collect());
    let mut h = HeckeSum::zero(s, t);
    for (c, v) in h.coeffs_mut().iter_mut().flatten().flatten().zip(coeffs.iter().cycle()) {
        *c = BigInt::from(*v);
    }
    h
}

fn picks() -> impl Strategy<Value = Vec<Vec<usize>>> {
    prop::collection::vec(prop::collection::vec(0usize..8, 0..=2), 1..=2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form(a in matrix(5, 12)) {
        let f = snf(&a);
        prop_assert_eq!(f.u.mul(&a).mul(&f.v), f.d.clone());
        prop_assert!(f.u.mul(&f.u_inv) == IntMatrix::identity(a.rows()));
        prop_assert!(f.v.determinant().abs().is_one());
        for i in 0..f.d.rows() {
            for j in 0..f.d.cols() {
                prop_assert!(i == j || f.d[(i, j)].is_zero());
            }
        }
        let diag = f.diagonal();
        prop_assert!(diag.iter().all(|x| !x.is_negative()));
        for w in diag.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])));
        }
        if a.rows() == a.cols() {
            let prod = diag.iter().fold(BigInt::one(), |p, x| p * x);
            prop_assert_eq!(prod, a.determinant().abs());
        }
    }

    #[test]
    fn hermite_form_spans_the_same_lattice(a in matrix(4, 9), ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..=3), 0..8)) {
        let h = hnf_column(&a);
        prop_assert!(same_lattice(&a, &h));
        prop_assert_eq!(rank(&h), rank(&a));
        // Column operations preserve the lattice.
        let mut b = a.clone();
        for (i, j, k) in ops {
            let (i, j) = (i % b.cols(), j % b.cols());
            if i != j {
                for r in 0..b.rows() {
                    let v = &b[(r, j)] * k;
                    b[(r, i)] += v;
                }
            }
        }
        prop_assert!(same_lattice(&a, &b));
        prop_assert_eq!(hnf_column(&b), h);
    }

    #[test]
    fn kernel_and_solve(a in matrix(4, 9), x in prop::collection::vec(-5i64..=5, 4)) {
        let k = integer_kernel(&a);
        prop_assert!(a.mul(&k).is_zero());
        prop_assert_eq!(rank(&k), k.cols());
        prop_assert_eq!(k.cols() + rank(&a), a.cols());
        let x: Vec<BigInt> = x[..a.cols()].iter().map(|&v| BigInt::from(v)).collect();
        let b = a.mul_vec(&x);
        let y = solve_integer(&a, &b);
        prop_assert!(y.is_some());
        prop_assert_eq!(a.mul_vec(&y.unwrap()), b);
    }

    #[test]
    fn finite_homs_count(n in 2i64..7, m in 1i64..4, k in 1usize..4, l in 1usize..4, entries in prop::collection::vec(-6i64..=6, 9)) {
        // Z/(nm)^k -> Z/n^l is always well defined.
        let dom = FgAbGroup::from_orders(&vec![BigInt::from(n * m); k]);
        let cod = FgAbGroup::from_orders(&vec![BigInt::from(n); l]);
        let mat = IntMatrix::from_vec(l, k, entries[..k * l].iter().map(|&v| BigInt::from(v)).collect());
        let f = AbHom::new(dom.clone(), cod.clone(), mat);
        prop_assert!(f.is_well_defined());
        let ker = f.kernel().0.order().unwrap();
        let coker = f.image_quotient().0.order().unwrap();
        let image = cod.order().unwrap() / &coker;
        prop_assert_eq!(ker * image, dom.order().unwrap());
    }

    #[test]
    fn hecke_sums(gi in 0usize..6, src in picks(), dst in picks(), coeffs in prop::collection::vec(-4i64..=4, 1..12)) {
        let g = &groups()[gi];
        let h = random_hecke(g, &src, &dst, &coeffs);
        let f = h.to_matrix();
        for k in 0..g.generators().len() {
            let x = g.generator_index(k);
            prop_assert_eq!(h.target().action_matrix(x).mul(&f), f.mul(&h.source().action_matrix(x)));
        }
        prop_assert!(HeckeSum::from_matrix(h.source(), h.target(), &f).unwrap() == h);
        prop_assert_eq!(h.dualize().to_matrix(), f.transpose());
        prop_assert!(h.dualize().dualize() == h);
        let back = random_hecke(g, &dst, &src, &coeffs[1..]);
        prop_assert_eq!(back.compose(&h).to_matrix(), back.to_matrix().mul(&f));
    }

    #[test]
    fn double_dual(gi in 0usize..6, mi in 0usize..16) {
        let g = &groups()[gi];
        let mods = test_modules(g);
        let (_, m, chi) = &mods[mi % mods.len()];
        let dd = dual_module(&dual_module(m, chi).unwrap(), chi).unwrap();
        prop_assert_eq!(dd.orders(), m.orders());
        for (a, b) in dd.gen_action().iter().zip(m.gen_action()) {
            for j in 0..a.cols() {
                prop_assert!(m.eq_elements(&a.col(j), &b.col(j)));
            }
        }
        prop_assert_eq!(h1_finite(&dd).unwrap(), h1_finite(m).unwrap());
    }

    #[test]
    fn coprime_cohomology_vanishes(gi in 0usize..6, n in 2i64..30, signed in any::<bool>()) {
        let g = &groups()[gi];
        prop_assume!(n.gcd(&(g.order() as i64)) == 1);
        let m = if signed {
            let gens = g.generators().iter().map(|p| IntMatrix::from_rows(&[vec![BigInt::from(sign(p))]])).collect();
            GModule::new(g.clone(), vec![BigInt::from(n)], gens).unwrap()
        } else {
            GModule::trivial(g.clone(), vec![BigInt::from(n)]).unwrap()
        };
        prop_assert!(h1_finite(&m).unwrap().is_trivial());
    }

    #[test]
    fn shapiro(gi in 0usize..6, p in prop::collection::vec(0usize..8, 0..=2), n in 2i64..7) {
        let g = &groups()[gi];
        let h = subgroup(g, &p);
        let spec = PermModuleSpec::new(g, vec![h.clone()]);
        let chi = CycloCharacter::trivial(BigInt::from(n), g.generators().len());
        let induced = torsion_model(&spec, &BigInt::from(n), &chi).unwrap();
        let restricted = GModule::trivial(g.clone(), vec![BigInt::from(n)]).unwrap().restrict(&h).unwrap();
        prop_assert_eq!(h1_finite(&induced).unwrap(), h1_finite(&restricted).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_resolutions_are_exact(gi in 0usize..5, mi in 0usize..16, n in 2i64..7) {
        let g = &groups()[gi];
        let mods = test_modules(g);
        let (_, m, chi) = &mods[mi % mods.len()];
        let r = resolve(m, chi, 2).unwrap();
        prop_assert!(r.verify().is_ok());
        prop_assert!(verify_torsion_exactness(&dual_sequence(&r), &BigInt::from(n)).is_ok());
    }
}
