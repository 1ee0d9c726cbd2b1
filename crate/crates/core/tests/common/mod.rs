#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use selmer::abgroup::{vec_from_i64, IntMatrix};
use selmer::gmodule::{CycloCharacter, GModule};
use selmer::oracle::{load_fixture, ArithmeticFixture};
use selmer::permgrp::{Perm, PermGroup};
use selmer::resolution::{dual_sequence, resolve, DualSequence};

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn fixture(name: &str) -> ArithmeticFixture {
    load_fixture(format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

pub fn data(rel: &str) -> String {
    format!("{}/data/{rel}", env!("CARGO_MANIFEST_DIR"))
}

fn perm(images: &[usize]) -> Perm {
    Perm::new(images.to_vec()).unwrap()
}

/// Regular representation of the quaternion group.
pub fn quaternion() -> Arc<PermGroup> {
    // ±1, ±i, ±j, ±k as (sign, unit) with units 1, i, j, k.
    let mul_unit = |a: usize, b: usize| -> (i8, usize) {
        const T: [[(i8, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        T[a][b]
    };
    let idx = |s: i8, u: usize| 2 * u + usize::from(s < 0);
    let left = |u: usize| {
        let images: Vec<usize> = (0..8)
            .map(|x| {
                let (s, v) = (if x % 2 == 0 { 1 } else { -1 }, x / 2);
                let (t, w) = mul_unit(u, v);
                idx(s * t, w)
            })
            .collect();
        perm(&images)
    };
    PermGroup::enumerated(8, vec![left(1), left(2)]).unwrap()
}

/// Every group of order at most 8 with the invariant factors of its
/// abelianization.
pub fn small_groups() -> Vec<(&'static str, Arc<PermGroup>, Vec<i64>)> {
    let c = |n: usize| PermGroup::cyclic(n);
    vec![
        ("1", PermGroup::trivial(), vec![]),
        ("C2", c(2), vec![2]),
        ("C3", c(3), vec![3]),
        ("C4", c(4), vec![4]),
        ("C2xC2", PermGroup::enumerated(4, vec![perm(&[1, 0, 2, 3]), perm(&[0, 1, 3, 2])]).unwrap(), vec![2, 2]),
        ("C5", c(5), vec![5]),
        ("C6", c(6), vec![6]),
        ("S3", PermGroup::symmetric(3), vec![2]),
        ("C7", c(7), vec![7]),
        ("C8", c(8), vec![8]),
        ("C2xC4", PermGroup::enumerated(6, vec![perm(&[1, 0, 2, 3, 4, 5]), perm(&[0, 1, 3, 4, 5, 2])]).unwrap(), vec![2, 4]),
        (
            "C2^3",
            PermGroup::enumerated(6, vec![perm(&[1, 0, 2, 3, 4, 5]), perm(&[0, 1, 3, 2, 4, 5]), perm(&[0, 1, 2, 3, 5, 4])])
                .unwrap(),
            vec![2, 2, 2],
        ),
        ("D4", PermGroup::dihedral(4), vec![2, 2]),
        ("Q8", quaternion(), vec![2, 2]),
    ]
}

/// Invariant factors of every abelian group of order at most 9.
pub fn abelian_groups_upto_9() -> Vec<Vec<i64>> {
    vec![
        vec![2],
        vec![3],
        vec![4],
        vec![2, 2],
        vec![5],
        vec![6],
        vec![7],
        vec![8],
        vec![2, 4],
        vec![2, 2, 2],
        vec![9],
        vec![3, 3],
    ]
}

pub fn order_of(factors: &[i64]) -> i64 {
    factors.iter().product()
}

/// Sign of a permutation as a unit modulo anything.
pub fn sign(p: &Perm) -> i64 {
    let n = p.degree();
    let mut inv = 0;
    for i in 0..n {
        for j in i + 1..n {
            if p.apply(i) > p.apply(j) {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn sign_character(g: &PermGroup, modulus: i64) -> CycloCharacter {
    CycloCharacter::new(big(modulus), g.generators().iter().map(|p| big(sign(p))).collect())
}

/// The groups of the resolution suite.
pub fn resolution_groups() -> Vec<(&'static str, Arc<PermGroup>)> {
    vec![
        ("1", PermGroup::trivial()),
        ("Z/2", PermGroup::cyclic(2)),
        ("Z/3", PermGroup::cyclic(3)),
        ("Z/4", PermGroup::cyclic(4)),
        ("S3", PermGroup::symmetric(3)),
        ("D4", PermGroup::dihedral(4)),
    ]
}

/// Test modules over `g` with a compatible character.
pub fn test_modules(g: &Arc<PermGroup>) -> Vec<(String, GModule, CycloCharacter)> {
    let ngens = g.generators().len();
    let mut out = Vec::new();
    for n in [2, 3, 4, 6] {
        let m = GModule::trivial(g.clone(), vec_from_i64(&[n])).unwrap();
        out.push((format!("Z/{n} trivial, chi trivial"), m.clone(), CycloCharacter::trivial(big(n), ngens)));
        if n > 2 {
            out.push((format!("Z/{n} trivial, chi sign"), m, sign_character(g, n)));
        }
    }
    for n in [3, 4] {
        let gens = g.generators().iter().map(|p| IntMatrix::from_rows(&[vec_from_i64(&[sign(p)])])).collect();
        let m = GModule::new(g.clone(), vec_from_i64(&[n]), gens).unwrap();
        out.push((format!("Z/{n} sign, chi trivial"), m.clone(), CycloCharacter::trivial(big(n), ngens)));
        out.push((format!("Z/{n} sign, chi sign"), m, sign_character(g, n)));
    }
    let m = GModule::trivial(g.clone(), vec_from_i64(&[2, 4])).unwrap();
    out.push(("Z/2+Z/4 trivial".into(), m, CycloCharacter::trivial(big(4), ngens)));
    if g.degree() > 1 {
        // Z/2 on the points the group permutes.
        let gens = g.generators().iter().map(|p| permutation_matrix(p)).collect();
        let m = GModule::new(g.clone(), vec![big(2); g.degree()], gens).unwrap();
        out.push(("Z/2[points]".into(), m, CycloCharacter::trivial(big(2), ngens)));
    }
    out
}

pub fn permutation_matrix(p: &Perm) -> IntMatrix {
    let n = p.degree();
    let mut m = IntMatrix::zeros(n, n);
    for i in 0..n {
        m[(p.apply(i), i)] = big(1);
    }
    m
}

pub fn kummer(fx: &ArithmeticFixture) -> DualSequence {
    let m = GModule::trivial(fx.group.clone(), vec_from_i64(&[2])).unwrap();
    let chi = CycloCharacter::new(big(2), vec![big(1); fx.group.generators().len()]);
    dual_sequence(&resolve(&m, &chi, 2).unwrap())
}

pub fn cubic(fx: &ArithmeticFixture) -> DualSequence {
    let m = GModule::trivial(fx.group.clone(), vec_from_i64(&[3])).unwrap();
    let chi = CycloCharacter::new(big(3), vec![big(2); fx.group.generators().len()]);
    dual_sequence(&resolve(&m, &chi, 2).unwrap())
}

/// `|Hom(Π_{p ∈ S} Z_p^×, Z/m)|`, counted as the solutions of `x^m = 1` in
/// `(Z/N)^×` for `N = Π p^(v_p(m) + 2)` (or `p` when `p ∤ m`).
pub fn count_characters(s: &[u64], m: u64) -> u64 {
    let mut n: u64 = 1;
    for &p in s {
        let mut e = 1;
        let mut mm = m;
        if m % p == 0 {
            e = 2;
            while mm % p == 0 {
                mm /= p;
                e += 1;
            }
        }
        n *= p.pow(e);
    }
    let pow_mod = |mut b: u64, mut e: u64| {
        let mut r = 1u64 % n;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % n;
            }
            b = b * b % n;
            e >>= 1;
        }
        r
    };
    (1..=n).filter(|&x| x.gcd(&n) == 1 && pow_mod(x, m) == 1 % n).count() as u64
}
