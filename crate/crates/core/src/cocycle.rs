//! Brute-force group cohomology for finite modules, and exactness checks of
//! dual sequences at finite torsion levels.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::abgroup::{column_echelon, hnf_column, is_zero_vec, solve_integer, AbHom, FgAbGroup, FinAbGroup, IntMatrix};
use crate::gmodule::{torsion_model, GModule, GModuleError};
use crate::resolution::DualSequence;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum CocycleError {
    #[error("cohomology is only computed for finite modules")]
    InfiniteModule,
    #[error(transparent)]
    Module(#[from] GModuleError),
}

/// `Z¹`, `B¹` and their quotient for a finite module.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    /// Cochains `G -> M`, one block of coordinates per group element.
    pub cochains: FgAbGroup,
    pub z1: FgAbGroup,
    pub z1_incl: AbHom,
    /// Coboundaries of the module generators, in cochain coordinates.
    pub b1_gens: IntMatrix,
    pub h1: FinAbGroup,
}

pub fn cocycle_space(m: &GModule) -> Result<CocycleSpace, CocycleError> {
    if !m.is_finite() {
        return Err(CocycleError::InfiniteModule);
    }
    let g = m.group();
    let n = g.order();
    let r = m.rank();
    let block = |x: usize| x * r;
    let orders1: Vec<BigInt> = (0..n).flat_map(|_| m.orders().iter().cloned()).collect();
    let orders2: Vec<BigInt> = (0..n * n).flat_map(|_| m.orders().iter().cloned()).collect();
    let cochains = FgAbGroup::from_orders(&orders1);
    // δc(a, b) = c(ab) - c(a) - a·c(b)
    let mut delta = IntMatrix::zeros(n * n * r, n * r);
    for a in 0..n {
        for b in 0..n {
            let row = (a * n + b) * r;
            let ab = g.mul(a, b);
            let act = m.action(a);
            for i in 0..r {
                delta[(row + i, block(ab) + i)] += 1;
                delta[(row + i, block(a) + i)] -= 1;
                for j in 0..r {
                    delta[(row + i, block(b) + j)] -= &act[(i, j)];
                }
            }
        }
    }
    let delta = AbHom::new(cochains.clone(), FgAbGroup::from_orders(&orders2), delta);
    let (z1, z1_incl) = delta.kernel();
    let mut b1 = IntMatrix::zeros(n * r, r);
    for a in 0..n {
        let act = m.action(a);
        for i in 0..r {
            for j in 0..r {
                let id = if i == j { 1 } else { 0 };
                b1[(block(a) + i, j)] = &act[(i, j)] - id;
            }
        }
    }
    let in_z1 = AbHom::new(z1.clone(), cochains.clone(), z1_incl.matrix.clone());
    let b1_cols: Vec<Vec<BigInt>> = (0..b1.cols())
        .map(|j| in_z1.solve(&b1.col(j)).expect("coboundaries are cocycles"))
        .collect();
    let quotient_rel = z1.relations().hstack(&IntMatrix::from_cols(z1.ngens(), &b1_cols));
    let q = FgAbGroup::new(z1.ngens(), quotient_rel);
    let h1 = FinAbGroup::try_from(&q).expect("finite module has finite H¹");
    Ok(CocycleSpace { cochains, z1, z1_incl, b1_gens: b1, h1 })
}

/// `H¹(G, M)` by explicit cocycles over all pairs of group elements.
pub fn h1_finite(m: &GModule) -> Result<FinAbGroup, CocycleError> {
    Ok(cocycle_space(m)?.h1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    /// A composite of consecutive maps is nonzero on this basis vector.
    CompositionNonzero { stage: String, element: Vec<BigInt> },
    /// In the kernel but outside the image.
    NotExact { stage: String, element: Vec<BigInt> },
    NotInjective { stage: String, element: Vec<BigInt> },
    /// Outside the image.
    NotSurjective { stage: String, element: Vec<BigInt> },
    /// The level maps do not commute with the twisted action.
    NotEquivariant { stage: String },
}

fn zn(n: &BigInt, k: usize) -> FgAbGroup {
    FgAbGroup::from_orders(&vec![n.clone(); k])
}

fn unit(k: usize, i: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); k];
    e[i] = BigInt::from(1);
    e
}

fn zero_mod(v: &[BigInt], n: &BigInt) -> bool {
    v.iter().all(|x| x.mod_floor(n).is_zero())
}

/// Checks `0 -> X --b--> Y --a--> Z -> 0` over `Z/n`.
fn check_short_exact(stage: &str, n: &BigInt, a: &IntMatrix, b: &IntMatrix) -> Result<(), Counterexample> {
    let (x, y, z) = (b.cols(), b.rows(), a.rows());
    let ab = a.mul(b);
    for j in 0..x {
        if !zero_mod(&ab.col(j), n) {
            return Err(Counterexample::CompositionNonzero { stage: stage.into(), element: unit(x, j) });
        }
    }
    let fb = AbHom::new(zn(n, x), zn(n, y), b.clone());
    let (_, kb) = fb.kernel();
    for j in 0..kb.matrix.cols() {
        let v = kb.matrix.col(j);
        if !zero_mod(&v, n) {
            return Err(Counterexample::NotInjective { stage: stage.into(), element: zn(n, x).reduce(&v) });
        }
    }
    let fa = AbHom::new(zn(n, y), zn(n, z), a.clone());
    if !fa.is_surjective() {
        let image = column_echelon(&a.hstack(&IntMatrix::identity(z).scale(n)), false);
        let missing = (0..z).find(|&i| !is_zero_vec(&image.reduce(&unit(z, i)))).expect("some unit vector is missed");
        return Err(Counterexample::NotSurjective { stage: stage.into(), element: unit(z, missing) });
    }
    let (_, ka) = fa.kernel();
    let image_b = column_echelon(&b.hstack(&IntMatrix::identity(y).scale(n)), false);
    for j in 0..ka.matrix.cols() {
        let v = ka.matrix.col(j);
        if !is_zero_vec(&image_b.reduce(&v)) {
            return Err(Counterexample::NotExact { stage: stage.into(), element: zn(n, y).reduce(&v) });
        }
    }
    Ok(())
}

/// Exactness of `0 -> P_2'/n -> P_1/n -> P_0'/n -> 0` (with `P_0' = im d_0^*`
/// and `P_2' = im d_1^*`) and of its `Z/n`-dual, plus `d_1 ∘ d_0 = 0` on the
/// `n`-torsion models and equivariance of the level maps for the twisted
/// action whenever the character can be read modulo `n`.
pub fn verify_torsion_exactness(ds: &DualSequence, n: &BigInt) -> Result<(), Counterexample> {
    assert!(ds.d.len() >= 2, "needs a sequence of depth two");
    let d0 = ds.d[0].to_matrix();
    let d1 = ds.d[1].to_matrix();
    let d0s = d0.transpose();
    let d1s = d1.transpose();

    let comp = d1.mul(&d0);
    for j in 0..comp.cols() {
        if !zero_mod(&comp.col(j), n) {
            return Err(Counterexample::CompositionNonzero { stage: "d_1 d_0".into(), element: unit(comp.cols(), j) });
        }
    }

    let p0p = hnf_column(&d0s);
    let a: Vec<Vec<BigInt>> = (0..d0s.cols())
        .map(|j| solve_integer(&p0p, &d0s.col(j)).expect("image basis spans the image"))
        .collect();
    let a = IntMatrix::from_cols(p0p.cols(), &a);
    let b = hnf_column(&d1s);
    check_short_exact("P_2'/n -> P_1/n -> P_0'/n", n, &a, &b)?;
    check_short_exact("dual", n, &b.transpose(), &a.transpose())?;

    if let Ok(chi) = ds.chi.reduced(n) {
        let models: Vec<GModule> = ds
            .levels
            .iter()
            .map(|p| torsion_model(p, n, &chi))
            .collect::<Result<_, _>>()
            .map_err(|_| Counterexample::NotEquivariant { stage: "torsion model".into() })?;
        let g = ds.group();
        for (i, d) in [&d0, &d1].iter().enumerate() {
            for k in 0..g.generators().len() {
                let gi = g.generator_index(k);
                let lhs = models[i + 1].action(gi).mul(d);
                let rhs = d.mul(models[i].action(gi));
                let diff = lhs.sub(&rhs);
                if !diff.entries().iter().all(|x| x.mod_floor(n).is_zero()) {
                    return Err(Counterexample::NotEquivariant { stage: format!("d_{i}") });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::vec_from_i64;
    use crate::gmodule::CycloCharacter;
    use crate::permgrp::PermGroup;
    use crate::resolution::{dual_sequence, resolve};

    fn fin(v: &[i64]) -> FinAbGroup {
        FinAbGroup::from_cyclic_orders(&vec_from_i64(v))
    }

    #[test]
    fn h1_examples() {
        let c2 = PermGroup::cyclic(2);
        let m = GModule::trivial(c2.clone(), vec_from_i64(&[2])).unwrap();
        assert_eq!(h1_finite(&m).unwrap(), fin(&[2]));
        let m = GModule::new(c2, vec_from_i64(&[3]), vec![IntMatrix::from_rows(&[vec![2]])]).unwrap();
        assert_eq!(h1_finite(&m).unwrap(), fin(&[]));
        let c3 = PermGroup::cyclic(3);
        let m = GModule::trivial(c3, vec_from_i64(&[3])).unwrap();
        assert_eq!(h1_finite(&m).unwrap(), fin(&[3]));
    }

    #[test]
    fn torsion_exactness_examples() {
        let triv = PermGroup::trivial();
        let m = GModule::trivial(triv, vec_from_i64(&[2])).unwrap();
        let r = resolve(&m, &CycloCharacter::trivial(BigInt::from(2), 0), 2).unwrap();
        let ds = dual_sequence(&r);
        verify_torsion_exactness(&ds, &BigInt::from(2)).unwrap();

        let c2 = PermGroup::cyclic(2);
        let m = GModule::trivial(c2, vec_from_i64(&[3])).unwrap();
        let r = resolve(&m, &CycloCharacter::new(BigInt::from(3), vec![BigInt::from(2)]), 2).unwrap();
        let mut ds = dual_sequence(&r);
        verify_torsion_exactness(&ds, &BigInt::from(3)).unwrap();

        ds.d[1].coeffs_mut()[0][0][0] += 1;
        assert!(matches!(
            verify_torsion_exactness(&ds, &BigInt::from(3)),
            Err(Counterexample::CompositionNonzero { .. })
        ));
    }
}
