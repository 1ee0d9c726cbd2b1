//! Resolutions `P_2 -> P_1 -> P_0 -> M* -> 0` by permutation modules, their
//! duals, and pseudo-inverses of Hecke sums.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::abgroup::{column_echelon, integer_kernel, rank, same_lattice, solve_integer, AbHom, IntMatrix};
use crate::gmodule::{dual_module, CycloCharacter, GModule, GModuleError, HeckeSum, PermModuleSpec};
use crate::permgrp::{stabilizer, PermGroup};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ResolutionError {
    #[error("the given elements do not generate the module")]
    NotGenerating,
    #[error("the map does not have finite-index image")]
    NotFiniteIndex,
    #[error("minimal pseudo-inverse constant {k} does not divide {bound}")]
    BoundExceeded { k: BigInt, bound: BigInt },
    #[error("resolution check failed: {0}")]
    NotExact(String),
    #[error(transparent)]
    Module(#[from] GModuleError),
}

/// Orbit map onto `n`: one block `Z[G/Stab(x)]` per generator `x`,
/// with `s(a·Stab(x)) = a·x`.
pub fn perm_surjection(n: &GModule, gens: &[Vec<BigInt>]) -> Result<(PermModuleSpec, AbHom), ResolutionError> {
    let group = n.group();
    let mut blocks = Vec::with_capacity(gens.len());
    for x in gens {
        let x = n.reduce(x);
        blocks.push(stabilizer(group, |g| n.act(g, &x)));
    }
    let p = PermModuleSpec::new(group, blocks);
    let mut cols = Vec::with_capacity(p.rank());
    for (b, x) in gens.iter().enumerate() {
        for &a in &p.cosets(b).reps {
            cols.push(n.act(a, x));
        }
    }
    let s = AbHom::new(p.abgroup(), n.abgroup().clone(), IntMatrix::from_cols(n.rank(), &cols));
    if !s.is_surjective() {
        return Err(ResolutionError::NotGenerating);
    }
    Ok((p, s))
}

/// The submodule of a lattice module spanned by the columns of `basis`,
/// written in that basis.
fn sublattice_module(ambient: &GModule, basis: &IntMatrix) -> GModule {
    let ech = column_echelon(basis, true);
    let group = ambient.group();
    let gens = (0..group.generators().len())
        .map(|k| {
            let image = ambient.action(group.generator_index(k)).mul(basis);
            let cols: Vec<Vec<BigInt>> = (0..image.cols())
                .map(|j| ech.solve(&image.col(j)).expect("the sublattice is G-stable"))
                .collect();
            IntMatrix::from_cols(basis.cols(), &cols)
        })
        .collect();
    GModule::new(Arc::clone(group), vec![BigInt::zero(); basis.cols()], gens).expect("G-stable sublattice")
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: GModule,
    pub chi: CycloCharacter,
    pub mstar: GModule,
    /// `P_0, P_1, ..`
    pub levels: Vec<PermModuleSpec>,
    /// `P_0 -> M*`.
    pub s: AbHom,
    /// `d_i^*: P_{i+1} -> P_i`.
    pub d_star: Vec<HeckeSum>,
}

impl PartialEq for Resolution {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module
            && self.chi == other.chi
            && self.levels == other.levels
            && self.s.matrix == other.s.matrix
            && self.d_star == other.d_star
    }
}

/// Resolves `M*` to the given depth, starting from the standard generators
/// of `M*` and continuing with HNF bases of the successive kernels.
pub fn resolve(m: &GModule, chi: &CycloCharacter, depth: usize) -> Result<Resolution, ResolutionError> {
    let mstar = dual_module(m, chi)?;
    let gens: Vec<Vec<BigInt>> = (0..mstar.rank())
        .map(|i| {
            let mut e = vec![BigInt::zero(); mstar.rank()];
            e[i] = BigInt::one();
            e
        })
        .collect();
    let (p0, s) = perm_surjection(&mstar, &gens)?;
    let mut levels = vec![p0];
    let mut d_star = Vec::new();
    let mut current = s.clone();
    for _ in 0..depth {
        let top = levels.last().expect("at least one level").clone();
        let (_, incl) = current.kernel();
        let basis = incl.matrix;
        let kmod = sublattice_module(&top.as_gmodule(), &basis);
        let kgens: Vec<Vec<BigInt>> = (0..basis.cols())
            .map(|i| {
                let mut e = vec![BigInt::zero(); basis.cols()];
                e[i] = BigInt::one();
                e
            })
            .collect();
        let (next, s_next) = perm_surjection(&kmod, &kgens)?;
        let d = basis.mul(&s_next.matrix);
        let hecke = HeckeSum::from_matrix(&next, &top, &d)?;
        current = hecke.to_hom();
        levels.push(next);
        d_star.push(hecke);
    }
    Ok(Resolution { module: m.clone(), chi: chi.clone(), mstar, levels, s, d_star })
}

impl Resolution {
    pub fn group(&self) -> &Arc<PermGroup> {
        self.mstar.group()
    }

    pub fn depth(&self) -> usize {
        self.d_star.len()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(PermModuleSpec::rank).collect()
    }

    /// Surjectivity of `s`, vanishing composites and `ker = im` at every
    /// interior level, all as exact lattice identities.
    pub fn verify(&self) -> Result<(), ResolutionError> {
        let fail = |msg: String| Err(ResolutionError::NotExact(msg));
        if !self.s.is_surjective() {
            return fail("s is not surjective".into());
        }
        if let Some(mstar) = self.mstar.elements() {
            for y in mstar {
                if self.s.solve(&y).is_none() {
                    return fail(format!("s misses {y:?}"));
                }
            }
        }
        let mut prev = self.s.clone();
        for (i, d) in self.d_star.iter().enumerate() {
            let dh = d.to_hom();
            if !prev.compose(&dh).is_zero() {
                return fail(format!("composite at level {i} is nonzero"));
            }
            let (_, incl) = prev.kernel();
            if !same_lattice(&incl.matrix, &dh.matrix) {
                return fail(format!("kernel differs from image at level {i}"));
            }
            prev = dh;
        }
        for (i, d) in self.d_star.iter().enumerate() {
            let g = self.group();
            for k in 0..g.generators().len() {
                let gi = g.generator_index(k);
                let m = d.to_matrix();
                if d.target().action_matrix(gi).mul(&m) != m.mul(&d.source().action_matrix(gi)) {
                    return fail(format!("d_{i}^* is not equivariant"));
                }
            }
        }
        Ok(())
    }
}

/// `0 -> M -> I_0 -> I_1 -> I_2`, with `d_i` the dual of `d_i^*`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualSequence {
    pub chi: CycloCharacter,
    /// Exponent of `M`.
    pub exponent: BigInt,
    pub levels: Vec<PermModuleSpec>,
    /// `d_i: level i -> level i+1`.
    pub d: Vec<HeckeSum>,
}

pub fn dual_sequence(r: &Resolution) -> DualSequence {
    DualSequence {
        chi: r.chi.clone(),
        exponent: r.module.exponent().expect("finite module"),
        levels: r.levels.clone(),
        d: r.d_star.iter().map(HeckeSum::dualize).collect(),
    }
}

impl DualSequence {
    pub fn group(&self) -> &Arc<PermGroup> {
        self.levels[0].group()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PseudoInverse {
    pub psi: HeckeSum,
    pub k: BigInt,
}

/// A G-map `Ψ` with `Φ∘Ψ = k·id` for the least positive `k`.
pub fn pseudo_inverse(phi: &HeckeSum) -> Result<PseudoInverse, ResolutionError> {
    let fm = phi.to_matrix();
    if rank(&fm) != fm.rows() {
        return Err(ResolutionError::NotFiniteIndex);
    }
    let target = phi.target().clone();
    let source = phi.source().clone();
    let zero = HeckeSum::zero(target.clone(), source.clone());
    let nb = zero.basis_len();
    let id = HeckeSum::scalar(&target, BigInt::one());
    let id_vec: Vec<BigInt> = id.coeffs().iter().flatten().flatten().cloned().collect();
    let mut basis = Vec::with_capacity(nb);
    let mut columns = Vec::with_capacity(nb);
    for b in 0..nb {
        let mut psi = zero.clone();
        *psi.coeffs_mut().iter_mut().flatten().flatten().nth(b).expect("basis index") = BigInt::one();
        let prod = phi.compose(&psi);
        columns.push(prod.coeffs().iter().flatten().flatten().cloned().collect::<Vec<_>>());
        basis.push(psi);
    }
    let lat = IntMatrix::from_cols(id_vec.len(), &columns);
    // {k : k·id ∈ span} is an ideal of Z; its generator is read off the kernel of [L | -id].
    let neg_id: Vec<BigInt> = id_vec.iter().map(|x| -x).collect();
    let ker = integer_kernel(&lat.hstack(&IntMatrix::from_cols(id_vec.len(), &[neg_id])));
    let k = (0..ker.cols()).fold(BigInt::zero(), |acc, j| acc.gcd(&ker[(nb, j)]));
    if k.is_zero() {
        return Err(ResolutionError::NotFiniteIndex);
    }
    let rhs: Vec<BigInt> = id_vec.iter().map(|x| x * &k).collect();
    let c = solve_integer(&lat, &rhs).expect("k lies in the ideal");
    let mut psi = zero;
    for (slot, ci) in psi.coeffs_mut().iter_mut().flatten().flatten().zip(&c) {
        *slot = ci.clone();
    }
    debug_assert_eq!(phi.compose(&psi), HeckeSum::scalar(&target, k.clone()));
    let order = BigInt::from(source.group().order());
    let bound = &order * &order;
    if !bound.is_multiple_of(&k) {
        return Err(ResolutionError::BoundExceeded { k: k.abs(), bound });
    }
    Ok(PseudoInverse { psi, k: k.abs() })
}

/// Exponent of the cokernel of a finite-index map, `None` otherwise.
pub fn cokernel_exponent(phi: &HeckeSum) -> Option<BigInt> {
    let h = phi.to_hom();
    let (coker, _) = h.image_quotient();
    coker.exponent()
}
