use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::module::reduce_mat;
use super::{GModule, GModuleError};
use crate::abgroup::{AbHom, FgAbGroup, IntMatrix};
use crate::permgrp::{CosetTable, DoubleCosetDecomp, PermGroup, Subgroup};

/// `⊕_j Z[G/H_j]` with the cosets of each block in enumeration order.
#[derive(Clone)]
pub struct PermModuleSpec {
    group: Arc<PermGroup>,
    blocks: Vec<Subgroup>,
    cosets: Vec<CosetTable>,
    offsets: Vec<usize>,
    rank: usize,
}

impl fmt::Debug for PermModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<usize> = self.blocks.iter().map(Subgroup::index).collect();
        write!(f, "PermModuleSpec(block indices {idx:?})")
    }
}

impl PartialEq for PermModuleSpec {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.blocks == other.blocks
    }
}

impl PermModuleSpec {
    pub fn new(group: &Arc<PermGroup>, blocks: Vec<Subgroup>) -> PermModuleSpec {
        let cosets: Vec<CosetTable> = blocks.iter().map(Subgroup::left_cosets).collect();
        let mut offsets = Vec::with_capacity(blocks.len());
        let mut rank = 0;
        for c in &cosets {
            offsets.push(rank);
            rank += c.len();
        }
        PermModuleSpec { group: Arc::clone(group), blocks, cosets, offsets, rank }
    }

    pub fn zero(group: &Arc<PermGroup>) -> PermModuleSpec {
        PermModuleSpec::new(group, vec![])
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn blocks(&self) -> &[Subgroup] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn cosets(&self, b: usize) -> &CosetTable {
        &self.cosets[b]
    }

    pub fn offset(&self, b: usize) -> usize {
        self.offsets[b]
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Block and coset index of a basis vector.
    pub fn locate(&self, k: usize) -> (usize, usize) {
        let b = self.offsets.iter().rposition(|&o| o <= k).expect("index in range");
        (b, k - self.offsets[b])
    }

    /// Permutation matrix of the element `g`.
    pub fn action_matrix(&self, g: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rank, self.rank);
        for (b, table) in self.cosets.iter().enumerate() {
            let off = self.offsets[b];
            for (i, image) in table.action(&self.group, g).into_iter().enumerate() {
                m[(off + image, off + i)] = BigInt::one();
            }
        }
        m
    }

    pub fn as_gmodule(&self) -> GModule {
        let gens = (0..self.group.generators().len())
            .map(|k| self.action_matrix(self.group.generator_index(k)))
            .collect();
        GModule::new(Arc::clone(&self.group), vec![BigInt::zero(); self.rank], gens)
            .expect("permutation modules are G-modules")
    }

    pub fn abgroup(&self) -> FgAbGroup {
        FgAbGroup::free(self.rank)
    }
}

/// A G-map between permutation modules in the double-coset basis.
///
/// `coeffs[s][t][c]` is the coefficient of the `c`-th double coset of
/// `H_s \ G / J_t`, where `H_s` is a source block and `J_t` a target block:
/// the image of the coset `1·H_s` has coefficient `coeffs[s][t][c]` on every
/// coset `aJ_t` inside that double coset.
#[derive(Clone)]
pub struct HeckeSum {
    source: PermModuleSpec,
    target: PermModuleSpec,
    coeffs: Vec<Vec<Vec<BigInt>>>,
    decomps: Vec<Vec<DoubleCosetDecomp>>,
}

impl fmt::Debug for HeckeSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("HeckeSum")
            .field("source", &self.source)
            .field("target", &self.target)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl PartialEq for HeckeSum {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.coeffs == other.coeffs
    }
}

impl HeckeSum {
    pub fn new(
        source: PermModuleSpec,
        target: PermModuleSpec,
        coeffs: Vec<Vec<Vec<BigInt>>>,
    ) -> Result<HeckeSum, GModuleError> {
        let decomps = decompositions(&source, &target);
        let shape_ok = coeffs.len() == source.num_blocks()
            && coeffs
                .iter()
                .zip(&decomps)
                .all(|(row, ds)| row.len() == ds.len() && row.iter().zip(ds).all(|(c, d)| c.len() == d.len()));
        if !shape_ok {
            return Err(GModuleError::DimensionMismatch("Hecke coefficient table shape".into()));
        }
        Ok(HeckeSum { source, target, coeffs, decomps })
    }

    pub fn zero(source: PermModuleSpec, target: PermModuleSpec) -> HeckeSum {
        let decomps = decompositions(&source, &target);
        let coeffs = decomps
            .iter()
            .map(|ds| ds.iter().map(|d| vec![BigInt::zero(); d.len()]).collect())
            .collect();
        HeckeSum { source, target, coeffs, decomps }
    }

    /// `k` times the identity on `p`.
    pub fn scalar(p: &PermModuleSpec, k: BigInt) -> HeckeSum {
        let mut h = HeckeSum::zero(p.clone(), p.clone());
        for b in 0..p.num_blocks() {
            let c = h.decomps[b][b].coset_of[PermGroup::IDENTITY];
            h.coeffs[b][b][c] = k.clone();
        }
        h
    }

    pub fn source(&self) -> &PermModuleSpec {
        &self.source
    }

    pub fn target(&self) -> &PermModuleSpec {
        &self.target
    }

    pub fn coeffs(&self) -> &[Vec<Vec<BigInt>>] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Vec<Vec<BigInt>>] {
        &mut self.coeffs
    }

    pub fn decomposition(&self, s: usize, t: usize) -> &DoubleCosetDecomp {
        &self.decomps[s][t]
    }

    /// Number of free coefficients.
    pub fn basis_len(&self) -> usize {
        self.coeffs.iter().flatten().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().flatten().all(Zero::is_zero)
    }

    /// Expansion on the coset bases.
    pub fn to_matrix(&self) -> IntMatrix {
        let g = &self.source.group;
        let mut m = IntMatrix::zeros(self.target.rank, self.source.rank);
        for s in 0..self.source.num_blocks() {
            let src = &self.source.cosets[s];
            for t in 0..self.target.num_blocks() {
                let tgt = &self.target.cosets[t];
                let d = &self.decomps[s][t];
                for (ai, &a) in src.reps.iter().enumerate() {
                    let a_inv = g.inv(a);
                    for (xi, &x) in tgt.reps.iter().enumerate() {
                        let c = d.coset_of[g.mul(a_inv, x)];
                        m[(self.target.offsets[t] + xi, self.source.offsets[s] + ai)] = self.coeffs[s][t][c].clone();
                    }
                }
            }
        }
        m
    }

    pub fn to_hom(&self) -> AbHom {
        AbHom::new(self.source.abgroup(), self.target.abgroup(), self.to_matrix())
    }

    /// Reads a G-equivariant matrix off in the double-coset basis.
    pub fn from_matrix(source: &PermModuleSpec, target: &PermModuleSpec, f: &IntMatrix) -> Result<HeckeSum, GModuleError> {
        if f.rows() != target.rank || f.cols() != source.rank {
            return Err(GModuleError::DimensionMismatch("matrix does not fit the permutation modules".into()));
        }
        let g = &source.group;
        for k in 0..g.generators().len() {
            let gi = g.generator_index(k);
            if target.action_matrix(gi).mul(f) != f.mul(&source.action_matrix(gi)) {
                return Err(GModuleError::NotEquivariant { generator: k });
            }
        }
        let mut h = HeckeSum::zero(source.clone(), target.clone());
        for s in 0..source.num_blocks() {
            let col = source.offsets[s];
            for t in 0..target.num_blocks() {
                let d = &h.decomps[s][t];
                let vals: Vec<BigInt> = d
                    .reps
                    .iter()
                    .map(|&r| f[(target.offsets[t] + target.cosets[t].coset_of[r], col)].clone())
                    .collect();
                h.coeffs[s][t] = vals;
            }
        }
        Ok(h)
    }

    /// The transposed map, with `HgJ` sent to `Jg⁻¹H`.
    pub fn dualize(&self) -> HeckeSum {
        let g = &self.source.group;
        let mut out = HeckeSum::zero(self.target.clone(), self.source.clone());
        for s in 0..self.source.num_blocks() {
            for t in 0..self.target.num_blocks() {
                let d = &self.decomps[s][t];
                let dual = &out.decomps[t][s];
                for (c, &r) in d.reps.iter().enumerate() {
                    let c2 = dual.coset_of[g.inv(r)];
                    out.coeffs[t][s][c2] = self.coeffs[s][t][c].clone();
                }
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &HeckeSum) -> HeckeSum {
        assert!(first.target == self.source, "composition of incompatible Hecke sums");
        let m = self.to_matrix().mul(&first.to_matrix());
        HeckeSum::from_matrix(&first.source, &self.target, &m).expect("composites of G-maps are G-maps")
    }

    pub fn add(&self, other: &HeckeSum) -> HeckeSum {
        assert!(self.source == other.source && self.target == other.target);
        let mut out = self.clone();
        for (a, b) in out.coeffs.iter_mut().flatten().flatten().zip(other.coeffs.iter().flatten().flatten()) {
            *a += b;
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> HeckeSum {
        let mut out = self.clone();
        for a in out.coeffs.iter_mut().flatten().flatten() {
            *a *= k;
        }
        out
    }

    /// The operator `⊕_s V^{H_s} -> ⊕_t V^{J_t}` written on ambient
    /// coordinates `⊕_s V -> ⊕_t V`. Only meaningful on invariant inputs.
    pub fn operator_matrix(&self, v: &GModule) -> IntMatrix {
        let n = v.rank();
        let g = &self.source.group;
        let mut m = IntMatrix::zeros(n * self.target.num_blocks(), n * self.source.num_blocks());
        for s in 0..self.source.num_blocks() {
            for t in 0..self.target.num_blocks() {
                let d = &self.decomps[s][t];
                let mut block = IntMatrix::zeros(n, n);
                for (c, reps) in d.left_reps.iter().enumerate() {
                    let k = &self.coeffs[s][t][c];
                    if k.is_zero() {
                        continue;
                    }
                    let mut sum = IntMatrix::zeros(n, n);
                    for &gi in reps {
                        sum = sum.add(v.action(g.inv(gi)));
                    }
                    block = block.add(&sum.scale(k));
                }
                for i in 0..n {
                    for j in 0..n {
                        m[(t * n + i, s * n + j)] = block[(i, j)].clone();
                    }
                }
            }
        }
        let orders: Vec<BigInt> = (0..self.target.num_blocks()).flat_map(|_| v.orders().iter().cloned()).collect();
        reduce_mat(&orders, &mut m);
        m
    }
}

fn decompositions(source: &PermModuleSpec, target: &PermModuleSpec) -> Vec<Vec<DoubleCosetDecomp>> {
    source
        .blocks
        .iter()
        .map(|h| target.blocks.iter().map(|j| DoubleCosetDecomp::new(h, j)).collect())
        .collect()
}

/// `T_{HgJ}(x) = Σ g_i⁻¹ x` over `HgJ = ⊔ H g_i`, for `x` fixed by `H`.
pub fn hecke_apply(v: &GModule, h: &Subgroup, j: &Subgroup, g: usize, x: &[BigInt]) -> Result<Vec<BigInt>, GModuleError> {
    if !v.is_fixed_by(h, x) {
        return Err(GModuleError::NotInvariant);
    }
    let d = DoubleCosetDecomp::new(h, j);
    let c = d.coset_of[g];
    let group = v.group();
    let mut acc = vec![BigInt::zero(); v.rank()];
    for &gi in &d.left_reps[c] {
        for (a, y) in acc.iter_mut().zip(v.action(group.inv(gi)).mul_vec(x)) {
            *a += y;
        }
    }
    let out = v.reduce(&acc);
    debug_assert!(v.is_fixed_by(j, &out));
    Ok(out)
}
