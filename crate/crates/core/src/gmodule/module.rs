use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::GModuleError;
use crate::abgroup::{AbHom, FgAbGroup, IntMatrix};
use crate::permgrp::{PermGroup, Subgroup};

/// A finitely generated abelian group `⊕ Z/d_i` (with `d_i = 0` meaning a
/// free coordinate) carrying a left action of a finite permutation group.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<PermGroup>,
    orders: Vec<BigInt>,
    gen_action: Vec<IntMatrix>,
    action: Vec<IntMatrix>,
    abgroup: FgAbGroup,
}

impl PartialEq for GModule {
    fn eq(&self, other: &Self) -> bool {
        *self.group == *other.group && self.orders == other.orders && self.gen_action == other.gen_action
    }
}

pub(crate) fn reduce_vec(orders: &[BigInt], v: &mut [BigInt]) {
    for (x, d) in v.iter_mut().zip(orders) {
        if !d.is_zero() {
            *x = x.mod_floor(d);
        }
    }
}

pub(crate) fn reduce_mat(orders: &[BigInt], m: &mut IntMatrix) {
    for i in 0..m.rows() {
        if orders[i].is_zero() {
            continue;
        }
        for j in 0..m.cols() {
            m[(i, j)] = m[(i, j)].mod_floor(&orders[i]);
        }
    }
}

impl GModule {
    /// Validates the generator matrices and extends them to every element.
    pub fn new(group: Arc<PermGroup>, orders: Vec<BigInt>, gen_action: Vec<IntMatrix>) -> Result<GModule, GModuleError> {
        let n = orders.len();
        if orders.iter().any(|d| d.is_negative() || d.is_one()) {
            return Err(GModuleError::BadOrders(orders));
        }
        if gen_action.len() != group.generators().len() {
            return Err(GModuleError::DimensionMismatch(format!(
                "{} action matrices for {} group generators",
                gen_action.len(),
                group.generators().len()
            )));
        }
        let mut reduced = Vec::with_capacity(gen_action.len());
        for (k, a) in gen_action.into_iter().enumerate() {
            if a.rows() != n || a.cols() != n {
                return Err(GModuleError::DimensionMismatch(format!(
                    "action matrix {k} is {}x{}, expected {n}x{n}",
                    a.rows(),
                    a.cols()
                )));
            }
            let mut a = a;
            reduce_mat(&orders, &mut a);
            for j in 0..n {
                for i in 0..n {
                    let v = &a[(i, j)] * &orders[j];
                    let killed = if orders[i].is_zero() { v.is_zero() } else { v.mod_floor(&orders[i]).is_zero() };
                    if !killed {
                        return Err(GModuleError::NotEndomorphism { generator: k });
                    }
                }
            }
            if !is_invertible(&orders, &a) {
                return Err(GModuleError::NonInvertibleAction { generator: k });
            }
            reduced.push(a);
        }
        let action = group
            .extend_hom(IntMatrix::identity(n), &reduced, |x, y| {
                let mut p = x.mul(y);
                reduce_mat(&orders, &mut p);
                p
            })
            .map_err(|(generator, element)| GModuleError::NotMultiplicative { generator, element })?;
        let abgroup = FgAbGroup::from_orders(&orders);
        Ok(GModule { group, orders, gen_action: reduced, action, abgroup })
    }

    /// `⊕ Z/d_i` with trivial action.
    pub fn trivial(group: Arc<PermGroup>, orders: Vec<BigInt>) -> Result<GModule, GModuleError> {
        let n = orders.len();
        let gens = vec![IntMatrix::identity(n); group.generators().len()];
        GModule::new(group, orders, gens)
    }

    pub fn zero(group: Arc<PermGroup>) -> GModule {
        GModule::trivial(group, vec![]).expect("zero module")
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn abgroup(&self) -> &FgAbGroup {
        &self.abgroup
    }

    pub fn gen_action(&self) -> &[IntMatrix] {
        &self.gen_action
    }

    /// Action matrix of the element with index `g`.
    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn is_finite(&self) -> bool {
        self.orders.iter().all(|d| !d.is_zero())
    }

    /// Least common multiple of the coordinate orders; `None` for modules
    /// with a free part.
    pub fn exponent(&self) -> Option<BigInt> {
        if !self.is_finite() {
            return None;
        }
        Some(self.orders.iter().fold(BigInt::one(), |acc, d| acc.lcm(d)))
    }

    pub fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut v = v.to_vec();
        reduce_vec(&self.orders, &mut v);
        v
    }

    pub fn act(&self, g: usize, x: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&self.action[g].mul_vec(x))
    }

    pub fn eq_elements(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        self.reduce(x) == self.reduce(y)
    }

    pub fn is_fixed_by(&self, h: &Subgroup, x: &[BigInt]) -> bool {
        let x = self.reduce(x);
        h.generator_indices().into_iter().all(|g| self.act(g, &x) == x)
    }

    /// The fixed subgroup `V^H` and its inclusion into `V`.
    pub fn invariants(&self, h: &Subgroup) -> (FgAbGroup, AbHom) {
        let n = self.rank();
        let gens = h.generator_indices();
        let mut stacked = IntMatrix::zeros(0, n);
        let mut target_orders = Vec::new();
        for &g in &gens {
            stacked = stacked.vstack(&self.action[g].sub(&IntMatrix::identity(n)));
            target_orders.extend(self.orders.iter().cloned());
        }
        let f = AbHom::new(self.abgroup.clone(), FgAbGroup::from_orders(&target_orders), stacked);
        f.kernel()
    }

    /// Matrix of `Σ_{g∈H} g` on the ambient coordinates.
    pub fn norm_matrix(&self, h: &Subgroup) -> IntMatrix {
        let mut acc = IntMatrix::zeros(self.rank(), self.rank());
        for &g in h.elements() {
            acc = acc.add(&self.action[g]);
        }
        reduce_mat(&self.orders, &mut acc);
        acc
    }

    /// Every element of a finite module.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for d in &self.orders {
            let mut next = Vec::new();
            for base in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let mut v = base.clone();
                    v.push(k.clone());
                    next.push(v);
                    k += 1;
                }
            }
            out = next;
        }
        Some(out)
    }

    /// Restriction of the action to a subgroup, as a module over a new
    /// permutation group generated by the subgroup's generators.
    pub fn restrict(&self, h: &Subgroup) -> Result<GModule, GModuleError> {
        let sub = PermGroup::enumerated(self.group.degree(), h.generators().to_vec())?;
        let mats = h.generator_indices().iter().map(|&g| self.action[g].clone()).collect();
        GModule::new(sub, self.orders.clone(), mats)
    }
}

/// Unimodularity on free modules, invertibility mod `m` on uniform finite
/// ones; mixed presentations are left to the multiplicativity check.
fn is_invertible(orders: &[BigInt], a: &IntMatrix) -> bool {
    if orders.is_empty() {
        return true;
    }
    let det = a.determinant();
    if orders.iter().all(Zero::is_zero) {
        return det.abs().is_one();
    }
    if orders.iter().all(|d| d == &orders[0]) {
        return det.gcd(&orders[0]).is_one();
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::vec_from_i64;

    #[test]
    fn regular_invariants() {
        let g = PermGroup::cyclic(2);
        let swap = IntMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let v = GModule::new(g.clone(), vec_from_i64(&[0, 0]), vec![swap]).unwrap();
        let (sub, incl) = v.invariants(&Subgroup::whole(&g));
        assert_eq!(sub.ngens(), 1);
        assert_eq!(incl.matrix.col(0), vec_from_i64(&[1, 1]));
        let (all, _) = v.invariants(&Subgroup::trivial(&g));
        assert_eq!(all.structure().free_rank, 2);
    }

    #[test]
    fn coprime_free_action_has_no_invariants() {
        let g = PermGroup::cyclic(2);
        let v = GModule::new(g.clone(), vec_from_i64(&[3]), vec![IntMatrix::from_rows(&[vec![2]])]).unwrap();
        let (sub, _) = v.invariants(&Subgroup::whole(&g));
        assert_eq!(sub.order(), Some(BigInt::one()));
    }

    #[test]
    fn rejects_bad_actions() {
        let g = PermGroup::cyclic(2);
        let singular = GModule::new(g.clone(), vec_from_i64(&[0]), vec![IntMatrix::from_rows(&[vec![2]])]);
        assert!(matches!(singular, Err(GModuleError::NonInvertibleAction { .. })));
        let c3 = PermGroup::cyclic(3);
        let wrong = GModule::new(c3, vec_from_i64(&[0]), vec![IntMatrix::from_rows(&[vec![-1]])]);
        assert!(matches!(wrong, Err(GModuleError::NotMultiplicative { .. })));
        let bad = GModule::new(g, vec_from_i64(&[2, 0]), vec![IntMatrix::from_rows(&[vec![1, 0], vec![1, 1]])]);
        assert!(matches!(bad, Err(GModuleError::NotEndomorphism { .. })));
    }
}
