use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::{is_zero_vec, IntMatrix};
use super::normal_form::{column_echelon, hnf_column, snf, solve_integer};

/// A finitely generated abelian group `Z^ngens / (column span of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbGroup {
    ngens: usize,
    relations: IntMatrix,
}

impl FgAbGroup {
    pub fn new(ngens: usize, relations: IntMatrix) -> Self {
        assert_eq!(relations.rows(), ngens, "relations need one row per generator");
        FgAbGroup { ngens, relations }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup::new(rank, IntMatrix::zeros(rank, 0))
    }

    /// Direct sum of cyclic groups; an order of zero gives a copy of `Z`.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let cols: Vec<Vec<BigInt>> = orders
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| {
                let mut c = vec![BigInt::zero(); orders.len()];
                c[i] = d.clone();
                c
            })
            .collect();
        FgAbGroup::new(orders.len(), IntMatrix::from_cols(orders.len(), &cols))
    }

    pub fn ngens(&self) -> usize {
        self.ngens
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn direct_sum(parts: &[FgAbGroup]) -> Self {
        let n = parts.iter().map(|p| p.ngens).sum();
        let rel = IntMatrix::block_diag(&parts.iter().map(|p| p.relations.clone()).collect::<Vec<_>>());
        FgAbGroup::new(n, rel)
    }

    /// Is `x` the zero element?
    pub fn is_zero(&self, x: &[BigInt]) -> bool {
        assert_eq!(x.len(), self.ngens);
        is_zero_vec(x) || solve_integer(&self.relations, x).is_some()
    }

    pub fn eq_elements(&self, x: &[BigInt], y: &[BigInt]) -> bool {
        let d: Vec<BigInt> = x.iter().zip(y).map(|(a, b)| a - b).collect();
        self.is_zero(&d)
    }

    /// Canonical representative of the class of `x`.
    pub fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        column_echelon(&self.relations, false).reduce(x)
    }

    /// Invariant-factor decomposition with explicit generators.
    pub fn decompose(&self) -> Decomposition {
        let s = snf(&self.relations);
        let diag = s.diagonal();
        let mut factors = Vec::new();
        let mut gens = Vec::new();
        let mut coord_rows = Vec::new();
        for i in 0..self.ngens {
            let d = diag.get(i).cloned().unwrap_or_default();
            if d.is_one() {
                continue;
            }
            factors.push(d);
            gens.push(self.reduce(&s.u_inv.col(i)));
            coord_rows.push(s.u.row(i).to_vec());
        }
        let coords = IntMatrix::from_rows(&coord_rows);
        let coords = if coord_rows.is_empty() { IntMatrix::zeros(0, self.ngens) } else { coords };
        Decomposition { factors, gens, coords }
    }

    pub fn structure(&self) -> GroupStructure {
        let factors = self.decompose().factors;
        let free_rank = factors.iter().filter(|d| d.is_zero()).count();
        let torsion = factors.into_iter().filter(|d| !d.is_zero()).collect();
        GroupStructure { torsion, free_rank }
    }

    pub fn order(&self) -> Option<BigInt> {
        self.structure().order()
    }

    /// Exponent of the group; `None` if it is infinite.
    pub fn exponent(&self) -> Option<BigInt> {
        let s = self.structure();
        if s.free_rank > 0 {
            return None;
        }
        Some(s.torsion.last().cloned().unwrap_or_else(BigInt::one))
    }

    /// Order of the element `x`, or `None` if it has infinite order.
    pub fn element_order(&self, x: &[BigInt]) -> Option<BigInt> {
        let dec = self.decompose();
        let c = dec.coords.mul_vec(x);
        let mut ord = BigInt::one();
        for (ci, d) in c.iter().zip(&dec.factors) {
            if d.is_zero() {
                if !ci.is_zero() {
                    return None;
                }
                continue;
            }
            let r = ci.mod_floor(d);
            if !r.is_zero() {
                ord = ord.lcm(&(d / d.gcd(&r)));
            }
        }
        Some(ord)
    }

    /// All elements of a finite group, as canonical representatives.
    pub fn elements(&self) -> Option<Vec<Vec<BigInt>>> {
        let dec = self.decompose();
        if dec.factors.iter().any(Zero::is_zero) {
            return None;
        }
        let mut out = vec![vec![BigInt::zero(); self.ngens]];
        for (g, d) in dec.gens.iter().zip(&dec.factors) {
            let mut next = Vec::new();
            for base in &out {
                let mut k = BigInt::zero();
                while &k < d {
                    let v: Vec<BigInt> = base.iter().zip(g).map(|(b, gi)| b + gi * &k).collect();
                    next.push(self.reduce(&v));
                    k += 1;
                }
            }
            out = next;
        }
        Some(out)
    }
}

/// Invariant factors `d_1 | d_2 | ... ` (factors of 1 dropped, `0` = free).
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub factors: Vec<BigInt>,
    /// Generator of each factor, in the original coordinates.
    pub gens: Vec<Vec<BigInt>>,
    /// Rows map original coordinates to factor coordinates.
    pub coords: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStructure {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl GroupStructure {
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

/// A finite abelian group in invariant-factor form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinAbGroup {
    #[serde(with = "crate::format::bigint_vec")]
    invariant_factors: Vec<BigInt>,
}

impl FinAbGroup {
    /// Normalizes any list of cyclic orders (each positive) into a divisibility chain.
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        assert!(orders.iter().all(|d| d.is_positive()), "cyclic orders must be positive");
        let g = FgAbGroup::from_orders(orders);
        FinAbGroup { invariant_factors: g.structure().torsion }
    }

    pub fn trivial() -> Self {
        FinAbGroup { invariant_factors: Vec::new() }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors.iter().product()
    }

    pub fn exponent(&self) -> BigInt {
        self.invariant_factors.last().cloned().unwrap_or_else(BigInt::one)
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn as_fg(&self) -> FgAbGroup {
        FgAbGroup::from_orders(&self.invariant_factors)
    }
}

impl TryFrom<&FgAbGroup> for FinAbGroup {
    type Error = GroupStructure;

    fn try_from(g: &FgAbGroup) -> Result<Self, GroupStructure> {
        let s = g.structure();
        if s.free_rank > 0 {
            return Err(s);
        }
        Ok(FinAbGroup { invariant_factors: s.torsion })
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_factors(f, &self.invariant_factors, 0)
    }
}

impl fmt::Display for GroupStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_factors(f, &self.torsion, self.free_rank)
    }
}

fn write_factors(f: &mut fmt::Formatter<'_>, torsion: &[BigInt], free_rank: usize) -> fmt::Result {
    if torsion.is_empty() && free_rank == 0 {
        return write!(f, "0");
    }
    let mut parts = Vec::new();
    let mut i = 0;
    while i < torsion.len() {
        let mut j = i;
        while j < torsion.len() && torsion[j] == torsion[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(format!("Z/{}", torsion[i]));
        } else {
            parts.push(format!("(Z/{})^{}", torsion[i], j - i));
        }
        i = j;
    }
    match free_rank {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    write!(f, "{}", parts.join(" x "))
}

/// Homomorphism between presented groups; `matrix` columns are the images of
/// the domain generators in codomain coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbHom {
    pub domain: FgAbGroup,
    pub codomain: FgAbGroup,
    pub matrix: IntMatrix,
}

impl AbHom {
    pub fn new(domain: FgAbGroup, codomain: FgAbGroup, matrix: IntMatrix) -> Self {
        assert_eq!(matrix.rows(), codomain.ngens(), "hom matrix height");
        assert_eq!(matrix.cols(), domain.ngens(), "hom matrix width");
        AbHom { domain, codomain, matrix }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        AbHom::new(g.clone(), g.clone(), IntMatrix::identity(g.ngens()))
    }

    /// Domain relations land in the codomain relation lattice.
    pub fn is_well_defined(&self) -> bool {
        let image = self.matrix.mul(self.domain.relations());
        (0..image.cols()).all(|j| self.codomain.is_zero(&image.col(j)))
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.mul_vec(x)
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &AbHom) -> AbHom {
        AbHom::new(first.domain.clone(), self.codomain.clone(), self.matrix.mul(&first.matrix))
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.codomain.is_zero(&self.matrix.col(j)))
    }

    /// Kernel as a presented subgroup together with its inclusion.
    pub fn kernel(&self) -> (FgAbGroup, AbHom) {
        let na = self.domain.ngens();
        let stacked = self.matrix.hstack(self.codomain.relations());
        let ech = column_echelon(&stacked, true);
        let null = ech.kernel_basis();
        let projected = null.submatrix(0..na, 0..null.cols());
        let basis = hnf_column(&projected.hstack(self.domain.relations()));
        let basis_ech = column_echelon(&basis, true);
        let rel_cols: Vec<Vec<BigInt>> = (0..self.domain.relations().cols())
            .map(|j| {
                basis_ech
                    .solve(&self.domain.relations().col(j))
                    .expect("domain relations lie in the kernel")
            })
            .collect();
        let sub = FgAbGroup::new(basis.cols(), IntMatrix::from_cols(basis.cols(), &rel_cols));
        let incl = AbHom::new(sub.clone(), self.domain.clone(), basis);
        (sub, incl)
    }

    /// Cokernel presentation and the projection onto it.
    pub fn image_quotient(&self) -> (FgAbGroup, AbHom) {
        let rel = self.codomain.relations().hstack(&self.matrix);
        let coker = FgAbGroup::new(self.codomain.ngens(), rel);
        let proj = AbHom::new(self.codomain.clone(), coker.clone(), IntMatrix::identity(self.codomain.ngens()));
        (coker, proj)
    }

    /// Some `x` with `f(x) = y` in the codomain, if one exists.
    pub fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let stacked = self.matrix.hstack(self.codomain.relations());
        let sol = solve_integer(&stacked, y)?;
        Some(sol[..self.domain.ngens()].to_vec())
    }

    pub fn is_surjective(&self) -> bool {
        let (coker, _) = self.image_quotient();
        coker.structure() == GroupStructure { torsion: vec![], free_rank: 0 }
    }

    pub fn is_injective(&self) -> bool {
        let (k, _) = self.kernel();
        k.structure() == GroupStructure { torsion: vec![], free_rank: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::matrix::vec_from_i64;

    fn big(v: &[i64]) -> Vec<BigInt> {
        vec_from_i64(v)
    }

    #[test]
    fn kernel_examples() {
        let z = FgAbGroup::free(1);
        let times2 = AbHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]]));
        let (k, _) = times2.kernel();
        assert_eq!(k.ngens(), 0);

        let z3 = FgAbGroup::from_orders(&big(&[3]));
        let s = AbHom::new(FgAbGroup::free(2), z3, IntMatrix::from_rows(&[vec![1, -1]]));
        let (k, incl) = s.kernel();
        assert_eq!(k.ngens(), 2);
        assert_eq!(incl.matrix, IntMatrix::from_rows(&[vec![1, 3], vec![1, 0]]));
        assert!(s.compose(&incl).is_zero());

        let zero = AbHom::new(z.clone(), z.clone(), IntMatrix::zeros(1, 1));
        let (k, incl) = zero.kernel();
        assert_eq!(k.ngens(), 1);
        assert_eq!(incl.matrix, IntMatrix::identity(1));
    }

    #[test]
    fn quotient_examples() {
        let z = FgAbGroup::free(1);
        let times2 = AbHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]]));
        let (q, proj) = times2.image_quotient();
        assert_eq!(q.structure().torsion, big(&[2]));
        assert!(proj.compose(&times2).is_zero());

        let incl = AbHom::new(
            FgAbGroup::free(2),
            FgAbGroup::free(2),
            IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]),
        );
        let (q, _) = incl.image_quotient();
        let fin = FinAbGroup::try_from(&q).unwrap();
        assert_eq!(fin.invariant_factors(), big(&[6]).as_slice());

        let (q, _) = AbHom::identity(&FgAbGroup::free(3)).image_quotient();
        assert_eq!(q.order(), Some(BigInt::one()));
    }

    #[test]
    fn solve_examples() {
        let z = FgAbGroup::free(1);
        let times2 = AbHom::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![2]]));
        assert_eq!(times2.solve(&big(&[4])), Some(big(&[2])));
        assert_eq!(times2.solve(&big(&[3])), None);

        let f = AbHom::new(
            FgAbGroup::free(2),
            FgAbGroup::from_orders(&big(&[6])),
            IntMatrix::from_rows(&[vec![1, 2]]),
        );
        let x = f.solve(&big(&[5])).unwrap();
        assert!(f.codomain.eq_elements(&f.apply(&x), &big(&[5])));
    }

    #[test]
    fn display_structure() {
        let g = FinAbGroup::from_cyclic_orders(&big(&[2, 2]));
        assert_eq!(g.to_string(), "(Z/2)^2");
        let g = FinAbGroup::from_cyclic_orders(&big(&[2, 3]));
        assert_eq!(g.to_string(), "Z/6");
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn element_orders_and_listing() {
        let g = FgAbGroup::from_orders(&big(&[2, 4]));
        assert_eq!(g.element_order(&big(&[1, 1])), Some(BigInt::from(4)));
        assert_eq!(g.element_order(&big(&[1, 2])), Some(BigInt::from(2)));
        assert_eq!(g.elements().unwrap().len(), 8);
        assert_eq!(FgAbGroup::free(1).elements(), None);
    }
}
