//! Hermite and Smith normal forms over the integers.
//!
//! The column Hermite form used throughout the crate places pivots from the
//! bottom row upward: column 0 carries the pivot in the lowest row that the
//! lattice reaches, every column is zero below its pivot, pivots are positive,
//! and the entries of earlier columns in a pivot row are reduced into
//! `[0, pivot)`. Two matrices span the same lattice iff their forms agree.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Result of column reduction `H = A * V` with `V` unimodular.
#[derive(Clone, Debug)]
pub struct ColumnEchelon {
    /// Reduced matrix; columns `0..rank` are a lattice basis, the rest are zero.
    pub h: IntMatrix,
    /// Unimodular column transform (only when requested).
    pub v: Option<IntMatrix>,
    /// Pivot row of each basis column, strictly decreasing.
    pub pivot_rows: Vec<usize>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivot_rows.len()
    }

    pub fn basis(&self) -> IntMatrix {
        self.h.submatrix(0..self.h.rows(), 0..self.rank())
    }

    /// Columns of `V` that `A` sends to zero: a basis of the integer kernel.
    pub fn kernel_basis(&self) -> IntMatrix {
        let v = self.v.as_ref().expect("kernel requires the transform");
        v.submatrix(0..v.rows(), self.rank()..v.cols())
    }

    /// Finds integral `z` with `H z = b`, indexed like the columns of `H`.
    fn solve_reduced(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut r = b.to_vec();
        let mut z = vec![BigInt::zero(); self.h.cols()];
        let mut upper = self.h.rows();
        for (j, &p) in self.pivot_rows.iter().enumerate() {
            if r[p + 1..upper].iter().any(|x| !x.is_zero()) {
                return None;
            }
            let pivot = &self.h[(p, j)];
            let (q, rem) = r[p].div_rem(pivot);
            if !rem.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for i in 0..=p {
                    let d = &self.h[(i, j)] * &q;
                    r[i] -= d;
                }
            }
            z[j] = q;
            upper = p + 1;
        }
        if r[..upper].iter().any(|x| !x.is_zero()) {
            return None;
        }
        Some(z)
    }

    /// Solves `A x = b` over the integers.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        let z = self.solve_reduced(b)?;
        let v = self.v.as_ref().expect("solve requires the transform");
        Some(v.mul_vec(&z))
    }

    /// Canonical representative of `b` modulo the column lattice.
    pub fn reduce(&self, b: &[BigInt]) -> Vec<BigInt> {
        let mut r = b.to_vec();
        for (j, &p) in self.pivot_rows.iter().enumerate() {
            let q = r[p].div_floor(&self.h[(p, j)]);
            if !q.is_zero() {
                for i in 0..=p {
                    let d = &self.h[(i, j)] * &q;
                    r[i] -= d;
                }
            }
        }
        r
    }
}

fn min_abs_nonzero_col(h: &IntMatrix, row: usize, from: usize) -> Option<usize> {
    let mut best: Option<(usize, BigInt)> = None;
    for j in from..h.cols() {
        let x = &h[(row, j)];
        if x.is_zero() {
            continue;
        }
        let a = x.abs();
        if best.as_ref().map_or(true, |(_, b)| a < *b) {
            best = Some((j, a));
        }
    }
    best.map(|(j, _)| j)
}

/// Column reduction to Hermite form, optionally tracking the transform.
pub fn column_echelon(a: &IntMatrix, track: bool) -> ColumnEchelon {
    let mut h = a.clone();
    let mut v = track.then(|| IntMatrix::identity(a.cols()));
    let mut pivot_rows = Vec::new();
    let mut next = 0;
    for row in (0..h.rows()).rev() {
        if next == h.cols() {
            break;
        }
        loop {
            let Some(j) = min_abs_nonzero_col(&h, row, next) else { break };
            h.swap_cols(next, j);
            if let Some(v) = v.as_mut() {
                v.swap_cols(next, j);
            }
            let mut done = true;
            for k in next + 1..h.cols() {
                if h[(row, k)].is_zero() {
                    continue;
                }
                let q = -h[(row, k)].div_floor(&h[(row, next)]);
                h.add_col_multiple(k, next, &q);
                if let Some(v) = v.as_mut() {
                    v.add_col_multiple(k, next, &q);
                }
                if !h[(row, k)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if next >= h.cols() || h[(row, next)].is_zero() {
            continue;
        }
        if h[(row, next)].is_negative() {
            h.negate_col(next);
            if let Some(v) = v.as_mut() {
                v.negate_col(next);
            }
        }
        for k in 0..next {
            let q = -h[(row, k)].div_floor(&h[(row, next)]);
            if !q.is_zero() {
                h.add_col_multiple(k, next, &q);
                if let Some(v) = v.as_mut() {
                    v.add_col_multiple(k, next, &q);
                }
            }
        }
        pivot_rows.push(row);
        next += 1;
    }
    ColumnEchelon { h, v, pivot_rows }
}

/// Column Hermite normal form with zero columns dropped.
pub fn hnf_column(a: &IntMatrix) -> IntMatrix {
    column_echelon(a, false).basis()
}

pub fn rank(a: &IntMatrix) -> usize {
    column_echelon(a, false).rank()
}

/// Integer kernel of `A` as a Hermite basis (columns).
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let ech = column_echelon(a, true);
    hnf_column(&ech.kernel_basis())
}

/// Solves `A x = b` over the integers, if possible.
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    column_echelon(a, true).solve(b)
}

pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.rows() == b.rows() && hnf_column(a) == hnf_column(b)
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` in Smith form.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Snf {
    /// Diagonal entries (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct Transforms {
    u: Option<IntMatrix>,
    u_inv: Option<IntMatrix>,
    v: Option<IntMatrix>,
}

impl Transforms {
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        if let Some(u) = self.u.as_mut() {
            u.add_row_multiple(dst, src, k);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.add_col_multiple(src, dst, &-k);
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(a, b);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.swap_cols(a, b);
        }
    }

    fn negate_row(&mut self, a: usize) {
        if let Some(u) = self.u.as_mut() {
            u.negate_row(a);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.negate_col(a);
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        if let Some(v) = self.v.as_mut() {
            v.add_col_multiple(dst, src, k);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(a, b);
        }
    }
}

fn smith_in_place(d: &mut IntMatrix, tr: &mut Transforms) {
    let (r, c) = (d.rows(), d.cols());
    for t in 0..r.min(c) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize, BigInt)> = None;
            for i in t..r {
                for j in t..c {
                    let x = &d[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    let a = x.abs();
                    if best.as_ref().map_or(true, |(_, _, b)| a < *b) {
                        let is_one = a.is_one();
                        best = Some((i, j, a));
                        if is_one {
                            break;
                        }
                    }
                }
                if best.as_ref().map_or(false, |(_, _, b)| b.is_one()) {
                    break;
                }
            }
            let Some((pi, pj, _)) = best else { return };
            d.swap_rows(t, pi);
            tr.swap_rows(t, pi);
            d.swap_cols(t, pj);
            tr.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..r {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                tr.add_row(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..c {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                tr.add_col(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: fold an offending row into the pivot row
            let p = d[(t, t)].clone();
            let offending =
                (t + 1..r).find(|&i| (t + 1..c).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match offending {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    tr.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            tr.negate_row(t);
        }
    }
}

/// Smith normal form with both transforms (and the inverse of the left one).
pub fn snf(a: &IntMatrix) -> Snf {
    let mut d = a.clone();
    let mut tr = Transforms {
        u: Some(IntMatrix::identity(a.rows())),
        u_inv: Some(IntMatrix::identity(a.rows())),
        v: Some(IntMatrix::identity(a.cols())),
    };
    smith_in_place(&mut d, &mut tr);
    Snf {
        u: tr.u.unwrap(),
        u_inv: tr.u_inv.unwrap(),
        d,
        v: tr.v.unwrap(),
    }
}

/// Diagonal of the Smith form, without transforms.
pub fn smith_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    let mut d = a.clone();
    let mut tr = Transforms { u: None, u_inv: None, v: None };
    smith_in_place(&mut d, &mut tr);
    (0..d.rows().min(d.cols())).map(|i| d[(i, i)].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgroup::matrix::vec_from_i64;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn check_snf(a: &IntMatrix) -> Snf {
        let s = snf(a);
        assert_eq!(s.u.mul(a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows()));
        assert!(s.u.determinant().abs().is_one());
        assert!(s.v.determinant().abs().is_one());
        let diag = s.diagonal();
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                }
            }
        }
        for w in diag.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        s
    }

    #[test]
    fn snf_examples() {
        let s = check_snf(&IntMatrix::identity(2));
        assert_eq!(s.d, IntMatrix::identity(2));
        let s = check_snf(&m(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diagonal(), vec_from_i64(&[2, 4]));
        let s = check_snf(&IntMatrix::zeros(2, 3));
        assert!(s.d.is_zero());
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf_column(&m(&[vec![2], vec![0]])), m(&[vec![2], vec![0]]));
        let h = hnf_column(&m(&[vec![2, 0, 1], vec![0, 3, 1]]));
        assert_eq!(h.cols(), 2);
        assert!(h.determinant().abs().is_one());
        assert!(same_lattice(&h, &IntMatrix::identity(2)));
        let e = hnf_column(&IntMatrix::zeros(0, 0));
        assert!(e.is_empty());
    }

    #[test]
    fn kernel_of_congruence() {
        // a - b with a row of 3 for the modulus: kernel of [1 -1 3] projected
        let k = integer_kernel(&m(&[vec![1, -1]]));
        assert_eq!(k, m(&[vec![1], vec![1]]));
    }

    #[test]
    fn solve_and_reduce() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(solve_integer(&a, &vec_from_i64(&[4, 9])), Some(vec_from_i64(&[2, 3])));
        assert_eq!(solve_integer(&a, &vec_from_i64(&[3, 9])), None);
        let ech = column_echelon(&a, false);
        assert_eq!(ech.reduce(&vec_from_i64(&[5, -1])), vec_from_i64(&[1, 2]));
    }
}
