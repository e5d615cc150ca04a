//! Dense square matrices over exact integers and over rational intervals.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_traits::{One, Signed, Zero};

use crate::numeric::{BigInt, RationalInterval};

/// Square matrix of big integers stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        IntMatrix { n, data }
    }

    /// Panics unless `rows` is square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self::from_fn(n, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// `P M P^t` where row `i` of the result is row `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        Self::from_fn(self.n, |i, j| self[(perm[i], perm[j])].clone())
    }

    /// Square submatrix on the given row and column indices.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len());
        Self::from_fn(rows.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    pub fn max_abs(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.n + j]
    }
}

/// Runs fraction-free elimination, returning `(rank, determinant)`.
///
/// Each step pivots on the nonzero entry of smallest absolute value in the
/// remaining submatrix. Every division in the Bareiss update is exact.
fn bareiss(m: &IntMatrix) -> (usize, BigInt) {
    let n = m.n;
    let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut prev = BigInt::one();
    let mut negate = false;
    let mut rank = 0;
    for k in 0..n {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(k) {
            for (j, x) in row.iter().enumerate().skip(k) {
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else {
            return (rank, BigInt::zero());
        };
        rank += 1;
        if pi != k {
            a.swap(pi, k);
            negate = !negate;
        }
        if pj != k {
            for row in a.iter_mut() {
                row.swap(pj, k);
            }
            negate = !negate;
        }
        let (head, tail) = a.split_at_mut(k + 1);
        let pivot_row = &head[k];
        for row in tail.iter_mut() {
            for j in k + 1..n {
                let v = &pivot_row[k] * &row[j] - &row[k] * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = if negate { -prev } else { prev };
    (rank, det)
}

/// Exact determinant by fraction-free elimination.
pub fn exact_determinant(m: &IntMatrix) -> BigInt {
    if m.n == 0 {
        return BigInt::one();
    }
    bareiss(m).1
}

pub fn exact_rank(m: &IntMatrix) -> usize {
    bareiss(m).0
}

/// Coefficients `[c_0, ..., c_n]` of `det(x I - M) = sum_r c_r x^(n-r)`,
/// computed without division (Berkowitz).
pub fn characteristic_polynomial(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.n;
    // Start with the 1x1 leading block and grow; `poly` holds the
    // coefficients of the characteristic polynomial of the leading r x r block.
    let mut poly = vec![BigInt::one()];
    for r in 0..n {
        // Leading block A_r (r x r), column R = m[0..r][r], row S = m[r][0..r], a = m[r][r].
        // Toeplitz column: [1, -a, -S R, -S A R, ..., -S A^{r-1} R].
        let mut col = Vec::with_capacity(r + 2);
        col.push(BigInt::one());
        col.push(-m[(r, r)].clone());
        let mut v: Vec<BigInt> = (0..r).map(|i| m[(i, r)].clone()).collect();
        for _ in 0..r {
            let s: BigInt = (0..r).map(|j| &m[(r, j)] * &v[j]).sum();
            col.push(-s);
            v = (0..r)
                .map(|i| (0..r).map(|j| &m[(i, j)] * &v[j]).sum())
                .collect();
        }
        // Multiply the (r+2) x (r+1) lower-triangular Toeplitz matrix by poly.
        let mut next = vec![BigInt::zero(); r + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in poly.iter().enumerate().take(i + 1) {
                *slot += &col[i - j] * pj;
            }
        }
        poly = next;
    }
    poly
}

/// Square matrix of rational intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalMatrix {
    n: usize,
    data: Vec<RationalInterval>,
}

impl IntervalMatrix {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> RationalInterval) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        IntervalMatrix { n, data }
    }

    pub fn from_int(m: &IntMatrix) -> Self {
        Self::from_fn(m.n, |i, j| RationalInterval::from_bigint(&m[(i, j)]))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut acc = RationalInterval::zero();
            for l in 0..n {
                acc = acc + &self[(i, l)] * &rhs[(l, j)];
            }
            acc
        })
    }

    pub fn contains_identity(&self) -> bool {
        let one = crate::numeric::int(1);
        let zero = crate::numeric::int(0);
        (0..self.n).all(|i| {
            (0..self.n).all(|j| self[(i, j)].contains(if i == j { &one } else { &zero }))
        })
    }

    /// Enclosure of the determinant by Laplace expansion along rows,
    /// memoised on the set of used columns and skipping exact zeros.
    /// Cost grows with the number of reachable column subsets, so it is
    /// intended for small or block-structured matrices.
    pub fn determinant(&self) -> RationalInterval {
        let n = self.n;
        assert!(n <= 64, "interval determinant limited to 64 columns");
        let mut memo: BTreeMap<(usize, u64), RationalInterval> = BTreeMap::new();
        self.det_from(0, 0, &mut memo)
    }

    fn det_from(
        &self,
        row: usize,
        used: u64,
        memo: &mut BTreeMap<(usize, u64), RationalInterval>,
    ) -> RationalInterval {
        if row == self.n {
            return RationalInterval::one();
        }
        if let Some(v) = memo.get(&(row, used)) {
            return v.clone();
        }
        let mut acc = RationalInterval::zero();
        // Sign of the term is (-1)^(number of used columns to the right of col).
        for col in 0..self.n {
            if used & (1 << col) != 0 {
                continue;
            }
            let entry = &self[(row, col)];
            if entry.is_point() && entry.lo().is_zero() {
                continue;
            }
            let sub = self.det_from(row + 1, used | (1 << col), memo);
            let term = entry * &sub;
            let inversions = (used >> col).count_ones();
            acc = if inversions.is_multiple_of(2) { acc + term } else { acc - term };
        }
        memo.insert((row, used), acc.clone());
        acc
    }
}

impl Index<(usize, usize)> for IntervalMatrix {
    type Output = RationalInterval;
    fn index(&self, (i, j): (usize, usize)) -> &RationalInterval {
        &self.data[i * self.n + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_determinant() {
        for n in [1, 4, 12] {
            assert_eq!(exact_determinant(&IntMatrix::identity(n)), BigInt::one());
        }
    }

    #[test]
    fn small_determinants() {
        let m = IntMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(exact_determinant(&m), BigInt::from(-2));
        let m = IntMatrix::from_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]]);
        assert_eq!(exact_determinant(&m), BigInt::one());
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![1, 2]]);
        assert_eq!(exact_determinant(&m), BigInt::zero());
        assert_eq!(exact_rank(&m), 1);
    }

    #[test]
    fn charpoly_of_swap() {
        let mut m = IntMatrix::zeros(3);
        m[(0, 1)] = BigInt::one();
        m[(1, 0)] = BigInt::one();
        // x (x^2 - 1) = x^3 - x
        let p = characteristic_polynomial(&m);
        let expect: Vec<BigInt> = [1, 0, -1, 0].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(p, expect);
    }

    #[test]
    fn charpoly_constant_is_signed_det() {
        let m = IntMatrix::from_rows(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let p = characteristic_polynomial(&m);
        assert_eq!(p[3], -exact_determinant(&m));
        assert_eq!(p[1], BigInt::from(-6));
    }

    #[test]
    fn interval_det_matches_exact() {
        let m = IntMatrix::from_rows(&[
            vec![3, 1, 0, 2],
            vec![1, -2, 5, 0],
            vec![0, 4, 1, 1],
            vec![7, 0, 0, 3],
        ]);
        let d = IntervalMatrix::from_int(&m).determinant();
        assert!(d.is_point());
        assert!(d.contains_int(&exact_determinant(&m)));
    }
}
