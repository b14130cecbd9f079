//! Integer matrices, Hermite and Smith normal forms, and row-span lattices.
//!
//! Generators are always rows: a matrix stands for the subgroup of `Z^cols`
//! spanned by its rows.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row vectors. An empty row list gives a `0 × cols` matrix.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            entries.extend(r);
        }
        Ok(IntMatrix { rows: n, cols, entries })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(cols, rows).expect("ragged literal matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Determinant by fraction-free (Bareiss) elimination. Panics if not square.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    /// Inverse of a unimodular matrix, `None` if the matrix is not square or
    /// not invertible over the integers.
    pub fn unimodular_inverse(&self) -> Option<IntMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let (h, u) = hnf_with_transform(self);
        (h == IntMatrix::identity(self.rows)).then_some(u)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q · row[src]
    fn sub_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = q * &self[(src, j)];
            self[(dst, j)] -= v;
        }
    }

    fn sub_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = q * &self[(i, src)];
            self[(i, dst)] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }

    /// (row a, row b) <- (x·a + y·b, p·a + q·b)
    fn combine_rows(&mut self, a: usize, b: usize, [x, y, p, q]: &[BigInt; 4]) {
        for j in 0..self.cols {
            let ra = &self[(a, j)];
            let rb = &self[(b, j)];
            let na = x * ra + y * rb;
            let nb = p * ra + q * rb;
            self[(a, j)] = na;
            self[(b, j)] = nb;
        }
    }

    fn combine_cols(&mut self, a: usize, b: usize, [x, y, p, q]: &[BigInt; 4]) {
        for i in 0..self.rows {
            let ca = &self[(i, a)];
            let cb = &self[(i, b)];
            let na = x * ca + y * cb;
            let nb = p * ca + q * cb;
            self[(i, a)] = na;
            self[(i, b)] = nb;
        }
    }

    fn take_rows(&self, n: usize) -> IntMatrix {
        IntMatrix { rows: n, cols: self.cols, entries: self.entries[..n * self.cols].to_vec() }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Serialized as an array of rows of decimal strings.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

/// Unimodular 2×2 block `[[x, y], [-b/g, a/g]]` sending `(a, b)` to `(g, 0)`
/// with `g = gcd(a, b) ≥ 0`.
fn gcd_block(a: &BigInt, b: &BigInt) -> [BigInt; 4] {
    let e = a.extended_gcd(b);
    let (mut g, mut x, mut y) = (e.gcd, e.x, e.y);
    if g.is_negative() {
        g = -g;
        x = -x;
        y = -y;
    }
    [x, y, -(b / &g), a / &g]
}

/// Row-style Hermite normal form with its transform: returns `(H, U)` with
/// `U · A = H`, `U` unimodular, and `H` upper echelon with positive pivots,
/// entries above each pivot reduced into `[0, pivot)` and zero rows last.
pub fn hnf_with_transform(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut r = 0;
    for c in 0..h.cols {
        if r == h.rows {
            break;
        }
        for i in r + 1..h.rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            if h[(r, c)].is_zero() {
                h.swap_rows(r, i);
                u.swap_rows(r, i);
                continue;
            }
            if (&h[(i, c)] % &h[(r, c)]).is_zero() {
                let q = &h[(i, c)] / &h[(r, c)];
                h.sub_row(i, r, &q);
                u.sub_row(i, r, &q);
            } else {
                let block = gcd_block(&h[(r, c)], &h[(i, c)]);
                h.combine_rows(r, i, &block);
                u.combine_rows(r, i, &block);
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            h.sub_row(i, r, &q);
            u.sub_row(i, r, &q);
        }
        r += 1;
    }
    (h, u)
}

/// Hermite normal form with zero rows removed; the result has `rank(A)` rows.
pub fn hnf(a: &IntMatrix) -> IntMatrix {
    let (h, _) = hnf_with_transform(a);
    let rank = (0..h.rows).take_while(|&i| h.row(i).iter().any(|x| !x.is_zero())).count();
    h.take_rows(rank)
}

/// `left · A · right = diag(diag, 0, …)` with unimodular `left` and `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub left: IntMatrix,
    /// Nonzero invariant factors, positive, each dividing the next.
    pub diag: Vec<BigInt>,
    pub right: IntMatrix,
}

impl SmithDecomposition {
    /// The `rows × cols` diagonal matrix `left · A · right`.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zeros(self.left.rows, self.right.cols);
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

pub fn snf(a: &IntMatrix) -> SmithDecomposition {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut left = IntMatrix::identity(m);
    let mut right = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                if !d[(i, j)].is_zero()
                    && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        left.swap_rows(t, pi);
        d.swap_cols(t, pj);
        right.swap_cols(t, pj);

        loop {
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                if (&d[(i, t)] % &d[(t, t)]).is_zero() {
                    let q = &d[(i, t)] / &d[(t, t)];
                    d.sub_row(i, t, &q);
                    left.sub_row(i, t, &q);
                } else {
                    let block = gcd_block(&d[(t, t)], &d[(i, t)]);
                    d.combine_rows(t, i, &block);
                    left.combine_rows(t, i, &block);
                }
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                if (&d[(t, j)] % &d[(t, t)]).is_zero() {
                    let q = &d[(t, j)] / &d[(t, t)];
                    d.sub_col(j, t, &q);
                    right.sub_col(j, t, &q);
                } else {
                    let block = gcd_block(&d[(t, t)], &d[(t, j)]);
                    d.combine_cols(t, j, &block);
                    right.combine_cols(t, j, &block);
                }
            }
            if (t + 1..m).any(|i| !d[(i, t)].is_zero()) {
                continue;
            }
            // pivot must divide the whole trailing block
            let bad = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !(&d[(i, j)] % &d[(t, t)]).is_zero()));
            match bad {
                Some(i) => {
                    let minus_one = BigInt::from(-1);
                    d.sub_row(t, i, &minus_one);
                    left.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            left.negate_row(t);
        }
        t += 1;
    }
    let diag = (0..m.min(n)).map(|i| d[(i, i)].clone()).take_while(|x| !x.is_zero()).collect();
    SmithDecomposition { left, diag, right }
}

/// True iff `v` is an integer combination of the rows of `a`.
pub fn lattice_contains(a: &IntMatrix, v: &[BigInt]) -> Result<bool> {
    if v.len() != a.cols {
        return Err(Error::DimensionMismatch { expected: a.cols, found: v.len() });
    }
    let h = hnf(a);
    let mut rest = v.to_vec();
    let mut col = 0;
    for i in 0..h.rows {
        let p = (col..h.cols).find(|&j| !h[(i, j)].is_zero()).expect("nonzero HNF row");
        if rest[col..p].iter().any(|x| !x.is_zero()) {
            return Ok(false);
        }
        let (q, r) = rest[p].div_rem(&h[(i, p)]);
        if !r.is_zero() {
            return Ok(false);
        }
        for (x, y) in rest.iter_mut().zip(h.row(i)).skip(p) {
            *x -= &q * y;
        }
        col = p + 1;
    }
    Ok(rest.iter().all(Zero::is_zero))
}

/// True iff the row spans of `a` and `b` coincide.
pub fn lattice_equal(a: &IntMatrix, b: &IntMatrix) -> Result<bool> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch { expected: a.cols, found: b.cols });
    }
    Ok(hnf(a) == hnf(b))
}
