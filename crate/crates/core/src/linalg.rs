//! Dense exact linear algebra over a prime field.
//!
//! Every higher layer (Hom spaces, Ext groups, submodule lattices) reduces to
//! the handful of routines here: row reduction, kernels, linear solves and
//! enumeration of subspaces in canonical form.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default budget for [`enumerate_subspaces`].
pub const DEFAULT_SUBSPACE_CAP: u64 = 1 << 20;

/// The prime field `F_p`. Elements are residues stored as `u32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Field {
    p: u32,
}

impl Field {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p as u64));
        }
        if p >= 1 << 31 {
            return Err(Error::NotPrime(p as u64));
        }
        Ok(Field { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        self.reduce(t0)
    }

    /// All field elements in increasing order.
    pub fn elements(self) -> impl Iterator<Item = u32> {
        0..self.p
    }

    /// `p^k`, or `None` on overflow of `u64`.
    pub fn pow_count(self, k: usize) -> Option<u64> {
        (self.p as u64).checked_pow(k as u32)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

/// Dense row-major matrix of field residues.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat{}x{}{:?}", self.rows, self.cols, self.to_rows())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(n: usize, c: u32) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Builds a matrix from rows; entries are reduced into the field.
    pub fn from_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.iter().flatten().map(|&x| field.reduce(x)).collect(),
        }
    }

    /// Builds a matrix from residues already in range.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Mat { rows, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u32) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Mat { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<u32>]) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows));
        Mat::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn column_vector(v: &[u32]) -> Self {
        Mat { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn mul(&self, field: Field, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut out = Mat::zeros(self.rows, rhs.cols);
        let p = field.p() as u64;
        for i in 0..self.rows {
            let mut acc = vec![0u64; rhs.cols];
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for (j, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + a * rhs.get(k, j) as u64) % p;
                }
            }
            for (j, v) in acc.into_iter().enumerate() {
                out.set(i, j, v as u32);
            }
        }
        out
    }

    pub fn mul_vec(&self, field: Field, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u32, |acc, (&a, &b)| field.add(acc, field.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, field: Field, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| field.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, field: Field, rhs: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| field.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, field: Field, c: u32) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| field.mul(a, c)).collect(),
        }
    }

    pub fn neg(&self, field: Field) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| field.neg(a)).collect(),
        }
    }

    /// `[self | rhs]`
    pub fn hstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.rows, rhs.rows);
        Mat::from_fn(self.rows, self.cols + rhs.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                rhs.get(i, j - self.cols)
            }
        })
    }

    /// `[self ; rhs]`
    pub fn vstack(&self, rhs: &Mat) -> Mat {
        assert_eq!(self.cols, rhs.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&rhs.data);
        Mat { rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    pub fn block_diag(&self, rhs: &Mat) -> Mat {
        let mut out = Mat::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        out.paste(0, 0, self);
        out.paste(self.rows, self.cols, rhs);
        out
    }

    /// Overwrites the block starting at `(r0, c0)` with `block`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Mat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j));
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Mat {
        Mat::from_fn(rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j))
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref(&self, field: Field) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(field);
        (m, pivots)
    }

    fn rref_in_place(&mut self, field: Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, r * self.cols + j);
                }
            }
            let inv = field.inv(self.get(r, c));
            for j in c..self.cols {
                let v = field.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.sub(self.get(i, j), field.mul(factor, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: Field) -> usize {
        self.rref(field).1.len()
    }

    /// Basis of the right null space, one basis vector per column.
    ///
    /// The basis is the standard one read off the reduced echelon form: one
    /// vector per free column, with a 1 in that free coordinate.
    pub fn kernel_basis(&self, field: Field) -> Mat {
        let (r, pivots) = self.rref(field);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Mat::zeros(self.cols, free.len());
        for (t, &fc) in free.iter().enumerate() {
            k.set(fc, t, 1);
            for (row, &pc) in pivots.iter().enumerate() {
                k.set(pc, t, field.neg(r.get(row, fc)));
            }
        }
        k
    }

    /// A particular solution of `self * x = b` with all free variables zero.
    pub fn solve(&self, field: Field, b: &[u32]) -> Result<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Mat::column_vector(b));
        let (r, pivots) = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![0; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Ok(x)
    }

    /// Solves `self * X = rhs` column by column.
    pub fn solve_matrix(&self, field: Field, rhs: &Mat) -> Result<Mat> {
        assert_eq!(rhs.rows, self.rows);
        let aug = self.hstack(rhs);
        let (r, pivots) = aug.rref(field);
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::Inconsistent);
        }
        let mut x = Mat::zeros(self.cols, rhs.cols);
        for (row, &pc) in pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, r.get(row, self.cols + j));
            }
        }
        Ok(x)
    }

    pub fn is_invertible(&self, field: Field) -> bool {
        self.is_square() && self.rank(field) == self.rows
    }

    pub fn inverse(&self, field: Field) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        self.solve_matrix(field, &Mat::identity(self.rows)).ok()
    }

    /// The original columns at pivot positions: a basis of the column space.
    pub fn column_space(&self, field: Field) -> Mat {
        let (_, pivots) = self.rref(field);
        self.select_columns(&pivots)
    }

    /// Repeated squaring; `k = 0` gives the identity.
    pub fn pow(&self, field: Field, mut k: usize) -> Mat {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Mat::identity(self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(field, &base);
            }
            base = base.mul(field, &base);
            k >>= 1;
        }
        acc
    }
}

/// Canonical basis (as columns) of the span of the given columns: the nonzero
/// rows of the reduced echelon form of the transpose, transposed back.
pub fn canonical_span(field: Field, columns: &Mat) -> Mat {
    let (r, pivots) = columns.transpose().rref(field);
    r.submatrix(0..pivots.len(), 0..r.cols()).transpose()
}

/// All subspaces of `F_p^dim` of dimension `sub_dim`, each returned as a
/// `dim x sub_dim` matrix whose columns are the rows of the subspace's reduced
/// echelon basis. Order: pivot sets lexicographically, then free entries as a
/// little-endian counter.
pub fn enumerate_subspaces(field: Field, dim: usize, sub_dim: usize, cap: u64) -> Result<Vec<Mat>> {
    if sub_dim > dim {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let p = field.p();
    for pivots in combinations(dim, sub_dim) {
        // free slots: (row r, column c) with c > pivots[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..sub_dim)
            .flat_map(|r| {
                let pv = &pivots;
                ((pv[r] + 1)..dim).filter(move |c| !pv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let count = field.pow_count(free.len()).filter(|&n| n <= cap);
        let Some(count) = count else {
            return Err(Error::CapExceeded { what: "subspace enumeration", cap });
        };
        if out.len() as u64 + count > cap {
            return Err(Error::CapExceeded { what: "subspace enumeration", cap });
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut m = Mat::zeros(dim, sub_dim);
            for (r, &pc) in pivots.iter().enumerate() {
                m.set(pc, r, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&digits) {
                m.set(c, r, v);
            }
            out.push(m);
            if !increment(&mut digits, p) {
                break;
            }
        }
    }
    Ok(out)
}

/// All subspaces `U` with `W <= U <= F_p^dim` and `dim U = sub_dim`, where `W`
/// is spanned by the columns of `contained`. Same canonical form as
/// [`enumerate_subspaces`].
pub fn enumerate_superspaces(
    field: Field,
    dim: usize,
    contained: &Mat,
    sub_dim: usize,
    cap: u64,
) -> Result<Vec<Mat>> {
    let w = canonical_span(field, contained);
    let wd = w.cols();
    if sub_dim < wd || sub_dim > dim {
        return Ok(Vec::new());
    }
    let (_, pivots) = w.transpose().rref(field);
    let complement: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let inner = enumerate_subspaces(field, complement.len(), sub_dim - wd, cap)?;
    Ok(inner
        .into_iter()
        .map(|v| {
            let mut lifted = Mat::zeros(dim, v.cols());
            for (i, &c) in complement.iter().enumerate() {
                for j in 0..v.cols() {
                    lifted.set(c, j, v.get(i, j));
                }
            }
            canonical_span(field, &w.hstack(&lifted))
        })
        .collect())
}

/// Advances a little-endian base-`p` counter; false once it wraps to zero.
pub fn increment(digits: &mut [u32], p: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < p {
            return true;
        }
        *d = 0;
    }
    false
}

/// k-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}
