//! Exact linear algebra over [`Scalar`] fields and integer Hermite forms.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Rational vector in ambient coordinates.
pub type QVec = Vec<Rational>;

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn vadd(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Rational], b: &[Rational]) -> QVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(a: &[Rational], s: &Rational) -> QVec {
    a.iter().map(|x| x * s).collect()
}

pub fn vneg(a: &[Rational]) -> QVec {
    a.iter().map(|x| -x).collect()
}

pub fn int_vec(v: &[i64]) -> QVec {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    pub rows: usize,
    pub cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row.iter().cloned());
        }
        Matrix { rows: r, cols: c, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: S) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx].add_product(a, b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[S]) -> Vec<S> {
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc.add_product(a, b);
                }
                acc
            })
            .collect()
    }

    pub fn scale(&self, s: &S) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.times(s)).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return S::zero();
            };
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                }
                det = det.negated();
            }
            let piv = a.get(c, c).clone();
            det = det.times(&piv);
            let inv = piv.inverse();
            for r in (c + 1)..n {
                let f = a.get(r, c).times(&inv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = a.get(r, j).minus(&f.times(a.get(c, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let pinv = a.get(c, c).inverse();
            for j in 0..n {
                a.set(c, j, a.get(c, j).times(&pinv));
                inv.set(c, j, inv.get(c, j).times(&pinv));
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let f = a.get(r, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j).minus(&f.times(a.get(c, j)));
                    a.set(r, j, v);
                    let w = inv.get(r, j).minus(&f.times(inv.get(c, j)));
                    inv.set(r, j, w);
                }
            }
        }
        Some(inv)
    }
}

/// Sparse vector as sorted `(index, value)` pairs with no zero values.
pub type SparseVec<S> = Vec<(usize, S)>;

pub fn sparse_from_dense<S: Scalar>(v: &[S]) -> SparseVec<S> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn dense_from_sparse<S: Scalar>(v: &SparseVec<S>, n: usize) -> Vec<S> {
    let mut out = vec![S::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

/// Incrementally maintained row-echelon basis of a subspace of S^n.
#[derive(Clone, Debug)]
pub struct Echelon<S> {
    ncols: usize,
    rows: BTreeMap<usize, SparseVec<S>>,
}

impl<S: Scalar> Echelon<S> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current basis, returning the remainder.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let mut w = v.to_vec();
        for (&p, row) in &self.rows {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (j, x) in row {
                w[*j] = w[*j].minus(&f.times(x));
            }
        }
        w
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.reduce(v).iter().all(S::is_zero)
    }

    /// Adds `v` to the span; returns true when the dimension grew.
    pub fn insert(&mut self, v: &[S]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inverse();
        let row: SparseVec<S> = w
            .iter()
            .enumerate()
            .skip(p)
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.times(&inv)))
            .collect();
        // keep the basis fully reduced in the new pivot column
        for other in self.rows.values_mut() {
            if let Ok(pos) = other.binary_search_by_key(&p, |(j, _)| *j) {
                let f = other[pos].1.clone();
                let mut dense = dense_from_sparse(other, self.ncols);
                for (j, x) in &row {
                    dense[*j] = dense[*j].minus(&f.times(x));
                }
                *other = sparse_from_dense(&dense);
            }
        }
        self.rows.insert(p, row);
        true
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.keys().copied().collect()
    }

    pub fn basis(&self) -> Vec<Vec<S>> {
        self.rows.values().map(|r| dense_from_sparse(r, self.ncols)).collect()
    }

    /// Basis of the null space of the matrix whose rows span this echelon form.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.rows.contains_key(&f) {
                continue;
            }
            let mut v = vec![S::zero(); self.ncols];
            v[f] = S::one();
            for (&p, row) in &self.rows {
                if let Ok(pos) = row.binary_search_by_key(&f, |(j, _)| *j) {
                    v[p] = row[pos].1.negated();
                }
            }
            out.push(v);
        }
        out
    }

    /// Coordinates of `v` with respect to `basis()`, if `v` lies in the span.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        // the basis is fully reduced, so the pivot entries are the coordinates
        let coords: Vec<S> = self.rows.keys().map(|&p| v[p].clone()).collect();
        let mut recon = vec![S::zero(); self.ncols];
        for (c, row) in coords.iter().zip(self.rows.values()) {
            for (j, x) in row {
                recon[*j].add_product(c, x);
            }
        }
        (recon == v).then_some(coords)
    }
}

/// Row space echelon form of a list of vectors.
pub fn row_space<S: Scalar>(vectors: &[Vec<S>], ncols: usize) -> Echelon<S> {
    let mut e = Echelon::new(ncols);
    for v in vectors {
        e.insert(v);
    }
    e
}

pub fn rank<S: Scalar>(vectors: &[Vec<S>], ncols: usize) -> usize {
    row_space(vectors, ncols).dim()
}

/// Null space of the matrix with the given rows.
pub fn kernel<S: Scalar>(rows: &[Vec<S>], ncols: usize) -> Vec<Vec<S>> {
    row_space(rows, ncols).kernel()
}

/// Coefficients `c` with `v = Σ c_i basis_i`, assuming the basis vectors
/// are linearly independent.
pub fn solve_in_span<S: Scalar>(basis: &[Vec<S>], v: &[S]) -> Option<Vec<S>> {
    let n = v.len();
    let k = basis.len();
    let mut e = Echelon::new(n + k);
    for (i, b) in basis.iter().enumerate() {
        let mut row = b.clone();
        row.extend((0..k).map(|j| if i == j { S::one() } else { S::zero() }));
        e.insert(&row);
    }
    let mut row = v.to_vec();
    row.extend(std::iter::repeat_with(S::zero).take(k));
    let w = e.reduce(&row);
    if w[..n].iter().any(|x| !x.is_zero()) || e.pivots().iter().any(|&p| p >= n) {
        return None;
    }
    Some(w[n..].iter().map(S::negated).collect())
}

/// Sparse matrix stored by columns; the natural shape for operators built
/// by applying a map to each basis vector.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<S> {
    pub nrows: usize,
    pub cols: Vec<SparseVec<S>>,
}

impl<S: Scalar> SparseMatrix<S> {
    pub fn from_columns(nrows: usize, cols: Vec<SparseVec<S>>) -> Self {
        SparseMatrix { nrows, cols }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { nrows: n, cols: (0..n).map(|i| vec![(i, S::one())]).collect() }
    }

    pub fn diagonal(d: Vec<S>) -> Self {
        let n = d.len();
        SparseMatrix { nrows: n, cols: d.into_iter().enumerate().map(|(i, x)| vec![(i, x)]).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn apply(&self, v: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.nrows];
        for (j, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &self.cols[j] {
                out[*i].add_product(a, x);
            }
        }
        out
    }

    pub fn apply_sparse(&self, v: &SparseVec<S>) -> SparseVec<S> {
        let mut acc: BTreeMap<usize, S> = BTreeMap::new();
        for (j, x) in v {
            for (i, a) in &self.cols[*j] {
                acc.entry(*i).or_insert_with(S::zero).add_product(a, x);
            }
        }
        acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
    }

    /// self ∘ other
    pub fn compose(&self, other: &Self) -> Self {
        SparseMatrix { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply_sparse(c)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.nrows == self.ncols()
            && self.cols.iter().enumerate().all(|(j, c)| c.len() == 1 && c[0].0 == j && c[0].1 == S::one())
    }

    pub fn to_dense(&self) -> Matrix<S> {
        let mut m = Matrix::zeros(self.nrows, self.ncols());
        for (j, c) in self.cols.iter().enumerate() {
            for (i, x) in c {
                m.set(*i, j, x.clone());
            }
        }
        m
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SparseMatrix<T> {
        SparseMatrix {
            nrows: self.nrows,
            cols: self.cols.iter().map(|c| c.iter().map(|(i, x)| (*i, f(x))).collect()).collect(),
        }
    }

    /// Smallest k ≥ 1 with self^k = 1, searched up to `limit`.
    pub fn multiplicative_order(&self, limit: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=limit {
            if p.is_identity() {
                return Some(k);
            }
            p = self.compose(&p);
        }
        None
    }
}

/// Row-style Hermite normal form of an integer matrix: upper echelon with
/// positive pivots and entries above each pivot reduced into `[0, pivot)`.
/// Zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut out_rows = 0usize;
    for c in 0..ncols {
        // gcd-combine every row below out_rows into the pivot row
        loop {
            let nz: Vec<usize> = (out_rows..a.len()).filter(|&r| a[r][c] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&r) = nz.first() {
                    a.swap(out_rows, r);
                }
                break;
            }
            let m = *nz.iter().min_by_key(|&&r| a[r][c].abs()).expect("non-empty");
            a.swap(out_rows, m);
            for &r in &nz {
                let r = if r == m { out_rows } else if r == out_rows { m } else { r };
                if r == out_rows {
                    continue;
                }
                let f = a[r][c].div_euclid(a[out_rows][c]);
                if f != 0 {
                    for j in c..ncols {
                        let v = a[out_rows][j].checked_mul(f).ok_or_else(overflow)?;
                        a[r][j] = a[r][j].checked_sub(v).ok_or_else(overflow)?;
                    }
                }
            }
        }
        if out_rows < a.len() && a[out_rows][c] != 0 {
            if a[out_rows][c] < 0 {
                for j in c..ncols {
                    a[out_rows][j] = -a[out_rows][j];
                }
            }
            let p = a[out_rows][c];
            for r in 0..out_rows {
                let f = a[r][c].div_euclid(p);
                if f != 0 {
                    for j in c..ncols {
                        let v = a[out_rows][j].checked_mul(f).ok_or_else(overflow)?;
                        a[r][j] = a[r][j].checked_sub(v).ok_or_else(overflow)?;
                    }
                }
            }
            out_rows += 1;
        }
    }
    a.truncate(out_rows);
    a.into_iter()
        .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| overflow())).collect())
        .collect()
}

fn overflow() -> Error {
    Error::InvalidArgument("integer overflow in Hermite normal form".into())
}

/// A large prime below 2³¹, so products fit in u64.
pub const RANK_PRIME: u64 = 2_147_483_629;

fn mod_p(x: &Rational, p: u64) -> Option<u64> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64()?;
    let d = x.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    Some(n * pow_mod(d, p - 2, p) % p)
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank modulo `p` of the matrix with the given sparse rows. It never
/// exceeds the rank over Q, so it certifies lower bounds. `None` when some
/// denominator is divisible by `p`.
pub fn rank_mod_p<'a>(rows: impl IntoIterator<Item = &'a SparseVec<Rational>>, ncols: usize, p: u64) -> Option<usize> {
    let mut pivots: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for row in rows {
        let mut w = vec![0u64; ncols];
        for (j, x) in row {
            w[*j] = mod_p(x, p)?;
        }
        for (&c, prow) in &pivots {
            let f = w[c];
            if f != 0 {
                for (wj, pj) in w.iter_mut().zip(prow) {
                    *wj = (*wj + p - f * pj % p) % p;
                }
            }
        }
        if let Some(c) = w.iter().position(|&x| x != 0) {
            let inv = pow_mod(w[c], p - 2, p);
            let row: Vec<u64> = w.iter().map(|x| x * inv % p).collect();
            for prow in pivots.values_mut() {
                let f = prow[c];
                if f != 0 {
                    for (a, b) in prow.iter_mut().zip(&row) {
                        *a = (*a + p - f * b % p) % p;
                    }
                }
            }
            pivots.insert(c, row);
        }
    }
    Some(pivots.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(&rows.iter().map(|r| int_vec(r)).collect::<Vec<_>>())
    }

    #[test]
    fn determinant_and_inverse() {
        let m = qm(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]);
        assert_eq!(m.det(), q(4, 1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn kernel_of_rank_deficient() {
        let rows = vec![int_vec(&[1, 2, 3]), int_vec(&[2, 4, 6]), int_vec(&[0, 1, 1])];
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        for r in &rows {
            assert!(dot(r, &k[0]).is_zero());
        }
    }

    #[test]
    fn echelon_coordinates() {
        let mut e = Echelon::new(3);
        e.insert(&int_vec(&[1, 1, 0]));
        e.insert(&int_vec(&[0, 1, 1]));
        assert!(e.contains(&int_vec(&[1, 2, 1])));
        assert!(!e.contains(&int_vec(&[0, 0, 1])));
        let c = e.coordinates(&int_vec(&[2, 3, 1])).unwrap();
        let b = e.basis();
        let recon: QVec = (0..3).map(|j| &(&c[0] * &b[0][j]) + &(&c[1] * &b[1][j])).collect();
        assert_eq!(recon, int_vec(&[2, 3, 1]));
    }

    #[test]
    fn hnf_of_stacked_code_lattice() {
        let rows = vec![vec![1, 1, 0], vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]];
        let h = hermite_normal_form(&rows).unwrap();
        assert_eq!(h, vec![vec![1, 1, 0], vec![0, 2, 0], vec![0, 0, 2]]);
    }

    #[test]
    fn sparse_order() {
        let m: SparseMatrix<Rational> =
            SparseMatrix::from_columns(3, vec![vec![(1, q(1, 1))], vec![(2, q(1, 1))], vec![(0, q(1, 1))]]);
        assert_eq!(m.multiplicative_order(10), Some(3));
    }
}
