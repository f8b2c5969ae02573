//! Weight-2 (Griess) algebra of a lattice vertex algebra V_N for a doubly
//! even lattice N, computed exactly.
//!
//! A weight-2 vector is `Σ Q_ij h_i(-1)h_j(-1)1 + Σ d_i h_i(-2)1 + Σ c_x e^x`
//! where `h_i` is the lattice basis of N and x runs over the norm-4 vectors.

mod auto;
mod families;
mod module;
mod u2;

pub use auto::{check_spectrum, eigen_multiplicities, tau_involution, Automorphism, Spectrum};
pub use families::{HammingFamily, NodeFamily, VirasoroFamily};
pub use module::{ModuleSpace, ModuleVector};
pub use u2::{generated_closure, CosetAlgebra, Subspace};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::linalg::{Matrix, QVec, SparseMatrix, SparseVec};
use crate::scalar::{q, Cyclotomic, Rational, Scalar};

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Fixed data of V_N at weight 2.
#[derive(Debug)]
pub struct AlgebraContext {
    id: u64,
    lattice: EvenLattice,
    norm4: Vec<QVec>,
    coords: Vec<Vec<i64>>,
    pairing: Vec<QVec>,
    index: HashMap<Vec<i64>, usize>,
    neg: Vec<usize>,
    ipx: Vec<i64>,
    sum: Vec<Option<u32>>,
}

/// `Σ Q_ij h_i(-1)h_j(-1)1 + Σ d_i h_i(-2)1 + Σ c_x e^x`, Q symmetric.
#[derive(Clone, Debug, PartialEq)]
pub struct GriessElement<S> {
    ctx: u64,
    pub quad: Matrix<S>,
    pub deriv: Vec<S>,
    pub expo: BTreeMap<usize, S>,
}

fn mul_sr<S: Scalar>(a: &Matrix<S>, g: &Matrix<Rational>) -> Matrix<S> {
    let mut out = Matrix::<S>::zeros(a.rows, g.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let x = a.get(i, k);
            if x.is_zero() {
                continue;
            }
            for j in 0..g.cols {
                let y = g.get(k, j);
                if !y.is_zero() {
                    let v = out.get(i, j).plus(&x.scaled(y));
                    out.set(i, j, v);
                }
            }
        }
    }
    out
}

fn mat_vec_rs<S: Scalar>(g: &Matrix<Rational>, v: &[S]) -> Vec<S> {
    (0..g.rows)
        .map(|i| {
            let mut acc = S::zero();
            for (k, x) in v.iter().enumerate() {
                if !x.is_zero() && !g.get(i, k).is_zero() {
                    acc = acc.plus(&x.scaled(g.get(i, k)));
                }
            }
            acc
        })
        .collect()
}

impl AlgebraContext {
    /// Context for `N`, which must be doubly even.
    pub fn new(lattice: EvenLattice) -> Result<Self> {
        if !lattice.is_doubly_even() {
            return Err(Error::InvalidArgument("lattice is not doubly even".into()));
        }
        let norm4 = lattice.short_vectors(&q(4, 1));
        let coords: Vec<Vec<i64>> = norm4
            .iter()
            .map(|x| {
                lattice
                    .coordinates(x)
                    .expect("lattice vector")
                    .iter()
                    .map(|c| c.to_integer().expect("integral coordinates"))
                    .collect()
            })
            .collect();
        let index: HashMap<Vec<i64>, usize> = coords.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        let neg: Vec<usize> = coords.iter().map(|c| index[&c.iter().map(|x| -x).collect::<Vec<_>>()]).collect();
        let pairing: Vec<QVec> = norm4.iter().map(|x| lattice.pairings(x)).collect();
        let m = norm4.len();
        let mut ipx = vec![0i64; m * m];
        let mut sum = vec![None; m * m];
        for a in 0..m {
            for b in 0..m {
                let v: Rational = pairing[a].iter().zip(&coords[b]).fold(Rational::zero(), |acc, (p, &c)| {
                    if c == 0 {
                        acc
                    } else {
                        &acc + &(p * &Rational::from_int(c))
                    }
                });
                let v = v.to_integer().expect("integral lattice");
                ipx[a * m + b] = v;
                if v == -2 {
                    let s: Vec<i64> = coords[a].iter().zip(&coords[b]).map(|(x, y)| x + y).collect();
                    sum[a * m + b] = Some(index[&s] as u32);
                }
            }
        }
        Ok(AlgebraContext {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            lattice,
            norm4,
            coords,
            pairing,
            index,
            neg,
            ipx,
            sum,
        })
    }

    pub fn lattice(&self) -> &EvenLattice {
        &self.lattice
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        self.lattice.gram()
    }

    pub fn norm4(&self) -> &[QVec] {
        &self.norm4
    }

    pub fn neg_index(&self, x: usize) -> usize {
        self.neg[x]
    }

    /// `⟨x_a, x_b⟩` for norm-4 vectors.
    pub fn ip_index(&self, a: usize, b: usize) -> i64 {
        self.ipx[a * self.norm4.len() + b]
    }

    /// `⟨h_i, x⟩` for the norm-4 vector with index `a`.
    pub fn pairing(&self, a: usize) -> &[Rational] {
        &self.pairing[a]
    }

    /// Index of a norm-4 lattice vector given in ambient coordinates.
    pub fn index_of(&self, x: &[Rational]) -> Option<usize> {
        let c = self.lattice.coordinates(x)?;
        let c: Option<Vec<i64>> = c.iter().map(Rational::to_integer).collect();
        self.index.get(&c?).copied()
    }

    pub fn quad_dim(&self) -> usize {
        let r = self.rank();
        r * (r + 1) / 2
    }

    /// Dimension of the weight-2 space.
    pub fn dim(&self) -> usize {
        self.quad_dim() + self.rank() + self.norm4.len()
    }

    fn quad_index(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let r = self.rank();
        i * r - i * (i + 1) / 2 + j
    }

    pub fn deriv_offset(&self) -> usize {
        self.quad_dim()
    }

    pub fn expo_offset(&self) -> usize {
        self.quad_dim() + self.rank()
    }

    /// Human-readable labels of the weight-2 basis, in vector order.
    pub fn basis_labels(&self) -> Vec<String> {
        let r = self.rank();
        let mut out = Vec::with_capacity(self.dim());
        for i in 0..r {
            for j in i..r {
                out.push(format!("h{i}(-1)h{j}(-1)"));
            }
        }
        for i in 0..r {
            out.push(format!("h{i}(-2)"));
        }
        for x in &self.norm4 {
            out.push(format!("e^[{}]", x.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")));
        }
        out
    }

    pub fn zero<S: Scalar>(&self) -> GriessElement<S> {
        let r = self.rank();
        GriessElement { ctx: self.id, quad: Matrix::zeros(r, r), deriv: vec![S::zero(); r], expo: BTreeMap::new() }
    }

    fn check<S>(&self, u: &GriessElement<S>) -> Result<()> {
        if u.ctx == self.id {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Virasoro element `½ Σ G⁻¹_ij h_i(-1)h_j(-1)1`.
    pub fn omega<S: Scalar>(&self) -> GriessElement<S> {
        let mut u = self.zero();
        let half = q(1, 2);
        let gi = self.lattice.gram_inverse();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                u.quad.set(i, j, S::from(gi.get(i, j) * &half));
            }
        }
        u
    }

    /// `x(-1)²·1` for x in the rational span of N.
    pub fn h_square<S: Scalar>(&self, x: &[Rational]) -> Result<GriessElement<S>> {
        let c = self.lattice.coordinates(x).ok_or_else(|| Error::EmbeddingError("vector outside the span".into()))?;
        let mut u = self.zero();
        for i in 0..c.len() {
            for j in 0..c.len() {
                u.quad.set(i, j, S::from(&c[i] * &c[j]));
            }
        }
        Ok(u)
    }

    /// `x(-2)·1`.
    pub fn h_deriv<S: Scalar>(&self, x: &[Rational]) -> Result<GriessElement<S>> {
        let c = self.lattice.coordinates(x).ok_or_else(|| Error::EmbeddingError("vector outside the span".into()))?;
        let mut u = self.zero();
        u.deriv = c.into_iter().map(S::from).collect();
        Ok(u)
    }

    /// `e^x` for a norm-4 vector x of N.
    pub fn exp<S: Scalar>(&self, x: &[Rational]) -> Result<GriessElement<S>> {
        let idx = self
            .index_of(x)
            .ok_or_else(|| Error::EmbeddingError("not a norm-4 vector of the lattice".into()))?;
        Ok(self.exp_index(idx))
    }

    pub fn exp_index<S: Scalar>(&self, idx: usize) -> GriessElement<S> {
        let mut u = self.zero();
        u.expo.insert(idx, S::one());
        u
    }

    /// Weight-2 basis element by vector index.
    pub fn basis_element<S: Scalar>(&self, k: usize) -> GriessElement<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[k] = S::one();
        self.from_vector(&v)
    }

    pub fn to_vector<S: Scalar>(&self, u: &GriessElement<S>) -> Vec<S> {
        let r = self.rank();
        let mut v = vec![S::zero(); self.dim()];
        for i in 0..r {
            v[self.quad_index(i, i)] = u.quad.get(i, i).clone();
            for j in (i + 1)..r {
                v[self.quad_index(i, j)] = u.quad.get(i, j).plus(u.quad.get(j, i));
            }
        }
        let d0 = self.deriv_offset();
        for i in 0..r {
            v[d0 + i] = u.deriv[i].clone();
        }
        let e0 = self.expo_offset();
        for (x, c) in &u.expo {
            v[e0 + x] = c.clone();
        }
        v
    }

    pub fn from_vector<S: Scalar>(&self, v: &[S]) -> GriessElement<S> {
        let r = self.rank();
        let mut u = self.zero();
        let half = q(1, 2);
        for i in 0..r {
            u.quad.set(i, i, v[self.quad_index(i, i)].clone());
            for j in (i + 1)..r {
                let c = v[self.quad_index(i, j)].scaled(&half);
                u.quad.set(i, j, c.clone());
                u.quad.set(j, i, c);
            }
        }
        let d0 = self.deriv_offset();
        for i in 0..r {
            u.deriv[i] = v[d0 + i].clone();
        }
        let e0 = self.expo_offset();
        for (x, c) in v[e0..].iter().enumerate() {
            if !c.is_zero() {
                u.expo.insert(x, c.clone());
            }
        }
        u
    }

    fn quad_eval<S: Scalar>(&self, quad: &Matrix<S>, a: usize) -> S {
        let p = &self.pairing[a];
        let mut acc = S::zero();
        for i in 0..quad.rows {
            if p[i].is_zero() {
                continue;
            }
            let mut row = S::zero();
            for j in 0..quad.cols {
                let qij = quad.get(i, j);
                if !qij.is_zero() && !p[j].is_zero() {
                    row = row.plus(&qij.scaled(&p[j]));
                }
            }
            acc = acc.plus(&row.scaled(&p[i]));
        }
        acc
    }

    fn deriv_eval<S: Scalar>(&self, d: &[S], a: usize) -> S {
        let p = &self.pairing[a];
        let mut acc = S::zero();
        for (x, pi) in d.iter().zip(p) {
            if !x.is_zero() && !pi.is_zero() {
                acc = acc.plus(&x.scaled(pi));
            }
        }
        acc
    }

    /// The product `u₁v`.
    pub fn product<S: Scalar>(&self, u: &GriessElement<S>, v: &GriessElement<S>) -> Result<GriessElement<S>> {
        self.check(u)?;
        self.check(v)?;
        let g = self.gram();
        let r = self.rank();
        let mut out = self.zero::<S>();
        let u_has_quad = !u.quad_is_zero();
        let v_has_quad = !v.quad_is_zero();

        // Heisenberg–Heisenberg: 4·sym(Q G Q')
        if u_has_quad && v_has_quad {
            let qg = mul_sr(&u.quad, g);
            let m = qg.mul(&v.quad);
            let two = q(2, 1);
            for i in 0..r {
                for j in 0..r {
                    out.quad.set(i, j, m.get(i, j).plus(m.get(j, i)).scaled(&two));
                }
            }
        }
        // Q₁D = 4·Q G d
        if u_has_quad && v.deriv.iter().any(|x| !x.is_zero()) {
            let gd = mat_vec_rs(g, &v.deriv);
            let qgd = u.quad.mul_vec(&gd);
            let four = q(4, 1);
            for (o, x) in out.deriv.iter_mut().zip(qgd) {
                *o = o.plus(&x.scaled(&four));
            }
        }
        // Heisenberg and exponential sectors act on e^x by eigenvalues
        let u_d = u.deriv.iter().any(|x| !x.is_zero());
        let v_d = v.deriv.iter().any(|x| !x.is_zero());
        for (&a, c) in &v.expo {
            let mut coef = S::zero();
            if u_has_quad {
                coef = coef.plus(&self.quad_eval(&u.quad, a));
            }
            if u_d {
                coef = coef.minus(&self.deriv_eval(&u.deriv, a));
            }
            if !coef.is_zero() {
                let e = out.expo.entry(a).or_insert_with(S::zero);
                *e = e.plus(&coef.times(c));
            }
        }
        for (&a, c) in &u.expo {
            let mut coef = S::zero();
            if v_has_quad {
                coef = coef.plus(&self.quad_eval(&v.quad, a));
            }
            if v_d {
                coef = coef.minus(&self.deriv_eval(&v.deriv, a));
            }
            if !coef.is_zero() {
                let e = out.expo.entry(a).or_insert_with(S::zero);
                *e = e.plus(&coef.times(c));
            }
        }
        // exponential–exponential
        let m = self.norm4.len();
        let half = q(1, 2);
        for (&a, ca) in &u.expo {
            let row = a * m;
            for (&b, cb) in &v.expo {
                let ip = self.ipx[row + b];
                if ip == -2 {
                    let s = self.sum[row + b].expect("sum of norm-4 pair") as usize;
                    let e = out.expo.entry(s).or_insert_with(S::zero);
                    *e = e.plus(&ca.times(cb));
                } else if ip == -4 {
                    // ½(x(-1)² + x(-2)) with x = x_a
                    let c = ca.times(cb).scaled(&half);
                    let xa = &self.coords[a];
                    for i in 0..r {
                        if xa[i] == 0 {
                            continue;
                        }
                        let ci = Rational::from_int(xa[i]);
                        for j in 0..r {
                            if xa[j] != 0 {
                                let add = c.scaled(&(&ci * &Rational::from_int(xa[j])));
                                let cur = out.quad.get(i, j).plus(&add);
                                out.quad.set(i, j, cur);
                            }
                        }
                        out.deriv[i] = out.deriv[i].plus(&c.scaled(&ci));
                    }
                }
            }
        }
        out.expo.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// The invariant form: `2 tr(QGQ'G)` on the quadratic sector,
    /// `-2 dᵀGd'` on the derivative sector, `[y = -x]` on exponentials.
    pub fn inner<S: Scalar>(&self, u: &GriessElement<S>, v: &GriessElement<S>) -> Result<S> {
        self.check(u)?;
        self.check(v)?;
        let g = self.gram();
        let mut acc = S::zero();
        if !u.quad_is_zero() && !v.quad_is_zero() {
            let a = mul_sr(&u.quad, g);
            let b = mul_sr(&v.quad, g);
            let mut tr = S::zero();
            for i in 0..a.rows {
                for k in 0..a.cols {
                    let x = a.get(i, k);
                    let y = b.get(k, i);
                    if !x.is_zero() && !y.is_zero() {
                        tr = tr.plus(&x.times(y));
                    }
                }
            }
            acc = acc.plus(&tr.scaled(&q(2, 1)));
        }
        let gd = mat_vec_rs(g, &v.deriv);
        let mut dd = S::zero();
        for (x, y) in u.deriv.iter().zip(&gd) {
            if !x.is_zero() && !y.is_zero() {
                dd = dd.plus(&x.times(y));
            }
        }
        acc = acc.minus(&dd.scaled(&q(2, 1)));
        for (&a, c) in &u.expo {
            if let Some(d) = v.expo.get(&self.neg[a]) {
                acc = acc.plus(&c.times(d));
            }
        }
        Ok(acc)
    }

    /// Central charge `2⟨e,e⟩` when `e₁e = 2e`.
    pub fn conformal_check<S: Scalar>(&self, e: &GriessElement<S>) -> Result<S> {
        let ee = self.product(e, e)?;
        let residual = ee.sub(&e.scale(&S::from(q(2, 1))));
        if !residual.is_zero() {
            return Err(Error::NotConformal(format!("e·e − 2e has {} nonzero terms", residual.support_size())));
        }
        Ok(self.inner(e, e)?.scaled(&q(2, 1)))
    }

    /// Matrix of `v ↦ u₁v` on the weight-2 space.
    pub fn left_mult<S: Scalar>(&self, u: &GriessElement<S>) -> Result<SparseMatrix<S>> {
        let cols: Vec<SparseVec<S>> = (0..self.dim())
            .map(|k| {
                let b = self.basis_element(k);
                self.product(u, &b).map(|p| crate::linalg::sparse_from_dense(&self.to_vector(&p)))
            })
            .collect::<Result<_>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }

    /// Structure constants and Gram matrix of a list of elements spanning a
    /// product-closed subspace.
    pub fn structure_constants<S: Scalar + Serialize>(
        &self,
        labels: Vec<String>,
        basis: &[GriessElement<S>],
    ) -> Result<StructureConstants<S>> {
        let vecs: Vec<Vec<S>> = basis.iter().map(|b| self.to_vector(b)).collect();
        let k = basis.len();
        let mut table = vec![vec![Vec::new(); k]; k];
        let mut gram = vec![vec![S::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let p = self.product(&basis[i], &basis[j])?;
                table[i][j] = crate::linalg::solve_in_span(&vecs, &self.to_vector(&p))
                    .ok_or_else(|| Error::DimensionMismatch { expected: k, found: k + 1 })?;
                gram[i][j] = self.inner(&basis[i], &basis[j])?;
            }
        }
        Ok(StructureConstants { labels, table, gram })
    }
}

/// `c_ij^k` and Gram matrix of a basis.
#[derive(Clone, Debug, Serialize)]
pub struct StructureConstants<S> {
    pub labels: Vec<String>,
    /// `table[i][j][k]` is the coefficient of basis k in `b_i · b_j`.
    pub table: Vec<Vec<Vec<S>>>,
    pub gram: Vec<Vec<S>>,
}

impl<S: Scalar> GriessElement<S> {
    pub fn context_id(&self) -> u64 {
        self.ctx
    }

    pub fn quad_is_zero(&self) -> bool {
        (0..self.quad.rows).all(|i| (0..self.quad.cols).all(|j| self.quad.get(i, j).is_zero()))
    }

    pub fn is_zero(&self) -> bool {
        self.quad_is_zero() && self.deriv.iter().all(S::is_zero) && self.expo.values().all(S::is_zero)
    }

    pub fn support_size(&self) -> usize {
        let q = (0..self.quad.rows)
            .map(|i| (0..self.quad.cols).filter(|&j| !self.quad.get(i, j).is_zero()).count())
            .sum::<usize>();
        q + self.deriv.iter().filter(|x| !x.is_zero()).count() + self.expo.values().filter(|x| !x.is_zero()).count()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        assert_eq!(self.ctx, other.ctx, "elements of different contexts");
        let mut quad = self.quad.clone();
        for i in 0..quad.rows {
            for j in 0..quad.cols {
                quad.set(i, j, f(self.quad.get(i, j), other.quad.get(i, j)));
            }
        }
        let deriv = self.deriv.iter().zip(&other.deriv).map(|(a, b)| f(a, b)).collect();
        let mut expo = self.expo.clone();
        for (k, v) in &other.expo {
            let cur = expo.get(k).cloned().unwrap_or_else(S::zero);
            expo.insert(*k, f(&cur, v));
        }
        for (k, v) in expo.iter_mut() {
            if !other.expo.contains_key(k) {
                *v = f(v, &S::zero());
            }
        }
        expo.retain(|_, v| !v.is_zero());
        GriessElement { ctx: self.ctx, quad, deriv, expo }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.minus(b))
    }

    pub fn scale(&self, s: &S) -> Self {
        self.map(|x| x.times(s))
    }

    pub fn scale_q(&self, r: &Rational) -> Self {
        self.map(|x| x.scaled(r))
    }

    pub fn neg(&self) -> Self {
        self.map(S::negated)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GriessElement<T> {
        let mut quad = Matrix::zeros(self.quad.rows, self.quad.cols);
        for i in 0..self.quad.rows {
            for j in 0..self.quad.cols {
                quad.set(i, j, f(self.quad.get(i, j)));
            }
        }
        let mut expo: BTreeMap<usize, T> = self.expo.iter().map(|(k, v)| (*k, f(v))).collect();
        expo.retain(|_, v| !v.is_zero());
        GriessElement { ctx: self.ctx, quad, deriv: self.deriv.iter().map(&f).collect(), expo }
    }

    pub fn to_cyclotomic(&self) -> GriessElement<Cyclotomic> {
        self.map(S::to_cyclotomic)
    }

    /// Sum of a list of elements of one context.
    pub fn sum<'a>(items: impl IntoIterator<Item = &'a Self>) -> Option<Self>
    where
        S: 'a,
    {
        let mut it = items.into_iter();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, x| acc.add(x)))
    }
}

impl<S: Scalar + fmt::Display> fmt::Display for GriessElement<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "quad[")?;
        for i in 0..self.quad.rows {
            for j in i..self.quad.cols {
                let c = self.quad.get(i, j);
                if !c.is_zero() {
                    write!(f, " ({i},{j}):{c}")?;
                }
            }
        }
        write!(f, " ] deriv[")?;
        for (i, c) in self.deriv.iter().enumerate() {
            if !c.is_zero() {
                write!(f, " {i}:{c}")?;
            }
        }
        write!(f, " ] expo[")?;
        for (k, c) in &self.expo {
            write!(f, " {k}:{c}")?;
        }
        write!(f, " ]")
    }
}
