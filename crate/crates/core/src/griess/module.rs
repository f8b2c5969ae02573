use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::{QVec, SparseMatrix};
use crate::scalar::{q, Rational, Scalar};

use super::{AlgebraContext, GriessElement};

/// Span of `e^y` over a set of minimal-norm vectors y of cosets `N + y`,
/// with the action of the weight-2 space by the mode `u_1`.
#[derive(Clone, Debug)]
pub struct ModuleSpace {
    vectors: Vec<QVec>,
    index: HashMap<QVec, usize>,
    pairing: Vec<QVec>,
}

/// `Σ c_y e^y`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleVector<S> {
    pub coeffs: BTreeMap<usize, S>,
}

impl<S: Scalar> ModuleVector<S> {
    pub fn basis(k: usize) -> Self {
        ModuleVector { coeffs: [(k, S::one())].into_iter().collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(S::is_zero)
    }
}

impl ModuleSpace {
    pub fn new(ctx: &AlgebraContext, vectors: Vec<QVec>) -> Self {
        let index = vectors.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
        let pairing = vectors.iter().map(|y| ctx.lattice().pairings(y)).collect();
        ModuleSpace { vectors, index, pairing }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[QVec] {
        &self.vectors
    }

    pub fn index_of(&self, y: &[Rational]) -> Option<usize> {
        self.index.get(y).copied()
    }

    /// `u_1 e^y`.
    fn act_basis<S: Scalar>(&self, ctx: &AlgebraContext, u: &GriessElement<S>, k: usize) -> Result<BTreeMap<usize, S>> {
        let p = &self.pairing[k];
        let y = &self.vectors[k];
        let mut coef = S::zero();
        for i in 0..p.len() {
            if p[i].is_zero() {
                continue;
            }
            let mut row = S::zero();
            for j in 0..p.len() {
                let qij = u.quad.get(i, j);
                if !qij.is_zero() && !p[j].is_zero() {
                    row.add_in_place(&qij.scaled(&p[j]));
                }
            }
            coef.add_in_place(&row.scaled(&p[i]));
            if !u.deriv[i].is_zero() {
                coef.add_in_place(&u.deriv[i].scaled(&p[i]).negated());
            }
        }
        let mut out = BTreeMap::new();
        if !coef.is_zero() {
            out.insert(k, coef);
        }
        let lat = ctx.lattice();
        for (x, c) in &u.expo {
            let xv = &ctx.norm4()[*x];
            let ip = lat.ip(xv, y);
            if ip > q(-2, 1) {
                continue;
            }
            if ip < q(-2, 1) {
                return Err(Error::LeavesMinimalSpace);
            }
            let s: QVec = xv.iter().zip(y).map(|(a, b)| a + b).collect();
            let t = self.index_of(&s).ok_or(Error::LeavesMinimalSpace)?;
            out.entry(t).or_insert_with(S::zero).add_in_place(c);
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    pub fn act<S: Scalar>(
        &self,
        ctx: &AlgebraContext,
        u: &GriessElement<S>,
        v: &ModuleVector<S>,
    ) -> Result<ModuleVector<S>> {
        if u.context_id() != ctx.id {
            return Err(Error::ContextMismatch);
        }
        let mut out: BTreeMap<usize, S> = BTreeMap::new();
        for (k, c) in &v.coeffs {
            for (t, x) in self.act_basis(ctx, u, *k)? {
                out.entry(t).or_insert_with(S::zero).add_product(&x, c);
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(ModuleVector { coeffs: out })
    }

    /// Matrix of `u_1` on this space.
    pub fn operator<S: Scalar>(&self, ctx: &AlgebraContext, u: &GriessElement<S>) -> Result<SparseMatrix<S>> {
        if u.context_id() != ctx.id {
            return Err(Error::ContextMismatch);
        }
        let cols =
            (0..self.dim()).map(|k| self.act_basis(ctx, u, k).map(|m| m.into_iter().collect())).collect::<Result<_>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }
}
