use crate::error::{Error, Result};
use crate::linalg::{rank_mod_p, sparse_from_dense, Echelon, SparseMatrix, SparseVec, RANK_PRIME};
use crate::scalar::{Rational, Scalar};

use super::{AlgebraContext, GriessElement, NodeFamily};

/// A subspace of the weight-2 space with a chosen basis.
#[derive(Clone, Debug)]
pub struct Subspace<S> {
    pub basis: Vec<Vec<S>>,
    echelon: Echelon<S>,
}

impl<S: Scalar> Subspace<S> {
    pub fn new(ncols: usize) -> Self {
        Subspace { basis: Vec::new(), echelon: Echelon::new(ncols) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.echelon.contains(v)
    }

    pub fn insert(&mut self, v: Vec<S>) -> bool {
        if self.echelon.insert(&v) {
            self.basis.push(v);
            true
        } else {
            false
        }
    }

    pub fn echelon(&self) -> &Echelon<S> {
        &self.echelon
    }
}

/// Smallest product-closed subspace containing the seeds; fails once the
/// dimension passes `max_dim`.
pub fn generated_closure<S: Scalar>(
    ctx: &AlgebraContext,
    seeds: &[GriessElement<S>],
    max_dim: usize,
) -> Result<Subspace<S>> {
    let mut sub = Subspace::new(ctx.dim());
    for s in seeds {
        sub.insert(ctx.to_vector(s));
    }
    let mut elems: Vec<GriessElement<S>> = sub.basis.iter().map(|v| ctx.from_vector(v)).collect();
    let mut done = 0;
    while done < elems.len() {
        // products of the newest element with every earlier one, both orders
        let k = done;
        for j in 0..=k {
            for (a, b) in [(k, j), (j, k)] {
                let p = ctx.product(&elems[a], &elems[b])?;
                let v = ctx.to_vector(&p);
                if sub.insert(v.clone()) {
                    if sub.dim() > max_dim {
                        return Err(Error::DimensionMismatch { expected: max_dim, found: sub.dim() });
                    }
                    elems.push(ctx.from_vector(&v));
                }
            }
        }
        done += 1;
    }
    Ok(sub)
}

/// Weight-2 part of the commutant of `V_{√2L}` in `V_{√2E8}` for one node.
#[derive(Debug)]
pub struct CosetAlgebra {
    /// `ω̃^k` for each component followed by `X^j`, `1 ≤ j < n`.
    pub basis: Vec<GriessElement<Rational>>,
    pub labels: Vec<String>,
    pub kernel_dim: usize,
}

impl AlgebraContext {
    /// Certifies that `∩_k ker (s^k)_1` is spanned by the `ω̃^k` and the
    /// coset sums `X^j`: the claimed vectors are annihilated exactly and are
    /// independent, and the rank of the stacked operators modulo a prime
    /// bounds the kernel dimension from above.
    pub fn coset_algebra(&self, fam: &NodeFamily) -> Result<CosetAlgebra> {
        let ops: Vec<SparseMatrix<Rational>> =
            fam.families.iter().map(|f| self.left_mult(&f.s)).collect::<Result<_>>()?;
        let node = &fam.node;
        let mut basis: Vec<GriessElement<Rational>> = fam.families.iter().map(|f| f.omega_tilde.clone()).collect();
        let mut labels: Vec<String> = fam.families.iter().map(|f| format!("ω̃[{}]", f.component)).collect();
        for j in 1..node.n {
            basis.push(fam.x[j].clone());
            labels.push(format!("X^{j}"));
        }
        let expected = basis.len();
        let mut claimed = Echelon::new(self.dim());
        for b in &basis {
            let v = sparse_from_dense(&self.to_vector(b));
            if !ops.iter().all(|op| op.apply_sparse(&v).is_empty()) || !claimed.insert(&self.to_vector(b)) {
                return Err(Error::DimensionMismatch { expected, found: claimed.dim() });
            }
        }
        let rows = transpose_rows(&ops, self.dim());
        let rank = rank_mod_p(&rows, self.dim(), RANK_PRIME)
            .ok_or_else(|| Error::InvalidArgument("denominator divisible by the rank prime".into()))?;
        let kernel_dim = self.dim() - rank;
        if kernel_dim != expected {
            return Err(Error::DimensionMismatch { expected, found: kernel_dim });
        }
        Ok(CosetAlgebra { basis, labels, kernel_dim })
    }
}

/// Rows of the operators stacked vertically.
fn transpose_rows(ops: &[SparseMatrix<Rational>], dim: usize) -> Vec<SparseVec<Rational>> {
    let mut out = Vec::new();
    for op in ops {
        let mut rows: Vec<SparseVec<Rational>> = vec![Vec::new(); op.nrows];
        for c in 0..dim {
            for (r, x) in &op.cols[c] {
                rows[*r].push((c, x.clone()));
            }
        }
        out.extend(rows.into_iter().filter(|r| !r.is_empty()));
    }
    out
}
