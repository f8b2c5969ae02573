use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{sparse_from_dense, Matrix, SparseMatrix, SparseVec};
use crate::scalar::{q, Cyclotomic, Rational, Scalar};

use super::{AlgebraContext, GriessElement};

/// Automorphisms of V_N acting on weight 2.
#[derive(Clone, Debug)]
pub enum Automorphism {
    /// Lift of -1 on N.
    Theta,
    /// `e^x ↦ exp(-πi⟨β,x⟩) e^x`.
    Phase(Vec<Rational>),
    /// Lift of the reflection in a norm-4 vector of N.
    Weyl(Vec<Rational>),
}

/// Eigenvalues an operator is allowed to have, and those on which the
/// associated involution is -1.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub allowed: Vec<Rational>,
    pub minus: Vec<Rational>,
}

impl Spectrum {
    /// Weight-2 space of V_N for an Ising vector, where weight-1 vectors
    /// contribute the extra eigenvalue 17/16.
    pub fn weight2() -> Self {
        Spectrum { allowed: vec![q(0, 1), q(1, 2), q(2, 1), q(1, 16), q(17, 16)], minus: vec![q(1, 16), q(17, 16)] }
    }

    /// A product-closed subalgebra without weight-1 contributions.
    pub fn subalgebra() -> Self {
        Spectrum { allowed: vec![q(0, 1), q(1, 2), q(2, 1), q(1, 16)], minus: vec![q(1, 16)] }
    }

    /// Minimal-weight vectors of a module of weight at most 1.
    pub fn module() -> Self {
        Spectrum { allowed: vec![q(0, 1), q(1, 2), q(1, 16)], minus: vec![q(1, 16)] }
    }
}

fn poly_mul_linear(p: &[Rational], root: &Rational) -> Vec<Rational> {
    // p(x)·(x - root)
    let mut out = vec![Rational::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] = &out[i + 1] + c;
        out[i] = &out[i] - &(c * root);
    }
    out
}

/// Coefficients (low degree first) of the interpolating polynomial with
/// the given values on distinct points.
pub(crate) fn interpolate(points: &[Rational], values: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); points.len()];
    for (i, (mu, val)) in points.iter().zip(values).enumerate() {
        let mut basis = vec![Rational::one()];
        let mut denom = Rational::one();
        for (j, nu) in points.iter().enumerate() {
            if i != j {
                basis = poly_mul_linear(&basis, nu);
                denom = &denom * &(mu - nu);
            }
        }
        let f = val / &denom;
        for (o, b) in out.iter_mut().zip(&basis) {
            *o = &*o + &(b * &f);
        }
    }
    out
}

fn shift_apply<S: Scalar>(op: &SparseMatrix<S>, v: &SparseVec<S>, mu: &Rational) -> SparseVec<S> {
    let mut acc: BTreeMap<usize, S> = op.apply_sparse(v).into_iter().collect();
    for (i, x) in v {
        acc.entry(*i).or_insert_with(S::zero).add_in_place(&x.scaled(mu).negated());
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

fn poly_apply<S: Scalar>(op: &SparseMatrix<S>, coeffs: &[Rational], v: &SparseVec<S>) -> SparseVec<S> {
    let mut acc: BTreeMap<usize, S> = BTreeMap::new();
    for c in coeffs.iter().rev() {
        let w = op.apply_sparse(&acc.into_iter().filter(|(_, x)| !x.is_zero()).collect());
        acc = w.into_iter().collect();
        if !c.is_zero() {
            for (i, x) in v {
                acc.entry(*i).or_insert_with(S::zero).add_in_place(&x.scaled(c));
            }
        }
    }
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

/// Checks that `op` is diagonalizable with eigenvalues in `spec.allowed`.
pub fn check_spectrum<S: Scalar>(op: &SparseMatrix<S>, spec: &Spectrum) -> Result<()> {
    for k in 0..op.ncols() {
        let mut v: SparseVec<S> = vec![(k, S::one())];
        for mu in &spec.allowed {
            v = shift_apply(op, &v, mu);
            if v.is_empty() {
                break;
            }
        }
        if !v.is_empty() {
            return Err(Error::BadSpectrum(format!("basis vector {k} is not annihilated by the allowed spectrum")));
        }
    }
    Ok(())
}

/// Multiplicity of each allowed eigenvalue, as the trace of its spectral
/// projector. Assumes `check_spectrum` passed.
pub fn eigen_multiplicities<S: Scalar>(op: &SparseMatrix<S>, spec: &Spectrum) -> Vec<(Rational, usize)> {
    let mut out = Vec::new();
    for mu in &spec.allowed {
        let values: Vec<Rational> =
            spec.allowed.iter().map(|nu| if nu == mu { Rational::one() } else { Rational::zero() }).collect();
        let p = interpolate(&spec.allowed, &values);
        let mut tr = S::zero();
        for k in 0..op.ncols() {
            let w = poly_apply(op, &p, &vec![(k, S::one())]);
            if let Ok(pos) = w.binary_search_by_key(&k, |(i, _)| *i) {
                tr.add_in_place(&w[pos].1);
            }
        }
        let tr = tr.to_cyclotomic().as_rational().ok().and_then(|r| r.to_integer()).unwrap_or(-1);
        out.push((mu.clone(), tr.max(0) as usize));
    }
    out
}

/// Involution equal to -1 on the `spec.minus` eigenspaces of `op` and +1
/// elsewhere, after checking the spectrum.
pub fn tau_involution<S: Scalar>(op: &SparseMatrix<S>, spec: &Spectrum) -> Result<SparseMatrix<S>> {
    check_spectrum(op, spec)?;
    let values: Vec<Rational> =
        spec.allowed.iter().map(|mu| if spec.minus.contains(mu) { q(-1, 1) } else { q(1, 1) }).collect();
    let p = interpolate(&spec.allowed, &values);
    let cols = (0..op.ncols()).map(|k| poly_apply(op, &p, &vec![(k, S::one())])).collect();
    Ok(SparseMatrix::from_columns(op.nrows, cols))
}

impl AlgebraContext {
    pub fn theta<S: Scalar>(&self, u: &GriessElement<S>) -> GriessElement<S> {
        let mut out = u.clone();
        out.deriv = u.deriv.iter().map(S::negated).collect();
        out.expo = u.expo.iter().map(|(k, c)| (self.neg_index(*k), c.clone())).collect();
        out
    }

    /// `exp(-πi⟨β,x⟩)` for every norm-4 vector x.
    pub fn phases(&self, beta: &[Rational]) -> Vec<Cyclotomic> {
        let half = q(-1, 2);
        self.norm4().iter().map(|x| Cyclotomic::exp_2pi_i(&(&self.lattice().ip(beta, x) * &half))).collect()
    }

    pub fn apply_phases<S: Scalar>(&self, u: &GriessElement<S>, phases: &[Cyclotomic]) -> GriessElement<Cyclotomic> {
        let mut out = u.to_cyclotomic();
        for (k, c) in out.expo.iter_mut() {
            *c = c.mul(&phases[*k]);
        }
        out
    }

    /// Lift of the reflection `v ↦ v - (2⟨v,x⟩/⟨x,x⟩) x`.
    pub fn weyl<S: Scalar>(&self, u: &GriessElement<S>, root: &[Rational]) -> Result<GriessElement<S>> {
        let lat = self.lattice();
        let nx = lat.norm(root);
        if nx.is_zero() {
            return Err(Error::InvalidArgument("zero reflection vector".into()));
        }
        let reflect = |v: &[Rational]| -> Vec<Rational> {
            let f = &(&lat.ip(v, root) * &q(2, 1)) / &nx;
            v.iter().zip(root).map(|(a, b)| a - &(b * &f)).collect()
        };
        let r = self.rank();
        let mut w = Matrix::<Rational>::zeros(r, r);
        for (i, b) in lat.basis().iter().enumerate() {
            let c = lat
                .coordinates(&reflect(b))
                .filter(|c| c.iter().all(Rational::is_integer))
                .ok_or_else(|| Error::InvalidArgument("reflection does not preserve the lattice".into()))?;
            for (k, x) in c.into_iter().enumerate() {
                w.set(k, i, x);
            }
        }
        let mut out = self.zero::<S>();
        for i in 0..r {
            for j in 0..r {
                let mut acc = S::zero();
                for a in 0..r {
                    if w.get(i, a).is_zero() {
                        continue;
                    }
                    for b in 0..r {
                        let qab = u.quad.get(a, b);
                        if !qab.is_zero() && !w.get(j, b).is_zero() {
                            acc.add_in_place(&qab.scaled(&(w.get(i, a) * w.get(j, b))));
                        }
                    }
                }
                out.quad.set(i, j, acc);
            }
            let mut acc = S::zero();
            for a in 0..r {
                if !u.deriv[a].is_zero() && !w.get(i, a).is_zero() {
                    acc.add_in_place(&u.deriv[a].scaled(w.get(i, a)));
                }
            }
            out.deriv[i] = acc;
        }
        for (k, c) in &u.expo {
            let img = self.index_of(&reflect(&self.norm4()[*k])).expect("reflection permutes norm-4 vectors");
            out.expo.insert(img, c.clone());
        }
        Ok(out)
    }

    /// Matrix of a linear map on the weight-2 space.
    pub fn matrix_of<S: Scalar>(
        &self,
        f: impl Fn(&GriessElement<S>) -> Result<GriessElement<S>>,
    ) -> Result<SparseMatrix<S>> {
        let cols = (0..self.dim())
            .map(|k| f(&self.basis_element(k)).map(|img| sparse_from_dense(&self.to_vector(&img))))
            .collect::<Result<_>>()?;
        Ok(SparseMatrix::from_columns(self.dim(), cols))
    }

    pub fn automorphism_matrix(&self, a: &Automorphism) -> Result<SparseMatrix<Cyclotomic>> {
        match a {
            Automorphism::Theta => self.matrix_of::<Cyclotomic>(|u| Ok(self.theta(u))),
            Automorphism::Phase(beta) => {
                let ph = self.phases(beta);
                self.matrix_of::<Cyclotomic>(|u| Ok(self.apply_phases(u, &ph)))
            }
            Automorphism::Weyl(root) => self.matrix_of::<Cyclotomic>(|u| self.weyl(u, root)),
        }
    }

    pub fn apply<S: Scalar>(&self, a: &Automorphism, u: &GriessElement<S>) -> Result<GriessElement<Cyclotomic>> {
        match a {
            Automorphism::Theta => Ok(self.theta(u).to_cyclotomic()),
            Automorphism::Phase(beta) => Ok(self.apply_phases(u, &self.phases(beta))),
            Automorphism::Weyl(root) => Ok(self.weyl(u, root)?.to_cyclotomic()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_hits_values() {
        let pts = vec![q(0, 1), q(1, 2), q(2, 1)];
        let vals = vec![q(1, 1), q(-1, 1), q(5, 1)];
        let p = interpolate(&pts, &vals);
        for (x, y) in pts.iter().zip(&vals) {
            let v = p.iter().rev().fold(Rational::zero(), |acc, c| &(&acc * x) + c);
            assert_eq!(&v, y);
        }
    }

    #[test]
    fn tau_of_diagonal_operator() {
        let op = SparseMatrix::diagonal(vec![q(0, 1), q(1, 16), q(1, 2), q(1, 16)]);
        let t = tau_involution(&op, &Spectrum::subalgebra()).unwrap();
        assert_eq!(t, SparseMatrix::diagonal(vec![q(1, 1), q(-1, 1), q(1, 1), q(-1, 1)]));
        let bad = SparseMatrix::diagonal(vec![q(3, 1)]);
        assert!(matches!(tau_involution(&bad, &Spectrum::subalgebra()), Err(Error::BadSpectrum(_))));
    }
}
