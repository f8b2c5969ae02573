use crate::codes::BinaryCode;
use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::linalg::{int_vec, QVec};
use crate::rootsys::{e8_hamming_model, Component, ExtendedE8Node, RootSystem};
use crate::scalar::{q, Cyclotomic, Rational};

use super::{AlgebraContext, GriessElement};

type QElement = GriessElement<Rational>;

/// `ω(Φ)`, `s(Φ)` and `ω̃ = ω(Φ) - s(Φ)` for one simple component Φ whose
/// roots, scaled by √2, lie in N.
#[derive(Clone, Debug)]
pub struct VirasoroFamily {
    pub component: Component,
    pub coxeter: usize,
    pub omega_phi: QElement,
    pub s: QElement,
    pub omega_tilde: QElement,
}

impl AlgebraContext {
    /// Family for the positive roots of one simple component, given as
    /// norm-4 vectors of N.
    pub fn virasoro_family(&self, component: Component, positive: &[QVec]) -> Result<VirasoroFamily> {
        let h = component.coxeter_number() as i64;
        if positive.len() != component.root_count() / 2 {
            return Err(Error::EmbeddingError(format!(
                "{component} needs {} positive roots, got {}",
                component.root_count() / 2,
                positive.len()
            )));
        }
        let mut quad = self.zero::<Rational>();
        let mut expo = self.zero::<Rational>();
        for x in positive {
            let sq = self.h_square::<Rational>(x)?;
            quad = quad.add(&sq);
            let idx = self.index_of(x).ok_or_else(|| Error::EmbeddingError(format!("{component}: root not in N")))?;
            expo = expo.add(&self.exp_index(idx)).add(&self.exp_index(self.neg_index(idx)));
        }
        let omega_phi = quad.scale_q(&q(1, 4 * h));
        let s = quad.scale_q(&q(1, 2)).sub(&expo.scale_q(&q(2, 1))).scale_q(&q(1, 2 * (h + 2)));
        let omega_tilde = omega_phi.sub(&s);
        Ok(VirasoroFamily { component, coxeter: h as usize, omega_phi, s, omega_tilde })
    }

    /// One family per component of a root system whose roots, as vectors,
    /// are norm-4 vectors of N.
    pub fn root_system_families(&self, rs: &RootSystem) -> Result<Vec<VirasoroFamily>> {
        rs.components
            .iter()
            .enumerate()
            .map(|(k, c)| self.virasoro_family(*c, &rs.component_positive_roots[k]))
            .collect()
    }

    /// Context `V_{√2R}` for a root system R, stored in R's coordinates
    /// with the metric doubled.
    pub fn sqrt2_root_lattice(rs: &RootSystem) -> Result<AlgebraContext> {
        let lat = rs.root_lattice()?;
        let metric = match lat.metric() {
            crate::lattice::Metric::Scaled(s) => crate::lattice::Metric::Scaled(s * &q(2, 1)),
            crate::lattice::Metric::Gram(g) => crate::lattice::Metric::Gram(g.scale(&q(2, 1))),
        };
        AlgebraContext::new(EvenLattice::new(lat.basis().to_vec(), metric)?)
    }

    /// Context `V_{√2E8}` in Hamming coordinates, `√2E8 = A(H8)` with the
    /// standard dot product.
    pub fn sqrt2_e8() -> Result<AlgebraContext> {
        let e8 = e8_hamming_model();
        AlgebraContext::new(EvenLattice::with_scale(e8.basis().to_vec(), q(1, 1))?)
    }
}

/// The Hamming-code Ising vectors of `V_{√2E8}`.
#[derive(Debug)]
pub struct HammingFamily {
    h8: Vec<u64>,
}

fn parity(x: u64) -> bool {
    x.count_ones() % 2 == 1
}

impl HammingFamily {
    pub fn new() -> Self {
        HammingFamily { h8: BinaryCode::hamming8().codewords() }
    }

    pub fn codewords(&self) -> &[u64] {
        &self.h8
    }

    fn residue(x: &[Rational]) -> Option<u64> {
        let mut m = 0u64;
        for (j, c) in x.iter().enumerate() {
            let c = c.to_integer()?;
            if c.rem_euclid(2) == 1 {
                m |= 1 << j;
            }
        }
        Some(m)
    }

    /// `X^ε_γ = Σ_{α ≡ γ mod 2, ⟨α,α⟩ = 4} (-1)^{ε⟨α,1⟩/2} e^α`.
    pub fn x(&self, ctx: &AlgebraContext, eps: u8, gamma: u64) -> QElement {
        let mut u = ctx.zero::<Rational>();
        for (k, a) in ctx.norm4().iter().enumerate() {
            if Self::residue(a) != Some(gamma) {
                continue;
            }
            let s: i64 = a.iter().map(|c| c.to_integer().unwrap_or(0)).sum();
            let sign = if eps == 1 && (s / 2).rem_euclid(2) == 1 { -1 } else { 1 };
            u.expo.insert(k, Rational::from_int(sign));
        }
        u
    }

    /// `ê^ε_δ = ω/16 + (1/32) Σ_{γ∈H8} (-1)^{⟨δ,γ⟩} X^ε_γ`.
    pub fn e(&self, ctx: &AlgebraContext, eps: u8, delta: u64) -> QElement {
        let mut u = ctx.omega::<Rational>().scale_q(&q(1, 16));
        for &g in &self.h8 {
            let sign = if parity(delta & g) { q(-1, 32) } else { q(1, 32) };
            u = u.add(&self.x(ctx, eps, g).scale_q(&sign));
        }
        u
    }

    /// One representative of each even class of `F_2^8 / H8`.
    pub fn even_classes(&self) -> Vec<u64> {
        let mut reps: Vec<u64> = Vec::new();
        for w in 0u64..256 {
            if parity(w) {
                continue;
            }
            if !reps.iter().any(|r| self.h8.contains(&(r ^ w))) {
                reps.push(w);
            }
        }
        reps
    }

    /// The sixteen vectors `ê^0_δ, ê^1_ζ` over even classes.
    pub fn frame(&self, ctx: &AlgebraContext) -> Vec<QElement> {
        let classes = self.even_classes();
        let mut out: Vec<QElement> = classes.iter().map(|&d| self.e(ctx, 0, d)).collect();
        out.extend(classes.iter().map(|&d| self.e(ctx, 1, d)));
        out
    }

    /// `ω^±_j = λ_j(-1)²/16 ± (e^{λ_j} + e^{-λ_j})/4` with `λ_j = 2e_j`.
    pub fn standard_frame(ctx: &AlgebraContext) -> Result<Vec<QElement>> {
        let mut out = Vec::new();
        for sign in [1, -1] {
            for j in 0..8 {
                let mut l = vec![0i64; 8];
                l[j] = 2;
                let lam = int_vec(&l);
                let neg: QVec = lam.iter().map(|x| -x).collect();
                let e = ctx.exp::<Rational>(&lam)?.add(&ctx.exp(&neg)?);
                out.push(ctx.h_square::<Rational>(&lam)?.scale_q(&q(1, 16)).add(&e.scale_q(&q(sign, 4))));
            }
        }
        Ok(out)
    }
}

impl Default for HammingFamily {
    fn default() -> Self {
        Self::new()
    }
}

/// Node-specific elements of `V_{√2E8}`: `ê`, `f̂`, the coset sums `X^j`
/// and the `ω̃` family of each component of `Φ(L(i))`.
#[derive(Debug)]
pub struct NodeFamily {
    pub node: ExtendedE8Node,
    /// `exp(-πi⟨β,x⟩)` for each norm-4 vector, `β = √2a`.
    pub phases: Vec<Cyclotomic>,
    pub e_hat: QElement,
    pub f_hat: GriessElement<Cyclotomic>,
    /// `X^0 = Σ_{α∈Φ} e^{√2α}` followed by `X^j`, `1 ≤ j < n`.
    pub x: Vec<QElement>,
    pub families: Vec<VirasoroFamily>,
}

impl NodeFamily {
    pub fn new(ctx: &AlgebraContext, node: ExtendedE8Node) -> Result<Self> {
        let n = node.n;
        let mut x: Vec<QElement> = (0..n).map(|_| ctx.zero()).collect();
        for (k, v) in ctx.norm4().iter().enumerate() {
            let j = node.coset_index(v).ok_or_else(|| Error::EmbeddingError("root outside E8".into()))?;
            x[j].expo.insert(k, Rational::one());
        }
        let mut e_hat = ctx.omega::<Rational>().scale_q(&q(1, 16));
        for xj in &x {
            e_hat = e_hat.add(&xj.scale_q(&q(1, 32)));
        }
        // β = √2a has the Hamming coordinates of a under the doubled metric
        let phases = ctx.phases(&node.glue_a);
        let f_hat = ctx.apply_phases(&e_hat, &phases);
        let families = ctx.root_system_families(&node.root_system)?;
        Ok(NodeFamily { node, phases, e_hat, f_hat, x, families })
    }

    /// `ω/16 + (1/32) Σ_j ξ^j X^j` with `ξ = exp(2πi/n)`.
    pub fn f_hat_formula(&self, ctx: &AlgebraContext) -> GriessElement<Cyclotomic> {
        let n = self.node.n as u32;
        let mut u = ctx.omega::<Rational>().scale_q(&q(1, 16)).to_cyclotomic();
        for (j, xj) in self.x.iter().enumerate() {
            let c = Cyclotomic::root_of_unity(n, j as i64).scale(&q(1, 32));
            u = u.add(&xj.to_cyclotomic().scale(&c));
        }
        u
    }
}
