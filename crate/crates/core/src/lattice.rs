//! Even lattices: invariants, exact short-vector enumeration, cosets and
//! coset root counts.

use std::collections::HashMap;
use std::path::Path;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, vadd, vscale, vsub, Matrix, QVec};
use crate::rootsys::{ExtendedE8Node, RootSystem};
use crate::scalar::Rational;

/// Inner product on the ambient rational space.
#[derive(Clone, Debug, PartialEq)]
pub enum Metric {
    /// `scale · dot(x, y)`
    Scaled(Rational),
    /// `xᵀ M y`
    Gram(Matrix<Rational>),
}

impl Metric {
    pub fn standard() -> Self {
        Metric::Scaled(Rational::one())
    }

    pub fn ip(&self, x: &[Rational], y: &[Rational]) -> Rational {
        match self {
            Metric::Scaled(s) => {
                let d = dot(x, y);
                if s.is_one() {
                    d
                } else {
                    &d * s
                }
            }
            Metric::Gram(m) => dot(x, &m.mul_vec(y)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvenLattice {
    basis: Vec<QVec>,
    metric: Metric,
    gram: Matrix<Rational>,
    gram_inv: Matrix<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LatticeInvariants {
    pub det: Rational,
    pub dual_basis: Vec<QVec>,
    pub is_even: bool,
    pub is_doubly_even: bool,
}

impl EvenLattice {
    pub fn new(basis: Vec<QVec>, metric: Metric) -> Result<Self> {
        let r = basis.len();
        let mut gram = Matrix::zeros(r, r);
        for i in 0..r {
            for j in 0..=i {
                let v = metric.ip(&basis[i], &basis[j]);
                gram.set(i, j, v.clone());
                gram.set(j, i, v);
            }
        }
        if r > 0 && ldl(&gram).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        let gram_inv = gram.inverse().ok_or(Error::NotPositiveDefinite)?;
        Ok(EvenLattice { basis, metric, gram, gram_inv })
    }

    pub fn with_scale(basis: Vec<QVec>, scale: Rational) -> Result<Self> {
        Self::new(basis, Metric::Scaled(scale))
    }

    /// Lattice Z^r with the given Gram matrix.
    pub fn from_gram(gram: Matrix<Rational>) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::InvalidArgument("Gram matrix is not symmetric".into()));
        }
        let r = gram.rows;
        let basis = (0..r)
            .map(|i| (0..r).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        Self::new(basis, Metric::Gram(gram))
    }

    pub fn load_gram_file(path: &Path) -> Result<Self> {
        Self::from_gram(parse_matrix_text(&std::fs::read_to_string(path)?)?)
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.first().map_or(0, Vec::len)
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    pub fn metric(&self) -> &Metric {
        &self.metric
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &Matrix<Rational> {
        &self.gram_inv
    }

    pub fn ip(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.metric.ip(x, y)
    }

    pub fn norm(&self, x: &[Rational]) -> Rational {
        self.metric.ip(x, x)
    }

    pub fn det(&self) -> Rational {
        self.gram.det()
    }

    /// Ambient vector with the given basis coordinates.
    pub fn vector(&self, coords: &[Rational]) -> QVec {
        let mut out = vec![Rational::zero(); self.ambient_dim()];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                *o += &(c * x);
            }
        }
        out
    }

    pub fn int_vector(&self, coords: &[i64]) -> QVec {
        let c: QVec = coords.iter().map(|&x| Rational::from_int(x)).collect();
        self.vector(&c)
    }

    /// `⟨b_i, v⟩` for every basis vector.
    pub fn pairings(&self, v: &[Rational]) -> QVec {
        self.basis.iter().map(|b| self.ip(b, v)).collect()
    }

    /// Basis coordinates of `v`, when it lies in the rational span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<QVec> {
        let c = self.gram_inv.mul_vec(&self.pairings(v));
        (self.vector(&c) == v).then_some(c)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some_and(|c| c.iter().all(Rational::is_integer))
    }

    pub fn dual_basis(&self) -> Vec<QVec> {
        (0..self.rank()).map(|i| self.vector(self.gram_inv.row(i))).collect()
    }

    pub fn is_integral(&self) -> bool {
        (0..self.rank()).all(|i| (0..self.rank()).all(|j| self.gram.get(i, j).is_integer()))
    }

    pub fn is_even(&self) -> bool {
        self.is_integral()
            && (0..self.rank()).all(|i| self.gram.get(i, i).to_integer().is_some_and(|n| n % 2 == 0))
    }

    /// All norms divisible by 4: even basis pairings and basis norms ≡ 0 mod 4.
    pub fn is_doubly_even(&self) -> bool {
        self.is_integral()
            && (0..self.rank()).all(|i| {
                (0..self.rank()).all(|j| {
                    let g = self.gram.get(i, j).to_integer().unwrap_or(1);
                    if i == j {
                        g % 4 == 0
                    } else {
                        g % 2 == 0
                    }
                })
            })
    }

    pub fn invariants(&self) -> LatticeInvariants {
        LatticeInvariants {
            det: self.det(),
            dual_basis: self.dual_basis(),
            is_even: self.is_even(),
            is_doubly_even: self.is_doubly_even(),
        }
    }

    /// True when every basis vector of `self` lies in `other`.
    pub fn is_sublattice_of(&self, other: &EvenLattice) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// Index of a full-rank sublattice `self` in `other`, from the ratio of
    /// determinants.
    pub fn index_in(&self, other: &EvenLattice) -> Option<u64> {
        if self.rank() != other.rank() || !self.is_sublattice_of(other) {
            return None;
        }
        let ratio = (&self.det() / &other.det()).to_integer()?;
        let r = (ratio as f64).sqrt().round() as i64;
        (r * r == ratio).then_some(r as u64)
    }

    /// Size-reduces the basis pairwise until `|2⟨b_i,b_j⟩| ≤ ⟨b_j,b_j⟩`,
    /// swapping shorter vectors to the front.
    pub fn reduced(&self) -> Result<Self> {
        let mut b = self.basis.clone();
        loop {
            let mut changed = false;
            b.sort_by_key(|v| self.norm(v));
            for i in 0..b.len() {
                for j in 0..b.len() {
                    if i == j {
                        continue;
                    }
                    let nj = self.norm(&b[j]);
                    let t = (&self.ip(&b[i], &b[j]) / &nj).round();
                    if t != 0 {
                        let cand = vsub(&b[i], &vscale(&b[j], &Rational::from_int(t)));
                        if self.norm(&cand) < self.norm(&b[i]) {
                            b[i] = cand;
                            changed = true;
                        }
                    }
                }
            }
            if !changed {
                break;
            }
        }
        EvenLattice::new(b, self.metric.clone())
    }

    pub fn enumerator(&self) -> Enumerator {
        Enumerator::new(&self.gram)
    }

    /// All vectors of exactly the given norm, sorted lexicographically.
    pub fn short_vectors(&self, norm: &Rational) -> Vec<QVec> {
        Coset::zero(self.clone()).vectors_of_norm(norm)
    }

    /// All vectors of norm at most `bound`, sorted lexicographically.
    pub fn vectors_up_to(&self, bound: &Rational) -> Vec<QVec> {
        Coset::zero(self.clone()).vectors_up_to(bound)
    }

    /// Representatives of the discriminant group `self* / self`, found by
    /// closing `{0}` under addition of the dual basis.
    pub fn dual_quotient_reps(&self) -> Vec<QVec> {
        let dual = self.dual_basis();
        let zero = vec![Rational::zero(); self.ambient_dim()];
        let mut seen: HashMap<Vec<Rational>, usize> = HashMap::new();
        let mut reps = vec![zero.clone()];
        seen.insert(Coset::new(self.clone(), zero).key(), 0);
        let mut head = 0;
        while head < reps.len() {
            let cur = reps[head].clone();
            head += 1;
            for d in &dual {
                let next = vadd(&cur, d);
                let c = Coset::new(self.clone(), next);
                let key = c.key();
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(reps.len());
                    reps.push(c.canonical_shift());
                }
            }
        }
        reps
    }
}

/// Parses whitespace-separated rational entries, one matrix row per line.
pub fn parse_matrix_text(text: &str) -> Result<Matrix<Rational>> {
    let rows: Vec<QVec> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.split_whitespace().map(str::parse).collect::<Result<QVec>>())
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Parse("ragged matrix".into()));
    }
    Ok(Matrix::from_rows(&rows))
}

/// `G = Uᵀ D U` with U unit upper triangular; returns `(d, U)` or `None`
/// when G is not positive definite.
fn ldl(g: &Matrix<Rational>) -> Option<(Vec<Rational>, Matrix<Rational>)> {
    let n = g.rows;
    let mut q = g.clone();
    for i in 0..n {
        if !(q.get(i, i) > &Rational::zero()) {
            return None;
        }
        let qii = q.get(i, i).clone();
        for j in (i + 1)..n {
            let v = q.get(i, j).clone();
            q.set(j, i, v.clone());
            q.set(i, j, &v / &qii);
        }
        for k in (i + 1)..n {
            for l in k..n {
                let v = q.get(k, l) - &(q.get(k, i) * q.get(i, l));
                q.set(k, l, v);
            }
        }
    }
    let d = (0..n).map(|i| q.get(i, i).clone()).collect();
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in (i + 1)..n {
            u.set(i, j, q.get(i, j).clone());
        }
    }
    Some((d, u))
}

/// Depth-first Fincke–Pohst enumeration with exact rational bounds.
#[derive(Clone, Debug)]
pub struct Enumerator {
    d: Vec<Rational>,
    u: Matrix<Rational>,
    budget: Option<Duration>,
}

struct Search<'a> {
    en: &'a Enumerator,
    shift: &'a [Rational],
    bound: &'a Rational,
    x: Vec<Rational>,
    out: Vec<(QVec, Rational)>,
    start: Instant,
    steps: u64,
    visit: &'a mut dyn FnMut(&[Rational], &Rational) -> bool,
    stopped: bool,
}

impl Enumerator {
    pub fn new(gram: &Matrix<Rational>) -> Self {
        let (d, u) = ldl(gram).expect("positive definite Gram matrix");
        Enumerator { d, u, budget: None }
    }

    pub fn with_budget(mut self, budget: Duration) -> Self {
        self.budget = Some(budget);
        self
    }

    /// Coordinate vectors `x ∈ shift + Z^r` with `xᵀGx ≤ bound`, together
    /// with their norms, in deterministic order.
    pub fn enumerate(&self, shift: &[Rational], bound: &Rational) -> Result<Vec<(QVec, Rational)>> {
        let mut keep = |_: &[Rational], _: &Rational| true;
        self.walk(shift, bound, &mut keep)
    }

    /// Like [`enumerate`](Self::enumerate) but hands each hit to `visit`
    /// instead of storing it; `visit` returns false to stop early.
    pub fn for_each(
        &self,
        shift: &[Rational],
        bound: &Rational,
        visit: &mut dyn FnMut(&[Rational], &Rational) -> bool,
    ) -> Result<bool> {
        let n = self.d.len();
        if n == 0 {
            return Ok(visit(&[], &Rational::zero()));
        }
        let mut s = Search {
            en: self,
            shift,
            bound,
            x: vec![Rational::zero(); self.d.len()],
            out: Vec::new(),
            start: Instant::now(),
            steps: 0,
            visit,
            stopped: false,
        };
        s.recurse(n - 1, Rational::zero(), false)?;
        Ok(!s.stopped)
    }

    fn walk(
        &self,
        shift: &[Rational],
        bound: &Rational,
        keep: &mut dyn FnMut(&[Rational], &Rational) -> bool,
    ) -> Result<Vec<(QVec, Rational)>> {
        let n = self.d.len();
        if n == 0 {
            return Ok(vec![(Vec::new(), Rational::zero())]);
        }
        let mut s = Search {
            en: self,
            shift,
            bound,
            x: vec![Rational::zero(); n],
            out: Vec::new(),
            start: Instant::now(),
            steps: 0,
            visit: keep,
            stopped: false,
        };
        s.recurse(n - 1, Rational::zero(), true)?;
        Ok(s.out)
    }
}

impl Search<'_> {
    fn recurse(&mut self, i: usize, used: Rational, store: bool) -> Result<()> {
        if self.stopped {
            return Ok(());
        }
        self.steps += 1;
        if self.steps.is_multiple_of(4096) {
            if let Some(b) = self.en.budget {
                if self.start.elapsed() > b {
                    return Err(Error::BudgetExceeded(b.as_secs()));
                }
            }
        }
        let n = self.en.d.len();
        let rem = self.bound - &used;
        let mut m = Rational::zero();
        for j in (i + 1)..n {
            let u = self.en.u.get(i, j);
            if !u.is_zero() {
                m += &(u * &self.x[j]);
            }
        }
        let di = &self.en.d[i];
        let s = &self.shift[i];
        let base = s + &m;
        let cost = |z: i64| -> Rational {
            let t = &base + &Rational::from_int(z);
            &(&t * &t) * di
        };
        let z0 = (-&base).round();
        if cost(z0) > rem {
            return Ok(());
        }
        let mut lo = z0;
        while cost(lo - 1) <= rem {
            lo -= 1;
        }
        let mut hi = z0;
        while cost(hi + 1) <= rem {
            hi += 1;
        }
        for z in lo..=hi {
            let c = cost(z);
            self.x[i] = s + &Rational::from_int(z);
            let total = &used + &c;
            if i == 0 {
                let keep = (self.visit)(&self.x, &total);
                if store {
                    if keep {
                        self.out.push((self.x.clone(), total));
                    }
                } else if !keep {
                    self.stopped = true;
                    return Ok(());
                }
            } else {
                self.recurse(i - 1, total, store)?;
                if self.stopped {
                    return Ok(());
                }
            }
        }
        Ok(())
    }
}

/// A coset `shift + lattice` inside the rational span of the lattice.
#[derive(Clone, Debug)]
pub struct Coset {
    pub lattice: EvenLattice,
    pub shift: QVec,
}

impl PartialEq for Coset {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Coset {
    pub fn new(lattice: EvenLattice, shift: QVec) -> Self {
        Coset { lattice, shift }
    }

    pub fn zero(lattice: EvenLattice) -> Self {
        let z = vec![Rational::zero(); lattice.ambient_dim()];
        Coset { lattice, shift: z }
    }

    fn shift_coords(&self) -> QVec {
        self.lattice.coordinates(&self.shift).expect("coset shift outside the lattice span")
    }

    /// Fractional basis coordinates of the shift; equal keys mean equal cosets.
    pub fn key(&self) -> Vec<Rational> {
        self.shift_coords().iter().map(Rational::fract).collect()
    }

    pub fn canonical_shift(&self) -> QVec {
        self.lattice.vector(&self.key())
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.lattice.contains(&vsub(v, &self.shift))
    }

    fn enumerate(&self, bound: &Rational) -> Vec<(QVec, Rational)> {
        let en = self.lattice.enumerator();
        let mut out: Vec<(QVec, Rational)> = en
            .enumerate(&self.shift_coords(), bound)
            .expect("unbudgeted enumeration")
            .into_iter()
            .map(|(c, n)| (self.lattice.vector(&c), n))
            .collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    pub fn vectors_up_to(&self, bound: &Rational) -> Vec<QVec> {
        self.enumerate(bound).into_iter().map(|(v, _)| v).collect()
    }

    pub fn vectors_of_norm(&self, norm: &Rational) -> Vec<QVec> {
        self.enumerate(norm).into_iter().filter(|(_, n)| n == norm).map(|(v, _)| v).collect()
    }

    /// Minimum norm `k` over the coset and every vector achieving it.
    pub fn min_norm(&self) -> (Rational, Vec<QVec>) {
        let c = self.shift_coords();
        let rounded: QVec = c.iter().map(|x| Rational::from_int(x.round())).collect();
        let start = self.lattice.vector(&vsub(&c, &rounded));
        let bound = self.lattice.norm(&start);
        let all = self.enumerate(&bound);
        let k = all.iter().map(|(_, n)| n.clone()).min().expect("the start vector is in range");
        let reps = all.into_iter().filter(|(_, n)| *n == k).map(|(v, _)| v).collect();
        (k, reps)
    }
}

/// `{min norm, minimal vectors}` of a coset, as a named pair.
pub fn coset_min_norm(c: &Coset) -> (Rational, Vec<QVec>) {
    c.min_norm()
}

/// `|H_j|`: norm-2 vectors of E8 in the coset `j·α_i + L(i)`.
pub fn count_roots_in_coset(node: &ExtendedE8Node, j: usize) -> usize {
    let shift = vscale(&node.alphas[node.i], &Rational::from_int(j as i64));
    Coset::new(node.lattice.clone(), shift).vectors_of_norm(&Rational::from_int(2)).len()
}

/// `|X_η|`: pairs `(α, β)` with α a root, β minimal in the coset and α + β = η.
pub fn count_x_eta(rs: &RootSystem, gamma: &Coset, eta: &[Rational]) -> Result<usize> {
    let (k, _) = gamma.min_norm();
    if !gamma.contains(eta) || gamma.lattice.norm(eta) != k {
        return Err(Error::NotMinimal);
    }
    Ok(rs.roots.iter().filter(|a| gamma.lattice.norm(&vsub(eta, a)) == k).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use crate::scalar::q;

    fn a2() -> EvenLattice {
        EvenLattice::with_scale(vec![int_vec(&[1, -1, 0]), int_vec(&[0, 1, -1])], q(1, 1)).unwrap()
    }

    #[test]
    fn a2_discriminant_group() {
        let l = a2();
        assert_eq!(l.det(), q(3, 1));
        let reps = l.dual_quotient_reps();
        assert_eq!(reps.len(), 3);
        let mu = vec![q(1, 3), q(1, 3), q(-2, 3)];
        let (k, mins) = Coset::new(l, mu).min_norm();
        assert_eq!(k, q(2, 3));
        assert_eq!(mins.len(), 3);
    }

    #[test]
    fn trivial_coset_minimum() {
        let (k, reps) = Coset::zero(a2()).min_norm();
        assert!(k.is_zero());
        assert_eq!(reps, vec![vec![q(0, 1); 3]]);
    }

    #[test]
    fn non_positive_definite_rejected() {
        let g = parse_matrix_text("1 2\n2 1\n").unwrap();
        assert!(matches!(EvenLattice::from_gram(g), Err(Error::NotPositiveDefinite)));
    }

    #[test]
    fn gram_text_round_trip() {
        let g = parse_matrix_text("2 -1\n-1 2\n").unwrap();
        let l = EvenLattice::from_gram(g).unwrap();
        assert_eq!(l.short_vectors(&q(2, 1)).len(), 6);
        assert!(l.is_even());
    }

    #[test]
    fn early_stop() {
        let l = a2();
        let mut count = 0;
        let finished = l
            .enumerator()
            .for_each(&[q(0, 1), q(0, 1)], &q(2, 1), &mut |_, n| {
                if n.is_zero() {
                    true
                } else {
                    count += 1;
                    false
                }
            })
            .unwrap();
        assert!(!finished);
        assert_eq!(count, 1);
    }
}
