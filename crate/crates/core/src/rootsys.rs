//! Root systems of types A, D, E, the extended E8 diagram and the nine
//! sublattices obtained by deleting one node.

use std::collections::HashSet;
use std::fmt;

use petgraph::algo::is_isomorphic;
use petgraph::graph::UnGraph;
use serde::Serialize;

use crate::codes::{construction_a_binary, BinaryCode};
use crate::error::{Error, Result};
use crate::lattice::{EvenLattice, Metric};
use crate::linalg::{int_vec, rank, vadd, vneg, vscale, vsub, QVec};
use crate::scalar::{q, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Letter {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Component {
    pub letter: Letter,
    pub rank: usize,
}

impl Component {
    pub fn new(letter: Letter, rank: usize) -> Self {
        Component { letter, rank }
    }

    pub fn root_count(&self) -> usize {
        match self.letter {
            Letter::A => self.rank * (self.rank + 1),
            Letter::D => 2 * self.rank * (self.rank - 1),
            Letter::E => match self.rank {
                6 => 72,
                7 => 126,
                _ => 240,
            },
        }
    }

    pub fn coxeter_number(&self) -> usize {
        self.root_count() / self.rank
    }

    pub fn is_valid(&self) -> bool {
        match self.letter {
            Letter::A => self.rank >= 1,
            Letter::D => self.rank >= 4,
            Letter::E => (6..=8).contains(&self.rank),
        }
    }

    /// Dynkin diagram as an undirected graph.
    pub fn dynkin_graph(&self) -> UnGraph<(), ()> {
        let n = self.rank;
        let mut edges: Vec<(u32, u32)> = Vec::new();
        match self.letter {
            Letter::A => edges.extend((1..n as u32).map(|k| (k - 1, k))),
            Letter::D => {
                edges.extend((1..(n - 1) as u32).map(|k| (k - 1, k)));
                edges.push((n as u32 - 3, n as u32 - 1));
            }
            Letter::E => {
                edges.extend((1..(n - 1) as u32).map(|k| (k - 1, k)));
                edges.push((2, n as u32 - 1));
            }
        }
        let mut g = UnGraph::with_capacity(n, edges.len());
        for _ in 0..n {
            g.add_node(());
        }
        for (a, b) in edges {
            g.add_edge(a.into(), b.into(), ());
        }
        g
    }

    /// Central charge of ω̃ for this component.
    pub fn omega_tilde_central_charge(&self) -> Rational {
        match (self.letter, self.rank) {
            (Letter::A, n) => q(2 * n as i64, n as i64 + 3),
            (Letter::D, _) => q(1, 1),
            (Letter::E, 6) => q(6, 7),
            (Letter::E, 7) => q(7, 10),
            _ => q(1, 2),
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.letter, self.rank)
    }
}

pub fn format_components(c: &[Component]) -> String {
    c.iter().map(ToString::to_string).collect::<Vec<_>>().join("+")
}

fn catalogue_for_rank(rank: usize) -> Vec<Component> {
    [Letter::A, Letter::D, Letter::E]
        .into_iter()
        .map(|l| Component::new(l, rank))
        .filter(Component::is_valid)
        .collect()
}

/// Root system with its positive and simple roots, split into
/// indecomposable components.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystem {
    pub components: Vec<Component>,
    pub ambient_dim: usize,
    pub roots: Vec<QVec>,
    pub positive_roots: Vec<QVec>,
    pub simple_roots: Vec<QVec>,
    /// Simple roots grouped by component, in the order of `components`.
    pub component_simple_roots: Vec<Vec<QVec>>,
    /// Positive roots grouped by component.
    pub component_positive_roots: Vec<Vec<QVec>>,
    pub coxeter_numbers: Vec<usize>,
    #[serde(skip)]
    pub metric: Metric,
}

fn is_positive(v: &[Rational]) -> bool {
    v.iter().find(|x| !x.is_zero()).is_some_and(|x| !x.is_negative())
}

impl RootSystem {
    /// Builds positive/simple roots and the component decomposition from a
    /// complete list of norm-2 vectors.
    pub fn from_roots(mut roots: Vec<QVec>, metric: Metric) -> Result<Self> {
        roots.sort();
        let ambient_dim = roots.first().map_or(0, Vec::len);
        let two = q(2, 1);
        if roots.iter().any(|r| metric.ip(r, r) != two) {
            return Err(Error::InvalidArgument("root of norm other than 2".into()));
        }
        let positive: Vec<QVec> = roots.iter().filter(|r| is_positive(r)).cloned().collect();
        let pos_set: HashSet<&QVec> = positive.iter().collect();
        let mut decomposable: HashSet<QVec> = HashSet::new();
        for a in &positive {
            for b in &positive {
                if a < b {
                    let s = vadd(a, b);
                    if pos_set.contains(&s) {
                        decomposable.insert(s);
                    }
                }
            }
        }
        let simple: Vec<QVec> = positive.iter().filter(|r| !decomposable.contains(*r)).cloned().collect();

        // connected components of the Dynkin diagram
        let n = simple.len();
        let mut comp_of = vec![usize::MAX; n];
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for s in 0..n {
            if comp_of[s] != usize::MAX {
                continue;
            }
            let id = groups.len();
            let mut stack = vec![s];
            comp_of[s] = id;
            let mut members = Vec::new();
            while let Some(a) = stack.pop() {
                members.push(a);
                for b in 0..n {
                    if comp_of[b] == usize::MAX && !metric.ip(&simple[a], &simple[b]).is_zero() {
                        comp_of[b] = id;
                        stack.push(b);
                    }
                }
            }
            members.sort();
            groups.push(members);
        }

        let mut comps = Vec::new();
        for members in &groups {
            let rts: Vec<&QVec> = positive
                .iter()
                .filter(|r| members.iter().any(|&m| !metric.ip(r, &simple[m]).is_zero()))
                .collect();
            let mut g = UnGraph::<(), ()>::with_capacity(members.len(), members.len());
            for _ in members {
                g.add_node(());
            }
            for (x, &a) in members.iter().enumerate() {
                for (y, &b) in members.iter().enumerate().skip(x + 1) {
                    if !metric.ip(&simple[a], &simple[b]).is_zero() {
                        g.add_edge((x as u32).into(), (y as u32).into(), ());
                    }
                }
            }
            let kind = catalogue_for_rank(members.len())
                .into_iter()
                .find(|c| c.root_count() == 2 * rts.len() && is_isomorphic(&c.dynkin_graph(), &g))
                .ok_or_else(|| Error::InvalidArgument("root system outside the A/D/E catalogue".into()))?;
            let simple_c: Vec<QVec> = members.iter().map(|&m| simple[m].clone()).collect();
            comps.push((kind, simple_c, rts.into_iter().cloned().collect::<Vec<_>>()));
        }
        comps.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(&b.1)));

        Ok(RootSystem {
            components: comps.iter().map(|c| c.0).collect(),
            ambient_dim,
            roots,
            positive_roots: positive,
            simple_roots: simple,
            coxeter_numbers: comps.iter().map(|c| c.0.coxeter_number()).collect(),
            component_simple_roots: comps.iter().map(|c| c.1.clone()).collect(),
            component_positive_roots: comps.into_iter().map(|c| c.2).collect(),
            metric,
        })
    }

    pub fn rank(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn ip(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.metric.ip(x, y)
    }

    /// Reflection in the hyperplane orthogonal to a norm-2 root.
    pub fn reflect(&self, root: &[Rational], v: &[Rational]) -> QVec {
        vsub(v, &vscale(root, &self.ip(v, root)))
    }

    /// Root lattice spanned by the simple roots.
    pub fn root_lattice(&self) -> Result<EvenLattice> {
        EvenLattice::new(self.simple_roots.clone(), self.metric.clone())
    }

    /// Root lattice of a single component.
    pub fn component_lattice(&self, k: usize) -> Result<EvenLattice> {
        EvenLattice::new(self.component_simple_roots[k].clone(), self.metric.clone())
    }

    /// Highest root of component `k` (maximal height).
    pub fn highest_root(&self, k: usize) -> QVec {
        let lat = self.component_lattice(k).expect("component lattice");
        self.component_positive_roots[k]
            .iter()
            .max_by_key(|r| {
                lat.coordinates(r).expect("root in span").iter().fold(Rational::zero(), |a, c| &a + c)
            })
            .expect("non-empty component")
            .clone()
    }

    /// Cartan matrix of the simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.simple_roots
            .iter()
            .map(|a| self.simple_roots.iter().map(|b| self.ip(a, b).to_integer().expect("integral")).collect())
            .collect()
    }
}

/// `v − ⟨v, root⟩·root` for the standard dot product.
pub fn weyl_reflection(root: &[Rational], v: &[Rational]) -> QVec {
    vsub(v, &vscale(root, &crate::linalg::dot(v, root)))
}

fn e8_standard_roots() -> Vec<QVec> {
    let mut roots = Vec::new();
    for i in 0..8 {
        for j in (i + 1)..8 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut v = vec![0i64; 8];
                v[i] = si;
                v[j] = sj;
                roots.push(int_vec(&v));
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            roots.push((0..8).map(|k| if mask >> k & 1 == 1 { q(-1, 2) } else { q(1, 2) }).collect());
        }
    }
    roots
}

/// Explicit root system: A_n in the sum-zero hyperplane of R^{n+1}, D_n in
/// R^n, E_8 in R^8 (D_8 roots plus half-integer vectors with an even number
/// of minus signs), E_7 and E_6 as the roots of E_8 orthogonal to one root
/// and to an A_2 respectively.
pub fn build_root_system(letter: Letter, rank: usize) -> Result<RootSystem> {
    let comp = Component::new(letter, rank);
    if !comp.is_valid() {
        let l = match letter {
            Letter::A => 'A',
            Letter::D => 'D',
            Letter::E => 'E',
        };
        return Err(Error::UnsupportedType { letter: l, rank });
    }
    let roots: Vec<QVec> = match letter {
        Letter::A => {
            let mut r = Vec::new();
            for i in 0..=rank {
                for j in 0..=rank {
                    if i != j {
                        let mut v = vec![0i64; rank + 1];
                        v[i] = 1;
                        v[j] = -1;
                        r.push(int_vec(&v));
                    }
                }
            }
            r
        }
        Letter::D => {
            let mut r = Vec::new();
            for i in 0..rank {
                for j in (i + 1)..rank {
                    for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                        let mut v = vec![0i64; rank];
                        v[i] = si;
                        v[j] = sj;
                        r.push(int_vec(&v));
                    }
                }
            }
            r
        }
        Letter::E => {
            let all = e8_standard_roots();
            let half = vec![q(1, 2); 8];
            let other = int_vec(&[-1, -1, 0, 0, 0, 0, 0, 0]);
            let perp: Vec<QVec> = match rank {
                8 => vec![],
                7 => vec![half],
                _ => vec![half, other],
            };
            all.into_iter().filter(|r| perp.iter().all(|p| crate::linalg::dot(r, p).is_zero())).collect()
        }
    };
    RootSystem::from_roots(roots, Metric::standard())
}

/// Coefficients of α₀..α₈ in the extended-diagram relation.
pub const MARKS: [usize; 9] = [1, 2, 3, 4, 5, 6, 4, 2, 3];

/// Node labels of the extended diagram.
pub const LABELS: [&str; 9] = ["1A", "2A", "3A", "4A", "5A", "6A", "4B", "2B", "3C"];

/// E8 in the Hamming model: `A(H8) ⊂ Z^8` with inner product ½·dot, so that
/// the same integer vectors with the plain dot product form √2E8.
pub fn e8_hamming_model() -> EvenLattice {
    let l = construction_a_binary(&BinaryCode::hamming8()).expect("Hamming lattice");
    EvenLattice::with_scale(l.basis().to_vec(), q(1, 2)).expect("E8")
}

/// α₀..α₈ in Hamming coordinates, labelled along the extended diagram:
/// chain α₀–α₁–…–α₇ with α₈ attached to α₅.
pub fn extended_e8_alphas() -> Result<Vec<QVec>> {
    let e8 = e8_hamming_model();
    let roots = e8.short_vectors(&q(2, 1));
    let rs = RootSystem::from_roots(roots, e8.metric().clone())?;
    if rs.components != vec![Component::new(Letter::E, 8)] {
        return Err(Error::InvalidArgument("Hamming lattice is not E8".into()));
    }
    let s = &rs.simple_roots;
    let adj = |a: usize| -> Vec<usize> { (0..8).filter(|&b| b != a && !rs.ip(&s[a], &s[b]).is_zero()).collect() };
    let branch = (0..8).find(|&a| adj(a).len() == 3).expect("E8 has a branch node");
    let arm = |start: usize| -> Vec<usize> {
        let mut out = vec![start];
        let mut prev = branch;
        let mut cur = start;
        loop {
            let next: Vec<usize> = adj(cur).into_iter().filter(|&b| b != prev).collect();
            match next.first() {
                Some(&n) => {
                    out.push(n);
                    prev = cur;
                    cur = n;
                }
                None => break out,
            }
        }
    };
    let mut arms: Vec<Vec<usize>> = adj(branch).into_iter().map(arm).collect();
    arms.sort_by_key(Vec::len);
    let (short, mid, long) = (&arms[0], &arms[1], &arms[2]);
    let mut alphas = vec![Vec::new(); 9];
    // long arm from the branch: α4, α3, α2, α1
    for (k, &idx) in long.iter().enumerate() {
        alphas[4 - k] = s[idx].clone();
    }
    alphas[5] = s[branch].clone();
    alphas[6] = s[mid[0]].clone();
    alphas[7] = s[mid[1]].clone();
    alphas[8] = s[short[0]].clone();
    let mut highest = vec![Rational::zero(); 8];
    for j in 1..9 {
        highest = vadd(&highest, &vscale(&alphas[j], &Rational::from_int(MARKS[j] as i64)));
    }
    alphas[0] = vneg(&highest);
    Ok(alphas)
}

/// Node `i` of the extended E8 diagram with its sublattice L(i).
#[derive(Clone, Debug)]
pub struct ExtendedE8Node {
    pub i: usize,
    pub alphas: Vec<QVec>,
    pub e8: EvenLattice,
    pub lattice: EvenLattice,
    pub n: usize,
    pub glue_a: QVec,
    pub components: Vec<Component>,
    pub root_system: RootSystem,
}

/// The glue vector for node `i`, as a combination of the α's.
pub fn glue_coefficients(i: usize) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); 9];
    match i {
        0 => c[1] = q(1, 1),
        1..=5 => {
            for (j, cj) in c.iter_mut().enumerate().take(i) {
                *cj = q(-(j as i64 + 1), i as i64 + 1);
            }
        }
        6 => {
            for (j, cj) in c.iter_mut().enumerate().take(6) {
                *cj = q(-(j as i64 + 1), 8);
            }
            c[8] = q(-7, 8);
        }
        7 => {
            c[6] = q(1, 2);
            c[8] = q(1, 2);
        }
        _ => {
            for (j, cj) in c.iter_mut().enumerate().take(8) {
                *cj = q(-(j as i64 + 1), 9);
            }
        }
    }
    c
}

/// Classifies a lattice generated by its norm-2 vectors.
pub fn classify_root_sublattice(lat: &EvenLattice) -> Result<(Vec<Component>, RootSystem)> {
    let roots = lat.short_vectors(&q(2, 1));
    if roots.is_empty() {
        return Err(Error::NotRootGenerated);
    }
    let rs = RootSystem::from_roots(roots, lat.metric().clone())?;
    let gen = EvenLattice::new(rs.simple_roots.clone(), lat.metric().clone())
        .map_err(|_| Error::NotRootGenerated)?;
    if rs.rank() != lat.rank() || gen.index_in(lat) != Some(1) {
        return Err(Error::NotRootGenerated);
    }
    Ok((rs.components.clone(), rs))
}

impl ExtendedE8Node {
    pub fn new(i: usize) -> Result<Self> {
        if i > 8 {
            return Err(Error::InvalidArgument(format!("node {i} outside 0..=8")));
        }
        let alphas = extended_e8_alphas()?;
        let e8 = e8_hamming_model();
        let basis: Vec<QVec> = (0..9).filter(|&j| j != i).map(|j| alphas[j].clone()).collect();
        // the eight remaining roots are independent
        if rank(&basis, 8) != 8 {
            return Err(Error::ChainViolation(format!("L({i}) has rank below 8")));
        }
        let lattice = EvenLattice::new(basis, e8.metric().clone())?;
        let n = lattice.index_in(&e8).ok_or_else(|| Error::ChainViolation(format!("L({i}) not inside E8")))? as usize;
        let coeffs = glue_coefficients(i);
        let mut glue_a = vec![Rational::zero(); 8];
        for (c, a) in coeffs.iter().zip(&alphas) {
            if !c.is_zero() {
                glue_a = vadd(&glue_a, &vscale(a, c));
            }
        }
        let (components, root_system) = classify_root_sublattice(&lattice)?;
        Ok(ExtendedE8Node { i, alphas, e8, lattice, n, glue_a, components, root_system })
    }

    pub fn all() -> Result<Vec<Self>> {
        (0..9).map(Self::new).collect()
    }

    pub fn label(&self) -> &'static str {
        LABELS[self.i]
    }

    pub fn ip(&self, x: &[Rational], y: &[Rational]) -> Rational {
        self.e8.ip(x, y)
    }

    /// `Σ c_j α_j` for the extended-diagram marks; zero when the relation holds.
    pub fn relation_residual(&self) -> QVec {
        let mut acc = vec![Rational::zero(); 8];
        for (j, m) in MARKS.iter().enumerate() {
            acc = vadd(&acc, &vscale(&self.alphas[j], &Rational::from_int(*m as i64)));
        }
        acc
    }

    /// `⟨a, α_j⟩ ∈ Z` for j ≠ i and `⟨a, α_i⟩ ≡ −1/n (mod Z)`.
    pub fn glue_is_valid(&self) -> bool {
        (0..9).all(|j| {
            let p = self.ip(&self.glue_a, &self.alphas[j]);
            if j == self.i {
                (&p + &q(1, self.n as i64)).is_integer()
            } else {
                p.is_integer()
            }
        })
    }

    /// Index `j` of the coset `jα_i + L` containing `v ∈ E8`.
    pub fn coset_index(&self, v: &[Rational]) -> Option<usize> {
        (0..self.n).find(|&j| self.lattice.contains(&vsub(v, &vscale(&self.alphas[self.i], &Rational::from_int(j as i64)))))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub node: usize,
    pub multiple: usize,
    pub lower: Vec<Component>,
    pub middle: Vec<Component>,
    pub lower_index: u64,
    pub upper_index: u64,
    pub power_map: &'static str,
}

/// `(node, k, expected middle lattice, power map)`; the middle lattice is
/// `L(i) + Z·kα_i`.
const CHAINS: [(usize, usize, &[(Letter, usize)], &str); 4] = [
    (3, 2, &[(Letter::D, 8)], "(4A)^2 = 2B"),
    (5, 3, &[(Letter::A, 2), (Letter::E, 6)], "(6A)^2 = 3A"),
    (5, 2, &[(Letter::A, 1), (Letter::E, 7)], "(6A)^3 = 2A"),
    (6, 2, &[(Letter::A, 1), (Letter::E, 7)], "(4B)^2 = 2A"),
];

pub fn check_intermediate_chains() -> Result<Vec<ChainReport>> {
    let mut out = Vec::new();
    for (i, k, expected, label) in CHAINS {
        let node = ExtendedE8Node::new(i)?;
        let mut gens = node.lattice.basis().to_vec();
        gens.push(vscale(&node.alphas[i], &Rational::from_int(k as i64)));
        // reduce the 9 generators to a basis of the middle lattice
        let coords: Vec<Vec<i64>> = gens
            .iter()
            .map(|g| node.e8.coordinates(g).expect("in E8").iter().map(|c| c.to_integer().expect("integral")).collect())
            .collect();
        let hnf = crate::linalg::hermite_normal_form(&coords)?;
        let basis: Vec<QVec> = hnf.iter().map(|r| node.e8.int_vector(r)).collect();
        let middle = EvenLattice::new(basis, node.e8.metric().clone())?;
        let (comps, _) = classify_root_sublattice(&middle)?;
        let want: Vec<Component> = expected.iter().map(|&(l, r)| Component::new(l, r)).collect();
        if comps != want {
            return Err(Error::ChainViolation(format!(
                "L({i}) + {k}α_{i} is {} rather than {}",
                format_components(&comps),
                format_components(&want)
            )));
        }
        let lower_index = node.lattice.index_in(&middle).ok_or_else(|| Error::ChainViolation("lower inclusion".into()))?;
        let upper_index = middle.index_in(&node.e8).ok_or_else(|| Error::ChainViolation("upper inclusion".into()))?;
        if (lower_index * upper_index) as usize != node.n {
            return Err(Error::ChainViolation(format!("indices {lower_index}·{upper_index} ≠ {}", node.n)));
        }
        out.push(ChainReport {
            node: i,
            multiple: k,
            lower: node.components.clone(),
            middle: comps,
            lower_index,
            upper_index,
            power_map: label,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_systems() {
        let a1 = build_root_system(Letter::A, 1).unwrap();
        assert_eq!(a1.roots.len(), 2);
        assert_eq!(a1.coxeter_numbers, vec![2]);
        assert!(matches!(build_root_system(Letter::E, 5), Err(Error::UnsupportedType { .. })));
        assert!(matches!(build_root_system(Letter::D, 3), Err(Error::UnsupportedType { .. })));
    }

    #[test]
    fn reflections() {
        let a = int_vec(&[1, -1, 0]);
        let b = int_vec(&[0, 1, -1]);
        assert_eq!(weyl_reflection(&a, &a), vneg(&a));
        assert_eq!(weyl_reflection(&a, &b), vadd(&a, &b));
    }

    #[test]
    fn glue_coefficients_match_marks() {
        // denominators of the glue case list are i+1, 8, 2, 9
        assert_eq!(glue_coefficients(6)[8], q(-7, 8));
        assert_eq!(glue_coefficients(3)[2], q(-3, 4));
    }
}
