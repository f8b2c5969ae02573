//! Binary and Z4 linear codes, Construction A, and the residue code B(C).

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::EvenLattice;
use crate::linalg::{hermite_normal_form, Matrix, QVec};
use crate::scalar::Rational;

pub const Z4_LEECH_TEXT: &str = include_str!("../data/z4_leech.txt");
pub const RM41_TEXT: &str = include_str!("../data/rm41.txt");

/// Hamming [8,4,4] generator fixed once for the whole crate.
pub const HAMMING8_ROWS: [&str; 4] = ["11110000", "00111100", "00001111", "01100110"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum NamedCode {
    Hamming8,
    Rm41,
    Rm42,
    Z4Leech,
}

/// Binary linear code; words are bitmasks with bit j = coordinate j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    rows: Vec<u64>,
}

fn parse_digit_rows(text: &str, max: u8) -> Result<Vec<Vec<u8>>> {
    let rows: Vec<Vec<u8>> = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| {
            l.chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c.to_digit(10) {
                    Some(d) if d as u8 <= max => Ok(d as u8),
                    _ => Err(Error::Parse(format!("bad code symbol '{c}'"))),
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(Error::Parse("generator rows of different lengths".into()));
    }
    Ok(rows)
}

fn bits(row: &[u8]) -> u64 {
    row.iter().enumerate().fold(0, |acc, (j, &b)| if b & 1 == 1 { acc | (1 << j) } else { acc })
}

impl BinaryCode {
    pub fn new(length: usize, gens: &[u64]) -> Self {
        assert!(length <= 64);
        let mut rows: Vec<u64> = Vec::new();
        for &g in gens {
            let mut w = g;
            for r in &rows {
                let p = r.trailing_zeros();
                if w >> p & 1 == 1 {
                    w ^= r;
                }
            }
            if w != 0 {
                let p = w.trailing_zeros();
                for r in rows.iter_mut() {
                    if *r >> p & 1 == 1 {
                        *r ^= w;
                    }
                }
                rows.push(w);
            }
        }
        rows.sort_by_key(|r| r.trailing_zeros());
        BinaryCode { length, rows }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Self {
        let n = rows.first().map_or(0, Vec::len);
        Self::new(n, &rows.iter().map(|r| bits(r)).collect::<Vec<_>>())
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(Self::from_rows(&parse_digit_rows(text, 1)?))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn zero(length: usize) -> Self {
        BinaryCode { length, rows: Vec::new() }
    }

    pub fn full(length: usize) -> Self {
        Self::new(length, &(0..length).map(|j| 1u64 << j).collect::<Vec<_>>())
    }

    pub fn hamming8() -> Self {
        Self::parse(&HAMMING8_ROWS.join("\n")).expect("fixed generator")
    }

    pub fn rm41() -> Self {
        Self::parse(RM41_TEXT).expect("bundled data file")
    }

    pub fn rm42() -> Self {
        Self::rm41().dual()
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn generators(&self) -> &[u64] {
        &self.rows
    }

    pub fn word_vec(&self, w: u64) -> Vec<u8> {
        (0..self.length).map(|j| (w >> j & 1) as u8).collect()
    }

    pub fn contains(&self, word: u64) -> bool {
        let mut w = word;
        for r in &self.rows {
            if w >> r.trailing_zeros() & 1 == 1 {
                w ^= r;
            }
        }
        w == 0
    }

    pub fn codewords(&self) -> Vec<u64> {
        let k = self.rows.len();
        assert!(k <= 24, "codeword enumeration limited to dimension 24");
        let mut out = Vec::with_capacity(1 << k);
        let mut w = 0u64;
        // Gray-code walk
        for i in 0u64..(1 << k) {
            if i > 0 {
                w ^= self.rows[i.trailing_zeros() as usize];
            }
            out.push(w);
        }
        out.sort_unstable();
        out
    }

    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut d = vec![0u64; self.length + 1];
        for w in self.codewords() {
            d[w.count_ones() as usize] += 1;
        }
        d
    }

    pub fn dual(&self) -> Self {
        let pivots: Vec<u32> = self.rows.iter().map(|r| r.trailing_zeros()).collect();
        let mut gens = Vec::new();
        for f in 0..self.length as u32 {
            if pivots.contains(&f) {
                continue;
            }
            let mut v = 1u64 << f;
            for (r, &p) in self.rows.iter().zip(&pivots) {
                if r >> f & 1 == 1 {
                    v |= 1 << p;
                }
            }
            gens.push(v);
        }
        Self::new(self.length, &gens)
    }

    pub fn is_doubly_even(&self) -> bool {
        self.rows.iter().all(|r| r.count_ones() % 4 == 0)
            && self.rows.iter().all(|a| self.rows.iter().all(|b| (a & b).count_ones() % 2 == 0))
    }

    /// Subcode of words supported inside `mask`.
    pub fn supported_in(&self, mask: u64) -> Self {
        let words: Vec<u64> = self.codewords().into_iter().filter(|w| w & !mask == 0).collect();
        Self::new(self.length, &words)
    }

    /// Image under the coordinate map `j ↦ perm[j]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let gens: Vec<u64> = self
            .rows
            .iter()
            .map(|&r| (0..self.length).filter(|&j| r >> j & 1 == 1).fold(0, |acc, j| acc | 1 << perm[j]))
            .collect();
        Self::new(self.length, &gens)
    }
}

impl fmt::Display for BinaryCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, r) in self.rows.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            for b in self.word_vec(*r) {
                write!(f, "{b}")?;
            }
        }
        Ok(())
    }
}

/// Z4 linear code, stored through the Hermite form of its lattice
/// `C + 4Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4Code {
    length: usize,
    hnf: Vec<Vec<i64>>,
    generators: Vec<Vec<u8>>,
}

impl Z4Code {
    pub fn new(length: usize, gens: &[Vec<u8>]) -> Result<Self> {
        let mut rows: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().map(|&x| (x % 4) as i64).collect()).collect();
        for j in 0..length {
            let mut e = vec![0; length];
            e[j] = 4;
            rows.push(e);
        }
        Self::from_lattice_rows(length, &rows)
    }

    fn from_lattice_rows(length: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let hnf = hermite_normal_form(rows)?;
        let mut rest: Vec<Vec<u8>> = hnf.iter().map(|r| r.iter().map(|x| x.rem_euclid(4) as u8).collect()).collect();
        // Z4 elimination on odd pivots gives lifts of a residue-code basis
        let mut order4: Vec<Vec<u8>> = Vec::new();
        for col in 0..length {
            let Some(p) = rest.iter().position(|r| r[col] % 2 == 1) else {
                continue;
            };
            let mut piv = rest.swap_remove(p);
            let inv = piv[col]; // odd units are self-inverse mod 4
            for x in piv.iter_mut() {
                *x = (*x * inv) % 4;
            }
            for r in rest.iter_mut().chain(order4.iter_mut()) {
                let f = r[col];
                if f != 0 {
                    for (x, &y) in r.iter_mut().zip(&piv) {
                        *x = (*x + 4 - (f * y) % 4) % 4;
                    }
                }
            }
            order4.push(piv);
        }
        // what is left is even; halve, reduce against the residue code
        let residue: Vec<u64> = order4.iter().map(|r| bits(r)).collect();
        let mut span = BinaryCode::new(length, &residue);
        let mut order2 = Vec::new();
        for r in &rest {
            let half: Vec<u8> = r.iter().map(|x| x / 2).collect();
            let w = bits(&half);
            if !span.contains(w) {
                span = BinaryCode::new(length, &[span.rows.as_slice(), &[w]].concat());
                order2.push(r.clone());
            }
        }
        let k2 = order2.len();
        order4.extend(order2);
        let code = Z4Code { length, hnf, generators: order4 };
        debug_assert_eq!(code.cardinality(), 4u128.pow(code.type_counts().0 as u32) << k2);
        Ok(code)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let rows = parse_digit_rows(text, 3)?;
        let n = rows.first().map_or(0, Vec::len);
        Self::new(n, &rows)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn leech() -> Self {
        Self::parse(Z4_LEECH_TEXT).expect("bundled data file")
    }

    pub fn zero(length: usize) -> Self {
        Self::new(length, &[]).expect("zero code")
    }

    pub fn full(length: usize) -> Self {
        let gens: Vec<Vec<u8>> = (0..length)
            .map(|j| (0..length).map(|k| u8::from(j == k)).collect())
            .collect();
        Self::new(length, &gens).expect("full code")
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Canonical generators: order-4 rows first, then order-2 rows.
    pub fn generators(&self) -> &[Vec<u8>] {
        &self.generators
    }

    /// (number of order-4 rows, number of order-2 rows)
    pub fn type_counts(&self) -> (usize, usize) {
        let k1 = self.generators.iter().take_while(|g| g.iter().any(|x| x % 2 == 1)).count();
        (k1, self.generators.len() - k1)
    }

    /// `|C| = 4^n / det(C + 4Z^n)`.
    pub fn cardinality(&self) -> u128 {
        let det: u128 = self.hnf.iter().map(|r| r.iter().find(|&&x| x != 0).copied().unwrap_or(1) as u128).product();
        4u128.pow(self.length as u32) / det
    }

    /// Lattice basis of `C + 4Z^n` in Hermite form.
    pub fn lattice_rows(&self) -> &[Vec<i64>] {
        &self.hnf
    }

    pub fn contains(&self, word: &[u8]) -> bool {
        let v: QVec = word.iter().map(|&x| Rational::from_int(x as i64)).collect();
        self.lattice().contains(&v)
    }

    fn lattice(&self) -> EvenLattice {
        let basis = self.hnf.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        EvenLattice::with_scale(basis, Rational::one()).expect("full-rank code lattice")
    }

    /// Dual under the mod-4 dot product, via `4·(C + 4Z^n)^*`.
    pub fn dual(&self) -> Result<Self> {
        let h = Matrix::from_rows(
            &self.hnf.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>()).collect::<Vec<_>>(),
        );
        let inv_t = h.inverse().ok_or_else(|| Error::CodeCheckFailed("degenerate code lattice".into()))?.transpose();
        let four = Rational::from_int(4);
        let rows: Vec<Vec<i64>> = inv_t
            .row_vecs()
            .into_iter()
            .map(|r| {
                r.iter()
                    .map(|x| (x * &four).to_integer().ok_or_else(|| Error::CodeCheckFailed("non-integral dual".into())))
                    .collect::<Result<Vec<i64>>>()
            })
            .collect::<Result<_>>()?;
        Self::from_lattice_rows(self.length, &rows)
    }

    pub fn is_self_orthogonal(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|a| g.iter().all(|b| z4_dot(a, b).is_multiple_of(4)))
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual().is_ok_and(|d| d == *self)
    }

    /// Self-dual with every Euclidean weight ≡ 0 mod 8.
    ///
    /// Euclidean weight mod 8 equals the squared norm of any integer lift, and
    /// `|x+y|² = |x|² + |y|² + 2x·y`; with all generator products ≡ 0 mod 4
    /// the generator norms decide every codeword.
    pub fn is_type_ii(&self) -> bool {
        self.is_self_orthogonal()
            && self.generators.iter().all(|g| g.iter().map(|&x| (x as u64).pow(2)).sum::<u64>() % 8 == 0)
            && self.is_self_dual()
    }

    /// Euclidean weight with 0,1,2,3 ↦ 0,1,4,1.
    pub fn euclidean_weight(word: &[u8]) -> u32 {
        word.iter().map(|&x| [0, 1, 4, 1][(x % 4) as usize]).sum()
    }

    /// `B(C) = {b : 2b ∈ C} = (C^⊥ mod 2)^⊥`.
    pub fn residue_code_b(&self) -> Result<BinaryCode> {
        let d = self.dual()?;
        let res = BinaryCode::from_rows(&d.generators.iter().map(|g| g.iter().map(|x| x % 2).collect()).collect::<Vec<_>>());
        Ok(BinaryCode { length: self.length, ..res }.dual())
    }

    pub fn with_entry(&self, row: usize, col: usize, value: u8) -> Result<Self> {
        let mut g = self.generators.clone();
        g[row][col] = value % 4;
        Self::new(self.length, &g)
    }
}

fn z4_dot(a: &[u8], b: &[u8]) -> u32 {
    a.iter().zip(b).map(|(&x, &y)| x as u32 * y as u32).sum()
}

/// `{x ∈ Z^n : x mod 2 ∈ C}` with the standard dot product.
pub fn construction_a_binary(c: &BinaryCode) -> Result<EvenLattice> {
    let n = c.length();
    let mut rows: Vec<Vec<i64>> = c.generators().iter().map(|&g| c.word_vec(g).iter().map(|&b| b as i64).collect()).collect();
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 2;
        rows.push(e);
    }
    let basis = hermite_normal_form(&rows)?
        .into_iter()
        .map(|r| r.into_iter().map(Rational::from_int).collect())
        .collect();
    EvenLattice::with_scale(basis, Rational::one())
}

/// `½{x ∈ Z^n : x mod 4 ∈ C}` with the standard dot product.
pub fn construction_a_z4(c: &Z4Code) -> Result<EvenLattice> {
    let half = Rational::new(1, 2);
    let basis = c
        .lattice_rows()
        .iter()
        .map(|r| r.iter().map(|&x| &Rational::from_int(x) * &half).collect())
        .collect();
    EvenLattice::with_scale(basis, Rational::one())
}

pub enum AnyCode {
    Binary(BinaryCode),
    Z4(Z4Code),
}

pub fn named_code(name: NamedCode) -> AnyCode {
    match name {
        NamedCode::Hamming8 => AnyCode::Binary(BinaryCode::hamming8()),
        NamedCode::Rm41 => AnyCode::Binary(BinaryCode::rm41()),
        NamedCode::Rm42 => AnyCode::Binary(BinaryCode::rm42()),
        NamedCode::Z4Leech => AnyCode::Z4(Z4Code::leech()),
    }
}

/// Permutation `π` of the 8 columns of a block with `π(H8) = target`,
/// where `target` is a code of length `n` supported on `block`.
pub fn match_hamming_block(target: &BinaryCode, block: &[usize]) -> Option<Vec<usize>> {
    assert_eq!(block.len(), 8);
    if target.dimension() != 4 {
        return None;
    }
    let h = BinaryCode::hamming8();
    let hgens: Vec<Vec<u8>> = h.generators().iter().map(|&g| h.word_vec(g)).collect();
    let mut perm = vec![usize::MAX; 8];
    let mut used = [false; 8];
    fn search(
        k: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool; 8],
        hgens: &[Vec<u8>],
        target: &BinaryCode,
        block: &[usize],
    ) -> bool {
        if k == 8 {
            return hgens.iter().all(|g| {
                let w = (0..8).filter(|&j| g[j] == 1).fold(0u64, |acc, j| acc | 1 << block[perm[j]]);
                target.contains(w)
            });
        }
        for c in 0..8 {
            if !used[c] {
                used[c] = true;
                perm[k] = c;
                if search(k + 1, perm, used, hgens, target, block) {
                    return true;
                }
                used[c] = false;
            }
        }
        false
    }
    search(0, &mut perm, &mut used, &hgens, target, block).then_some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_weights_and_self_duality() {
        let h = BinaryCode::hamming8();
        assert_eq!(h.weight_distribution(), vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
        assert_eq!(h.dual(), h);
        assert!(h.is_doubly_even());
    }

    #[test]
    fn reed_muller_pair() {
        assert_eq!(BinaryCode::rm42().dimension(), 11);
        assert_eq!(BinaryCode::rm42().dual(), BinaryCode::rm41());
    }

    #[test]
    fn trivial_codes() {
        assert_eq!(BinaryCode::zero(5).dual(), BinaryCode::full(5));
        assert_eq!(Z4Code::zero(4).residue_code_b().unwrap(), BinaryCode::zero(4));
        assert_eq!(Z4Code::full(4).residue_code_b().unwrap(), BinaryCode::full(4));
        assert!(!Z4Code::zero(24).is_type_ii());
    }

    #[test]
    fn z4_cardinality_and_counts() {
        let c = Z4Code::leech();
        assert_eq!(c.cardinality(), 1 << 24);
        assert_eq!(c.type_counts(), (7, 10));
    }

    #[test]
    fn zero_code_lattice_is_2z() {
        let l = construction_a_binary(&BinaryCode::zero(3)).unwrap();
        assert_eq!(l.det(), Rational::from_int(64));
    }

    #[test]
    fn parse_rejects_bad_symbols() {
        assert!(BinaryCode::parse("0120").is_err());
        assert!(Z4Code::parse("014").is_err());
    }
}
