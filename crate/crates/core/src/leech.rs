//! The Leech lattice from the Z4 code, its `√2E8³` sublattice, the phase
//! automorphism induced by a glue vector, and the cosets of `√2E8` in its dual.

use std::time::Duration;

use num_integer::Integer;
use serde::Serialize;

use crate::codes::{construction_a_binary, match_hamming_block, BinaryCode, Z4Code};
use crate::error::{Error, Result};
use crate::lattice::{Coset, EvenLattice};
use crate::linalg::{dot, vsub, QVec};
use crate::rootsys::{e8_hamming_model, ExtendedE8Node};
use crate::scalar::{q, Rational};

/// Λ together with three orthogonal copies of `√2E8` inside it.
#[derive(Clone, Debug)]
pub struct LeechContext {
    pub lattice: EvenLattice,
    pub code: Z4Code,
    /// Coordinate positions of the three 8-blocks.
    pub blocks: [Vec<usize>; 3],
    /// `perms[b][k]`: position within block b of Hamming coordinate k.
    pub perms: [Vec<usize>; 3],
}

#[derive(Clone, Debug, Serialize)]
pub struct LeechInvariants {
    pub rank: usize,
    pub det: Rational,
    pub is_even: bool,
    pub min_norm: Option<Rational>,
    pub embedding_gram_ok: bool,
    pub norm4_per_block: [usize; 3],
    pub blocks_orthogonal: bool,
}

/// `Λ = ½{x ∈ Z^24 : x mod 4 ∈ C}` after checking that C is type II.
pub fn build_leech(code: &Z4Code) -> Result<LeechContext> {
    if code.length() != 24 || !code.is_type_ii() {
        return Err(Error::CodeCheckFailed("code is not a type II self-dual Z4 code of length 24".into()));
    }
    let lattice = crate::codes::construction_a_z4(code)?;
    if lattice.det() != q(1, 1) || !lattice.is_even() {
        return Err(Error::CodeCheckFailed("Construction A lattice is not even unimodular".into()));
    }
    let b = code.residue_code_b()?;
    let blocks = [(0..8).collect::<Vec<_>>(), (8..16).collect(), (16..24).collect()];
    let mut perms: [Vec<usize>; 3] = Default::default();
    for (k, block) in blocks.iter().enumerate() {
        let mask = block.iter().fold(0u64, |m, &j| m | 1 << j);
        let sub = b.supported_in(mask);
        perms[k] = match_hamming_block(&sub, block)
            .ok_or_else(|| Error::EmbeddingNotFound(format!("block {k} carries no Hamming subcode")))?;
    }
    Ok(LeechContext { lattice, code: code.clone(), blocks, perms })
}

impl LeechContext {
    /// Image of `v ∈ A(H8) = √2E8` (Hamming coordinates) in block `b`.
    pub fn embed(&self, b: usize, v: &[Rational]) -> QVec {
        let mut out = vec![Rational::zero(); 24];
        for (k, x) in v.iter().enumerate() {
            out[self.blocks[b][self.perms[b][k]]] = x.clone();
        }
        out
    }

    /// `β̃`: the glue vector placed in the first block, so that
    /// `⟨β̃, ι(v)⟩ = ⟨√2a, v⟩` for `v` in that block.
    pub fn beta_tilde(&self, node: &ExtendedE8Node) -> QVec {
        self.embed(0, &node.glue_a)
    }

    /// Order of `λ ↦ exp(2πi⟨β̃,λ⟩)` on Λ.
    pub fn sigma_tilde_order(&self, node: &ExtendedE8Node) -> u64 {
        let beta = self.beta_tilde(node);
        self.lattice.basis().iter().fold(1u64, |acc, b| {
            let d = self.lattice.ip(&beta, b).denom();
            let d: u64 = d.try_into().expect("small denominator");
            acc.lcm(&d)
        })
    }

    /// `exp(2πi⟨β̃,λ⟩)` as the rational angle `⟨β̃,λ⟩ mod 1`.
    pub fn phase_angle(&self, node: &ExtendedE8Node, v: &[Rational]) -> Rational {
        self.lattice.ip(&self.beta_tilde(node), v).fract()
    }

    /// Gram, norm-4 count and orthogonality checks for the three blocks.
    pub fn check_embedding(&self) -> Result<(bool, [usize; 3], bool)> {
        let s = EvenLattice::with_scale(e8_hamming_model().basis().to_vec(), q(1, 1))?;
        let norm4 = s.short_vectors(&q(4, 1));
        let mut gram_ok = true;
        let mut counts = [0usize; 3];
        for b in 0..3 {
            let imgs: Vec<QVec> = s.basis().iter().map(|v| self.embed(b, v)).collect();
            for (i, x) in imgs.iter().enumerate() {
                gram_ok &= self.lattice.contains(x);
                for (j, y) in imgs.iter().enumerate() {
                    gram_ok &= dot(x, y) == *s.gram().get(i, j);
                }
            }
            counts[b] = norm4.iter().filter(|v| {
                let x = self.embed(b, v);
                self.lattice.contains(&x) && self.lattice.norm(&x) == q(4, 1)
            }).count();
        }
        let mut orth = true;
        for b in 0..3 {
            for c in (b + 1)..3 {
                for x in s.basis() {
                    for y in s.basis() {
                        orth &= self.lattice.ip(&self.embed(b, x), &self.embed(c, y)).is_zero();
                    }
                }
            }
        }
        Ok((gram_ok, counts, orth))
    }

    /// Minimum norm of Λ: exhaustive enumeration below norm 4 in a reduced
    /// basis, then a norm-4 witness (even lattice, so nothing lies between).
    pub fn min_norm(&self, budget: Duration) -> Result<Rational> {
        let red = self.lattice.reduced()?;
        let zero = vec![Rational::zero(); 24];
        let search = |bound: Rational| -> Result<Option<Rational>> {
            let mut found = None;
            let mut visit = |_: &[Rational], n: &Rational| {
                if n.is_zero() {
                    return true;
                }
                found = Some(n.clone());
                false
            };
            red.enumerator().with_budget(budget).for_each(&zero, &bound, &mut visit)?;
            Ok(found)
        };
        if let Some(n) = search(q(2, 1))? {
            return Ok(n);
        }
        let four = q(4, 1);
        if red.basis().iter().any(|v| red.norm(v) == four) {
            return Ok(four);
        }
        search(four.clone())?.ok_or_else(|| Error::InvalidArgument("no vector of norm at most 4".into()))
    }

    pub fn invariants(&self, budget: Option<Duration>) -> Result<LeechInvariants> {
        let (embedding_gram_ok, norm4_per_block, blocks_orthogonal) = self.check_embedding()?;
        let min_norm = budget.map(|b| self.min_norm(b)).transpose()?;
        Ok(LeechInvariants {
            rank: self.lattice.rank(),
            det: self.lattice.det(),
            is_even: self.lattice.is_even(),
            min_norm,
            embedding_gram_ok,
            norm4_per_block,
            blocks_orthogonal,
        })
    }

    /// Number of norm-4 vectors, by enumeration.
    pub fn kissing_number(&self, budget: Duration) -> Result<u64> {
        let red = self.lattice.reduced()?;
        let en = red.enumerator().with_budget(budget);
        let zero = vec![Rational::zero(); 24];
        let mut count = 0u64;
        let four = q(4, 1);
        let mut visit = |_: &[Rational], n: &Rational| {
            if *n == four {
                count += 1;
            }
            true
        };
        en.for_each(&zero, &four, &mut visit)?;
        Ok(count)
    }
}

/// Minimal-norm coset representatives of `√2E8` in its dual.
pub const COSET_SHAPES: [&[(i64, i64)]; 11] = [
    &[(0, 1); 8],
    &[(1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)],
    &[(1, 1), (1, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1), (0, 1)],
    &[(1, 2), (1, 2), (1, 2), (1, 2), (0, 1), (0, 1), (0, 1), (0, 1)],
    &[(1, 2), (1, 2), (1, 2), (-1, 2), (0, 1), (0, 1), (0, 1), (0, 1)],
    &[(1, 2), (1, 2), (-1, 2), (-1, 2), (0, 1), (0, 1), (0, 1), (0, 1)],
    &[(1, 2), (1, 2), (1, 2), (1, 2), (1, 1), (0, 1), (0, 1), (0, 1)],
    &[(1, 2), (1, 2), (1, 2), (-1, 2), (1, 1), (0, 1), (0, 1), (0, 1)],
    &[(1, 2); 8],
    &[(1, 2), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2), (-1, 2)],
    &[(1, 2), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2), (-1, 2), (-1, 2)],
];

fn sorted_desc(v: &[Rational]) -> QVec {
    let mut s = v.to_vec();
    s.sort_by(|a, b| b.cmp(a));
    s
}

fn shape_vectors() -> Vec<QVec> {
    COSET_SHAPES.iter().map(|s| sorted_desc(&s.iter().map(|&(n, d)| q(n, d)).collect::<Vec<_>>())).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetSurveyEntry {
    pub min_norm: Rational,
    pub representative: QVec,
    pub shape: usize,
    /// For norm-2 cosets: orthogonal norm-1 vectors `a, b` with `a + b` minimal.
    pub split: Option<(QVec, QVec)>,
    pub minimal_count: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CosetSurvey {
    pub cosets: usize,
    pub entries: Vec<CosetSurveyEntry>,
    pub norm_histogram: [usize; 3],
}

/// `√2E8 = A(H8)` with the dot product.
pub fn sqrt2_e8_lattice() -> Result<EvenLattice> {
    construction_a_binary(&BinaryCode::hamming8())
}

/// Classifies the cosets of `√2E8` in `𝓛 = (√2E8)*` by minimal norm and
/// representative shape, splitting norm-2 minima into orthogonal halves.
pub fn minimal_coset_survey() -> Result<CosetSurvey> {
    let n = sqrt2_e8_lattice()?;
    let shapes = shape_vectors();
    let reps = n.dual_quotient_reps();
    let mut dual = EvenLattice::with_scale(n.dual_basis(), q(1, 1))?;
    dual = dual.reduced()?;
    let norm1 = dual.short_vectors(&q(1, 1));
    let mut entries = Vec::new();
    let mut hist = [0usize; 3];
    for r in &reps {
        let (k, mins) = Coset::new(n.clone(), r.clone()).min_norm();
        let kk = k.to_integer().filter(|x| (0..=2).contains(x)).ok_or_else(|| {
            Error::ShapeMismatch(format!("minimal norm {k} outside {{0,1,2}}"))
        })?;
        hist[kk as usize] += 1;
        let (rep, shape) = mins
            .iter()
            .find_map(|v| {
                let s = sorted_desc(v);
                shapes.iter().position(|x| *x == s).map(|p| (v.clone(), p))
            })
            .ok_or_else(|| Error::ShapeMismatch(format!("coset of {r:?}")))?;
        let split = if kk == 2 {
            let found = norm1.iter().find_map(|a| {
                let b = vsub(&rep, a);
                (dot(&b, &b) == q(1, 1) && dot(a, &b).is_zero()).then(|| (a.clone(), b))
            });
            Some(found.ok_or_else(|| Error::ShapeMismatch(format!("norm-2 coset of {rep:?} does not split")))?)
        } else {
            None
        };
        entries.push(CosetSurveyEntry { min_norm: k, representative: rep, shape, split, minimal_count: mins.len() });
    }
    Ok(CosetSurvey { cosets: reps.len(), entries, norm_histogram: hist })
}
