//! Check suites behind the `verify-*` commands. Each returns plain records;
//! rendering is left to the caller.

use std::path::Path;
use std::time::Duration;

use crate::codes::{construction_a_binary, BinaryCode, Z4Code};
use crate::error::Result;
use crate::griess::{AlgebraContext, GriessElement, HammingFamily, ModuleSpace, ModuleVector};
use crate::lattice::{count_x_eta, Coset};
use crate::leech::{build_leech, minimal_coset_survey, LeechContext};
use crate::linalg::vadd;
use crate::report::{guarded, Check};
use crate::rootsys::{build_root_system, check_intermediate_chains, ExtendedE8Node, Letter};
use crate::scalar::{q, Rational};

/// Every irreducible simply laced type of rank at most 8.
pub const ROOT_SYSTEM_RANGE: [(Letter, usize); 16] = [
    (Letter::A, 1),
    (Letter::A, 2),
    (Letter::A, 3),
    (Letter::A, 4),
    (Letter::A, 5),
    (Letter::A, 6),
    (Letter::A, 7),
    (Letter::A, 8),
    (Letter::D, 4),
    (Letter::D, 5),
    (Letter::D, 6),
    (Letter::D, 7),
    (Letter::D, 8),
    (Letter::E, 6),
    (Letter::E, 7),
    (Letter::E, 8),
];

fn type_name(letter: Letter, rank: usize) -> String {
    format!("{letter:?}{rank}")
}

/// s(Φ) and ω̃(Φ) are orthogonal, mutually annihilating conformal vectors
/// with central charges `l·h/(h+2)` and `2l/(h+2)`.
pub fn conformal_suite() -> Vec<Check> {
    ROOT_SYSTEM_RANGE
        .iter()
        .map(|&(letter, rank)| {
            let name = type_name(letter, rank);
            guarded(&format!("conformal-{name}"), "coset-virasoro", || {
                let rs = build_root_system(letter, rank)?;
                let ctx = AlgebraContext::sqrt2_root_lattice(&rs)?;
                let fam = &ctx.root_system_families(&rs)?[0];
                let h = fam.coxeter as i64;
                let l = rank as i64;
                let cs = ctx.conformal_check(&fam.s)?;
                let ct = ctx.conformal_check(&fam.omega_tilde)?;
                let orth = ctx.inner(&fam.s, &fam.omega_tilde)?.is_zero()
                    && ctx.product(&fam.s, &fam.omega_tilde)?.is_zero();
                let ok = cs == q(l * h, h + 2) && ct == q(2 * l, h + 2) && orth;
                Ok((ok, format!("c(s) = {cs}, c(ω̃) = {ct}, orthogonal = {orth}")))
            })
        })
        .collect()
}

/// `|X_η| = kh` for every minimal η of every coset of R in R*, and the
/// sum v of the minimal `e^{√2η}` satisfies `s₁v = 0`, `ω̃₁v = kv`.
pub fn coset_suite() -> Vec<Check> {
    let mut out = Vec::new();
    for &(letter, rank) in &ROOT_SYSTEM_RANGE {
        let name = type_name(letter, rank);
        let mut module_check = None;
        let lemma = guarded(&format!("x-eta-{name}"), "x-eta-count", || {
            let rs = build_root_system(letter, rank)?;
            let lat = rs.root_lattice()?;
            let ctx = AlgebraContext::sqrt2_root_lattice(&rs)?;
            let fam = &ctx.root_system_families(&rs)?[0];
            let h = fam.coxeter as i64;
            let mut lemma_ok = true;
            let mut module_ok = true;
            let mut sizes = Vec::new();
            for rep in lat.dual_quotient_reps() {
                let coset = Coset::new(lat.clone(), rep);
                let (k, mins) = coset.min_norm();
                let kh = &k * &Rational::from_int(h);
                for eta in &mins {
                    lemma_ok &= Rational::from_int(count_x_eta(&rs, &coset, eta)? as i64) == kh;
                }
                sizes.push(format!("{k}×{}", mins.len()));
                let space = ModuleSpace::new(&ctx, mins);
                let v = ModuleVector { coeffs: (0..space.dim()).map(|i| (i, Rational::one())).collect() };
                let sv = space.act(&ctx, &fam.s, &v)?;
                let wv = space.act(&ctx, &fam.omega_tilde, &v)?;
                let kv = ModuleVector { coeffs: v.coeffs.iter().map(|(i, c)| (*i, c * &k)).filter(|(_, c)| !c.is_zero()).collect() };
                module_ok &= sv.is_zero() && wv == kv;
            }
            module_check = Some(Check::new(
                &format!("highest-weight-{name}"),
                "highest-weight-vector",
                module_ok,
                format!("s₁v = 0 and ω̃₁v = kv on {} cosets", sizes.len()),
            ));
            Ok((lemma_ok, format!("h = {h}; minimal norm × count per coset: {}", sizes.join(", "))))
        });
        out.push(lemma);
        if let Some(c) = module_check {
            out.push(c);
        }
    }
    out
}

/// Representatives of the 16 classes of `Z2^8 / H8`.
fn hamming_class_reps(hf: &HammingFamily) -> Vec<u64> {
    let mut seen = Vec::new();
    let mut reps = Vec::new();
    for w in 0u64..256 {
        let class = hf.codewords().iter().map(|c| c ^ w).min().expect("nonempty");
        if !seen.contains(&class) {
            seen.push(class);
            reps.push(w);
        }
    }
    reps
}

/// The ê^ε_δ are Ising vectors with the 0 / 1/32 inner-product pattern
/// inside one ε and orthogonal across ε.
pub fn hamming_suite(ctx: &AlgebraContext) -> Vec<Check> {
    let hf = HammingFamily::new();
    let reps = hamming_class_reps(&hf);
    let mut out = vec![guarded("hamming-x-one", "x-all-ones-vanishes", || {
        Ok((hf.x(ctx, 0, 0xff).is_zero() && hf.x(ctx, 1, 0xff).is_zero(), format!("{} classes", reps.len())))
    })];
    out.push(guarded("hamming-ising", "hamming-ising-vectors", || {
        let mut ok = reps.len() == 16;
        let mut distinct = Vec::new();
        for eps in [0u8, 1] {
            for &d in &reps {
                let e = hf.e(ctx, eps, d);
                ok &= ctx.conformal_check(&e)? == q(1, 2);
                if !distinct.contains(&e) {
                    distinct.push(e);
                }
            }
        }
        Ok((ok, format!("{} distinct vectors, all of central charge 1/2", distinct.len())))
    }));
    out.push(guarded("hamming-inner", "hamming-inner-products", || {
        let es: Vec<Vec<GriessElement<Rational>>> =
            [0u8, 1].iter().map(|&eps| reps.iter().map(|&d| hf.e(ctx, eps, d)).collect()).collect();
        let mut ok = true;
        let mut pairs = 0;
        for (a, &d) in reps.iter().enumerate() {
            for (b, &eta) in reps.iter().enumerate() {
                let want = if a == b {
                    q(1, 4)
                } else if (d ^ eta).count_ones() % 2 == 0 {
                    q(0, 1)
                } else {
                    q(1, 32)
                };
                for eps in 0..2 {
                    ok &= ctx.inner(&es[eps][a], &es[eps][b])? == want;
                }
                ok &= ctx.inner(&es[0][a], &es[1][b])?.is_zero();
                pairs += 3;
            }
        }
        Ok((ok, format!("{pairs} inner products")))
    }));
    out
}

/// Both Virasoro frames: 16 orthogonal Ising vectors summing to ω.
pub fn frame_suite(ctx: &AlgebraContext) -> Vec<Check> {
    let omega = ctx.omega::<Rational>();
    let hf = HammingFamily::new();
    let frames = [("frame-hamming", Ok(hf.frame(ctx))), ("frame-standard", HammingFamily::standard_frame(ctx))];
    frames
        .into_iter()
        .map(|(id, frame)| {
            guarded(id, "virasoro-frame", || {
                let frame = frame?;
                let mut ok = frame.len() == 16 && GriessElement::sum(&frame).as_ref() == Some(&omega);
                for (a, x) in frame.iter().enumerate() {
                    ok &= ctx.conformal_check(x)? == q(1, 2);
                    for y in &frame[a + 1..] {
                        ok &= ctx.inner(x, y)?.is_zero();
                    }
                }
                Ok((ok, format!("{} vectors", frame.len())))
            })
        })
        .collect()
}

/// The weight-2 lemma suites.
pub fn griess_suite() -> Vec<Check> {
    let mut out = Vec::new();
    match AlgebraContext::sqrt2_e8() {
        Ok(ctx) => {
            out.push(guarded("omega-e8", "virasoro-element", || {
                let c = ctx.conformal_check(&ctx.omega::<Rational>())?;
                Ok((c == q(8, 1), format!("c = {c}")))
            }));
            out.extend(hamming_suite(&ctx));
            out.extend(frame_suite(&ctx));
        }
        Err(e) => out.push(Check::new("context-e8", "virasoro-element", false, format!("error: {e}"))),
    }
    out.extend(conformal_suite());
    out.extend(coset_suite());
    out.push(guarded("intermediate-chains", "intermediate-chains", || {
        let chains = check_intermediate_chains()?;
        let mut ok = chains.len() == 4;
        for c in &chains {
            ok &= c.lower_index * c.upper_index == ExtendedE8Node::new(c.node)?.n as u64;
        }
        let labels: Vec<&str> = chains.iter().map(|c| c.power_map).collect();
        Ok((ok, labels.join("; ")))
    }));
    out
}

/// Code data used by the suites, either shipped or loaded from a directory
/// holding `rm41.txt` and `z4_leech.txt`.
#[derive(Clone, Debug)]
pub struct DataCodes {
    pub rm41: BinaryCode,
    pub z4: Z4Code,
}

impl DataCodes {
    pub fn builtin() -> Self {
        DataCodes { rm41: BinaryCode::rm41(), z4: Z4Code::leech() }
    }

    pub fn load(dir: Option<&Path>) -> Result<Self> {
        match dir {
            None => Ok(Self::builtin()),
            Some(d) => Ok(DataCodes { rm41: BinaryCode::load(&d.join("rm41.txt"))?, z4: Z4Code::load(&d.join("z4_leech.txt"))? }),
        }
    }
}

pub fn codes_suite(data: &DataCodes) -> Vec<Check> {
    let h8 = BinaryCode::hamming8();
    let mut out = vec![guarded("hamming8", "hamming-code", || {
        let wd = h8.weight_distribution();
        let ok = wd == vec![1, 0, 0, 0, 14, 0, 0, 0, 1] && h8.dual() == h8 && h8.is_doubly_even();
        Ok((ok, format!("weights {wd:?}")))
    })];
    out.push(guarded("sqrt2-e8", "hamming-construction-a", || {
        let l = construction_a_binary(&h8)?;
        let n4 = l.short_vectors(&q(4, 1)).len();
        let ok = l.is_doubly_even() && l.det() == q(256, 1) && n4 == 240;
        Ok((ok, format!("det {}, {n4} vectors of norm 4", l.det())))
    }));
    out.push(guarded("reed-muller", "rm-duality", || {
        let rm42 = data.rm41.dual();
        let ok = data.rm41.length() == 16
            && data.rm41.dimension() == 5
            && rm42.dimension() == 11
            && rm42.dual() == data.rm41;
        Ok((ok, format!("dim RM(4,1) = {}, dim RM(4,2) = {}", data.rm41.dimension(), rm42.dimension())))
    }));
    out.push(guarded("z4-type-ii", "z4-type-ii", || {
        let c = &data.z4;
        let card = c.cardinality();
        let mutated = c.with_entry(0, 0, (c.generators()[0][0] + 1) % 4)?;
        let ok = c.is_type_ii() && c.dual()? == *c && card == 1 << 24 && !mutated.is_type_ii() && !Z4Code::zero(24).is_type_ii();
        Ok((ok, format!("|C| = {card}, type counts {:?}", c.type_counts())))
    }));
    out.push(guarded("residue-code", "residue-hamming-blocks", || {
        let leech = build_leech(&data.z4)?;
        let b = data.z4.residue_code_b()?;
        let lb = construction_a_binary(&b)?;
        let index = lb.index_in(&leech.lattice);
        let want = 1u64 << (24 - b.dimension());
        let shown = index.map_or("not a sublattice".to_string(), |k| k.to_string());
        Ok((index == Some(want), format!("dim B = {}, [Λ : A(B)] = {shown}", b.dimension())))
    }));
    out
}

fn phase_additive(ctx: &LeechContext, node: &ExtendedE8Node) -> bool {
    let basis = ctx.lattice.basis();
    let n = basis.len();
    (0..n).all(|a| {
        let (x, y) = (&basis[a], &basis[(a * 7 + 3) % n]);
        let s = vadd(x, y);
        ctx.phase_angle(node, &s) == (&ctx.phase_angle(node, x) + &ctx.phase_angle(node, y)).fract()
    })
}

/// Invariants of Λ, the `√2E8³` embedding, the phase orders and the coset
/// survey. `long` adds the full count of norm-4 vectors.
pub fn leech_suite(data: &DataCodes, budget: Duration, long: bool) -> Vec<Check> {
    let leech = match build_leech(&data.z4) {
        Ok(l) => l,
        Err(e) => return vec![Check::new("leech-build", "leech-construction", false, format!("error: {e}"))],
    };
    let mut out = vec![guarded("leech-invariants", "leech-construction", || {
        let l = &leech.lattice;
        Ok((l.rank() == 24 && l.det() == q(1, 1) && l.is_even(), format!("rank {}, det {}", l.rank(), l.det())))
    })];
    out.push(guarded("leech-embedding", "e8-cubed-embedding", || {
        let (gram, counts, orth) = leech.check_embedding()?;
        Ok((gram && counts == [240; 3] && orth, format!("norm-4 vectors per block {counts:?}")))
    }));
    out.push(guarded("leech-min-norm", "leech-minimum", || {
        let m = leech.min_norm(budget)?;
        Ok((m == q(4, 1), format!("minimum norm {m}")))
    }));
    out.push(guarded("leech-phase-orders", "tau-product-leech", || {
        let mut ok = true;
        let mut orders = Vec::new();
        for node in ExtendedE8Node::all()? {
            let o = leech.sigma_tilde_order(&node);
            ok &= o == node.n as u64 && phase_additive(&leech, &node);
            orders.push(o);
        }
        Ok((ok, format!("orders {orders:?}")))
    }));
    out.push(guarded("coset-survey", "minimal-coset-shapes", || {
        let s = minimal_coset_survey()?;
        let split = s.entries.iter().filter(|e| e.min_norm == q(2, 1)).all(|e| e.split.is_some());
        let ok = s.cosets == 256 && s.norm_histogram.iter().sum::<usize>() == 256 && split;
        Ok((ok, format!("{} cosets, minimal norms 0/1/2: {:?}", s.cosets, s.norm_histogram)))
    }));
    if long {
        out.push(guarded("kissing-number", "leech-kissing-number", || {
            let k = leech.kissing_number(budget)?;
            Ok((k == 196560, format!("{k} vectors of norm 4")))
        }));
    }
    out
}
