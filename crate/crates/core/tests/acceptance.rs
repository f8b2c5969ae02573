//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use mckay_e8::griess::{check_spectrum, eigen_multiplicities, AlgebraContext, Automorphism, GriessElement, Spectrum};
use mckay_e8::mckay::{node_report, node_vectors, table_value, NodeReport, Workspace};
use mckay_e8::report::Check;
use mckay_e8::rootsys::{build_root_system, ExtendedE8Node, Letter};
use mckay_e8::scalar::{q, Rational, Scalar};
use mckay_e8::suites::{codes_suite, griess_suite, leech_suite, DataCodes};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLES: usize = 1000;

// expected values, written out independently of the library
fn expected_inner() -> [Rational; 9] {
    [q(1, 4), q(1, 32), q(13, 1024), q(1, 128), q(3, 512), q(5, 1024), q(1, 256), q(0, 1), q(1, 256)]
}

const PHI: [usize; 9] = [240, 128, 78, 52, 40, 38, 58, 112, 72];
const U2_DIM: [usize; 9] = [1, 3, 4, 5, 6, 8, 5, 2, 3];

fn h_counts(i: usize) -> Vec<usize> {
    match i {
        0 => vec![],
        1 => vec![112],
        2 => vec![81, 81],
        3 => vec![64, 60, 64],
        4 => vec![50; 4],
        5 => vec![36, 45, 40, 45, 36],
        6 => vec![56, 70, 56],
        7 => vec![128],
        _ => vec![84, 84],
    }
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn failing<'a>(checks: impl IntoIterator<Item = &'a Check>) -> Vec<String> {
    checks.into_iter().filter(|c| !c.pass).map(|c| format!("{}: {}", c.id, c.detail)).collect()
}

fn checks_with<'a>(checks: &'a [Check], prefixes: &[&str]) -> Vec<&'a Check> {
    checks.iter().filter(|c| prefixes.iter().any(|p| c.id.starts_with(p))).collect()
}

/// All listed ids present in every node report and passing.
fn node_checks(reports: &[NodeReport], ids: &[&str]) -> Vec<String> {
    let mut bad = Vec::new();
    for r in reports {
        for id in ids {
            match r.checks.iter().find(|c| c.id == *id) {
                Some(c) if c.pass => {}
                Some(c) => bad.push(format!("node {} {id}: {}", r.i, c.detail)),
                None => bad.push(format!("node {} {id}: missing", r.i)),
            }
        }
    }
    bad
}

fn suite_group(checks: &[Check], prefixes: &[&str], min: usize) -> Outcome {
    let group = checks_with(checks, prefixes);
    let bad = failing(group.iter().copied());
    outcome(group.len() >= min && bad.is_empty(), if bad.is_empty() { format!("{} checks", group.len()) } else { bad.join("; ") })
}

fn criterion1(reports: &[NodeReport]) -> Outcome {
    let want = expected_inner();
    let mut bad = node_checks(reports, &["inner-ef", "inner-ef-u2"]);
    for r in reports {
        let w = &want[r.i];
        if r.inner_ef != *w || r.inner_ef_counting != *w || table_value(r.i) != *w || r.inner_ef_in_u2 != *w {
            bad.push(format!("node {}: direct {}, counting {}, in U₂ {}", r.i, r.inner_ef, r.inner_ef_counting, r.inner_ef_in_u2));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "nine values, direct and counting".into() } else { bad.join("; ") })
}

fn criterion2(reports: &[NodeReport]) -> Outcome {
    let mut bad = node_checks(reports, &["root-counts"]);
    for r in reports {
        if r.phi != PHI[r.i] || r.h != h_counts(r.i) {
            bad.push(format!("node {}: ({}; {:?})", r.i, r.phi, r.h));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "nine ledgers".into() } else { bad.join("; ") })
}

// c(ω̃) for A_n, D_n, E6, E7, E8
fn expected_cc(letter: Letter, n: usize) -> Rational {
    match (letter, n) {
        (Letter::A, n) => q(2 * n as i64, n as i64 + 3),
        (Letter::D, _) => q(1, 1),
        (Letter::E, 6) => q(6, 7),
        (Letter::E, 7) => q(7, 10),
        _ => q(1, 2),
    }
}

fn criterion3(griess: &[Check]) -> Outcome {
    let group = suite_group(griess, &["conformal-", "hamming-", "omega-e8"], 20);
    let mut bad = if group.pass { Vec::new() } else { vec![group.detail.clone()] };
    let mut types = 0;
    for (letter, range) in [(Letter::A, 1..=8), (Letter::D, 4..=8), (Letter::E, 6..=8)] {
        for n in range {
            types += 1;
            let cc = build_root_system(letter, n)
                .and_then(|rs| {
                    let ctx = AlgebraContext::sqrt2_root_lattice(&rs)?;
                    let fam = ctx.root_system_families(&rs)?.remove(0);
                    ctx.conformal_check(&fam.omega_tilde)
                })
                .map_err(|e| e.to_string());
            if cc.as_ref() != Ok(&expected_cc(letter, n)) {
                bad.push(format!("{letter:?}{n}: {cc:?}"));
            }
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("{types} root systems; {}", group.detail) } else { bad.join("; ") })
}

fn criterion6(reports: &[NodeReport], leech: &[Check]) -> Outcome {
    let ids = ["dihedral", "tau-e-theta", "f-conjugate", "tau-e-module", "tau-product-e8", "tau-product-dual", "tau-product-leech"];
    let mut bad = node_checks(reports, &ids);
    for r in reports {
        let want = if r.n % 2 == 0 { r.n / 2 } else { r.n };
        if !r.dihedral_verified || r.tau_order_e8 != want || r.tau_order_leech != r.n as u64 {
            bad.push(format!("node {}: orders {}, {}", r.i, r.tau_order_e8, r.tau_order_leech));
        }
    }
    bad.extend(failing(checks_with(leech, &["leech-phase-orders"])));
    outcome(bad.is_empty(), if bad.is_empty() { format!("{} checks per node", ids.len()) } else { bad.join("; ") })
}

fn criterion7(reports: &[NodeReport]) -> Outcome {
    let mut bad = node_checks(reports, &["u2-dim", "u2-generated", "weyl-u2"]);
    for r in reports {
        if r.u2_dim != U2_DIM[r.i] || !r.u2_generated_by_ef {
            bad.push(format!("node {}: dim {}", r.i, r.u2_dim));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { format!("dims {U2_DIM:?}") } else { bad.join("; ") })
}

fn criterion8(codes: &[Check], leech: &[Check]) -> Outcome {
    let mut bad = failing(codes);
    let wanted = ["leech-invariants", "leech-embedding", "leech-min-norm", "coset-survey"];
    for id in wanted {
        match leech.iter().find(|c| c.id == id) {
            Some(c) if c.pass => {}
            Some(c) => bad.push(format!("{id}: {}", c.detail)),
            None => bad.push(format!("{id}: missing")),
        }
    }
    let pass = bad.is_empty() && codes.len() >= 5;
    outcome(pass, if pass { format!("{} code checks, {} lattice checks", codes.len(), wanted.len()) } else { bad.join("; ") })
}

type QE = GriessElement<Rational>;

// sparse elements with small rational coefficients; quasi-primary ones have
// no h(-2) part, θ-fixed ones pair e^x with e^{-x}
fn random_element(ctx: &AlgebraContext, rng: &mut ChaCha8Rng, quasi_primary: bool, theta_fixed: bool) -> QE {
    let mut u = ctx.zero::<Rational>();
    let r = ctx.rank();
    for _ in 0..2 {
        let (i, j) = (rng.gen_range(0..r), rng.gen_range(0..r));
        let cur = u.quad.get(i, j).plus(&q(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
        u.quad.set(i, j, cur.clone());
        u.quad.set(j, i, cur);
    }
    if !quasi_primary && !theta_fixed {
        let mut v = vec![Rational::zero(); ctx.dim()];
        v[ctx.deriv_offset() + rng.gen_range(0..r)] = q(rng.gen_range(-3..=3), 2);
        u = u.add(&ctx.from_vector(&v));
    }
    let m = ctx.norm4().len();
    for _ in 0..3 {
        let a = rng.gen_range(0..m);
        let c = q(rng.gen_range(-4..=4), rng.gen_range(1..=4));
        let e = ctx.exp_index::<Rational>(a);
        u = if theta_fixed { u.add(&e.add(&ctx.exp_index(ctx.neg_index(a))).scale_q(&c)) } else { u.add(&e.scale_q(&c)) };
    }
    u
}

fn property_samples(ctx: &AlgebraContext) -> mckay_e8::Result<Vec<String>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    for k in 0..SAMPLES {
        let u = random_element(ctx, &mut rng, true, true);
        let v = random_element(ctx, &mut rng, true, true);
        if ctx.product(&u, &v)? != ctx.product(&v, &u)? || ctx.inner(&u, &v)? != ctx.inner(&v, &u)? {
            bad.push(format!("commutativity sample {k}"));
        }
    }
    for k in 0..SAMPLES {
        let u = random_element(ctx, &mut rng, true, false);
        let v = random_element(ctx, &mut rng, false, false);
        let w = random_element(ctx, &mut rng, false, false);
        if ctx.inner(&ctx.product(&u, &v)?, &w)? != ctx.inner(&v, &ctx.product(&u, &w)?)? {
            bad.push(format!("invariance sample {k}"));
        }
    }
    let nodes = ExtendedE8Node::all()?;
    for k in 0..SAMPLES {
        let node = &nodes[rng.gen_range(0..nodes.len())];
        let a = match rng.gen_range(0..3) {
            0 => Automorphism::Theta,
            1 => Automorphism::Phase(node.glue_a.clone()),
            _ => Automorphism::Weyl(ctx.norm4()[rng.gen_range(0..ctx.norm4().len())].clone()),
        };
        let u = random_element(ctx, &mut rng, false, false);
        let v = random_element(ctx, &mut rng, false, false);
        let (au, av) = (ctx.apply(&a, &u)?, ctx.apply(&a, &v)?);
        if ctx.product(&au, &av)? != ctx.apply(&a, &ctx.product(&u, &v)?)?
            || ctx.inner(&au, &av)? != ctx.inner(&u, &v)?.to_cyclotomic()
        {
            bad.push(format!("automorphism sample {k} ({a:?})"));
        }
    }
    Ok(bad)
}

fn criterion9(ws: &Workspace, reports: &[NodeReport]) -> Outcome {
    let run = || -> mckay_e8::Result<Outcome> {
        let mut bad = property_samples(&ws.ctx)?;
        bad.extend(node_checks(reports, &["tau-u2"]));
        // on all of weight 2 the weight-one vectors add 17/16 to the Ising set
        let (e_hat, _) = node_vectors(ws, 0)?;
        let m = ws.ctx.left_mult(&e_hat)?;
        check_spectrum(&m, &Spectrum::weight2())?;
        let mult = eigen_multiplicities(&m, &Spectrum::weight2());
        let total: usize = mult.iter().map(|(_, k)| k).sum();
        if total != ws.ctx.dim() {
            bad.push(format!("weight-2 multiplicities {mult:?}"));
        }
        let shown: Vec<String> = mult.iter().map(|(mu, k)| format!("{mu}:{k}")).collect();
        Ok(outcome(
            bad.is_empty(),
            if bad.is_empty() {
                format!("3×{SAMPLES} samples; ê on weight 2 {}", shown.join(" "))
            } else {
                bad.join("; ")
            },
        ))
    };
    run().unwrap_or_else(|e| outcome(false, format!("error: {e}")))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let data = DataCodes::builtin();
    let griess = griess_suite();
    let codes = codes_suite(&data);
    let leech = leech_suite(&data, Duration::from_secs(600), false);
    let ws = match Workspace::new() {
        Ok(ws) => ws,
        Err(e) => {
            println!("FAIL workspace: {e}");
            return ExitCode::FAILURE;
        }
    };
    let mut reports = Vec::new();
    let mut node_errors = Vec::new();
    for i in 0..9 {
        match node_report(&ws, i) {
            Ok(r) => reports.push(r),
            Err(e) => node_errors.push(format!("node {i}: {e}")),
        }
    }
    let with_nodes = |o: Outcome| {
        if node_errors.is_empty() {
            o
        } else {
            outcome(false, format!("{}; {}", node_errors.join("; "), o.detail))
        }
    };

    let results = [
        ("mckay table", with_nodes(criterion1(&reports))),
        ("root-count ledger", with_nodes(criterion2(&reports))),
        ("conformal vectors", criterion3(&griess)),
        ("virasoro frames", suite_group(&griess, &["frame-"], 2)),
        ("coset lemma", suite_group(&griess, &["x-eta-", "highest-weight-"], 32)),
        ("automorphisms", with_nodes(criterion6(&reports, &leech))),
        ("coset subalgebra", with_nodes(criterion7(&reports))),
        ("codes and lattices", criterion8(&codes, &leech)),
        ("property suites", with_nodes(criterion9(&ws, &reports))),
    ];
    let mut all = true;
    for (k, (name, o)) in results.iter().enumerate() {
        all &= o.pass;
        println!("{} {}. {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("{} in {:.1?}", if all { "all criteria pass" } else { "some criteria fail" }, start.elapsed());
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
