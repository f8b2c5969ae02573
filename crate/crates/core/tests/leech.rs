use std::time::Duration;

use mckay_e8::codes::Z4Code;
use mckay_e8::leech::{build_leech, minimal_coset_survey, sqrt2_e8_lattice, COSET_SHAPES};
use mckay_e8::linalg::{dot, vadd};
use mckay_e8::rootsys::ExtendedE8Node;
use mckay_e8::scalar::q;

#[test]
fn leech_lattice_invariants() {
    let ctx = build_leech(&Z4Code::leech()).unwrap();
    let inv = ctx.invariants(Some(Duration::from_secs(600))).unwrap();
    assert_eq!(inv.rank, 24);
    assert_eq!(inv.det, q(1, 1));
    assert!(inv.is_even);
    assert_eq!(inv.min_norm, Some(q(4, 1)));
    assert!(inv.embedding_gram_ok);
    assert_eq!(inv.norm4_per_block, [240; 3]);
    assert!(inv.blocks_orthogonal);
}

#[test]
fn sigma_tilde_orders_are_marks() {
    let ctx = build_leech(&Z4Code::leech()).unwrap();
    for node in ExtendedE8Node::all().unwrap() {
        assert_eq!(ctx.sigma_tilde_order(&node), node.n as u64, "node {}", node.i);
    }
}

#[test]
fn dual_coset_survey() {
    // cosets correspond to E8/2E8: zero, 120 classes ±r of roots and 135
    // classes of 8 orthogonal pairs ±v of norm-4 vectors
    let s = minimal_coset_survey().unwrap();
    assert_eq!(s.cosets, 256);
    assert_eq!(s.norm_histogram, [1, 120, 135]);
    for e in &s.entries {
        let want = match e.min_norm.to_integer() {
            Some(0) => 1,
            Some(1) => 2,
            Some(2) => 16,
            _ => panic!("minimal norm {}", e.min_norm),
        };
        assert_eq!(e.minimal_count, want);
        assert_eq!(dot(&e.representative, &e.representative), e.min_norm);
        assert!(e.shape < COSET_SHAPES.len());
        match &e.split {
            Some((a, b)) => {
                assert_eq!(e.min_norm, q(2, 1));
                assert_eq!((dot(a, a), dot(b, b), dot(a, b)), (q(1, 1), q(1, 1), q(0, 1)));
                assert_eq!(vadd(a, b), e.representative);
            }
            None => assert!(e.min_norm < q(2, 1)),
        }
    }
    let minimal: usize = s.entries.iter().filter(|e| e.min_norm == q(1, 1)).map(|e| e.minimal_count).sum();
    assert_eq!(minimal, 240);
    let minimal: usize = s.entries.iter().filter(|e| e.min_norm == q(2, 1)).map(|e| e.minimal_count).sum();
    assert_eq!(minimal, 2160);
}

#[test]
fn phase_map_is_additive() {
    let ctx = build_leech(&Z4Code::leech()).unwrap();
    let basis = ctx.lattice.basis();
    for node in ExtendedE8Node::all().unwrap() {
        for a in 0..24 {
            let (x, y) = (&basis[a], &basis[(5 * a + 1) % 24]);
            let sum = (&ctx.phase_angle(&node, x) + &ctx.phase_angle(&node, y)).fract();
            assert_eq!(ctx.phase_angle(&node, &vadd(x, y)), sum);
        }
    }
}

#[test]
fn embedded_blocks_lie_in_leech() {
    let ctx = build_leech(&Z4Code::leech()).unwrap();
    let e8 = sqrt2_e8_lattice().unwrap();
    for b in 0..3 {
        for v in e8.basis() {
            let x = ctx.embed(b, v);
            assert!(ctx.lattice.contains(&x));
            assert_eq!(ctx.lattice.norm(&x), dot(v, v));
        }
    }
}
