use mckay_e8::lattice::{count_roots_in_coset, count_x_eta, Coset, EvenLattice};
use mckay_e8::linalg::{dot, int_vec, vadd, QVec};
use mckay_e8::rootsys::{
    build_root_system, check_intermediate_chains, classify_root_sublattice, e8_hamming_model, format_components,
    weyl_reflection, Component, ExtendedE8Node, Letter, MARKS,
};
use mckay_e8::scalar::{q, Rational};
use mckay_e8::Error;

fn types(i: usize) -> String {
    format_components(&ExtendedE8Node::new(i).unwrap().components)
}

#[test]
fn root_counts_of_built_systems() {
    assert_eq!(build_root_system(Letter::E, 8).unwrap().roots.len(), 240);
    assert_eq!(build_root_system(Letter::D, 8).unwrap().roots.len(), 112);
    for (l, r) in [(Letter::A, 5), (Letter::D, 6), (Letter::E, 6), (Letter::E, 7)] {
        let rs = build_root_system(l, r).unwrap();
        assert_eq!(rs.components, vec![Component::new(l, r)]);
        assert_eq!(rs.roots.len(), r * rs.coxeter_numbers[0]);
        assert!(rs.roots.iter().all(|x| dot(x, x) == q(2, 1)));
    }
}

#[test]
fn highest_root_orbit_stays_in_e8() {
    let rs = build_root_system(Letter::E, 8).unwrap();
    let mut orbit = vec![rs.highest_root(0)];
    let mut seen: std::collections::HashSet<QVec> = orbit.iter().cloned().collect();
    while let Some(v) = orbit.pop() {
        for s in &rs.simple_roots {
            let w = weyl_reflection(s, &v);
            if seen.insert(w.clone()) {
                orbit.push(w);
            }
        }
    }
    let roots: std::collections::HashSet<QVec> = rs.roots.iter().cloned().collect();
    assert_eq!(seen, roots);
}

#[test]
fn nine_decompositions() {
    let expected = ["E8", "A1+E7", "A2+E6", "A3+D5", "A4+A4", "A1+A2+A5", "A1+A7", "D8", "A8"];
    for (i, e) in expected.iter().enumerate() {
        assert_eq!(types(i), *e, "node {i}");
    }
}

#[test]
fn node_invariants() {
    for node in ExtendedE8Node::all().unwrap() {
        assert!(node.relation_residual().iter().all(Rational::is_zero));
        assert_eq!(node.n, MARKS[node.i]);
        assert!(node.glue_is_valid(), "glue for node {}", node.i);
        let total: usize = node.components.iter().map(|c| c.root_count()).sum();
        assert_eq!(node.root_system.roots.len(), total);
        // every simple root has norm 2; adjacent nodes pair to -1
        for a in &node.alphas {
            assert_eq!(node.ip(a, a), q(2, 1));
        }
    }
    let n7 = ExtendedE8Node::new(7).unwrap();
    let half = q(1, 2);
    let expect: QVec = vadd(&n7.alphas[6], &n7.alphas[8]).iter().map(|x| x * &half).collect();
    assert_eq!(n7.glue_a, expect);
}

#[test]
fn extended_diagram_adjacency() {
    let node = ExtendedE8Node::new(0).unwrap();
    let edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 8)];
    for a in 0..9 {
        for b in (a + 1)..9 {
            let want = if edges.contains(&(a, b)) { q(-1, 1) } else { q(0, 1) };
            assert_eq!(node.ip(&node.alphas[a], &node.alphas[b]), want, "α{a}, α{b}");
        }
    }
}

#[test]
fn index_from_determinants() {
    let e8 = e8_hamming_model();
    assert_eq!(e8.det(), q(1, 1));
    let l5 = ExtendedE8Node::new(5).unwrap().lattice;
    assert_eq!(l5.det(), q(36, 1));
    assert_eq!(l5.index_in(&e8), Some(6));
}

#[test]
fn sqrt2_e8_invariants() {
    let e8 = e8_hamming_model();
    let s = EvenLattice::with_scale(e8.basis().to_vec(), q(1, 1)).unwrap();
    let inv = s.invariants();
    assert_eq!(inv.det, q(256, 1));
    assert!(inv.is_doubly_even);
    assert_eq!(s.short_vectors(&q(4, 1)).len(), 240);
    assert!(s.short_vectors(&q(2, 1)).is_empty());
}

#[test]
fn short_vectors_against_box_oracle() {
    // D4 Gram matrix in a skewed basis; compare with brute force over a box
    let basis = vec![int_vec(&[1, -1, 0, 0]), int_vec(&[0, 1, -1, 0]), int_vec(&[0, 0, 1, -1]), int_vec(&[0, 0, 1, 1])];
    let l = EvenLattice::with_scale(basis, q(1, 1)).unwrap();
    for n in [2, 4, 6] {
        let got = l.short_vectors(&q(n, 1));
        let mut oracle = Vec::new();
        for a in -4..=4i64 {
            for b in -4..=4i64 {
                for c in -4..=4i64 {
                    for d in -4..=4i64 {
                        let v = l.int_vector(&[a, b, c, d]);
                        if dot(&v, &v) == q(n, 1) {
                            oracle.push(v);
                        }
                    }
                }
            }
        }
        oracle.sort();
        assert_eq!(got, oracle, "norm {n}");
        assert!(got.iter().all(|v| got.contains(&v.iter().map(|x| -x).collect())));
    }
}

#[test]
fn coset_root_counts() {
    let expected: [&[usize]; 9] = [
        &[],
        &[112],
        &[81, 81],
        &[64, 60, 64],
        &[50, 50, 50, 50],
        &[36, 45, 40, 45, 36],
        &[56, 70, 56],
        &[128],
        &[84, 84],
    ];
    let phi = [240, 128, 78, 52, 40, 38, 58, 112, 72];
    for node in ExtendedE8Node::all().unwrap() {
        let h: Vec<usize> = (1..node.n).map(|j| count_roots_in_coset(&node, j)).collect();
        assert_eq!(h, expected[node.i], "node {}", node.i);
        assert_eq!(node.root_system.roots.len(), phi[node.i]);
        // oracle: sort all 240 roots of E8 by coset
        let mut tally = vec![0usize; node.n];
        for r in node.e8.short_vectors(&q(2, 1)) {
            tally[node.coset_index(&r).unwrap()] += 1;
        }
        assert_eq!(tally[0], phi[node.i]);
        assert_eq!(&tally[1..], expected[node.i]);
    }
}

#[test]
fn a2_coset_minimum_and_x_eta() {
    let rs = build_root_system(Letter::A, 2).unwrap();
    let lat = rs.root_lattice().unwrap();
    let mu = vec![q(1, 3), q(1, 3), q(-2, 3)];
    let c = Coset::new(lat.clone(), mu);
    let (k, mins) = c.min_norm();
    assert_eq!(k, q(2, 3));
    assert_eq!(mins.len(), 3);
    for eta in &mins {
        assert_eq!(count_x_eta(&rs, &c, eta).unwrap(), 2);
    }
    let zero = Coset::zero(lat);
    assert_eq!(count_x_eta(&rs, &zero, &[q(0, 1), q(0, 1), q(0, 1)]).unwrap(), 0);
    assert!(matches!(count_x_eta(&rs, &zero, &int_vec(&[1, -1, 0])), Err(Error::NotMinimal)));
}

#[test]
fn d5_spinor_x_eta() {
    let rs = build_root_system(Letter::D, 5).unwrap();
    let lat = rs.root_lattice().unwrap();
    let spinor: QVec = vec![q(1, 2); 5];
    let c = Coset::new(lat, spinor);
    let (k, mins) = c.min_norm();
    assert_eq!(k, q(5, 4));
    for eta in &mins {
        assert_eq!(count_x_eta(&rs, &c, eta).unwrap(), 10);
    }
}

#[test]
fn no_roots_is_not_root_generated() {
    let l = EvenLattice::with_scale(vec![int_vec(&[2, 0]), int_vec(&[0, 2])], q(1, 1)).unwrap();
    assert!(matches!(classify_root_sublattice(&l), Err(Error::NotRootGenerated)));
}

#[test]
fn intermediate_chains() {
    let chains = check_intermediate_chains().unwrap();
    let summary: Vec<(usize, String, u64, u64)> = chains
        .iter()
        .map(|c| (c.node, format_components(&c.middle), c.lower_index, c.upper_index))
        .collect();
    assert_eq!(
        summary,
        vec![
            (3, "D8".to_string(), 2, 2),
            (5, "A2+E6".to_string(), 2, 3),
            (5, "A1+E7".to_string(), 3, 2),
            (6, "A1+E7".to_string(), 2, 2),
        ]
    );
    assert_eq!(ExtendedE8Node::new(0).unwrap().lattice.index_in(&e8_hamming_model()), Some(1));
}
