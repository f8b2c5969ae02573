use mckay_e8::codes::{construction_a_binary, construction_a_z4, match_hamming_block, named_code, AnyCode, BinaryCode, NamedCode, Z4Code};
use mckay_e8::scalar::q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn data(name: &str) -> String {
    std::fs::read_to_string(std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)).unwrap()
}

fn random_code(rng: &mut ChaCha8Rng, n: usize) -> BinaryCode {
    let k = rng.gen_range(1..=n);
    let gens: Vec<u64> = (0..k).map(|_| rng.gen_range(0..1u64 << n)).collect();
    BinaryCode::new(n, &gens)
}

#[test]
fn hamming_weights_by_enumeration() {
    let h = BinaryCode::hamming8();
    let words = h.codewords();
    assert_eq!(words.len(), 16);
    let mut dist = vec![0u64; 9];
    for w in &words {
        dist[w.count_ones() as usize] += 1;
    }
    assert_eq!(dist, vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
    assert_eq!(h.weight_distribution(), dist);
    // self-dual: every pair of codewords is orthogonal and the dimension is half the length
    assert!(words.iter().all(|a| words.iter().all(|b| (a & b).count_ones() % 2 == 0)));
    assert_eq!(h.dual(), h);
}

#[test]
fn reed_muller_file_and_duality() {
    let rm41 = BinaryCode::parse(&data("rm41.txt")).unwrap();
    assert_eq!(rm41, BinaryCode::rm41());
    assert_eq!(rm41.dimension(), 5);
    let rm42 = rm41.dual();
    assert_eq!(rm42.dimension(), 11);
    assert_eq!(rm42, BinaryCode::rm42());
    assert_eq!(rm42.dual(), rm41);
    // RM(4,1) weights: 0, 8 (30 times), 16
    assert_eq!(rm41.weight_distribution().iter().enumerate().filter(|(_, &c)| c > 0).map(|(w, &c)| (w, c)).collect::<Vec<_>>(), vec![(0, 1), (8, 30), (16, 1)]);
}

#[test]
fn dual_is_an_involution() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let n = rng.gen_range(1..=12);
        let c = random_code(&mut rng, n);
        let d = c.dual();
        assert_eq!(c.dimension() + d.dimension(), n);
        assert_eq!(d.dual(), c);
        for a in c.codewords() {
            for g in d.generators() {
                assert_eq!((a & g).count_ones() % 2, 0);
            }
        }
    }
}

#[test]
fn construction_a_doubly_even_iff_code_doubly_even() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let n = rng.gen_range(2..=8);
        let c = random_code(&mut rng, n);
        let l = construction_a_binary(&c).unwrap();
        assert_eq!(l.is_doubly_even(), c.codewords().iter().all(|w| w.count_ones() % 4 == 0));
        // [Z^n : A(C)] = 2^{n-k}, so det = 4^{n-k}
        assert_eq!(l.det(), q(1 << (2 * (n - c.dimension())), 1));
    }
    let l = construction_a_binary(&BinaryCode::hamming8()).unwrap();
    assert!(l.is_doubly_even());
    assert_eq!(l.det(), q(256, 1));
    assert_eq!(l.short_vectors(&q(4, 1)).len(), 240);
}

#[test]
fn z4_code_from_file_is_type_ii() {
    let c = Z4Code::parse(&data("z4_leech.txt")).unwrap();
    assert_eq!(c, Z4Code::leech());
    assert_eq!(c.generators().len(), 17);
    assert_eq!(c.type_counts(), (7, 10));
    assert_eq!(c.cardinality(), 4u128.pow(7) * 2u128.pow(10));
    assert!(c.is_self_orthogonal());
    assert_eq!(c.dual().unwrap(), c);
    assert!(c.is_type_ii());
    // generators have Euclidean weight divisible by 8
    assert!(c.generators().iter().all(|g| Z4Code::euclidean_weight(g).is_multiple_of(8)));
}

#[test]
fn z4_mutations_break_type_ii() {
    let c = Z4Code::leech();
    let mut broken = 0;
    for (row, col) in [(0, 0), (3, 7), (9, 20), (16, 23)] {
        let v = c.generators()[row][col];
        let m = c.with_entry(row, col, (v + 1) % 4).unwrap();
        if !m.is_type_ii() {
            broken += 1;
        }
    }
    assert_eq!(broken, 4);
    assert!(!Z4Code::zero(24).is_type_ii());
    assert!(!Z4Code::full(24).is_type_ii());
}

#[test]
fn residue_code_contains_three_hamming_blocks() {
    let c = Z4Code::leech();
    let b = c.residue_code_b().unwrap();
    // 2-torsion of Z4^7 × Z2^10 has order 2^17
    assert_eq!(b.dimension(), 17);
    for &g in b.generators() {
        let w: Vec<u8> = b.word_vec(g).iter().map(|x| 2 * x).collect();
        assert!(c.contains(&w));
    }
    for k in 0..3 {
        let block: Vec<usize> = (8 * k..8 * k + 8).collect();
        let mask = block.iter().fold(0u64, |m, &j| m | 1 << j);
        assert!(match_hamming_block(&b.supported_in(mask), &block).is_some());
    }
    assert_eq!(Z4Code::zero(6).residue_code_b().unwrap(), BinaryCode::zero(6));
    assert_eq!(Z4Code::full(6).residue_code_b().unwrap(), BinaryCode::full(6));
}

#[test]
fn leech_lattice_and_residue_sublattice() {
    let c = Z4Code::leech();
    let l = construction_a_z4(&c).unwrap();
    assert_eq!(l.rank(), 24);
    assert_eq!(l.det(), q(1, 1));
    assert!(l.is_even());
    let sub = construction_a_binary(&c.residue_code_b().unwrap()).unwrap();
    // [Λ : A(B)] = |C| / |2B|
    assert_eq!(sub.index_in(&l), Some((c.cardinality() >> 17) as u64));
}

#[test]
fn named_codes() {
    assert!(matches!(named_code(NamedCode::Hamming8), AnyCode::Binary(h) if h.dimension() == 4));
    assert!(matches!(named_code(NamedCode::Rm42), AnyCode::Binary(h) if h.dimension() == 11));
    assert!(matches!(named_code(NamedCode::Z4Leech), AnyCode::Z4(z) if z.length() == 24));
}
