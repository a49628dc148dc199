mod common;

use knotqa::{
    certify, classify, determinant, verify_certificate, Certificate, LaurentPoly, LinkDiagram, Resolution, SharedCache,
    SkeinEngine,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q_with(cache: &SharedCache, d: &LinkDiagram) -> LaurentPoly {
    SkeinEngine::new().with_shared(cache).evaluate(d).unwrap()
}

fn x() -> LaurentPoly {
    LaurentPoly::x()
}

#[test]
fn skein_relation_on_random_crossings() {
    let cache = SharedCache::new();
    let pool: Vec<_> = common::small_corpus(9)
        .into_iter()
        .filter(|e| e.parsed.crossing_count() > 0)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..240 {
        let e = &pool[rng.gen_range(0..pool.len())];
        let d = &e.parsed;
        let c = rng.gen_range(0..d.crossing_count());
        let lhs = q_with(&cache, d) + q_with(&cache, &d.switch(c).unwrap());
        let a = q_with(&cache, &d.smooth(c, Resolution::SmoothingA).unwrap());
        let b = q_with(&cache, &d.smooth(c, Resolution::SmoothingB).unwrap());
        assert_eq!(lhs, &x() * &(a + b), "{} at {c}", e.name);
    }
}

#[test]
fn evaluations_at_one_and_minus_two() {
    let cache = SharedCache::new();
    for e in common::corpus() {
        let q = q_with(&cache, &e.parsed);
        assert_eq!(
            q.eval_int(1).unwrap(),
            BigRational::from_integer(1.into()),
            "{}",
            e.name
        );
        let c = e.parsed.components() as u32;
        let expected = BigRational::from_integer(BigInt::from(-2).pow(c - 1));
        assert_eq!(q.eval_int(-2).unwrap(), expected, "{}", e.name);
    }
}

#[test]
fn degree_below_crossing_count() {
    let cache = SharedCache::new();
    for e in common::corpus() {
        let d = &e.parsed;
        if d.crossing_count() == 0 {
            continue;
        }
        let deg = q_with(&cache, d).degree().unwrap();
        assert!(deg < d.crossing_count() as i64, "{}", e.name);
    }
}

#[test]
fn degree_grows_by_at_most_one_over_smoothings() {
    let cache = SharedCache::new();
    for e in common::small_corpus(9) {
        let d = &e.parsed;
        let deg = q_with(&cache, d).degree().unwrap();
        for c in 0..d.crossing_count() {
            let m = Resolution::BOTH
                .iter()
                .map(|&r| q_with(&cache, &d.smooth(c, r).unwrap()).degree().unwrap())
                .max()
                .unwrap();
            assert!(deg <= m + 1, "{} at {c}", e.name);
        }
    }
}

/// R1 kink and R2 finger move on a few arcs of `d`.
fn variants(d: &LinkDiagram, rng: &mut ChaCha8Rng) -> Vec<LinkDiagram> {
    let mut out = Vec::new();
    let n = d.arc_count();
    for _ in 0..2 {
        let arc = rng.gen_range(0..n);
        out.push(d.with_kink(arc, rng.gen()));
    }
    let mut tries = 0;
    while out.len() < 4 && tries < 200 {
        tries += 1;
        if let Some(v) = d.with_bigon(rng.gen_range(0..n), rng.gen_range(0..n)) {
            out.push(v);
        }
    }
    out
}

#[test]
fn invariance_under_moves_and_braid_form() {
    let cache = SharedCache::new();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let corpus = common::corpus();
    let by_name = |name: &str| corpus.iter().find(|e| e.name == name).unwrap();
    let mut linked = 0;
    for (name, braid) in common::braids() {
        let e = by_name(&name);
        if e.parsed.crossing_count() > 10 {
            continue;
        }
        let q = q_with(&cache, &e.parsed);
        let det = determinant(&e.parsed);
        let vs = variants(&e.parsed, &mut rng);
        assert!(vs.len() >= 3, "{name}");
        for v in vs.iter().chain(std::iter::once(&braid)) {
            assert_eq!(q_with(&cache, v), q, "{name}: {v}");
            assert_eq!(determinant(v), det, "{name}: {v}");
        }
        linked += 1;
    }
    assert!(linked >= 40);
}

#[test]
fn mirror_invariance() {
    let cache = SharedCache::new();
    for e in common::corpus() {
        let m = e.parsed.mirror();
        assert_eq!(q_with(&cache, &m), q_with(&cache, &e.parsed), "{}", e.name);
        assert_eq!(determinant(&m), determinant(&e.parsed), "{}", e.name);
    }
}

#[test]
fn alternating_detection_agrees_with_tables() {
    let golden = common::golden();
    for e in common::corpus() {
        if let Some(g) = golden.get(&e.name) {
            assert_eq!(common::is_alternating(&e.parsed), g.alternating, "{}", e.name);
        }
    }
}

#[test]
fn alternating_crossing_number_bounded_by_det() {
    let golden = common::golden();
    for (name, g) in &golden {
        if g.alternating {
            assert!(BigInt::from(g.crossings) <= g.det, "{name}");
        }
    }
}

fn each_node(c: &Certificate, f: &mut impl FnMut(&knotqa::CertNode)) {
    if let Certificate::Node(n) = c {
        f(n);
        for ch in &n.children {
            each_node(ch, f);
        }
    }
}

#[test]
fn certificates_split_det_additively() {
    for e in common::small_corpus(8) {
        let Some(cert) = certify(&e.parsed, 1_000_000).unwrap() else {
            continue;
        };
        assert!(verify_certificate(&cert), "{}", e.name);
        assert!(cert.depth() <= e.parsed.crossing_count());
        each_node(&cert, &mut |n| {
            let parts: Vec<BigInt> = Resolution::BOTH
                .iter()
                .map(|&r| determinant(&n.diagram.smooth(n.crossing, r).unwrap()))
                .collect();
            assert_eq!(&parts[0] + &parts[1], n.det, "{}", e.name);
            assert!(parts.iter().all(|p| *p >= BigInt::from(1)));
        });
    }
}

#[test]
fn known_quasi_alternating_never_obstructed() {
    let golden = common::golden();
    let mut sentinels: Vec<LinkDiagram> = (1..=12)
        .map(|n| LinkDiagram::from_braid(&vec![1; n], 2).unwrap())
        .collect();
    // connected sums of Hopf links
    sentinels.push(LinkDiagram::from_braid(&[1, 1, 2, 2], 3).unwrap());
    sentinels.push(LinkDiagram::from_braid(&[1, 1, 2, 2, 3, 3], 4).unwrap());
    for e in common::small_corpus(8) {
        if golden.get(&e.name).is_some_and(|g| g.alternating && g.crossings <= 8) {
            sentinels.push(e.parsed.clone());
        }
    }
    for d in &sentinels {
        let r = classify(d).unwrap();
        assert!(!r.verdict.is_not_qa(), "{d}: {}", r.verdict);
    }
}

#[test]
fn verdict_same_across_diagrams() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for name in ["4_1", "8_19", "10_140", "6_2", "L4a1"] {
        let e = knotqa::corpus::bundled_entry(name).unwrap();
        let base = classify(&e.parsed).unwrap();
        for v in variants(&e.parsed, &mut rng) {
            let r = classify(&v).unwrap();
            assert_eq!(
                (r.det, r.deg_q, r.verdict),
                (base.det.clone(), base.deg_q, base.verdict),
                "{name}"
            );
        }
    }
}

#[test]
fn refined_bound_catches_strictly_more() {
    let mut refined_only = Vec::new();
    for e in common::corpus() {
        let r = classify(&e.parsed).unwrap();
        let deg = BigInt::from(r.deg_q);
        let coarse = r.det == BigInt::from(0) || deg >= r.det;
        if coarse {
            assert!(r.verdict.is_not_qa(), "{}", e.name);
        }
        if !coarse && r.verdict.is_not_qa() {
            refined_only.push(e.name.clone());
        }
    }
    assert!(refined_only.contains(&"10_140".to_string()), "{refined_only:?}");
}
