use rspace::games::{kastanas_ramsey_check, ClopenPayoff, MoveUniverse, Predicate, Side};
use rspace::gowers::Status;
use rspace::spaces::pools::{evens, naturals, odds, standard_pool, top_gen};
use rspace::spaces::vector::{Field, Scalar};
use rspace::verify::*;
use rspace::{ARElem, Error, Space};

const E: Space = Space::Ellentuck;

#[test]
fn a1_passes_on_standard_pools() {
    for space in [E, Space::Fin { k: 2 }, Space::Singleton] {
        let r = run_check(space, "a1", CheckConfig::default()).unwrap().unwrap();
        assert_eq!(r.status, Status::Pass, "{space:?}");
    }
}

#[test]
fn a1_fault_is_caught() {
    let pool = vec![naturals(8), unstable_stem_gen(8)];
    let r = check_a1(&E, &pool, CheckConfig::default());
    assert_eq!(r.status, Status::Fail);
    let bad = r.clauses.iter().find(|c| c.status == Status::Fail).unwrap();
    let w = bad.witness.as_deref().unwrap();
    assert!(w.contains("n ="), "{w}");
}

/// Block sequences of nonzero vectors supported below `m`, counted by direct recursion over
/// coefficient vectors.
fn block_sequences(q: u64, m: u32) -> usize {
    fn nonzero_vectors(q: u64, lo: u32, m: u32) -> Vec<(u32, u32)> {
        // (min support, max support) of every nonzero vector on coordinates lo..m
        let width = m - lo;
        let mut out = Vec::new();
        for code in 1..q.pow(width) {
            let digits: Vec<u64> = (0..width).map(|i| code / q.pow(i) % q).collect();
            let lo_s = digits.iter().position(|&d| d != 0).unwrap() as u32 + lo;
            let hi_s = digits.iter().rposition(|&d| d != 0).unwrap() as u32 + lo;
            out.push((lo_s, hi_s));
        }
        out
    }
    fn count(q: u64, from: u32, m: u32) -> usize {
        if from >= m {
            return 1;
        }
        1 + nonzero_vectors(q, from, m)
            .into_iter()
            .filter(|&(lo, _)| lo >= from)
            .map(|(_, hi)| count(q, hi + 1, m))
            .sum::<usize>()
    }
    count(q, 0, m)
}

#[test]
fn finite_field_predecessors_match_enumeration() {
    for (q, m, expect) in [(2, 3, 14), (2, 4, 41), (3, 3, 63)] {
        assert_eq!(block_sequences(q, m), expect);
        let space = Space::Vector { field: Field::Gf(q as u8) };
        let preds = predecessors(&space, &top_gen(space, 6), m as usize).unwrap();
        assert_eq!(preds.len(), expect, "GF({q}) depth {m}");
    }
}

#[test]
fn rationals_break_a2() {
    let lams = a2_lambda_witnesses(Field::Rational);
    assert!(lams.len() >= 3);
    let mut seen = lams.clone();
    seen.dedup();
    assert_eq!(seen.len(), lams.len());
    assert!(!lams.contains(&Scalar::from_integer(1)));
    let r = run_check(Space::Vector { field: Field::Rational }, "wa2", CheckConfig::default()).unwrap().unwrap();
    assert!(r.notes.iter().any(|n| n.contains("A2(1) fails")));
    assert!(a2_lambda_witnesses(Field::Gf(2)).is_empty());
}

#[test]
fn wa2_on_ellentuck_and_gf2() {
    for space in [E, Space::Vector { field: Field::Gf(2) }] {
        let r = run_check(space, "wa2", CheckConfig { samples: 100, ..CheckConfig::default() }).unwrap().unwrap();
        assert_eq!(r.status, Status::Pass, "{space:?}");
    }
}

#[test]
fn a3_pool_dependence() {
    let r = run_check(E, "a3", CheckConfig::default()).unwrap().unwrap();
    assert_eq!(r.status, Status::Pass);
    let r = run_check(Space::Fin { k: 2 }, "a3", CheckConfig::default()).unwrap().unwrap();
    assert_eq!(r.status, Status::Pass);
    let sparse = vec![naturals(8), odds(8)];
    let r = check_a3(&E, &sparse, CheckConfig { pastes: false, ..CheckConfig::default() });
    assert_eq!(r.status, Status::SearchBounded);
    assert!(r.clauses.iter().all(|c| c.status != Status::Fail));
}

#[test]
fn biasymptotic_dispatch() {
    for space in [Space::FinSigned { k: 2 }, Space::Vector { field: Field::Gf(3) }] {
        let r = check_biasymptotic(space, &standard_pool(space, 50, 7), 4).unwrap();
        assert_eq!(r.status, Status::Pass, "{space:?}");
    }
    let gf2 = Space::Vector { field: Field::Gf(2) };
    assert!(matches!(check_biasymptotic(gf2, &standard_pool(gf2, 5, 7), 4), Err(Error::WrongSpace(_))));
    assert!(run_check(gf2, "biasymptotic", CheckConfig::default()).unwrap().is_none());
}

#[test]
fn product_bundle_on_ellentuck() {
    let r = run_check(E, "product", CheckConfig::default()).unwrap().unwrap();
    assert_ne!(r.status, Status::Fail);
    assert!(r.clauses.iter().any(|c| c.clause.starts_with("biasymptotic")));
}

#[test]
fn min_even_clopen_search() {
    let universe = MoveUniverse::new(vec![evens(8), odds(8), naturals(8)], 8);
    let payoff = ClopenPayoff { horizon: 1, predicate: Predicate::MinEven };
    let found = clopen_ramsey_search(&ARElem::empty(E), &payoff, &universe).unwrap();
    assert_eq!(found.inside, vec![evens(8)]);
    assert_eq!(found.outside, vec![odds(8)]);
    assert_eq!(found.report.status, Status::Pass);

    let never = ClopenPayoff { horizon: 1, predicate: Predicate::False };
    let found = clopen_ramsey_search(&ARElem::empty(E), &never, &universe).unwrap();
    assert!(found.inside.is_empty());
    assert_eq!(found.outside.len(), 3);
}

#[test]
fn biasymptotic_contrast() {
    let s = Space::FinSigned { k: 2 };
    let universe = MoveUniverse::new(standard_pool(s, 4, 7), 4);
    let top = top_gen(s, 5);
    let base = ARElem::empty(s);
    for pred in [Predicate::LastInY, Predicate::LastNotInY] {
        let payoff = ClopenPayoff { horizon: 1, predicate: pred };
        let found = clopen_ramsey_search(&base, &payoff, &universe).unwrap();
        assert!(found.inside.is_empty() && found.outside.is_empty());
        let kr = kastanas_ramsey_check(&base, &top, &payoff, &universe).unwrap();
        assert_eq!(kr.found.map(|(_, side)| side), Some(Side::II));
    }
}

#[test]
fn bundles_are_deterministic() {
    let ids: Vec<String> = vec!["wa2".into(), "a1".into()];
    let spaces = [E, Space::Fin { k: 2 }];
    let a = run_bundle(&spaces, &ids, CheckConfig::default()).unwrap();
    let b = run_bundle(&spaces, &ids, CheckConfig::default()).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let order: Vec<(String, String)> = a.iter().map(|r| (r.check.clone(), r.scope.space.clone())).collect();
    assert_eq!(order[0].0, "A1");
    assert_eq!(order.len(), 4);
    assert!(matches!(run_bundle(&spaces, &["a9".into()], CheckConfig::default()), Err(Error::UnknownCheck(_))));
}
