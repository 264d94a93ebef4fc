//! Acceptance criteria 1 to 9, run in order with one result line each.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::Rng;

use rspace::games::{
    kastanas_ramsey_check, replay_strategy, solve_game, ClopenPayoff, Game, GameKind, Goal, GoalSet, MoveUniverse,
    Player, Predicate, Side,
};
use rspace::gowers::{
    canonical_strategy, closure_for_lift, f_interleave, g_project, h_project, mirror_outcomes, translate_strategy,
    Direction, Status,
};
use rspace::space::{depth_within, in_neighborhood, one_step_exts};
use rspace::spaces::deep::{deep_witness, paste};
use rspace::spaces::fin::{comb_span, FinKElem};
use rspace::spaces::pools::{example_spaces, naturals, standard_pool, top_gen};
use rspace::spaces::text::encode_elem;
use rspace::spaces::vector::{span_membership, BlockVector, Field, Scalar};
use rspace::verify::{a2_lambda_witnesses, check_biasymptotic, clopen_ramsey_search, predecessors, run_check, CheckConfig};
use rspace::{ARElem, Payload, Space, SubspaceGen, WSpace};

use common::{random_scenario, rng};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// 1. A1, wA2 and A3 on the eight example spaces never fail, inside the time budget.
fn axiom_suite() -> Outcome {
    let t = Instant::now();
    let cfg = CheckConfig { samples: 200, seed: 7, pastes: true };
    let mut bounded = Vec::new();
    for space in example_spaces() {
        for id in ["a1", "wa2", "a3"] {
            let r = run_check(space, id, cfg).map_err(|e| e.to_string())?.expect("axiom checks apply everywhere");
            ensure(r.status != Status::Fail, || format!("{} fails on {}: {:?}", r.check, space.tag(), r.clauses))?;
            if r.status == Status::SearchBounded {
                bounded.push(format!("{}/{}", r.check, space.tag()));
            }
        }
    }
    let took = t.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("24 reports, no failures, search-bounded: [{}], {:.1}s", bounded.join(", "), took.as_secs_f64()))
}

/// 2. Goal and dual are won by exactly one side in every randomized scenario.
fn finite_determinacy() -> Outcome {
    let mut r = rng(2);
    let mut n = 0;
    for round in 0..10 {
        for kind in GameKind::ALL {
            let sc = random_scenario(&mut r, kind, 3, 6);
            let goal = Goal::new(*[Player::I, Player::II].choose(&mut r).unwrap(), GoalSet::Target);
            let a = solve_game(&sc.game, goal).map_err(|e| format!("{}: {e}", sc.label))?;
            let b = solve_game(&sc.game, goal.dual()).map_err(|e| format!("{}: {e}", sc.label))?;
            ensure(a.wins != b.wins, || format!("round {round}: {} has {} / {}", sc.label, a.wins, b.wins))?;
            n += 1;
        }
    }
    Ok(format!("{n} scenarios over {} game kinds, all complementary", GameKind::ALL.len()))
}

/// 3. Every pool member has one-step extensions inside and outside the biasymptotic set.
fn biasymptotic_witnesses() -> Outcome {
    let mut parts = Vec::new();
    for space in [Space::FinSigned { k: 2 }, Space::Vector { field: Field::Gf(3) }] {
        let pool = standard_pool(space, 50, 7);
        let r = check_biasymptotic(space, &pool, 4).map_err(|e| e.to_string())?;
        ensure(r.status == Status::Pass, || format!("{}: {:?}", space.tag(), r.clauses))?;
        ensure(r.clauses.iter().map(|c| c.checked).sum::<usize>() >= 50, || "fewer bases than pool members".into())?;
        parts.push(format!("{} ({} bases)", space.tag(), r.clauses[0].checked));
    }
    Ok(parts.join(", "))
}

/// 4. The biasymptotic clopen payoff and its complement: II-side verdicts, no homogeneous member.
fn biasymptotic_contrast() -> Outcome {
    let s = Space::FinSigned { k: 2 };
    let universe = MoveUniverse::new(standard_pool(s, 4, 7), 4);
    let base = ARElem::empty(s);
    let mut parts = Vec::new();
    for pred in [Predicate::LastInY, Predicate::LastNotInY] {
        let payoff = ClopenPayoff { horizon: 1, predicate: pred.clone() };
        let found = clopen_ramsey_search(&base, &payoff, &universe).map_err(|e| e.to_string())?;
        ensure(found.inside.is_empty() && found.outside.is_empty(), || format!("{pred:?}: homogeneous member found"))?;
        let kr = kastanas_ramsey_check(&base, &top_gen(s, 5), &payoff, &universe).map_err(|e| e.to_string())?;
        let side = kr.found.map(|(_, side)| side);
        ensure(side == Some(Side::II), || format!("{pred:?}: verdict {side:?}"))?;
        parts.push(format!("{pred:?}: no homogeneous member, II-side"));
    }
    Ok(parts.join("; "))
}

/// All `k`-subsets of `pts`, in increasing order.
fn subsets(pts: &[u32], k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &p) in pts.iter().enumerate() {
        for mut rest in subsets(&pts[i + 1..], k - 1) {
            rest.insert(0, p);
            out.push(rest);
        }
    }
    out
}

/// 5. Ellentuck scenarios with a pool member homogeneous by construction.
fn clopen_ramsey_shadow() -> Outcome {
    let e = Space::Ellentuck;
    let mut r = rng(5);
    let mut agree = 0;
    for i in 0..50 {
        let pool = standard_pool(e, 6, r.gen());
        let a = ARElem::set(&(0..r.gen_range(0..=1u32)).collect::<Vec<_>>());
        let horizon = e.lh(&a) + r.gen_range(1..=2);
        let b = paste(&a, pool.choose(&mut r).unwrap()).map_err(|x| x.to_string())?;
        // Leaves are listed up to the furthest point any pool member reaches in the move window.
        let points = |g: &SubspaceGen, n: usize| match e.approx(g, n).payload {
            Payload::Set(s) => s,
            _ => unreachable!(),
        };
        let reach = pool.iter().filter_map(|g| paste(&a, g).ok()).flat_map(|g| points(&g, 8 + horizon)).max().unwrap_or(0);
        let tail: Vec<u32> = points(&b, reach as usize + 1).into_iter().skip(e.lh(&a)).filter(|&x| x <= reach).collect();
        let head: Vec<u32> = match &a.payload {
            Payload::Set(s) => s.clone(),
            _ => unreachable!(),
        };
        let leaves: Vec<String> = subsets(&tail, horizon - e.lh(&a))
            .into_iter()
            .map(|t| encode_elem(&ARElem::set(&[head.clone(), t].concat())))
            .collect();
        let inside = i % 2 == 0;
        let noise = Predicate::Hash { seed: r.gen(), density: 0.5 };
        let listed = Predicate::MemberOf { elems: leaves };
        let predicate = if inside {
            Predicate::Any { of: vec![listed, noise] }
        } else {
            Predicate::All { of: vec![Predicate::Not { of: Box::new(listed) }, noise] }
        };
        let payoff = ClopenPayoff { horizon, predicate };
        let universe = MoveUniverse::new(pool, 8);
        let found = clopen_ramsey_search(&a, &payoff, &universe).map_err(|x| x.to_string())?;
        let homogeneous = if inside { &found.inside } else { &found.outside };
        ensure(homogeneous.contains(&b), || format!("scenario {i}: constructed member not found homogeneous"))?;
        ensure(found.report.status == Status::Pass, || format!("scenario {i}: {:?}", found.report.clauses))?;
        let kr = kastanas_ramsey_check(&a, &b, &payoff, &universe).map_err(|x| x.to_string())?;
        let want = if inside { Side::II } else { Side::I };
        ensure(kr.found.as_ref().map(|(_, s)| *s) == Some(want), || format!("scenario {i}: verdict {:?}", kr.found))?;
        agree += 1;
    }
    Ok(format!("{agree}/50 matching sides"))
}

/// 6. Translated strategies realize the same sequences; the padding maps are exact.
fn translation_preserves_outcomes() -> Outcome {
    let gf2 = Space::Vector { field: Field::Gf(2) };
    let cases = [(naturals(8), standard_pool(Space::Ellentuck, 4, 3), 4), (top_gen(gf2, 5), standard_pool(gf2, 3, 5), 2)];
    let mut lines = 0;
    for (top, pool, bound) in cases {
        for h in 1..=2 {
            let a = ARElem::empty(top.space);
            let closed = closure_for_lift(&a, &top, &pool, h, bound).map_err(|e| e.to_string())?;
            for seed in 0..2u64 {
                let payoff = ClopenPayoff { horizon: h, predicate: Predicate::Hash { seed, density: 0.5 } };
                let mk = |kind| Game::new(kind, a.clone(), top.clone(), payoff.clone(), MoveUniverse::new(closed.clone(), bound));
                let k = mk(GameKind::Kastanas).map_err(|e| e.to_string())?;
                let kg = mk(GameKind::GowersKastanas).map_err(|e| e.to_string())?;
                for player in [Player::I, Player::II] {
                    let mut sigmas = vec![canonical_strategy(&k, player)];
                    for set in [GoalSet::Target, GoalSet::Complement] {
                        sigmas.extend(solve_game(&k, Goal::new(player, set)).map_err(|e| e.to_string())?.strategy);
                    }
                    for sigma in sigmas {
                        let tr = translate_strategy(Direction::KastanasToGowers, &k, player, &sigma, &kg).map_err(|e| e.to_string())?;
                        let rep = mirror_outcomes(&k, &sigma, &kg, &tr).map_err(|e| e.to_string())?;
                        ensure(rep.mismatches.is_empty(), || format!("{}: {:?}", top.space.tag(), rep.mismatches))?;
                        lines += rep.lines;
                        let back = translate_strategy(Direction::GowersToKastanas, &kg, player, &tr.strategy, &k).map_err(|e| e.to_string())?;
                        let rep = mirror_outcomes(&kg, &tr.strategy, &k, &back).map_err(|e| e.to_string())?;
                        ensure(rep.mismatches.is_empty(), || format!("{}: {:?}", top.space.tag(), rep.mismatches))?;
                        lines += rep.lines;
                        for end in replay_strategy(&k, player, &back.strategy).map_err(|e| e.to_string())? {
                            ensure(k.status(&end).is_ok(), || "unfinished replay".into())?;
                        }
                    }
                }
            }
        }
    }
    ensure(lines >= 100, || format!("only {lines} mirrored plays"))?;
    for n in 0..8u32 {
        let seq: Vec<u32> = (0..n).map(|i| 3 * i + 1).collect();
        let f = f_interleave(&seq);
        ensure(f.len() == 2 * seq.len(), || "f length".into())?;
        ensure(f.iter().enumerate().all(|(i, x)| x.is_none() == (i % 2 == 1)), || "f parity".into())?;
        ensure(g_project(&f).into_iter().flatten().collect::<Vec<_>>() == seq, || "g after f".into())?;
        let pairs: Vec<(u32, usize)> = seq.iter().map(|&x| (x, x as usize)).collect();
        ensure(h_project(&pairs) == seq, || "h projection".into())?;
    }
    Ok(format!("{lines} mirrored plays, padding identities exact"))
}

/// 7. Every extension of a deep witness has depth at least `N`.
fn deepness() -> Outcome {
    let mut checked = 0;
    for space in example_spaces().into_iter().filter(|s| s.is_deep()) {
        for big in standard_pool(space, 4, 7) {
            for n in 3..=5 {
                let big = big.with_bound(n + 1);
                for base_len in 0..=1 {
                    let a = space.approx(&big, base_len);
                    let b = deep_witness(&big, &a, n).map_err(|e| format!("{}: {e}", space.tag()))?;
                    ensure(in_neighborhood(&space, &a, &big, &b, space.lh(&a) + 1), || format!("{} not in [a,A]", space.tag()))?;
                    let exts = one_step_exts(&space, &a, &b, space.lh(&a) + 1);
                    ensure(!exts.is_empty(), || format!("{}: no extensions", space.tag()))?;
                    for c in exts.iter().take(40) {
                        let d = depth_within(&space, &big, c, n + 1);
                        ensure(d.at_least(n), || format!("{} {} depth {d:?} < {n}", space.tag(), encode_elem(c)))?;
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(format!("7 spaces, N in 3..=5, {checked} extensions at depth >= N"))
}

fn all_vectors(p: i64, width: u32) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..width {
        out = out.into_iter().flat_map(|v| (0..p).map(move |c| [v.clone(), vec![c]].concat())).collect();
    }
    out
}

fn to_vector(field: Field, coeffs: &[i64]) -> BlockVector {
    let pairs: Vec<(u32, i64)> = coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as u32, c)).collect();
    BlockVector::from_ints(field, &pairs)
}

/// Tetris powers chosen per block, at least one zero, terms of power `k` dropped.
fn fin2_span_oracle(x: &FinKElem, y: &FinKElem) -> BTreeSet<FinKElem> {
    let mut out = BTreeSet::new();
    for lx in 0..=2i32 {
        for ly in 0..=2i32 {
            if lx != 0 && ly != 0 {
                continue;
            }
            let mut pairs = Vec::new();
            for (&p, &v) in &x.entries {
                pairs.push((p, (v - lx).max(0)));
            }
            for (&p, &v) in &y.entries {
                pairs.push((p, (v - ly).max(0)));
            }
            out.insert(FinKElem::new(2, &pairs));
        }
    }
    out
}

/// 8. Span membership and the FIN_2 span against brute force.
fn oracle_equivalence() -> Outcome {
    let mut r = rng(8);
    let mut vec_cases = 0;
    for p in [2i64, 3] {
        let field = Field::Gf(p as u8);
        let candidates = all_vectors(p, 4);
        for _ in 0..40 {
            let k = r.gen_range(1..=3);
            let gens: Vec<Vec<i64>> = (0..k).map(|_| candidates[r.gen_range(1..candidates.len())].clone()).collect();
            let mut reachable = BTreeSet::new();
            for coeffs in all_vectors(p, k as u32) {
                let sum: Vec<i64> = (0..4).map(|j| gens.iter().zip(&coeffs).map(|(g, c)| g[j] * c).sum::<i64>() % p).collect();
                reachable.insert(sum);
            }
            let bv: Vec<BlockVector> = gens.iter().map(|g| to_vector(field, g)).collect();
            for x in &candidates[1..] {
                let got = span_membership(&to_vector(field, x), &bv);
                ensure(got == reachable.contains(x), || format!("GF({p}) {x:?} in span of {gens:?}: got {got}"))?;
                vec_cases += 1;
            }
        }
    }
    let blocks: Vec<FinKElem> = (0..4u32)
        .flat_map(|lo| {
            all_vectors(3, 2).into_iter().filter_map(move |v| {
                let f = FinKElem::new(2, &[(lo, v[0] as i32), (lo + 1, v[1] as i32)]);
                f.is_valid(false).then_some(f)
            })
        })
        .collect();
    let mut fin_cases = 0;
    for x in &blocks {
        for y in &blocks {
            if !x.precedes(y) {
                continue;
            }
            let got = comb_span(&[x.clone(), y.clone()], 2, false);
            ensure(got == fin2_span_oracle(x, y), || format!("span of {x:?}, {y:?}"))?;
            fin_cases += 1;
        }
    }
    ensure(fin_cases > 0, || "no FIN_2 pairs".into())?;
    Ok(format!("{vec_cases} span-membership cases, {fin_cases} FIN_2 pairs, all agree"))
}

/// 9. Finite predecessor sets over finite fields; λ-witnesses of A2 failure over the rationals.
fn a2_regime_split() -> Outcome {
    let mut parts = Vec::new();
    for p in [2u8, 3] {
        let space = Space::Vector { field: Field::Gf(p) };
        for big in standard_pool(space, 3, 9) {
            let preds = predecessors(&space, &big, 3).ok_or_else(|| format!("GF({p}) enumeration capped"))?;
            let b = space.approx(&big, 3);
            ensure(preds.iter().all(|a| space.le_fin(a, &b)), || "non-predecessor listed".into())?;
            ensure(!preds.is_empty(), || "empty predecessor set".into())?;
            parts.push(format!("GF({p}) {}", preds.len()));
        }
    }
    let lams = a2_lambda_witnesses(Field::Rational);
    ensure(lams.len() >= 3, || format!("{} witnesses", lams.len()))?;
    let q = Space::Vector { field: Field::Rational };
    let e = |i| BlockVector::basis(Field::Rational, i);
    let b = ARElem::new(q, Payload::Vectors(vec![e(0), e(1)]));
    for lam in &lams {
        let x = ARElem::new(q, Payload::Vectors(vec![e(0).plus(&e(1).scaled(*lam))]));
        ensure(q.le_fin(&x, &b) && *lam != Scalar::from_integer(1), || format!("witness {lam}"))?;
    }
    let shown: Vec<String> = lams.iter().take(3).map(|l| l.to_string()).collect();
    Ok(format!("predecessor sets finite [{}]; rational λ witnesses {} (e.g. {})", parts.join(", "), lams.len(), shown.join(", ")))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("axiom suite", axiom_suite),
        ("finite determinacy", finite_determinacy),
        ("biasymptotic witnesses", biasymptotic_witnesses),
        ("biasymptotic contrast", biasymptotic_contrast),
        ("clopen Ramsey shadow", clopen_ramsey_shadow),
        ("translation outcome preservation", translation_preserves_outcomes),
        ("deepness", deepness),
        ("oracle equivalence", oracle_equivalence),
        ("A2 regime split", a2_regime_split),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({secs:.1}s): {detail}", i + 1),
            Err(why) => {
                println!("criterion {}: FAIL {name} ({secs:.1}s): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
