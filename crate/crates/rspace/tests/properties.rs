mod common;

use proptest::prelude::*;
use proptest::sample::select;

use rspace::games::{
    replay_strategy, solve_game, ClopenPayoff, Game, GameKind, Goal, GoalSet, MoveUniverse, Player, Predicate,
};
use rspace::gowers::{check_g6_g7, f_interleave, g_project, induced_space, Status};
use rspace::space::{depth_within, is_initial, one_step_exts};
use rspace::spaces::comb_span;
use rspace::spaces::pools::{evens, naturals, odds, standard_pool};
use rspace::spaces::text::encode_elem;
use rspace::{ARElem, Space, SubspaceGen, Tail, WSpace};

use common::{random_approx, random_scenario, rng};

fn spaces() -> Vec<Space> {
    rspace::spaces::pools::example_spaces()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn le_fin_is_a_quasi_order(space in select(spaces()), seed in any::<u64>()) {
        let pool = standard_pool(space, 3, seed);
        let mut r = rng(seed);
        let xs: Vec<ARElem> = (0..6).map(|i| random_approx(&pool[i % pool.len()], &mut r, 3)).collect();
        for a in &xs {
            prop_assert!(space.le_fin(a, a));
            for b in &xs {
                for c in &xs {
                    if space.le_fin(a, b) && space.le_fin(b, c) {
                        prop_assert!(space.le_fin(a, c), "{} {} {}", encode_elem(a), encode_elem(b), encode_elem(c));
                    }
                }
            }
        }
    }

    #[test]
    fn depth_is_minimal(space in select(spaces()), seed in any::<u64>()) {
        let pool = standard_pool(space, 3, seed);
        let mut r = rng(seed);
        let a = random_approx(&pool[seed as usize % pool.len()], &mut r, 3);
        let big = &pool[0];
        if let Some(n) = depth_within(&space, big, &a, big.bound).finite() {
            prop_assert!(space.le_fin(&a, &space.approx(big, n)));
            for m in 0..n {
                prop_assert!(!space.le_fin(&a, &space.approx(big, m)));
            }
        }
    }

    #[test]
    fn one_step_extensions_are_well_formed(space in select(spaces()), seed in any::<u64>()) {
        let pool = standard_pool(space, 3, seed);
        let g = &pool[seed as usize % pool.len()];
        let mut r = rng(seed);
        let a = random_approx(g, &mut r, 2);
        for b in one_step_exts(&space, &a, g, g.bound) {
            prop_assert_eq!(space.lh(&b), space.lh(&a) + 1);
            prop_assert!(is_initial(&space, &a, &b));
            prop_assert!((0..=g.bound).any(|m| space.le_fin(&b, &space.approx(g, m))));
        }
    }

    #[test]
    fn comb_span_is_monotone(
        space in select(vec![Space::Fin { k: 2 }, Space::FinSigned { k: 2 }, Space::HalesJewett { letters: 2 }]),
        seed in any::<u64>(),
    ) {
        let pool = standard_pool(space, 3, seed);
        let mut r = rng(seed);
        let b = random_approx(&pool[seed as usize % pool.len()], &mut r, 3);
        let full = comb_span(&b).unwrap();
        for n in 0..=space.lh(&b) {
            let a = space.truncate(&b, n);
            prop_assert!(comb_span(&a).unwrap().is_subset(&full));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    /// Exactly one of a goal and its dual is won, and the winner's tree stays in its goal.
    #[test]
    fn determinacy_and_strategy_soundness(kind in select(GameKind::ALL.to_vec()), seed in any::<u64>()) {
        let sc = random_scenario(&mut rng(seed), kind, 2, 3);
        let g = &sc.game;
        let goal = Goal::new(Player::I, GoalSet::Complement);
        let v = solve_game(g, goal).unwrap();
        let w = solve_game(g, goal.dual()).unwrap();
        prop_assert!(v.wins != w.wins, "{}", sc.label);
        let (winner, tree) = if v.wins { (goal, v.strategy.unwrap()) } else { (goal.dual(), w.strategy.unwrap()) };
        for end in replay_strategy(g, winner.player, &tree).unwrap() {
            prop_assert_eq!(g.status(&end).unwrap().satisfies(winner), Some(true), "{}", &sc.label);
        }
    }

    /// A generator with a different description of the same member changes no verdict.
    #[test]
    fn quotient_invariance(horizon in 1usize..=2, seed in any::<u64>(), density in 0.2f64..0.8) {
        let e = Space::Ellentuck;
        let payoff = ClopenPayoff { horizon, predicate: Predicate::Hash { seed, density } };
        let relabelled = SubspaceGen::new(ARElem::set(&[0, 2]), Tail::Arithmetic { start: 4, step: 2 }, 8);
        let verdicts = |pool: Vec<SubspaceGen>| {
            let game = Game::new(GameKind::Kastanas, ARElem::empty(e), naturals(8), payoff.clone(), MoveUniverse::new(pool, 6)).unwrap();
            let goal = Goal::new(Player::II, GoalSet::Target);
            (solve_game(&game, goal).unwrap().wins, solve_game(&game, goal.dual()).unwrap().wins)
        };
        prop_assert_eq!(verdicts(vec![naturals(8), evens(8), odds(8)]), verdicts(vec![naturals(8), relabelled, odds(8)]));
    }

    /// Enlarging the target never costs II a won target game.
    #[test]
    fn monotone_payoff(kind in select(vec![GameKind::Kastanas, GameKind::FusionZ, GameKind::GowersG]), seed in any::<u64>()) {
        let sc = random_scenario(&mut rng(seed), kind, 2, 3);
        let g = sc.game;
        let base = match &g.payoff.predicate {
            Predicate::Hash { .. } => g.payoff.predicate.clone(),
            _ => Predicate::Hash { seed, density: 0.5 },
        };
        let wider = Predicate::Any { of: vec![base.clone(), Predicate::Hash { seed: seed ^ 1, density: 0.3 }] };
        let goal = Goal::new(Player::II, GoalSet::Target);
        let with = |p: Predicate| {
            let game = Game::new(g.kind, g.base.clone(), g.top.clone(), ClopenPayoff { horizon: g.payoff.horizon, predicate: p }, g.universe.clone()).unwrap();
            solve_game(&game, goal).unwrap().wins
        };
        if with(base) {
            prop_assert!(with(wider), "{}", sc.label);
        }
    }

    /// `p ⪅ q` against independent pointwise computations of `≤` and `≤*`.
    #[test]
    fn lesssim_decomposes(seed in any::<u64>(), base_len in 0usize..2) {
        let e = Space::Ellentuck;
        let pool = standard_pool(e, 6, seed);
        let a = random_approx(&naturals(8), &mut rng(seed), base_len);
        let gs = induced_space(&a, &naturals(8), &pool, 8).unwrap();
        let points = |g: &SubspaceGen| match e.approx(g, gs.depth).payload {
            rspace::Payload::Set(s) => s,
            _ => unreachable!(),
        };
        for p in &gs.subspaces {
            for q in &gs.subspaces {
                let (pp, qq) = (points(p), points(q));
                let le = pp.iter().all(|x| q_contains(q, *x));
                let from = e.lh(&a) + 3;
                let star = qq.iter().skip(from).all(|x| q_contains(p, *x));
                prop_assert_eq!(gs.lesssim(p, q), le && star);
            }
        }
    }

    /// G6(1): neighborhood containment against ◁ at every later level.
    #[test]
    fn g6_equivalence_on_ellentuck(seed in any::<u64>(), base_len in 0usize..3) {
        let pool = standard_pool(Space::Ellentuck, 6, seed);
        let a = random_approx(&naturals(8), &mut rng(seed), base_len);
        let r = check_g6_g7(&a, &naturals(8), &pool, 8).unwrap();
        prop_assert_eq!(r.g6_equivalence.status, Status::Pass);
    }

    /// `f` places the padding point at odd positions and `g` undoes it.
    #[test]
    fn padding_parity(seq in proptest::collection::vec(0u32..50, 0..8), other in proptest::collection::vec(0u32..50, 0..8)) {
        let f = f_interleave(&seq);
        prop_assert_eq!(f.len(), 2 * seq.len());
        for (i, x) in f.iter().enumerate() {
            prop_assert_eq!(x.is_none(), i % 2 == 1);
        }
        let back: Vec<u32> = g_project(&f).into_iter().flatten().collect();
        prop_assert_eq!(&back, &seq);
        if seq != other {
            prop_assert_ne!(f, f_interleave(&other));
        }
    }
}

/// Whether `x` is a point of `g` below the truncation bound.
fn q_contains(g: &SubspaceGen, x: u32) -> bool {
    match Space::Ellentuck.approx(g, 24).payload {
        rspace::Payload::Set(s) => s.contains(&x),
        _ => unreachable!(),
    }
}
