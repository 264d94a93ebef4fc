//! Seeded generators shared by the property and acceptance suites.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rspace::games::{ClopenPayoff, Game, GameKind, MoveUniverse, Predicate};
use rspace::space::one_step_exts;
use rspace::spaces::pools::{default_bound, standard_pool, top_gen};
use rspace::spaces::vector::Field;
use rspace::{ARElem, Space, SubspaceGen, WSpace};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random approximation of length at most `len` inside `g`, built one extension at a time.
pub fn random_approx(g: &SubspaceGen, rng: &mut ChaCha8Rng, len: usize) -> ARElem {
    let s = g.space;
    let mut a = ARElem::empty(s);
    for _ in 0..len {
        let exts = one_step_exts(&s, &a, g, g.bound);
        let Some(next) = exts.choose(rng) else { break };
        a = next.clone();
    }
    a
}

/// One randomized desk scenario: a game with its description.
pub struct Scenario {
    pub game: Game,
    pub label: String,
}

const NON_GOWERS: [GameKind; 4] = [GameKind::Kastanas, GameKind::FusionZ, GameKind::FusionZstar, GameKind::SubasymptoticY];

/// Spaces the solver handles quickly enough for bulk scenarios.
fn plain_spaces() -> Vec<Space> {
    vec![
        Space::Ellentuck,
        Space::Fin { k: 2 },
        Space::FinSigned { k: 2 },
        Space::HalesJewett { letters: 2 },
        Space::CarlsonSimpson,
        Space::Vector { field: Field::Gf(2) },
        Space::Vector { field: Field::Gf(3) },
        Space::Singleton,
    ]
}

/// `kind`, a space supporting it, a pool of at most `max_pool`, horizon at most `max_horizon`
/// and a seeded hash payoff.
pub fn random_scenario(rng: &mut ChaCha8Rng, kind: GameKind, max_horizon: usize, max_pool: usize) -> Scenario {
    let space = if NON_GOWERS.contains(&kind) {
        *plain_spaces().choose(rng).unwrap()
    } else {
        *[Space::Ellentuck, Space::Vector { field: Field::Gf(2) }].choose(rng).unwrap()
    };
    let bound = default_bound(space);
    let pool_size = rng.gen_range(1..=max_pool);
    let pool = standard_pool(space, pool_size, rng.gen());
    let gowers = !NON_GOWERS.contains(&kind);
    // Gowers forms branch over point sequences; keep them one round shorter
    let horizon = rng.gen_range(1..=if gowers { max_horizon.min(2) } else { max_horizon });
    let ext_bound = rng.gen_range(horizon.max(2)..=bound.min(8));
    let predicate = match rng.gen_range(0..4) {
        0 => Predicate::True,
        1 => Predicate::False,
        _ => Predicate::Hash { seed: rng.gen(), density: rng.gen_range(0.2..0.8) },
    };
    let payoff = ClopenPayoff { horizon, predicate };
    let mut universe = MoveUniverse::new(pool, ext_bound);
    universe.integer_cap = rng.gen_range(0..=2);
    let top = top_gen(space, bound);
    let label = format!("{kind:?} on {} horizon {horizon} pool {pool_size} ext {ext_bound} {:?}", space.tag(), payoff.predicate);
    let game = Game::new(kind, ARElem::empty(space), top, payoff, universe).expect("desk scenarios build");
    Scenario { game, label }
}

pub fn lh(a: &ARElem) -> usize {
    a.space.lh(a)
}
