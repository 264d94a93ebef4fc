//! Scenario files: a game below `[a,A]` with its pool, payoff and goal.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use rspace::games::{solve_game, ClopenPayoff, Game, GameKind, Goal, GoalSet, MoveUniverse, Player};
use rspace::spaces::pools::{default_bound, evens, naturals, odds, standard_pool, top_gen};
use rspace::spaces::text::{encode_elem, parse_elem};
use rspace::{ARElem, Error, Result, Space, SubspaceGen, Tail};

/// A generator reference: a catalog name or an explicit stem and tail.
///
/// Names are `top`, `naturals`, `evens`, `odds` and `standard:<i>` (member `i` of the seeded
/// standard pool).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenSpec {
    Named(String),
    Explicit {
        stem: String,
        tail: Tail,
        #[serde(default)]
        bound: Option<usize>,
    },
}

/// The pool: either listed generators or the first `standard` members of the standard pool.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PoolSpec {
    Listed(Vec<GenSpec>),
    Standard { standard: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    /// Space tag, e.g. `ellentuck` or `vec-gf3`.
    pub space: String,
    pub pool: PoolSpec,
    /// Base approximation; empty when omitted.
    #[serde(default)]
    pub base: Option<String>,
    /// Top subspace; `top` when omitted.
    #[serde(default)]
    pub top: Option<GenSpec>,
    pub game: GameKind,
    pub payoff: ClopenPayoff,
    #[serde(default)]
    pub extension_bound: Option<usize>,
    /// Truncation bound for named generators; the space default when omitted.
    #[serde(default)]
    pub bound: Option<usize>,
    /// The goal to solve for; the dual goal is solved as well.
    #[serde(default)]
    pub goal: Option<Goal>,
    #[serde(default)]
    pub padded: bool,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_seed() -> u64 {
    7
}

impl Scenario {
    pub fn from_json(text: &str) -> Result<Scenario> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }

    pub fn space(&self) -> Result<Space> {
        Space::from_tag(&self.space).map_err(|e| Error::Schema(e.to_string()))
    }

    fn bound(&self, space: Space) -> usize {
        self.bound.unwrap_or_else(|| default_bound(space))
    }

    fn resolve(&self, space: Space, g: &GenSpec) -> Result<SubspaceGen> {
        let bound = self.bound(space);
        let ellentuck_only = |g: SubspaceGen| {
            if space == Space::Ellentuck {
                Ok(g)
            } else {
                Err(Error::Schema(format!("generator name only defined on ellentuck, not {}", space.tag())))
            }
        };
        match g {
            GenSpec::Named(name) => match name.as_str() {
                "top" => Ok(top_gen(space, bound)),
                "naturals" => ellentuck_only(naturals(bound)),
                "evens" => ellentuck_only(evens(bound)),
                "odds" => ellentuck_only(odds(bound)),
                other => {
                    let i: usize = other
                        .strip_prefix("standard:")
                        .and_then(|i| i.parse().ok())
                        .ok_or_else(|| Error::Schema(format!("unknown generator {other}")))?;
                    let pool = standard_pool(space, i + 1, self.seed);
                    Ok(pool[i].with_bound(bound))
                }
            },
            GenSpec::Explicit { stem, tail, bound: b } => {
                let stem = parse_elem(stem)?;
                if stem.space != space {
                    return Err(Error::MixedSpaces(stem.space.tag(), space.tag()));
                }
                Ok(SubspaceGen::new(stem, tail.clone(), b.unwrap_or(bound)))
            }
        }
    }

    pub fn pool(&self, space: Space) -> Result<Vec<SubspaceGen>> {
        match &self.pool {
            PoolSpec::Listed(gs) => gs.iter().map(|g| self.resolve(space, g)).collect(),
            PoolSpec::Standard { standard } => {
                Ok(standard_pool(space, *standard, self.seed).into_iter().map(|g| g.with_bound(self.bound(space))).collect())
            }
        }
    }

    pub fn base(&self, space: Space) -> Result<ARElem> {
        match &self.base {
            None => Ok(ARElem::empty(space)),
            Some(text) => {
                let a = parse_elem(text)?;
                if a.space != space {
                    return Err(Error::MixedSpaces(a.space.tag(), space.tag()));
                }
                Ok(a)
            }
        }
    }

    /// The game this scenario describes.
    pub fn build(&self) -> Result<Game> {
        let space = self.space()?;
        let pool = self.pool(space)?;
        let top = self.resolve(space, self.top.as_ref().unwrap_or(&GenSpec::Named("top".into())))?;
        let universe = MoveUniverse::new(pool, self.extension_bound.unwrap_or(self.bound(space)));
        let payoff = ClopenPayoff { horizon: self.payoff.horizon, predicate: self.payoff.predicate.normalized(space)? };
        let game = Game::new(self.game, self.base(space)?, top, payoff, universe)?;
        Ok(if self.padded { game.padded() } else { game })
    }

    /// The requested goal, or I aiming at the complement.
    pub fn goal(&self) -> Goal {
        self.goal.unwrap_or(Goal::new(Player::I, GoalSet::Complement))
    }
}

/// Solves the scenario's goal and its dual. `side` names the player who wins, if either does.
pub fn solve_scenario(sc: &Scenario, with_strategy: bool) -> Result<Value> {
    let game = sc.build()?;
    let depth = game.label_depth();
    let mut verdicts = Vec::new();
    let mut side = Value::Null;
    for goal in [sc.goal(), sc.goal().dual()] {
        let v = solve_game(&game, goal)?;
        if v.wins {
            side = json!(goal.player);
        }
        let mut out = json!({ "goal": goal, "wins": v.wins, "nodes": v.nodes });
        if let Some(t) = &v.strategy {
            out["strategy_size"] = json!(t.size());
            if with_strategy {
                out["strategy"] = t.to_json(depth);
            }
        }
        verdicts.push(out);
    }
    Ok(json!({
        "space": game.space().tag(),
        "game": game.kind,
        "base": encode_elem(&game.base),
        "horizon": game.payoff.horizon,
        "pool_size": game.universe.pool.len(),
        "side": side,
        "verdicts": verdicts,
    }))
}
