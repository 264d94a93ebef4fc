//! Bounded-horizon games on a space: state machine, legality and exact solving.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::gowers::{self, supports_gowers};
use crate::space::{depth_within, le, one_step_exts, ARElem, Payload, Space, SubspaceGen, WSpace};
use crate::spaces::deep::paste;
use crate::spaces::text::{encode_elem, parse_elem};
use crate::spaces::last_in_y;

/// Largest number of rounds past the base the solver accepts.
pub const MAX_ROUNDS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GameKind {
    Kastanas,
    FusionZ,
    FusionZstar,
    SubasymptoticY,
    GowersG,
    AsymptoticF,
    AdvAg,
    AdvAgI,
    AdvAgIi,
    DerancourtR,
    GowersKastanas,
}

impl GameKind {
    pub const ALL: [GameKind; 11] = [
        GameKind::Kastanas,
        GameKind::FusionZ,
        GameKind::FusionZstar,
        GameKind::SubasymptoticY,
        GameKind::GowersG,
        GameKind::AsymptoticF,
        GameKind::AdvAg,
        GameKind::AdvAgI,
        GameKind::AdvAgIi,
        GameKind::DerancourtR,
        GameKind::GowersKastanas,
    ];

    /// Played in the induced Gowers space of `[a,A]`.
    pub fn is_gowers(self) -> bool {
        !matches!(self, GameKind::Kastanas | GameKind::FusionZ | GameKind::FusionZstar | GameKind::SubasymptoticY)
    }

    fn is_adversarial(self) -> bool {
        matches!(self, GameKind::AdvAg | GameKind::AdvAgI | GameKind::AdvAgIi | GameKind::DerancourtR)
    }

    /// Whether the game draws subspaces from the pool at all.
    pub fn uses_pool(self) -> bool {
        !matches!(self, GameKind::FusionZstar | GameKind::SubasymptoticY)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Player {
    I,
    II,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::I => Player::II,
            Player::II => Player::I,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveUniverse {
    pub pool: Vec<SubspaceGen>,
    pub extension_bound: usize,
    pub skip_cap: usize,
    pub integer_cap: usize,
}

impl MoveUniverse {
    pub fn new(pool: Vec<SubspaceGen>, extension_bound: usize) -> Self {
        MoveUniverse { pool, extension_bound, skip_cap: 1, integer_cap: 2 }
    }
}

/// Decidable predicates on approximations of the horizon length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "id", rename_all = "snake_case")]
pub enum Predicate {
    True,
    False,
    /// Ellentuck: the least element is even.
    MinEven,
    /// The last block lies in the biasymptotic set `Y`.
    LastInY,
    LastNotInY,
    /// Pseudo-random: a seeded digest of the encoding falls below `density`.
    Hash { seed: u64, density: f64 },
    /// Encodings listed explicitly.
    MemberOf { elems: Vec<String> },
    Not { of: Box<Predicate> },
    Any { of: Vec<Predicate> },
    All { of: Vec<Predicate> },
}

impl Predicate {
    pub fn eval(&self, a: &ARElem) -> Result<bool> {
        Ok(match self {
            Predicate::True => true,
            Predicate::False => false,
            Predicate::MinEven => match &a.payload {
                Payload::Set(s) => s.first().is_some_and(|m| m % 2 == 0),
                _ => return Err(Error::WrongSpace(format!("min_even needs a set, got {}", a.space.tag()))),
            },
            Predicate::LastInY => last_in_y(a)?,
            Predicate::LastNotInY => !last_in_y(a)?,
            Predicate::Hash { seed, density } => {
                let mut h = Sha256::new();
                h.update(seed.to_le_bytes());
                h.update(encode_elem(a).as_bytes());
                let d = h.finalize();
                let x = u64::from_le_bytes(d[..8].try_into().expect("digest has 32 bytes"));
                (x as f64 / u64::MAX as f64) < *density
            }
            Predicate::MemberOf { elems } => {
                let e = encode_elem(a);
                elems.iter().any(|x| *x == e)
            }
            Predicate::Not { of } => !of.eval(a)?,
            Predicate::Any { of } => {
                for p in of {
                    if p.eval(a)? {
                        return Ok(true);
                    }
                }
                false
            }
            Predicate::All { of } => {
                for p in of {
                    if !p.eval(a)? {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }

    /// Canonicalises listed encodings and rejects predicates the space cannot evaluate.
    pub fn normalized(&self, space: Space) -> Result<Predicate> {
        Ok(match self {
            Predicate::MinEven if space != Space::Ellentuck => {
                return Err(Error::WrongSpace(format!("min_even is defined on ellentuck, not {}", space.tag())))
            }
            Predicate::LastInY | Predicate::LastNotInY => {
                match space {
                    Space::FinSigned { .. } => {}
                    Space::Vector { field } if field.order() != Some(2) => {}
                    _ => return Err(Error::WrongSpace(format!("no biasymptotic set for {}", space.tag()))),
                }
                self.clone()
            }
            Predicate::Hash { density, .. } if !(0.0..=1.0).contains(density) => {
                return Err(Error::Schema(format!("density {density} outside [0,1]")))
            }
            Predicate::MemberOf { elems } => {
                let mut out = Vec::with_capacity(elems.len());
                for e in elems {
                    let p = parse_elem(e)?;
                    if p.space != space {
                        return Err(Error::MixedSpaces(p.space.tag(), space.tag()));
                    }
                    out.push(encode_elem(&p));
                }
                Predicate::MemberOf { elems: out }
            }
            Predicate::Not { of } => Predicate::Not { of: Box::new(of.normalized(space)?) },
            Predicate::Any { of } => Predicate::Any { of: of.iter().map(|p| p.normalized(space)).collect::<Result<_>>()? },
            Predicate::All { of } => Predicate::All { of: of.iter().map(|p| p.normalized(space)).collect::<Result<_>>()? },
            p => p.clone(),
        })
    }
}

/// `X = {C : r_horizon(C) ∈ P}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClopenPayoff {
    pub horizon: usize,
    pub predicate: Predicate,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GoalSet {
    Target,
    Complement,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Goal {
    pub player: Player,
    pub set: GoalSet,
}

impl Goal {
    pub fn new(player: Player, set: GoalSet) -> Self {
        Goal { player, set }
    }

    /// The opponent aiming at the other side.
    pub fn dual(self) -> Goal {
        let set = match self.set {
            GoalSet::Target => GoalSet::Complement,
            GoalSet::Complement => GoalSet::Target,
        };
        Goal { player: self.player.other(), set }
    }

    fn wants(self, in_target: bool) -> bool {
        in_target == (self.set == GoalSet::Target)
    }
}

/// One move. Subspaces are carried as generators; `Zero` is the padding point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    Sub(SubspaceGen),
    Ext(ARElem),
    ExtSub(ARElem, SubspaceGen),
    Int(usize),
    Skip,
    Probe(ARElem),
    ZeroSub(SubspaceGen),
}

/// Display form of a generator: its approximation at `depth` followed by an ellipsis.
pub fn gen_label(g: &SubspaceGen, depth: usize) -> String {
    let n = depth.min(g.bound.max(g.space.lh(&g.stem) + 1));
    format!("{}…", encode_elem(&g.space.approx(g, n)))
}

impl Move {
    pub fn elem(&self) -> Option<&ARElem> {
        match self {
            Move::Ext(a) | Move::ExtSub(a, _) | Move::Probe(a) => Some(a),
            _ => None,
        }
    }

    pub fn subspace(&self) -> Option<&SubspaceGen> {
        match self {
            Move::Sub(g) | Move::ExtSub(_, g) | Move::ZeroSub(g) => Some(g),
            _ => None,
        }
    }

    pub fn kind_tag(&self) -> &'static str {
        match self {
            Move::Sub(_) => "sub",
            Move::Ext(_) => "ext",
            Move::ExtSub(..) => "ext_sub",
            Move::Int(_) => "int",
            Move::Skip => "skip",
            Move::Probe(_) => "probe",
            Move::ZeroSub(_) => "zero_sub",
        }
    }

    /// Human-readable move text, stable across runs.
    pub fn text(&self, depth: usize) -> String {
        match self {
            Move::Sub(g) => gen_label(g, depth),
            Move::Ext(a) => encode_elem(a),
            Move::ExtSub(a, g) => format!("{} / {}", encode_elem(a), gen_label(g, depth)),
            Move::Int(n) => n.to_string(),
            Move::Skip => "skip".into(),
            Move::Probe(a) => format!("probe {}", encode_elem(a)),
            Move::ZeroSub(g) => format!("0 / {}", gen_label(g, depth)),
        }
    }

    pub fn to_json(&self, depth: usize) -> Value {
        let mut v = json!({ "kind": self.kind_tag(), "text": self.text(depth) });
        if let Some(a) = self.elem() {
            v["elem"] = json!(encode_elem(a));
        }
        if let Some(g) = self.subspace() {
            v["subspace"] = json!(gen_label(g, depth));
        }
        if let Move::Int(n) = self {
            v["n"] = json!(n);
        }
        v
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    /// I plays a subspace.
    ISub,
    /// II plays an approximation together with a subspace (or only the approximation at the horizon).
    IIExtSub,
    /// II plays an approximation.
    IIExt,
    /// I plays the next element of the probe chain (Z*).
    IProbe,
    /// II responds below the probe or skips (Z*).
    IIRespond,
    /// I demands a depth (Y).
    IInt,
    /// II opens with a subspace (adversarial games).
    IISub0,
    /// I plays a point with a subspace (adversarial games).
    IPointSub,
    /// II plays a point (or `0` when padded) with a subspace (adversarial games).
    IIPointSub,
    Over,
}

impl Phase {
    pub fn turn(self) -> Option<Player> {
        match self {
            Phase::ISub | Phase::IProbe | Phase::IInt | Phase::IPointSub => Some(Player::I),
            Phase::IIExtSub | Phase::IIExt | Phase::IIRespond | Phase::IISub0 | Phase::IIPointSub => Some(Player::II),
            Phase::Over => None,
        }
    }
}

/// Everything the future of a play depends on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    pub real: ARElem,
    pub phase: Phase,
    /// Last subspace played (`A_n`, `B_n`, `p_n` or `q_n`); the top subspace before any.
    pub sub: SubspaceGen,
    pub played_sub: bool,
    pub chain: Option<ARElem>,
    pub skips: usize,
    pub demand: usize,
    pub zeros: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    pub history: Vec<Move>,
    pub pos: Position,
}

impl GameState {
    pub fn turn(&self) -> Option<Player> {
        self.pos.phase.turn()
    }

    /// `a(s)`: the last approximation played, or the base.
    pub fn realisation(&self) -> &ARElem {
        &self.pos.real
    }

    /// `last(s)`: the last subspace played, if any.
    pub fn last(&self) -> Option<&SubspaceGen> {
        self.pos.played_sub.then_some(&self.pos.sub)
    }
}

/// How a position stands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Ongoing { turn: Player },
    Finished { in_target: bool },
    Stuck { player: Player },
}

impl Status {
    /// Whether the goal player has won at a final position.
    pub fn satisfies(self, goal: Goal) -> Option<bool> {
        match self {
            Status::Ongoing { .. } => None,
            Status::Finished { in_target } => Some(goal.wants(in_target)),
            Status::Stuck { player } => Some(player != goal.player),
        }
    }
}

#[derive(Default)]
struct Cache {
    pastes: HashMap<ARElem, Arc<Vec<SubspaceGen>>>,
    exts: HashMap<(ARElem, SubspaceGen), Arc<Vec<ARElem>>>,
    below: HashMap<(SubspaceGen, SubspaceGen), bool>,
    close: HashMap<SubspaceGen, bool>,
    payoff: HashMap<ARElem, bool>,
    moves: HashMap<Position, Arc<Vec<Move>>>,
}

/// A game below `[a,A]` with its payoff and move universe.
pub struct Game {
    pub kind: GameKind,
    pub base: ARElem,
    pub top: SubspaceGen,
    pub payoff: ClopenPayoff,
    pub universe: MoveUniverse,
    /// Adversarial games only: II's points are the padding point `0`.
    pub padded: bool,
    space: Space,
    cache: RefCell<Cache>,
}

impl Game {
    pub fn new(kind: GameKind, base: ARElem, top: SubspaceGen, payoff: ClopenPayoff, universe: MoveUniverse) -> Result<Game> {
        let space = top.space;
        if base.space != space {
            return Err(Error::MixedSpaces(base.space.tag(), space.tag()));
        }
        if let Some(g) = universe.pool.iter().find(|g| g.space != space) {
            return Err(Error::MixedSpaces(g.space.tag(), space.tag()));
        }
        if universe.pool.is_empty() {
            return Err(Error::EmptyPool);
        }
        if kind.is_gowers() && !supports_gowers(space) {
            return Err(Error::UnsupportedSpace(format!("{} has no induced Gowers space here", space.tag())));
        }
        let lh = space.lh(&base);
        if payoff.horizon < lh {
            return Err(Error::Schema(format!("horizon {} is below the base length {lh}", payoff.horizon)));
        }
        if payoff.horizon - lh > MAX_ROUNDS {
            return Err(Error::HorizonExceeded { requested: payoff.horizon, limit: lh + MAX_ROUNDS });
        }
        let payoff = ClopenPayoff { horizon: payoff.horizon, predicate: payoff.predicate.normalized(space)? };
        Ok(Game { kind, base, top, payoff, universe, padded: false, space, cache: RefCell::default() })
    }

    pub fn padded(mut self) -> Game {
        self.padded = self.kind.is_adversarial();
        self
    }

    pub fn space(&self) -> Space {
        self.space
    }

    fn gowers_depth(&self) -> usize {
        self.universe.extension_bound.max(self.space.lh(&self.base) + gowers::STAR_SLACK + 3)
    }

    /// Display depth for generators in move texts.
    pub fn label_depth(&self) -> usize {
        self.payoff.horizon + 2
    }

    pub fn initial(&self) -> GameState {
        let phase = if self.space.lh(&self.base) >= self.payoff.horizon {
            Phase::Over
        } else {
            match self.kind {
                GameKind::Kastanas | GameKind::FusionZ | GameKind::GowersG | GameKind::AsymptoticF => Phase::ISub,
                GameKind::GowersKastanas => Phase::ISub,
                GameKind::FusionZstar => Phase::IProbe,
                GameKind::SubasymptoticY => Phase::IInt,
                _ => Phase::IISub0,
            }
        };
        let pos = Position {
            real: self.base.clone(),
            phase,
            sub: self.top.clone(),
            played_sub: false,
            chain: None,
            skips: 0,
            demand: 0,
            zeros: 0,
        };
        GameState { history: Vec::new(), pos }
    }

    /// Subspace moves agreeing on approximations up to this depth are the same move.
    pub fn signature_depth(&self) -> usize {
        self.universe.extension_bound.max(self.payoff.horizon) + 2
    }

    fn ext_depth(&self, a: &ARElem) -> usize {
        self.universe.extension_bound.max(self.space.lh(a) + 1)
    }

    fn exts(&self, a: &ARElem, g: &SubspaceGen) -> Arc<Vec<ARElem>> {
        let key = (a.clone(), g.clone());
        if let Some(v) = self.cache.borrow().exts.get(&key) {
            return v.clone();
        }
        let ed = self.ext_depth(a);
        let mut v = one_step_exts(&self.space, a, g, ed);
        // points of spaces with induced Gowers spaces stay inside the top's first `ed` levels,
        // so every game over the same top sees one finite window
        if gowers::supports_gowers(self.space) && g != &self.top {
            let window = self.exts(a, &self.top);
            v.retain(|c| window.contains(c));
        }
        let v = Arc::new(v);
        self.cache.borrow_mut().exts.insert(key, v.clone());
        v
    }

    /// Pool members acting at `at`: each continues as the pool member does after `at`,
    /// deduplicated by approximations.
    fn pastes_at(&self, at: &ARElem) -> Arc<Vec<SubspaceGen>> {
        if let Some(v) = self.cache.borrow().pastes.get(at) {
            return v.clone();
        }
        let d = self.signature_depth();
        let mut out: Vec<SubspaceGen> = Vec::new();
        let mut seen: Vec<Vec<ARElem>> = Vec::new();
        for g in &self.universe.pool {
            let Ok(p) = paste(at, g) else { continue };
            let sig: Vec<ARElem> = (0..=d).map(|n| self.space.approx(&p, n)).collect();
            if !seen.contains(&sig) {
                seen.push(sig);
                out.push(p);
            }
        }
        let v = Arc::new(out);
        self.cache.borrow_mut().pastes.insert(at.clone(), v.clone());
        v
    }

    /// `g ≤ h` as the game kind reads it.
    fn below(&self, g: &SubspaceGen, h: &SubspaceGen) -> bool {
        let key = (g.clone(), h.clone());
        if let Some(&v) = self.cache.borrow().below.get(&key) {
            return v;
        }
        let v = sub_le(g, h, self.payoff.horizon + 1, self.gowers_depth());
        self.cache.borrow_mut().below.insert(key, v);
        v
    }

    /// `g ⪅ A` for the top subspace `A`.
    fn close_to_top(&self, g: &SubspaceGen) -> bool {
        if let Some(&v) = self.cache.borrow().close.get(g) {
            return v;
        }
        let v = self.below(g, &self.top) && gowers::le_star(&self.base, &self.top, g, self.gowers_depth());
        self.cache.borrow_mut().close.insert(g.clone(), v);
        v
    }

    fn in_target(&self, a: &ARElem) -> Result<bool> {
        if let Some(&v) = self.cache.borrow().payoff.get(a) {
            return Ok(v);
        }
        let v = self.payoff.predicate.eval(a)?;
        self.cache.borrow_mut().payoff.insert(a.clone(), v);
        Ok(v)
    }

    pub fn payoff_reached(&self, a: &ARElem) -> bool {
        self.at_horizon(a)
    }

    fn at_horizon(&self, a: &ARElem) -> bool {
        self.space.lh(a) >= self.payoff.horizon
    }

    /// `a ⌢ x` with `a ⌢ x ◁ p`: the extensions of `a` inside `p` continued after `a`.
    fn points(&self, a: &ARElem, p: &SubspaceGen) -> Vec<ARElem> {
        let Ok(q) = paste(a, p) else { return Vec::new() };
        self.exts(a, &q).iter().filter(|c| gowers::triangle(c, p)).cloned().collect()
    }

    /// Subspaces at the current base allowed by `ok`.
    fn subs_where(&self, at: &ARElem, ok: impl Fn(&SubspaceGen) -> bool) -> Vec<SubspaceGen> {
        self.pastes_at(at).iter().filter(|g| ok(g)).cloned().collect()
    }

    /// Point-with-subspace moves: every allowed point, paired with every allowed subspace
    /// unless the point reaches the horizon.
    fn ext_sub_moves(&self, points: &[ARElem], subs: &[SubspaceGen]) -> Vec<Move> {
        let mut out = Vec::new();
        for c in points {
            if self.at_horizon(c) {
                out.push(Move::Ext(c.clone()));
            } else {
                out.extend(subs.iter().map(|g| Move::ExtSub(c.clone(), g.clone())));
            }
        }
        out
    }

    pub fn status(&self, s: &GameState) -> Result<Status> {
        self.status_at(&s.pos)
    }

    fn status_at(&self, pos: &Position) -> Result<Status> {
        match pos.phase.turn() {
            None => Ok(Status::Finished { in_target: self.in_target(&pos.real)? }),
            Some(p) if self.moves_at(pos).is_empty() => Ok(Status::Stuck { player: p }),
            Some(p) => Ok(Status::Ongoing { turn: p }),
        }
    }

    pub fn legal_moves(&self, s: &GameState) -> Vec<Move> {
        self.moves_at(&s.pos)
    }

    /// Legal moves at a position. Subspaces and points always have continuations in the infinite
    /// games, so a point or subspace move after which the next player has none only reflects the
    /// finite window, and it is pruned. Integer demands are real challenges and stay.
    pub fn moves_at(&self, pos: &Position) -> Vec<Move> {
        if let Some(v) = self.cache.borrow().moves.get(pos) {
            return v.as_ref().clone();
        }
        let moves: Vec<Move> = self
            .window_moves(pos)
            .into_iter()
            .filter(|m| {
                if matches!(m, Move::Int(_)) {
                    return true;
                }
                let next = self.advance(pos, m);
                next.phase == Phase::Over || !self.moves_at(&next).is_empty()
            })
            .collect();
        self.cache.borrow_mut().moves.insert(pos.clone(), Arc::new(moves.clone()));
        moves
    }

    fn window_moves(&self, pos: &Position) -> Vec<Move> {
        let a = &pos.real;
        let base = &self.base;
        let top = &self.top;
        match (self.kind, pos.phase) {
            (_, Phase::Over) => Vec::new(),
            (GameKind::Kastanas | GameKind::FusionZ, Phase::ISub) => {
                self.subs_where(a, |g| self.below(g, &pos.sub)).into_iter().map(Move::Sub).collect()
            }
            (GameKind::Kastanas, Phase::IIExtSub) => {
                let mut out = Vec::new();
                for c in self.exts(a, &pos.sub).iter() {
                    if self.at_horizon(c) {
                        out.push(Move::Ext(c.clone()));
                    } else {
                        for g in self.subs_where(c, |g| self.below(g, &pos.sub)) {
                            out.push(Move::ExtSub(c.clone(), g));
                        }
                    }
                }
                out
            }
            (GameKind::FusionZ, Phase::IIExt) => self.exts(a, &pos.sub).iter().cloned().map(Move::Ext).collect(),
            (GameKind::FusionZstar, Phase::IProbe) => {
                let from = pos.chain.as_ref().unwrap_or(a);
                self.exts(from, top).iter().cloned().map(Move::Probe).collect()
            }
            (GameKind::FusionZstar, Phase::IIRespond) => {
                let chain = pos.chain.as_ref().expect("a probe precedes every response");
                let mut out: Vec<Move> =
                    self.exts(a, top).iter().filter(|c| self.space.le_fin(c, chain)).cloned().map(Move::Ext).collect();
                if pos.skips < self.universe.skip_cap {
                    out.push(Move::Skip);
                }
                out
            }
            (GameKind::SubasymptoticY, Phase::IInt) => (0..=self.universe.integer_cap).map(Move::Int).collect(),
            (GameKind::SubasymptoticY, Phase::IIExt) => {
                let limit = self.ext_depth(a);
                self.exts(a, top)
                    .iter()
                    .filter(|c| depth_within(&self.space, top, c, limit).at_least(pos.demand))
                    .cloned()
                    .map(Move::Ext)
                    .collect()
            }
            (GameKind::GowersG, Phase::ISub) => {
                self.subs_where(base, |g| self.below(g, top)).into_iter().map(Move::Sub).collect()
            }
            (GameKind::AsymptoticF, Phase::ISub) => {
                self.subs_where(base, |g| self.close_to_top(g)).into_iter().map(Move::Sub).collect()
            }
            (GameKind::GowersG | GameKind::AsymptoticF, Phase::IIExt) => {
                self.points(a, &pos.sub).into_iter().map(Move::Ext).collect()
            }
            (GameKind::GowersKastanas, Phase::ISub) => {
                self.subs_where(base, |g| self.below(g, &pos.sub)).into_iter().map(Move::Sub).collect()
            }
            (GameKind::GowersKastanas, Phase::IIExtSub) => {
                let points = self.points(a, &pos.sub);
                let subs = self.subs_where(base, |g| self.below(g, &pos.sub));
                self.ext_sub_moves(&points, &subs)
            }
            (kind, Phase::IISub0) => {
                let subs = match kind {
                    GameKind::AdvAgIi => self.subs_where(base, |g| self.close_to_top(g)),
                    _ => self.subs_where(base, |g| self.below(g, top)),
                };
                subs.into_iter().map(Move::Sub).collect()
            }
            (kind, Phase::IPointSub) => {
                let points = self.points(a, &pos.sub);
                let subs = match kind {
                    GameKind::AdvAgI => self.subs_where(base, |g| self.close_to_top(g)),
                    GameKind::DerancourtR => self.subs_where(base, |g| self.below(g, &pos.sub)),
                    _ => self.subs_where(base, |g| self.below(g, top)),
                };
                self.ext_sub_moves(&points, &subs)
            }
            (kind, Phase::IIPointSub) => {
                let subs = match kind {
                    GameKind::AdvAgIi => self.subs_where(base, |g| self.close_to_top(g)),
                    GameKind::DerancourtR => self.subs_where(base, |g| self.below(g, &pos.sub)),
                    _ => self.subs_where(base, |g| self.below(g, top)),
                };
                if self.padded {
                    return subs.into_iter().map(Move::ZeroSub).collect();
                }
                let points = self.points(a, &pos.sub);
                self.ext_sub_moves(&points, &subs)
            }
            _ => Vec::new(),
        }
    }

    /// The position after a move, assuming it is legal.
    fn advance(&self, pos: &Position, m: &Move) -> Position {
        let mut next = pos.clone();
        let done_or = |a: &ARElem, then: Phase| if self.at_horizon(a) { Phase::Over } else { then };
        match (pos.phase, m) {
            (Phase::ISub, Move::Sub(g)) => {
                next.sub = g.clone();
                next.played_sub = true;
                next.phase = match self.kind {
                    GameKind::Kastanas | GameKind::GowersKastanas => Phase::IIExtSub,
                    _ => Phase::IIExt,
                };
            }
            (Phase::IIExtSub, Move::ExtSub(c, g)) => {
                next.real = c.clone();
                next.sub = g.clone();
                next.played_sub = true;
                next.phase = Phase::ISub;
            }
            (Phase::IIExtSub | Phase::IIExt, Move::Ext(c)) => {
                next.real = c.clone();
                next.phase = done_or(c, if self.kind == GameKind::SubasymptoticY { Phase::IInt } else { Phase::ISub });
            }
            (Phase::IProbe, Move::Probe(b)) => {
                next.chain = Some(b.clone());
                next.phase = Phase::IIRespond;
            }
            (Phase::IIRespond, Move::Ext(c)) => {
                next.real = c.clone();
                next.chain = None;
                next.skips = 0;
                next.phase = done_or(c, Phase::IProbe);
            }
            (Phase::IIRespond, Move::Skip) => {
                next.skips += 1;
                next.phase = Phase::IProbe;
            }
            (Phase::IInt, Move::Int(n)) => {
                next.demand = *n;
                next.phase = Phase::IIExt;
            }
            (Phase::IISub0, Move::Sub(g)) => {
                next.sub = g.clone();
                next.played_sub = true;
                next.phase = Phase::IPointSub;
            }
            (Phase::IPointSub | Phase::IIPointSub, Move::ExtSub(c, g)) => {
                next.real = c.clone();
                next.sub = g.clone();
                next.played_sub = true;
                next.phase = if pos.phase == Phase::IPointSub { Phase::IIPointSub } else { Phase::IPointSub };
            }
            (Phase::IPointSub | Phase::IIPointSub, Move::Ext(c)) => {
                next.real = c.clone();
                next.phase = Phase::Over;
            }
            (Phase::IIPointSub, Move::ZeroSub(g)) => {
                next.sub = g.clone();
                next.played_sub = true;
                next.zeros += 1;
                next.phase = Phase::IPointSub;
            }
            _ => unreachable!("advance is only called with legal moves"),
        }
        next
    }

    pub fn step(&self, s: &GameState, m: &Move) -> Result<GameState> {
        if !self.moves_at(&s.pos).contains(m) {
            let reason = match s.pos.phase {
                Phase::Over => "the game is over".to_string(),
                _ => format!("{} is not legal here", m.text(self.label_depth())),
            };
            return Err(Error::IllegalMove(reason));
        }
        let mut history = s.history.clone();
        history.push(m.clone());
        Ok(GameState { history, pos: self.advance(&s.pos, m) })
    }

    /// Every realisation some finished play can end at.
    pub fn reachable_leaves(&self) -> BTreeSet<ARElem> {
        let mut leaves = BTreeSet::new();
        let mut seen = HashSet::new();
        let mut stack = vec![self.initial().pos];
        while let Some(pos) = stack.pop() {
            if !seen.insert(pos.clone()) {
                continue;
            }
            if pos.phase == Phase::Over {
                leaves.insert(pos.real.clone());
                continue;
            }
            for m in self.moves_at(&pos) {
                stack.push(self.advance(&pos, &m));
            }
        }
        leaves
    }

    /// Replays a move sequence from the initial state.
    pub fn replay(&self, moves: &[Move]) -> Result<GameState> {
        let mut s = self.initial();
        for m in moves {
            s = self.step(&s, m)?;
        }
        Ok(s)
    }

    /// The realized point sequence of a play: the approximations the realisation passed through,
    /// with `None` for each padding point in order.
    pub fn realized_sequence(&self, s: &GameState) -> Vec<Option<ARElem>> {
        s.history
            .iter()
            .filter_map(|m| match m {
                Move::Ext(c) | Move::ExtSub(c, _) => Some(Some(c.clone())),
                Move::ZeroSub(_) => Some(None),
                _ => None,
            })
            .collect()
    }
}

/// A strategy for one player, complete against every legal opponent continuation.
#[derive(Clone, Debug, PartialEq)]
pub enum StrategyTree {
    /// The play is over with this realisation.
    Leaf(ARElem),
    /// The player to move has no legal move.
    Stuck(Player),
    Play(Move, Box<StrategyTree>),
    Reply(Vec<(Move, StrategyTree)>),
}

impl StrategyTree {
    pub fn to_json(&self, depth: usize) -> Value {
        match self {
            StrategyTree::Leaf(a) => json!({ "leaf": encode_elem(a) }),
            StrategyTree::Stuck(p) => json!({ "stuck": p }),
            StrategyTree::Play(m, next) => json!({ "play": m.to_json(depth), "then": next.to_json(depth) }),
            StrategyTree::Reply(rs) => json!({
                "replies": rs.iter().map(|(m, t)| json!({ "move": m.to_json(depth), "then": t.to_json(depth) })).collect::<Vec<_>>()
            }),
        }
    }

    /// Number of positions the tree covers.
    pub fn size(&self) -> usize {
        match self {
            StrategyTree::Leaf(_) | StrategyTree::Stuck(_) => 1,
            StrategyTree::Play(_, t) => 1 + t.size(),
            StrategyTree::Reply(rs) => 1 + rs.iter().map(|(_, t)| t.size()).sum::<usize>(),
        }
    }

    /// The subtree after a sequence of moves, if the tree covers it.
    pub fn follow(&self, moves: &[Move]) -> Option<&StrategyTree> {
        let mut t = self;
        for m in moves {
            t = match t {
                StrategyTree::Play(p, next) if p == m => next,
                StrategyTree::Reply(rs) => &rs.iter().find(|(r, _)| r == m)?.1,
                _ => return None,
            };
        }
        Some(t)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub wins: bool,
    pub strategy: Option<StrategyTree>,
    pub nodes: usize,
}

struct Solver<'g> {
    game: &'g Game,
    goal: Goal,
    memo: HashMap<Position, bool>,
}

impl Solver<'_> {
    fn wins(&mut self, pos: &Position) -> Result<bool> {
        if let Some(&v) = self.memo.get(pos) {
            return Ok(v);
        }
        let v = match pos.phase.turn() {
            None => self.goal.wants(self.game.in_target(&pos.real)?),
            Some(p) => {
                let mine = p == self.goal.player;
                let moves = self.game.moves_at(pos);
                let mut v = !mine;
                for m in &moves {
                    let w = self.wins(&self.game.advance(pos, m))?;
                    if w == mine {
                        v = mine;
                        break;
                    }
                }
                v
            }
        };
        self.memo.insert(pos.clone(), v);
        Ok(v)
    }

    /// The canonical winning strategy from a won position.
    fn extract(&mut self, pos: &Position) -> Result<StrategyTree> {
        match pos.phase.turn() {
            None => Ok(StrategyTree::Leaf(pos.real.clone())),
            Some(p) => {
                let moves = self.game.moves_at(pos);
                if moves.is_empty() {
                    return Ok(StrategyTree::Stuck(p));
                }
                if p == self.goal.player {
                    for m in moves {
                        let next = self.game.advance(pos, &m);
                        if self.wins(&next)? {
                            return Ok(StrategyTree::Play(m, Box::new(self.extract(&next)?)));
                        }
                    }
                    unreachable!("extract is only called on won positions")
                } else {
                    let mut replies = Vec::with_capacity(moves.len());
                    for m in moves {
                        let next = self.game.advance(pos, &m);
                        replies.push((m, self.extract(&next)?));
                    }
                    Ok(StrategyTree::Reply(replies))
                }
            }
        }
    }
}

/// Exact backward induction from a state.
pub fn solve_from(game: &Game, s: &GameState, goal: Goal) -> Result<Verdict> {
    let mut solver = Solver { game, goal, memo: HashMap::new() };
    let wins = solver.wins(&s.pos)?;
    let strategy = if wins { Some(solver.extract(&s.pos)?) } else { None };
    Ok(Verdict { wins, strategy, nodes: solver.memo.len() })
}

pub fn solve_game(game: &Game, goal: Goal) -> Result<Verdict> {
    solve_from(game, &game.initial(), goal)
}

pub fn solve(
    kind: GameKind,
    base: (&ARElem, &SubspaceGen),
    payoff: &ClopenPayoff,
    universe: &MoveUniverse,
    goal: Goal,
) -> Result<Verdict> {
    let game = Game::new(kind, base.0.clone(), base.1.clone(), payoff.clone(), universe.clone())?;
    solve_game(&game, goal)
}

/// Every line of `tree` for `player` against all legal opponent moves; errors on an illegal
/// or missing prescription. Returns the final states.
pub fn replay_strategy(game: &Game, player: Player, tree: &StrategyTree) -> Result<Vec<GameState>> {
    let mut out = Vec::new();
    walk(game, player, tree, game.initial(), &mut out)?;
    Ok(out)
}

fn walk(game: &Game, player: Player, tree: &StrategyTree, s: GameState, out: &mut Vec<GameState>) -> Result<()> {
    let moves = game.legal_moves(&s);
    match (s.turn(), tree) {
        (None, StrategyTree::Leaf(a)) if a == s.realisation() => {
            out.push(s);
            Ok(())
        }
        (Some(p), StrategyTree::Stuck(q)) if p == *q && moves.is_empty() => {
            out.push(s);
            Ok(())
        }
        (Some(p), StrategyTree::Play(m, next)) if p == player => {
            let s2 = game.step(&s, m)?;
            walk(game, player, next, s2, out)
        }
        (Some(p), StrategyTree::Reply(rs)) if p != player => {
            if rs.len() != moves.len() {
                return Err(Error::IllegalMove(format!("strategy covers {} of {} replies", rs.len(), moves.len())));
            }
            for m in &moves {
                let Some((_, t)) = rs.iter().find(|(r, _)| r == m) else {
                    return Err(Error::IllegalMove(format!("no answer after {}", m.text(game.label_depth()))));
                };
                walk(game, player, t, game.step(&s, m)?, out)?;
            }
            Ok(())
        }
        _ => Err(Error::IllegalMove("strategy does not match the position".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// I reaches the complement below the witness.
    I,
    /// II reaches the target below the witness.
    II,
}

#[derive(Clone, Debug, PartialEq)]
pub struct KrVerdict {
    /// The witness `B` and the side that wins below it; `None` when no pool member decides.
    pub found: Option<(SubspaceGen, Side)>,
    pub examined: usize,
}

/// Pool members (acting at `a`) inside `[a,A]`, in pool order.
/// `g ≤ h` between subspace moves: exact on the first `point_depth` points for Ellentuck and
/// vector spaces, truncated `≤` up to `check_depth` otherwise.
pub fn sub_le(g: &SubspaceGen, h: &SubspaceGen, check_depth: usize, point_depth: usize) -> bool {
    if supports_gowers(g.space) {
        gowers::gle(g, h, point_depth)
    } else {
        le(&g.space, g, h, check_depth)
    }
}

pub fn pool_below(a: &ARElem, big: &SubspaceGen, universe: &MoveUniverse, check_depth: usize) -> Vec<SubspaceGen> {
    let mut out: Vec<SubspaceGen> = Vec::new();
    for g in &universe.pool {
        let Ok(p) = paste(a, g) else { continue };
        if sub_le(&p, big, check_depth, check_depth.max(universe.extension_bound)) && !out.contains(&p) {
            out.push(p);
        }
    }
    out
}

/// First `B ∈ pool ∩ [a,A]` where I reaches the complement or II reaches the target in `K[a,B]`.
pub fn kastanas_ramsey_check(
    a: &ARElem,
    big: &SubspaceGen,
    payoff: &ClopenPayoff,
    universe: &MoveUniverse,
) -> Result<KrVerdict> {
    let candidates = pool_below(a, big, universe, payoff.horizon + 1);
    let mut examined = 0;
    for b in candidates {
        examined += 1;
        let game = Game::new(GameKind::Kastanas, a.clone(), b.clone(), payoff.clone(), universe.clone())?;
        if solve_game(&game, Goal::new(Player::I, GoalSet::Complement))?.wins {
            return Ok(KrVerdict { found: Some((b, Side::I)), examined });
        }
        if solve_game(&game, Goal::new(Player::II, GoalSet::Target))?.wins {
            return Ok(KrVerdict { found: Some((b, Side::II)), examined });
        }
    }
    Ok(KrVerdict { found: None, examined })
}
