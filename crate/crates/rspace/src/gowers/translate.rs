//! Move-by-move strategy translation between game forms.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::{Game, GameKind, GameState, Move, Phase, Player, StrategyTree};
use crate::space::{one_step_exts, ARElem, SubspaceGen, WSpace};
use crate::spaces::deep::{paste, splice};

use super::same_gen;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `K[a,A]` to the Gowers Kastanas game `K(A)` of the induced space.
    KastanasToGowers,
    /// `K(A)` back to `K[a,A]`.
    GowersToKastanas,
    /// `K(p)` to the padded `R(p)`, swapping the players.
    KToR,
    /// `F(p)` for I to the padded `AG_II(p)` for II.
    FToAgII,
    /// `G(p)` for II to the padded `AG_I(p)` for I.
    GToAgI,
}

impl Direction {
    fn kinds(self) -> (GameKind, GameKind) {
        match self {
            Direction::KastanasToGowers => (GameKind::Kastanas, GameKind::GowersKastanas),
            Direction::GowersToKastanas => (GameKind::GowersKastanas, GameKind::Kastanas),
            Direction::KToR => (GameKind::GowersKastanas, GameKind::DerancourtR),
            Direction::FToAgII => (GameKind::AsymptoticF, GameKind::AdvAgIi),
            Direction::GToAgI => (GameKind::GowersG, GameKind::AdvAgI),
        }
    }

    /// The player owning the translated strategy.
    pub fn target_player(self, source: Player) -> Player {
        match self {
            Direction::KastanasToGowers | Direction::GowersToKastanas => source,
            _ => source.other(),
        }
    }

    fn check(self, source: &Game, player: Player, target: &Game) -> Result<()> {
        let (s, t) = self.kinds();
        let allowed = match self {
            Direction::FToAgII => player == Player::I,
            Direction::GToAgI => player == Player::II,
            _ => true,
        };
        let padded = matches!(self, Direction::KToR | Direction::FToAgII | Direction::GToAgI);
        if source.kind != s || target.kind != t || !allowed || target.padded != padded {
            return Err(Error::Untranslatable(format!(
                "{self:?} needs a {s:?} strategy for the right player and a {}{t:?} target",
                if padded { "padded " } else { "" }
            )));
        }
        if source.base != target.base || source.payoff.horizon != target.payoff.horizon {
            return Err(Error::Untranslatable("source and target differ in base or horizon".into()));
        }
        Ok(())
    }
}

/// A translated strategy with the game it is for.
pub struct Translation {
    pub direction: Direction,
    pub player: Player,
    pub strategy: StrategyTree,
}

/// The legal move in `state` that `m` denotes, comparing subspaces by approximations.
fn find_legal(game: &Game, state: &GameState, m: &Move) -> Result<Move> {
    let d = game.signature_depth();
    let same = |x: &Move| match (x, m) {
        (Move::Sub(g), Move::Sub(h)) | (Move::ZeroSub(g), Move::ZeroSub(h)) => same_gen(g, h, d),
        (Move::ExtSub(c, g), Move::ExtSub(e, h)) => c == e && same_gen(g, h, d),
        _ => x == m,
    };
    game.legal_moves(state)
        .into_iter()
        .find(same)
        .ok_or_else(|| Error::Untranslatable(format!("{} is outside the target universe ({:?})", m.text(game.label_depth()), game.kind)))
}

/// `a ⌢ (g after index n)`.
fn lift(a: &ARElem, g: &SubspaceGen, n: usize) -> Result<SubspaceGen> {
    splice(a, g, n)
}

/// A `K[a,A]` move at realisation `at` as a move of `K(A)`.
fn to_gowers(base: &ARElem, at: &ARElem, m: &Move) -> Result<Move> {
    let s = base.space;
    Ok(match m {
        Move::Sub(g) => Move::Sub(lift(base, g, s.lh(at))?),
        Move::ExtSub(c, g) => Move::ExtSub(c.clone(), lift(base, g, s.lh(c))?),
        other => other.clone(),
    })
}

/// A `K(A)` move at realisation `at` as a move of `K[a,A]` (the G7 paste).
fn to_kastanas(at: &ARElem, m: &Move) -> Result<Move> {
    Ok(match m {
        Move::Sub(g) => Move::Sub(paste(at, g)?),
        Move::ExtSub(c, g) => Move::ExtSub(c.clone(), paste(c, g)?),
        other => other.clone(),
    })
}

/// Source move of the strategy's owner as a target move.
fn owner_map(dir: Direction, source: &Game, src: &GameState, target: &Game, tgt: &GameState, m: &Move) -> Result<Move> {
    let padded_sub = |g: &SubspaceGen| {
        if tgt.pos.phase == Phase::IISub0 {
            Move::Sub(g.clone())
        } else {
            Move::ZeroSub(g.clone())
        }
    };
    let raw = match (dir, m) {
        (Direction::KastanasToGowers, _) => to_gowers(&source.base, src.realisation(), m)?,
        (Direction::GowersToKastanas, _) => to_kastanas(src.realisation(), m)?,
        (Direction::KToR | Direction::FToAgII, Move::Sub(g)) => padded_sub(g),
        (Direction::GToAgI, Move::Ext(c)) if !target.payoff_reached(c) => {
            let top = paste(&target.base, &target.top)?;
            Move::ExtSub(c.clone(), top)
        }
        _ => m.clone(),
    };
    find_legal(target, tgt, &raw)
}

/// Target opponent move as the source opponent move it mirrors.
fn opp_map(dir: Direction, source: &Game, src: &GameState, m: &Move) -> Result<Move> {
    let raw = match (dir, m) {
        (Direction::KastanasToGowers, _) => to_kastanas(src.realisation(), m)?,
        (Direction::GowersToKastanas, _) => to_gowers(&source.base, src.realisation(), m)?,
        (_, Move::ZeroSub(g)) => Move::Sub(g.clone()),
        (Direction::FToAgII, Move::ExtSub(c, _)) => Move::Ext(c.clone()),
        _ => m.clone(),
    };
    find_legal(source, src, &raw)
}

struct Ctx<'a> {
    dir: Direction,
    source: &'a Game,
    target: &'a Game,
    owner: Player,
}

impl Ctx<'_> {
    fn build(&self, sigma: &StrategyTree, src: GameState, tgt: GameState) -> Result<StrategyTree> {
        match tgt.turn() {
            None => Ok(StrategyTree::Leaf(tgt.realisation().clone())),
            Some(p) if p == self.owner => {
                if matches!(sigma, StrategyTree::Stuck(_)) && self.target.legal_moves(&tgt).is_empty() {
                    return Ok(StrategyTree::Stuck(p));
                }
                let StrategyTree::Play(m, next) = sigma else {
                    return Err(Error::Untranslatable("source strategy has no move here".into()));
                };
                let tm = owner_map(self.dir, self.source, &src, self.target, &tgt, m)?;
                let src2 = self.source.step(&src, m)?;
                let tgt2 = self.target.step(&tgt, &tm)?;
                Ok(StrategyTree::Play(tm, Box::new(self.build(next, src2, tgt2)?)))
            }
            Some(p) => {
                let moves = self.target.legal_moves(&tgt);
                if moves.is_empty() {
                    return Ok(StrategyTree::Stuck(p));
                }
                let StrategyTree::Reply(rs) = sigma else {
                    return Err(Error::Untranslatable("source strategy expects its own move here".into()));
                };
                let mut replies = Vec::with_capacity(moves.len());
                for tm in moves {
                    let sm = opp_map(self.dir, self.source, &src, &tm)?;
                    let Some((_, t)) = rs.iter().find(|(r, _)| *r == sm) else {
                        return Err(Error::Untranslatable(format!(
                            "source strategy does not answer {}",
                            sm.text(self.source.label_depth())
                        )));
                    };
                    let src2 = self.source.step(&src, &sm)?;
                    let tgt2 = self.target.step(&tgt, &tm)?;
                    replies.push((tm, self.build(t, src2, tgt2)?));
                }
                Ok(StrategyTree::Reply(replies))
            }
        }
    }
}

/// Translates `sigma`, a strategy for `player` in `source`, into a strategy in `target`.
pub fn translate_strategy(
    dir: Direction,
    source: &Game,
    player: Player,
    sigma: &StrategyTree,
    target: &Game,
) -> Result<Translation> {
    dir.check(source, player, target)?;
    let owner = dir.target_player(player);
    let ctx = Ctx { dir, source, target, owner };
    let strategy = ctx.build(sigma, source.initial(), target.initial())?;
    Ok(Translation { direction: dir, player: owner, strategy })
}

/// The strategy that always plays the first legal move.
pub fn canonical_strategy(game: &Game, player: Player) -> StrategyTree {
    fn go(game: &Game, player: Player, s: GameState) -> StrategyTree {
        let Some(p) = s.turn() else { return StrategyTree::Leaf(s.realisation().clone()) };
        let moves = game.legal_moves(&s);
        if moves.is_empty() {
            return StrategyTree::Stuck(p);
        }
        if p == player {
            let m = moves.into_iter().next().expect("nonempty");
            let next = game.step(&s, &m).expect("legal");
            StrategyTree::Play(m, Box::new(go(game, player, next)))
        } else {
            let replies = moves
                .into_iter()
                .map(|m| {
                    let next = game.step(&s, &m).expect("legal");
                    (m, go(game, player, next))
                })
                .collect();
            StrategyTree::Reply(replies)
        }
    }
    go(game, player, game.initial())
}

/// Result of mirroring a translation against its source.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MirrorReport {
    pub lines: usize,
    pub mismatches: Vec<String>,
}

/// Plays every line of the translated strategy, mirrors it in the source game following
/// `sigma`, and compares the realized point sequences (padding points dropped).
pub fn mirror_outcomes(source: &Game, sigma: &StrategyTree, target: &Game, tr: &Translation) -> Result<MirrorReport> {
    let finals = crate::games::replay_strategy(target, tr.player, &tr.strategy)?;
    let mut report = MirrorReport::default();
    for fin in finals {
        report.lines += 1;
        let mut src = source.initial();
        let mut node = sigma;
        let mut tgt = target.initial();
        for tm in &fin.history {
            let src_turn = src.turn();
            let sm = if tgt.turn() == Some(tr.player) {
                let StrategyTree::Play(m, next) = node else {
                    return Err(Error::Untranslatable("source strategy ended early".into()));
                };
                let expected = owner_map(tr.direction, source, &src, target, &tgt, m)?;
                if expected != *tm {
                    report.mismatches.push(format!("owner move {} vs {}", expected.text(4), tm.text(4)));
                }
                node = next;
                m.clone()
            } else {
                let sm = opp_map(tr.direction, source, &src, tm)?;
                let StrategyTree::Reply(rs) = node else {
                    return Err(Error::Untranslatable("source strategy expected to move".into()));
                };
                node = &rs.iter().find(|(r, _)| *r == sm).ok_or_else(|| Error::Untranslatable("unanswered".into()))?.1;
                sm
            };
            debug_assert!(src_turn.is_some());
            src = source.step(&src, &sm)?;
            tgt = target.step(&tgt, tm)?;
        }
        let a: Vec<ARElem> = source.realized_sequence(&src).into_iter().flatten().collect();
        let b: Vec<ARElem> = target.realized_sequence(&tgt).into_iter().flatten().collect();
        if a != b {
            report.mismatches.push(format!("realized sequences differ after {} moves", fin.history.len()));
        }
    }
    Ok(report)
}

/// `pool` closed under lifting: for every approximation `c` reachable below `top` before the
/// horizon, `a ⌢ (P after c)` for each member `P`. Both Kastanas forms then share one universe.
pub fn closure_for_lift(
    a: &ARElem,
    top: &SubspaceGen,
    pool: &[SubspaceGen],
    horizon: usize,
    ext_depth: usize,
) -> Result<Vec<SubspaceGen>> {
    let space = top.space;
    let mut reach = vec![a.clone()];
    let mut frontier = vec![a.clone()];
    while let Some(c) = frontier.pop() {
        if space.lh(&c) + 1 >= horizon {
            continue;
        }
        for e in one_step_exts(&space, &c, top, ext_depth.max(space.lh(&c) + 1)) {
            reach.push(e.clone());
            frontier.push(e);
        }
    }
    let d = ext_depth + 4;
    let mut out: Vec<SubspaceGen> = Vec::new();
    let push = |g: SubspaceGen, out: &mut Vec<SubspaceGen>| {
        if !out.iter().any(|h| same_gen(h, &g, d)) {
            out.push(g);
        }
    };
    for g in pool {
        push(g.clone(), &mut out);
    }
    loop {
        let before = out.len();
        let current = out.clone();
        for g in &current {
            for c in &reach {
                let Ok(p) = paste(c, g) else { continue };
                if let Ok(l) = lift(a, &p, space.lh(c)) {
                    push(l, &mut out);
                }
            }
        }
        if out.len() == before || out.len() > 400 {
            break;
        }
    }
    Ok(out)
}

