//! Sampled checks of the axioms, biasymptotic point sets and clopen Ramsey searches.
//!
//! Existential clauses are searched for inside the pool (closed under pasting unless
//! disabled); a search that comes up empty reports `search_bounded`, never `pass`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::games::{solve_game, ClopenPayoff, Game, GameKind, Goal, GoalSet, MoveUniverse, Player};
use crate::product::{encode_product, product_in_o, product_pool, BitStream, ProductAR, ProductGen, ProductSpace};
use crate::space::{depth_within, le, one_step_exts, ARElem, Space, SubspaceGen, Tail, WSpace};
use crate::spaces::deep::{deep_witness, paste};
use crate::spaces::pools::{example_spaces, standard_pool};
use crate::spaces::text::encode_elem;
use crate::spaces::vector::{BlockVector, Field, Scalar};
use crate::spaces::{last_in_y, last_point};

pub use crate::gowers::Status;

/// Pool size used by the per-space checks.
pub const CHECK_POOL: usize = 6;
/// Node cap for predecessor enumeration.
const PRED_CAP: usize = 20_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scope {
    pub space: String,
    pub samples: usize,
    pub seed: u64,
    pub pool_size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub clause: String,
    pub status: Status,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub scope: Scope,
    pub status: Status,
    pub clauses: Vec<Clause>,
    pub notes: Vec<String>,
}

impl CheckReport {
    fn new(check: &str, scope: Scope, clauses: Vec<Clause>, notes: Vec<String>) -> Self {
        let status = if clauses.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if clauses.iter().any(|c| c.status == Status::SearchBounded) {
            Status::SearchBounded
        } else {
            Status::Pass
        };
        CheckReport { check: check.into(), scope, status, clauses, notes }
    }
}

/// Sample budget, seed and whether existential searches may paste pool members.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckConfig {
    pub samples: usize,
    pub seed: u64,
    pub pastes: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { samples: 200, seed: 7, pastes: true }
    }
}

/// What the generic checks need beyond the space primitives.
pub trait Checkable: WSpace
where
    Self::Gen: PartialEq,
{
    fn elem_text(&self, a: &Self::Elem) -> String;
    /// The member of `[a, g]` continuing as `g` does after `a`, when there is one.
    fn paste(&self, a: &Self::Elem, g: &Self::Gen) -> Option<Self::Gen>;

    fn gen_text(&self, g: &Self::Gen) -> String {
        format!("{}…", self.elem_text(&self.approx(g, self.bound(g).min(4))))
    }
}

impl Checkable for Space {
    fn elem_text(&self, a: &ARElem) -> String {
        encode_elem(a)
    }

    fn paste(&self, a: &ARElem, g: &SubspaceGen) -> Option<SubspaceGen> {
        paste(a, g).ok().or_else(|| deep_witness(g, a, self.lh(a) + 1).ok())
    }
}

impl Checkable for ProductSpace {
    fn elem_text(&self, a: &ProductAR) -> String {
        encode_product(a)
    }

    fn paste(&self, a: &ProductAR, g: &ProductGen) -> Option<ProductGen> {
        let base = paste(&a.a, &g.a).ok()?;
        let n = a.bits.len();
        let mut prefix = a.bits.clone();
        prefix.extend(g.u.prefix.iter().skip(n).copied());
        Some(ProductGen::new(base, BitStream { prefix, tail: g.u.tail }))
    }
}

fn clause(name: &str, checked: usize, witness: Option<String>) -> Clause {
    let status = if witness.is_some() { Status::Fail } else { Status::Pass };
    Clause { clause: name.into(), status, checked, witness }
}

fn bounded(name: &str, checked: usize, missing: Option<String>) -> Clause {
    let status = if missing.is_some() { Status::SearchBounded } else { Status::Pass };
    Clause { clause: name.into(), status, checked, witness: missing }
}

fn scope<S: WSpace>(s: &S, pool_size: usize, cfg: CheckConfig) -> Scope {
    Scope { space: s.label(), samples: cfg.samples, seed: cfg.seed, pool_size }
}

fn ext_depth<S: WSpace>(s: &S, g: &S::Gen, a: &S::Elem) -> usize {
    s.bound(g).min(s.lh(a) + 3).max(s.lh(a) + 1)
}

/// A random element of `AR↾B` of length at most `max_len`, built by one-step extensions.
fn random_approx<S: WSpace>(s: &S, rng: &mut ChaCha8Rng, big: &S::Gen, max_len: usize) -> S::Elem {
    let mut a = s.approx(big, 0);
    let len = rng.gen_range(0..=max_len);
    for _ in 0..len {
        let exts = one_step_exts(s, &a, big, ext_depth(s, big, &a));
        let Some(next) = exts.choose(rng) else { break };
        a = next.clone();
    }
    a
}

/// Rough size of the candidate enumeration: spaces with wide spans get shorter samples.
fn sample_len<S: WSpace>(s: &S, big: &S::Gen) -> usize {
    let width = one_step_exts(s, &s.approx(big, 0), big, s.bound(big).min(3)).len();
    if width > 12 {
        1
    } else {
        2
    }
}

// ---------------------------------------------------------------------------
// A1

/// `r_0` is empty, distinct descriptions separate, approximations cohere.
pub fn check_a1<S: Checkable>(s: &S, pool: &[S::Gen], cfg: CheckConfig) -> CheckReport
where
    S::Gen: PartialEq,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut notes = Vec::new();

    let mut w1 = None;
    let empty = pool.first().map(|g| s.approx(g, 0));
    for g in pool {
        let r0 = s.approx(g, 0);
        if (s.lh(&r0) != 0 || Some(&r0) != empty.as_ref()) && w1.is_none() {
            w1 = Some(format!("r_0({}) = {}", s.gen_text(g), s.elem_text(&r0)));
        }
    }

    let mut n2 = 0;
    let mut identified = 0;
    for (i, g) in pool.iter().enumerate() {
        for h in &pool[i + 1..] {
            if g == h {
                continue;
            }
            n2 += 1;
            let far = 2 * s.bound(g).max(s.bound(h));
            if (0..=far).all(|n| s.approx(g, n) == s.approx(h, n)) {
                identified += 1;
            }
        }
    }
    if identified > 0 {
        notes.push(format!("{identified} description pairs agree through twice the bound and are identified"));
    }

    let mut n3 = 0;
    let mut w3 = None;
    for _ in 0..cfg.samples {
        let g = pool.choose(&mut rng).expect("nonempty pool");
        let h = if rng.gen_bool(0.5) { g } else { pool.choose(&mut rng).expect("nonempty pool") };
        let n = rng.gen_range(0..=s.bound(g));
        let m = rng.gen_range(0..=s.bound(h));
        n3 += 1;
        let an = s.approx(g, n);
        if s.lh(&an) != n || !s.is_approximation(&an) {
            w3.get_or_insert(format!("n = {n}: r_n({}) = {} is not an approximation of length n", s.gen_text(g), s.elem_text(&an)));
            continue;
        }
        if let Some(k) = (0..n).find(|&k| s.truncate(&an, k) != s.approx(g, k)) {
            w3.get_or_insert(format!("n = {n}: r_{k} of r_n({}) is not r_{k}", s.gen_text(g)));
            continue;
        }
        let bm = s.approx(h, m);
        if an == bm && (n != m || (0..n).any(|k| s.approx(g, k) != s.approx(h, k))) {
            w3.get_or_insert(format!("n = {n}, m = {m}: equal approximations with different histories"));
        }
    }

    let clauses = vec![clause("r0_empty", pool.len(), w1), clause("separation", n2, None), clause("coherence", n3, w3)];
    CheckReport::new("A1", scope(s, pool.len(), cfg), clauses, notes)
}

/// An Ellentuck generator whose stem is not followed by its tail in increasing order.
pub fn unstable_stem_gen(bound: usize) -> SubspaceGen {
    SubspaceGen::new(ARElem::set(&[5]), Tail::Arithmetic { start: 0, step: 1 }, bound)
}

// ---------------------------------------------------------------------------
// wA2

/// `{a : a ≤_fin r_m(B)}`, reached through one-step extensions inside `B` of depth at most `m`.
/// `None` when the enumeration exceeds its cap.
pub fn predecessors<S: WSpace>(s: &S, big: &S::Gen, m: usize) -> Option<Vec<S::Elem>> {
    let b = s.approx(big, m);
    let mut seen: BTreeSet<S::Elem> = BTreeSet::new();
    let mut frontier = vec![s.approx(big, 0)];
    let mut visited = 0;
    while let Some(a) = frontier.pop() {
        visited += 1;
        if visited > PRED_CAP {
            return None;
        }
        if s.le_fin(&a, &b) {
            seen.insert(a.clone());
        }
        if s.lh(&a) >= m {
            continue;
        }
        frontier.extend(one_step_exts(s, &a, big, m));
    }
    Some(seen.into_iter().collect())
}

/// Scalars `λ` with `e_0 + λ e_1 ≤_fin (e_0, e_1)` other than `λ = 1`: infinitely many over the
/// rationals, which is how A2(1) fails there.
pub fn a2_lambda_witnesses(field: Field) -> Vec<Scalar> {
    let s = Space::Vector { field };
    let e0 = BlockVector::basis(field, 0);
    let e1 = BlockVector::basis(field, 1);
    let b = ARElem::new(s, crate::Payload::Vectors(vec![e0.clone(), e1.clone()]));
    let mut out = Vec::new();
    for lam in field.enumeration_scalars() {
        if lam == Scalar::from_integer(0) || lam == Scalar::from_integer(1) {
            continue;
        }
        let x = e0.plus(&e1.scaled(lam));
        let a = ARElem::new(s, crate::Payload::Vectors(vec![x]));
        if s.le_fin(&a, &b) && !out.contains(&lam) {
            out.push(lam);
        }
    }
    out
}

/// Predecessor sets enumerate, `≤` and `≤_fin` are quasi-orders, and the amalgamation clause.
pub fn check_wa2<S: Checkable>(s: &S, pool: &[S::Gen], cfg: CheckConfig) -> CheckReport
where
    S::Gen: PartialEq,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xa2);
    let mut notes = Vec::new();

    // (w1) enumerable within bound
    let mut n1 = 0;
    let mut capped = None;
    let mut sizes = Vec::new();
    for g in pool.iter().take(3) {
        let m = s.bound(g).min(3);
        n1 += 1;
        match predecessors(s, g, m) {
            Some(p) => sizes.push(format!("{}: {}", s.elem_text(&s.approx(g, m)), p.len())),
            None => {
                capped.get_or_insert(format!("predecessors of {} exceed {PRED_CAP} nodes", s.elem_text(&s.approx(g, m))));
            }
        }
    }
    if !sizes.is_empty() {
        notes.push(format!("predecessor counts within bound: {}", sizes.join("; ")));
    }

    // (2) ≤ and ≤_fin are quasi-orders on the samples
    let mut n2 = 0;
    let mut w2 = None;
    for g in pool {
        n2 += 1;
        if !le(s, g, g, s.bound(g)) {
            w2.get_or_insert(format!("{} is not ≤ itself", s.gen_text(g)));
        }
    }
    for _ in 0..cfg.samples / 4 {
        let (a, b, c) = (pick(pool, &mut rng), pick(pool, &mut rng), pick(pool, &mut rng));
        let d = s.bound(a).min(s.bound(b)).min(s.bound(c));
        if le(s, a, b, d) && le(s, b, c, d) {
            n2 += 1;
            if !le(s, a, c, d) {
                w2.get_or_insert(format!("{} ≤ {} ≤ {} but not transitive", s.gen_text(a), s.gen_text(b), s.gen_text(c)));
            }
        }
    }

    // (3) a ⊑ b ≤_fin c gives d ⊑ c with a ≤_fin d
    let mut n3 = 0;
    let mut w3 = None;
    for _ in 0..cfg.samples {
        let big = pick(pool, &mut rng);
        let b = random_approx(s, &mut rng, big, sample_len(s, big) + 1);
        let m = s.bound(big).min(s.lh(&b) + 2);
        let c = s.approx(big, rng.gen_range(s.lh(&b).min(m)..=m));
        if !s.le_fin(&b, &c) {
            continue;
        }
        let k = rng.gen_range(0..=s.lh(&b));
        let a = s.truncate(&b, k);
        n3 += 1;
        if !(0..=s.lh(&c)).any(|j| s.le_fin(&a, &s.truncate(&c, j))) {
            w3.get_or_insert(format!("{} ⊑ {} ≤_fin {} with no initial segment above it", s.elem_text(&a), s.elem_text(&b), s.elem_text(&c)));
        }
        if !s.le_fin(&b, &b) {
            w3.get_or_insert(format!("{} is not ≤_fin itself", s.elem_text(&b)));
        }
    }

    let clauses = vec![bounded("countable_predecessors", n1, capped), clause("order", n2, w2), clause("amalgamation", n3, w3)];
    CheckReport::new("wA2", scope(s, pool.len(), cfg), clauses, notes)
}

fn pick<'a, T>(pool: &'a [T], rng: &mut ChaCha8Rng) -> &'a T {
    pool.choose(rng).expect("nonempty pool")
}

// ---------------------------------------------------------------------------
// A3

/// `[a,A] ≠ ∅` witnessed inside the truncation: `W` has `r_{lh(a)}(W) = a` and `W ≤ A`.
fn nonempty_witness<S: Checkable>(s: &S, a: &S::Elem, big: &S::Gen, cands: &[S::Gen], cd: usize) -> Option<S::Gen>
where
    S::Gen: PartialEq,
{
    let n = s.lh(a);
    let own = s.paste(a, big);
    own.iter()
        .chain(cands)
        .find(|w| s.approx(w, n) == *a && le(s, w, big, cd))
        .cloned()
}

/// `[a,A'] ⊆ [a,A]` up to two levels: every extension of `a` inside `A'` lies in `AR↾A`.
fn contained<S: WSpace>(s: &S, a: &S::Elem, small: &S::Gen, big: &S::Gen) -> bool {
    let d1 = ext_depth(s, small, a);
    let limit = s.bound(big);
    one_step_exts(s, a, small, d1).iter().all(|c| {
        depth_within(s, big, c, limit).finite().is_some()
            && one_step_exts(s, c, small, ext_depth(s, small, c))
                .iter()
                .take(8)
                .all(|e| depth_within(s, big, e, limit).finite().is_some())
    })
}

/// Both clauses of A3 on sampled `(a, A ≤ B)`.
pub fn check_a3<S: Checkable>(s: &S, pool: &[S::Gen], cfg: CheckConfig) -> CheckReport
where
    S::Gen: PartialEq,
{
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xa3);
    let mut n1 = 0;
    let mut m1 = None;
    let mut n2 = 0;
    let mut m2 = None;
    for _ in 0..cfg.samples {
        let b = pick(pool, &mut rng);
        let a = random_approx(s, &mut rng, b, sample_len(s, b));
        let Some(d) = depth_within(s, b, &a, s.bound(b)).finite() else { continue };
        // one point past `a`: later points of a pasted witness may lie past the bound of `B`
        let cd = s.bound(b).min(s.lh(&a) + 1);
        let rd = s.approx(b, d);
        let mut cands: Vec<S::Gen> = pool.to_vec();
        if cfg.pastes {
            cands.extend(pool.iter().filter_map(|p| s.paste(&rd, p)));
        }
        // (1) every A ∈ [d, B] among the candidates has [a, A] ≠ ∅
        let in_db: Vec<&S::Gen> = cands.iter().filter(|x| s.approx(x, d) == rd && le(s, x, b, cd)).collect();
        let pasted: Vec<S::Gen> = if cfg.pastes { pool.iter().filter_map(|p| s.paste(&a, p)).collect() } else { pool.to_vec() };
        for big in in_db.iter().take(3) {
            n1 += 1;
            if nonempty_witness(s, &a, big, &pasted, cd).is_none() {
                m1.get_or_insert(format!("no member of [{}, {}] found", s.elem_text(&a), s.gen_text(big)));
            }
        }
        // (2) A ≤ B with [a, A] ≠ ∅ gives A' ∈ [d, B] with ∅ ≠ [a, A'] ⊆ [a, A]
        let small = pick(pool, &mut rng);
        let small = if cfg.pastes { s.paste(&a, small).unwrap_or_else(|| small.clone()) } else { small.clone() };
        if !le(s, &small, b, cd) || nonempty_witness(s, &a, &small, &[], cd).is_none() {
            continue;
        }
        n2 += 1;
        let mut search: Vec<S::Gen> = pool.to_vec();
        if cfg.pastes {
            search.extend(s.paste(&rd, &small));
        }
        let found = search.iter().any(|x| {
            s.approx(x, d) == rd
                && le(s, x, b, cd)
                && nonempty_witness(s, &a, x, &[], cd).is_some()
                && contained(s, &a, x, &small)
        });
        if !found {
            m2.get_or_insert(format!("no A' for a = {} below {}", s.elem_text(&a), s.gen_text(&small)));
        }
    }
    let clauses = vec![bounded("nonempty", n1, m1), bounded("refinement", n2, m2)];
    CheckReport::new("A3", scope(s, pool.len(), cfg), clauses, Vec::new())
}

// ---------------------------------------------------------------------------
// biasymptotic

/// Extension depth past the depth of `a` in `g`.
fn next_depth<S: WSpace>(s: &S, g: &S::Gen, a: &S::Elem, bound: usize) -> usize {
    let d = depth_within(s, g, a, s.bound(g)).finite().unwrap_or(s.lh(a));
    bound.max(d + 1).max(s.lh(a) + 1)
}

/// Whether `space` has a biasymptotic point set here.
pub fn has_biasymptotic(space: Space) -> bool {
    match space {
        Space::FinSigned { .. } => true,
        Space::Vector { field } => field != Field::Gf(2),
        _ => false,
    }
}

/// Below every pool member and a few bases inside it, one-step extensions meet `O` and its complement.
pub fn check_biasymptotic(space: Space, pool: &[SubspaceGen], bound: usize) -> Result<CheckReport> {
    if !has_biasymptotic(space) {
        return Err(Error::WrongSpace(format!("{} has no biasymptotic point set", space.tag())));
    }
    let mut checked = 0;
    let mut witness = None;
    let mut notes = Vec::new();
    for g in pool {
        let mut bases = vec![ARElem::empty(space)];
        bases.extend(one_step_exts(&space, &bases[0], g, bound).into_iter().take(2));
        for a in &bases {
            checked += 1;
            let exts = one_step_exts(&space, a, g, next_depth(&space, g, a, bound));
            let mut inside = None;
            let mut outside = None;
            for c in &exts {
                match last_in_y(c)? {
                    true => inside = inside.or(Some(c)),
                    false => outside = outside.or(Some(c)),
                }
            }
            match (inside, outside) {
                (Some(i), Some(o)) => {
                    if notes.len() < 20 {
                        let show = |c: &ARElem| last_point(c).map(|p| p.to_string()).unwrap_or_default();
                        notes.push(format!("{} at {}: in O {}, outside {}", encode_elem(&space.approx(g, 2)), encode_elem(a), show(i), show(o)));
                    }
                }
                _ => {
                    witness.get_or_insert(format!(
                        "{} at {}: {} extensions, in O: {}, outside: {}",
                        encode_elem(&space.approx(g, 3)),
                        encode_elem(a),
                        exts.len(),
                        inside.is_some(),
                        outside.is_some()
                    ));
                }
            }
        }
    }
    let sc = Scope { space: space.tag(), samples: checked, seed: 0, pool_size: pool.len() };
    Ok(CheckReport::new("biasymptotic", sc, vec![clause("meets_both", checked, witness)], notes))
}

/// The product's last-bit set below every `(A, u)` and sampled base.
pub fn check_biasymptotic_product(base: Space, pool: &[SubspaceGen], bound: usize) -> CheckReport {
    let s = ProductSpace::new(base);
    let mut checked = 0;
    let mut witness = None;
    for g in product_pool(pool) {
        let mut bases = vec![s.approx(&g, 0)];
        bases.extend(one_step_exts(&s, &bases[0], &g, bound).into_iter().take(2));
        for a in &bases {
            checked += 1;
            let exts = one_step_exts(&s, a, &g, next_depth(&s, &g, a, bound));
            let inside = exts.iter().any(product_in_o);
            let outside = exts.iter().any(|c| !product_in_o(c));
            if !(inside && outside) {
                witness.get_or_insert(format!("{} at {}", s.gen_text(&g), encode_product(a)));
            }
        }
    }
    let sc = Scope { space: s.label(), samples: checked, seed: 0, pool_size: pool.len() * 2 };
    CheckReport::new("biasymptotic", sc, vec![clause("meets_both", checked, witness)], Vec::new())
}

// ---------------------------------------------------------------------------
// clopen Ramsey

/// Outcome of the homogeneity search.
#[derive(Clone, Debug)]
pub struct RamseySearch {
    /// Pool members (pasted at the base) all of whose approximations at the horizon satisfy the payoff.
    pub inside: Vec<SubspaceGen>,
    /// Those with none satisfying it.
    pub outside: Vec<SubspaceGen>,
    pub report: CheckReport,
}

/// Searches the pool for `B` with `[a,B]` homogeneous for the payoff at its horizon, and checks each
/// one against the Kastanas game below it.
pub fn clopen_ramsey_search(a: &ARElem, payoff: &ClopenPayoff, universe: &MoveUniverse) -> Result<RamseySearch> {
    let space = a.space;
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    let mut checked = 0;
    let mut w = None;
    let mut notes = Vec::new();
    let pred = payoff.predicate.normalized(space)?;
    for g in &universe.pool {
        let Ok(b) = paste(a, g) else { continue };
        if inside.iter().chain(&outside).any(|x: &SubspaceGen| x == &b) {
            continue;
        }
        // Sparser members below B reach points past B's own window, so the leaves come from the game.
        let game = Game::new(GameKind::Kastanas, a.clone(), b.clone(), payoff.clone(), universe.clone())?;
        let leaves = game.reachable_leaves();
        if leaves.is_empty() {
            continue;
        }
        let vals = leaves.iter().map(|c| pred.eval(c)).collect::<Result<Vec<bool>>>()?;
        let side = if vals.iter().all(|&v| v) {
            Some(GoalSet::Target)
        } else if vals.iter().all(|&v| !v) {
            Some(GoalSet::Complement)
        } else {
            None
        };
        let Some(set) = side else { continue };
        checked += 1;
        let goal = match set {
            GoalSet::Target => Goal::new(Player::II, GoalSet::Target),
            GoalSet::Complement => Goal::new(Player::I, GoalSet::Complement),
        };
        if !solve_game(&game, goal)?.wins {
            w.get_or_insert(format!("{} is homogeneous but the matching Kastanas goal fails", encode_elem(&space.approx(&b, 4))));
        }
        notes.push(format!("{} homogeneous {}", encode_elem(&space.approx(&b, 4)), if set == GoalSet::Target { "inside" } else { "outside" }));
        match set {
            GoalSet::Target => inside.push(b),
            GoalSet::Complement => outside.push(b),
        }
    }
    if inside.is_empty() && outside.is_empty() {
        notes.push("no homogeneous pool member".into());
    }
    let sc = Scope { space: space.tag(), samples: universe.pool.len(), seed: 0, pool_size: universe.pool.len() };
    let report = CheckReport::new("clopen_ramsey", sc, vec![clause("kastanas_consistency", checked, w)], notes);
    Ok(RamseySearch { inside, outside, report })
}

// ---------------------------------------------------------------------------
// bundles

pub const CHECK_IDS: [&str; 5] = ["a1", "wa2", "a3", "biasymptotic", "product"];

/// The eight example spaces plus GF(3) and rational vectors.
pub fn all_spaces() -> Vec<Space> {
    let mut v = example_spaces();
    v.push(Space::Vector { field: Field::Gf(3) });
    v.push(Space::Vector { field: Field::Rational });
    v
}

/// One check on one space with its standard pool. Returns `None` where the check does not apply.
pub fn run_check(space: Space, id: &str, cfg: CheckConfig) -> Result<Option<CheckReport>> {
    let pool = standard_pool(space, CHECK_POOL, cfg.seed);
    Ok(Some(match id {
        "a1" => check_a1(&space, &pool, cfg),
        "wa2" => {
            let mut r = check_wa2(&space, &pool, cfg);
            if let Space::Vector { field: Field::Rational } = space {
                let lams = a2_lambda_witnesses(Field::Rational);
                let shown: Vec<String> = lams.iter().map(|l| l.to_string()).collect();
                r.notes.push(format!("A2(1) fails: e0 + λe1 ≤_fin (e0, e1) for λ ∈ {{{}}}", shown.join(", ")));
            }
            r
        }
        "a3" => {
            // tree candidates branch widely; a quarter of the samples keeps the run short
            let c = match space {
                Space::StrongTrees => CheckConfig { samples: cfg.samples / 4, ..cfg },
                _ => cfg,
            };
            check_a3(&space, &pool, c)
        }
        "biasymptotic" => {
            if !has_biasymptotic(space) {
                return Ok(None);
            }
            check_biasymptotic(space, &standard_pool(space, 50, cfg.seed), 4)?
        }
        "product" => {
            let s = ProductSpace::new(space);
            let pp = product_pool(&pool[..pool.len().min(3)]);
            let c = CheckConfig { samples: cfg.samples / 4, ..cfg };
            let mut parts = vec![check_a1(&s, &pp, c), check_wa2(&s, &pp, c), check_a3(&s, &pp, c)];
            parts.push(check_biasymptotic_product(space, &pool[..pool.len().min(3)], 3));
            let clauses = parts
                .iter()
                .flat_map(|r| r.clauses.iter().map(move |cl| Clause { clause: format!("{}.{}", r.check, cl.clause), ..cl.clone() }))
                .collect();
            CheckReport::new("product", scope(&s, pp.len(), c), clauses, Vec::new())
        }
        other => return Err(Error::UnknownCheck(other.into())),
    }))
}

/// Checks `ids` on `spaces`, ordered by check id and then space.
pub fn run_bundle(spaces: &[Space], ids: &[String], cfg: CheckConfig) -> Result<Vec<CheckReport>> {
    for id in ids {
        if !CHECK_IDS.contains(&id.as_str()) {
            return Err(Error::UnknownCheck(id.clone()));
        }
    }
    let mut ids: Vec<&String> = ids.iter().collect();
    ids.sort();
    ids.dedup();
    let mut out = Vec::new();
    for id in ids {
        for &space in spaces {
            if let Some(r) = run_check(space, id, cfg)? {
                out.push(r);
            }
        }
    }
    Ok(out)
}

