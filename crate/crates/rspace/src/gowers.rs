//! Gowers spaces induced by `[a,A]`, the 0-padded variants and strategy translation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{ARElem, Payload, Space, SubspaceGen, Tail, WSpace};
use crate::spaces::deep::{paste, splice};
use crate::spaces::text::encode_elem;
use crate::spaces::vector::{span_membership, BlockVector};

mod translate;

pub use translate::{
    canonical_strategy, closure_for_lift, mirror_outcomes, translate_strategy, Direction, Translation,
};

/// Entries of `⟨a⟩` checked past the base before `≤*` is decided.
pub const STAR_SLACK: usize = 3;

pub fn supports_gowers(space: Space) -> bool {
    matches!(space, Space::Ellentuck | Space::Vector { .. })
}

fn require(space: Space) -> Result<()> {
    if supports_gowers(space) {
        Ok(())
    } else {
        Err(Error::UnsupportedSpace(format!("{} has no induced Gowers space here", space.tag())))
    }
}

fn set_member(x: u32, g: &SubspaceGen) -> bool {
    let Payload::Set(stem) = &g.stem.payload else { return false };
    if stem.contains(&x) {
        return true;
    }
    match &g.tail {
        Tail::Arithmetic { start, step } => x >= *start && (x - start) % step == 0,
        _ => false,
    }
}

/// `x ∈ ⟨B⟩`, exact: only generators starting at or below `max supp(x)` can contribute.
fn span_member(x: &BlockVector, g: &SubspaceGen) -> bool {
    let top = x.max_supp();
    let mut n = 1;
    let gens = loop {
        let Payload::Vectors(v) = g.space.approx(g, n).payload else { return false };
        if v.last().map_or(true, |l| l.min_supp() > top) || n > top as usize + 2 {
            break v.into_iter().filter(|w| w.min_supp() <= top).collect::<Vec<_>>();
        }
        n += 1;
    };
    span_membership(x, &gens)
}

/// Entry `i` of a sequence-shaped approximation is a point of `g`.
fn entry_in(a: &ARElem, i: usize, g: &SubspaceGen) -> bool {
    match &a.payload {
        Payload::Set(s) => set_member(s[i], g),
        Payload::Vectors(v) => span_member(&v[i], g),
        _ => false,
    }
}

fn entries(a: &ARElem) -> usize {
    match &a.payload {
        Payload::Set(s) => s.len(),
        Payload::Vectors(v) => v.len(),
        _ => 0,
    }
}

/// `b ◁ B`: the last point of `b` lies in `B` (Ellentuck) or in `⟨B⟩` (vectors).
pub fn triangle(b: &ARElem, g: &SubspaceGen) -> bool {
    let n = entries(b);
    n > 0 && entry_in(b, n - 1, g)
}

/// Points of `C` with index in `from..upto` all lie in `B`.
fn points_in(c: &SubspaceGen, b: &SubspaceGen, from: usize, upto: usize) -> bool {
    let r = c.space.approx(c, upto);
    (from..entries(&r)).all(|i| entry_in(&r, i, b))
}

/// `C ≤ B` on the first `depth` points.
pub fn gle(c: &SubspaceGen, b: &SubspaceGen, depth: usize) -> bool {
    points_in(c, b, 0, depth)
}

/// `C ≤*_a B`: some `r_n(C)` with `lh(a) ≤ n ≤ lh(a) + STAR_SLACK` after which every point of `C` is in `B`.
/// Larger `n` is weaker, so the last one decides.
pub fn le_star(a: &ARElem, c: &SubspaceGen, b: &SubspaceGen, depth: usize) -> bool {
    let from = a.space.lh(a) + STAR_SLACK;
    points_in(c, b, from, depth.max(from + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Fault {
    /// `≤*` never holds, so `≤` no longer implies it.
    StarNever,
}

/// `([a,A], AR↾[a,A], ≤, ≤*_a, ◁)` over a finite catalog.
#[derive(Clone, Debug)]
pub struct GowersSpace {
    pub space: Space,
    pub base: ARElem,
    pub top: SubspaceGen,
    pub subspaces: Vec<SubspaceGen>,
    pub depth: usize,
    pub fault: Option<Fault>,
}

pub fn induced_space(a: &ARElem, top: &SubspaceGen, pool: &[SubspaceGen], depth: usize) -> Result<GowersSpace> {
    let space = top.space;
    require(space)?;
    if a.space != space {
        return Err(Error::MixedSpaces(a.space.tag(), space.tag()));
    }
    let mut subspaces: Vec<SubspaceGen> = Vec::new();
    for g in std::iter::once(top).chain(pool) {
        let Ok(p) = paste(a, g) else { continue };
        if gle(&p, top, depth) && !subspaces.iter().any(|q| same_gen(q, &p, depth)) {
            subspaces.push(p);
        }
    }
    Ok(GowersSpace { space, base: a.clone(), top: top.clone(), subspaces, depth, fault: None })
}

/// Equal approximations up to `depth`.
pub fn same_gen(g: &SubspaceGen, h: &SubspaceGen, depth: usize) -> bool {
    g.space == h.space && (0..=depth).all(|n| g.space.approx(g, n) == h.space.approx(h, n))
}

impl GowersSpace {
    pub fn le(&self, p: &SubspaceGen, q: &SubspaceGen) -> bool {
        gle(p, q, self.depth)
    }

    pub fn le_star(&self, p: &SubspaceGen, q: &SubspaceGen) -> bool {
        match self.fault {
            Some(Fault::StarNever) => false,
            None => le_star(&self.base, p, q, self.depth),
        }
    }

    /// `p ⪅ q`: `p ≤ q` and `q ≤* p`.
    pub fn lesssim(&self, p: &SubspaceGen, q: &SubspaceGen) -> bool {
        self.le(p, q) && self.le_star(q, p)
    }

    pub fn triangle(&self, b: &ARElem, p: &SubspaceGen) -> bool {
        triangle(b, p)
    }

    /// Point sequences extending `b` by one point inside the top subspace.
    pub fn next_points(&self, b: &ARElem) -> Vec<ARElem> {
        let ed = self.depth.max(self.space.lh(b) + 1);
        crate::space::one_step_exts(&self.space, b, &self.top, ed)
    }
}

/// Outcome of one sampled property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub property: String,
    pub status: Status,
    pub checked: usize,
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    SearchBounded,
}

fn gen_text(g: &SubspaceGen, depth: usize) -> String {
    format!("{}…", encode_elem(&g.space.approx(g, depth)))
}

fn result(property: &str, checked: usize, witness: Option<String>) -> PropertyResult {
    let status = if witness.is_some() { Status::Fail } else { Status::Pass };
    PropertyResult { property: property.into(), status, checked, witness }
}

/// Properties (1)-(5) of a Gowers space on the catalog; (3) is a bounded witness search.
pub fn check_gowers_props(g: &GowersSpace, samples: usize) -> Vec<PropertyResult> {
    let subs = &g.subspaces;
    let d = g.depth;
    let pairs: Vec<(&SubspaceGen, &SubspaceGen)> =
        subs.iter().flat_map(|p| subs.iter().map(move |q| (p, q))).take(samples.max(1)).collect();

    // (1) p ≤ q implies p ≤* q
    let mut w1 = None;
    let mut n1 = 0;
    for (p, q) in &pairs {
        if g.le(p, q) {
            n1 += 1;
            if !g.le_star(p, q) && w1.is_none() {
                w1 = Some(format!("{} ≤ {} but not ≤*", gen_text(p, d), gen_text(q, d)));
            }
        }
    }

    // (2) p ≤* q yields r ≤ p, r ≤ q with p ≤* r; the witness is a followed by p past the cutoff
    let mut w2 = None;
    let mut n2 = 0;
    for (p, q) in &pairs {
        if !g.le_star(p, q) {
            continue;
        }
        n2 += 1;
        let r = lower_bound(g, p, q);
        let ok = r.as_ref().is_some_and(|r| g.le(r, p) && g.le(r, q) && g.le_star(p, r));
        if !ok && w2.is_none() {
            w2 = Some(format!("no common refinement for {} and {}", gen_text(p, d), gen_text(q, d)));
        }
    }

    // (3) for a ≤-decreasing chain in the catalog, some catalog member is ≤* every link
    let mut chain: Vec<&SubspaceGen> = Vec::new();
    for p in subs {
        if chain.last().map_or(true, |l| g.le(p, l)) {
            chain.push(p);
        }
    }
    let diag = subs.iter().find(|s| chain.iter().all(|c| g.le(s, chain[0]) && g.le_star(s, c)));
    let r3 = PropertyResult {
        property: "diagonal".into(),
        status: if diag.is_some() { Status::Pass } else { Status::SearchBounded },
        checked: chain.len(),
        witness: diag.map(|s| gen_text(s, d)),
    };

    // (4) every point sequence extends ◁-legally below every subspace
    let mut w4 = None;
    let mut n4 = 0;
    let mut seqs = vec![g.base.clone()];
    for b in g.next_points(&g.base).into_iter().take(3) {
        seqs.push(b);
    }
    for b in &seqs {
        for p in subs {
            n4 += 1;
            let ok = g.next_points(b).iter().any(|c| g.triangle(c, p));
            if !ok && w4.is_none() {
                w4 = Some(format!("{} has no extension ◁ {}", encode_elem(b), gen_text(p, d)));
            }
        }
    }

    // (5) b ◁ p and p ≤ q give b ◁ q
    let mut w5 = None;
    let mut n5 = 0;
    for (p, q) in &pairs {
        if !g.le(p, q) {
            continue;
        }
        for b in &seqs {
            for c in g.next_points(b) {
                if g.triangle(&c, p) {
                    n5 += 1;
                    if !g.triangle(&c, q) && w5.is_none() {
                        w5 = Some(format!("{} ◁ {} but not ◁ {}", encode_elem(&c), gen_text(p, d), gen_text(q, d)));
                    }
                }
            }
        }
    }

    vec![
        result("le_implies_star", n1, w1),
        result("star_refines", n2, w2),
        r3,
        result("extends_below", n4, w4),
        result("triangle_upward", n5, w5),
    ]
}

/// `D = a ⌢ (p after the ≤* cutoff)`, below both `p` and `q` whenever `p ≤* q`.
fn lower_bound(g: &GowersSpace, p: &SubspaceGen, _q: &SubspaceGen) -> Option<SubspaceGen> {
    splice(&g.base, p, g.space.lh(&g.base) + STAR_SLACK).ok()
}

/// Result of the G6/G7 checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    pub g6_equivalence: PropertyResult,
    pub g6_star: PropertyResult,
    pub g7_paste: PropertyResult,
}

/// `[a,A] ⊆ [a,B]` by neighborhood containment: `A`'s points after `a` lie in `B`.
fn neighborhood_contained(a: &ARElem, big: &SubspaceGen, b: &SubspaceGen, depth: usize) -> bool {
    let d = crate::space::depth(&big.space, big, a).finite().unwrap_or(0);
    let r = big.space.approx(big, depth);
    (d..entries(&r)).all(|i| entry_in(&r, i, b))
}

/// The ◁ side: `r_n(A) ◁ B` for every `depth_A(a) < n ≤ depth`.
fn triangle_quantified(a: &ARElem, big: &SubspaceGen, b: &SubspaceGen, depth: usize) -> bool {
    let d = crate::space::depth(&big.space, big, a).finite().unwrap_or(0);
    (d + 1..=depth).all(|n| triangle(&big.space.approx(big, n), b))
}

/// G6 (both directions of (1), and (2) on shifted tails) and G7 pastes over pairs from `pool`.
pub fn check_g6_g7(a: &ARElem, top: &SubspaceGen, pool: &[SubspaceGen], depth: usize) -> Result<BridgeReport> {
    let space = top.space;
    require(space)?;
    let mut n6 = 0;
    let mut w6 = None;
    let mut n6s = 0;
    let mut w6s = None;
    let mut n7 = 0;
    let mut w7 = None;
    let members: Vec<SubspaceGen> = pool.iter().filter_map(|g| paste(a, g).ok()).collect();
    for big in &members {
        for b in &members {
            n6 += 1;
            let lhs = neighborhood_contained(a, big, b, depth);
            let rhs = triangle_quantified(a, big, b, depth);
            if lhs != rhs && w6.is_none() {
                w6 = Some(format!("{} vs {}: containment {lhs}, ◁ {rhs}", gen_text(big, depth), gen_text(b, depth)));
            }
            // (2): a shifted tail of A inside B gives A ≤*_a B
            let n0 = space.lh(a) + STAR_SLACK;
            if (n0 + 1..=depth).all(|n| triangle(&space.approx(big, n), b)) {
                n6s += 1;
                if !le_star(a, big, b, depth) && w6s.is_none() {
                    w6s = Some(format!("{} ◁ {} eventually but not ≤*", gen_text(big, depth), gen_text(b, depth)));
                }
            }
            // G7: B ≤ A, C = r_m(A) followed by B after a
            if !gle(b, big, depth) {
                continue;
            }
            let c = paste(a, b)?;
            for m in 1..depth {
                let sample = space.approx(big, m);
                if space.lh(&sample) <= space.lh(a) || !triangle(&sample, &c) {
                    continue;
                }
                n7 += 1;
                if !triangle(&sample, b) && w7.is_none() {
                    w7 = Some(format!("{} ◁ C but not ◁ {}", encode_elem(&sample), gen_text(b, depth)));
                }
            }
        }
    }
    Ok(BridgeReport {
        g6_equivalence: result("g6_equivalence", n6, w6),
        g6_star: result("g6_star", n6s, w6s),
        g7_paste: result("g7_paste", n7, w7),
    })
}

/// A point of the padded space: `None` is the extra point `0`.
pub type PaddedPoint<T> = Option<T>;

/// `f`: interleave zeros after each point.
pub fn f_interleave<T: Clone>(seq: &[T]) -> Vec<PaddedPoint<T>> {
    seq.iter().flat_map(|x| [Some(x.clone()), None]).collect()
}

/// `g`: keep the even positions.
pub fn g_project<T: Clone>(seq: &[T]) -> Vec<T> {
    seq.iter().step_by(2).cloned().collect()
}

/// `h`: the point components of alternating `(x_0, q_0, x_1, q_1, ...)`.
pub fn h_project<X: Clone, Q>(seq: &[(X, Q)]) -> Vec<X> {
    seq.iter().map(|(x, _)| x.clone()).collect()
}

/// `s ◀ P` in the padded space: odd positions are `0`, even positions are real points with `◁`.
pub fn padded_triangle(seq: &[PaddedPoint<ARElem>], p: &SubspaceGen) -> bool {
    let Some(last) = seq.last() else { return false };
    if seq.len() % 2 == 0 {
        return last.is_none();
    }
    last.as_ref().is_some_and(|b| triangle(b, p))
}

/// Padded Gowers space: the same catalog with the relation `◀`.
#[derive(Clone, Debug)]
pub struct PaddedSpace {
    pub inner: GowersSpace,
}

pub fn pad(g: &GowersSpace) -> PaddedSpace {
    PaddedSpace { inner: g.clone() }
}

impl PaddedSpace {
    pub fn triangle(&self, seq: &[PaddedPoint<ARElem>], p: &SubspaceGen) -> bool {
        padded_triangle(seq, p)
    }
}
