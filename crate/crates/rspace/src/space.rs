//! The weak-A2 space interface at finite truncation.
//!
//! A space supplies approximations `r_n`, their lengths, the finitization
//! quasi-order and a candidate enumerator for one-step extensions. Depth,
//! the truncated order `≤`, Ellentuck neighborhoods and the canonical
//! extension lists are derived from those primitives.

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::spaces::eqrel::FiniteEqRel;
use crate::spaces::fin::FinKElem;
use crate::spaces::tree::{FiniteStrongTree, UniformTree};
use crate::spaces::vector::{BlockVector, Field};
use crate::spaces::words::VarWord;

/// The eight example spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Space {
    Ellentuck,
    Fin { k: u8 },
    FinSigned { k: u8 },
    HalesJewett { letters: u8 },
    StrongTrees,
    CarlsonSimpson,
    Vector { field: Field },
    Singleton,
}

impl Space {
    /// Short tag used in element texts and on the command line.
    pub fn tag(&self) -> String {
        match self {
            Space::Ellentuck => "ellentuck".into(),
            Space::Fin { k } => format!("fin{k}"),
            Space::FinSigned { k } => format!("finpm{k}"),
            Space::HalesJewett { letters } => format!("hj{letters}"),
            Space::StrongTrees => "trees".into(),
            Space::CarlsonSimpson => "cs".into(),
            Space::Vector { field } => format!("vec-{}", field.tag()),
            Space::Singleton => "singleton".into(),
        }
    }

    pub fn from_tag(tag: &str) -> crate::Result<Space> {
        let bad = || crate::Error::Parse(format!("unknown space tag {tag}"));
        let num = |rest: &str| rest.parse::<u8>().ok().filter(|&n| n >= 1).ok_or_else(bad);
        Ok(match tag {
            "ellentuck" => Space::Ellentuck,
            "trees" => Space::StrongTrees,
            "cs" => Space::CarlsonSimpson,
            "singleton" => Space::Singleton,
            t if t.starts_with("finpm") => Space::FinSigned { k: num(&t[5..])? },
            t if t.starts_with("fin") => Space::Fin { k: num(&t[3..])? },
            t if t.starts_with("hj") => Space::HalesJewett { letters: num(&t[2..])? },
            t if t.starts_with("vec-") => Space::Vector { field: crate::spaces::vector::Field::from_tag(&t[4..])? },
            _ => return Err(bad()),
        })
    }

    /// Whether one-step extensions can be pushed to any prescribed depth.
    pub fn is_deep(&self) -> bool {
        !matches!(self, Space::Singleton)
    }
}

/// Space-specific finite structure of an approximation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Payload {
    Set(Vec<u32>),
    Blocks(Vec<FinKElem>),
    Words(Vec<VarWord>),
    Tree(FiniteStrongTree),
    Rel(FiniteEqRel),
    Vectors(Vec<BlockVector>),
    Unit(usize),
}

/// A finite approximation tagged by its space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ARElem {
    pub space: Space,
    pub payload: Payload,
}

impl ARElem {
    pub fn new(space: Space, payload: Payload) -> Self {
        ARElem { space, payload }
    }

    pub fn empty(space: Space) -> Self {
        let payload = match space {
            Space::Ellentuck => Payload::Set(Vec::new()),
            Space::Fin { .. } | Space::FinSigned { .. } => Payload::Blocks(Vec::new()),
            Space::HalesJewett { .. } => Payload::Words(Vec::new()),
            Space::StrongTrees => Payload::Tree(FiniteStrongTree::empty()),
            Space::CarlsonSimpson => Payload::Rel(FiniteEqRel::default()),
            Space::Vector { .. } => Payload::Vectors(Vec::new()),
            Space::Singleton => Payload::Unit(0),
        };
        ARElem { space, payload }
    }

    pub fn set(elems: &[u32]) -> Self {
        let mut v = elems.to_vec();
        v.sort_unstable();
        v.dedup();
        ARElem::new(Space::Ellentuck, Payload::Set(v))
    }
}

/// Depth of an approximation in a subspace; `Infinity` means "not found within the bound".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Depth {
    Finite(usize),
    Infinity,
}

impl Depth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Depth::Finite(n) => Some(n),
            Depth::Infinity => None,
        }
    }

    pub fn at_least(self, n: usize) -> bool {
        match self {
            Depth::Finite(d) => d >= n,
            Depth::Infinity => true,
        }
    }
}

/// Canonical tail rules for members of `R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Tail {
    /// `start, start + step, ...`
    Arithmetic { start: u32, step: u32 },
    /// `j`-th block is `templates[j mod q]` shifted by `start + j * stride`.
    Blocks { templates: Vec<FinKElem>, start: u32, stride: u32 },
    /// `j`-th word is `templates[j mod q]` right-padded with `fill` to one more
    /// than the total length before it (counting at least `prior`).
    Words { templates: Vec<VarWord>, fill: char, prior: usize },
    /// `j`-th vector is `templates[j mod q]` shifted by `start + j * stride`.
    Vectors { templates: Vec<BlockVector>, start: u32, stride: u32 },
    /// Cones of a uniform tree above the stem's terminal nodes.
    Tree(UniformTree),
    /// Blocks of `width` consecutive integers; elements whose block starts
    /// inside the stem domain join the stem class of the block start.
    Classes { width: u32 },
    Unit,
}

/// A finitely described member of `R`: a stem approximation plus a tail rule.
/// `bound` is the truncation horizon for every search over this generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceGen {
    pub space: Space,
    pub stem: ARElem,
    pub tail: Tail,
    pub bound: usize,
}

/// The primitives a weak-A2 space provides at finite truncation.
pub trait WSpace {
    type Elem: Clone + Eq + Ord + Hash + Debug;
    type Gen: Clone + Debug;

    fn label(&self) -> String;
    /// `r_n(A)`.
    fn approx(&self, g: &Self::Gen, n: usize) -> Self::Elem;
    fn bound(&self, g: &Self::Gen) -> usize;
    fn lh(&self, a: &Self::Elem) -> usize;
    /// `r_n(a)` for `n ≤ lh(a)`.
    fn truncate(&self, a: &Self::Elem, n: usize) -> Self::Elem;
    fn le_fin(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    /// A superset of the one-step extensions of `a` whose depth in `g` is at most `depth`.
    fn ext_candidates(&self, a: &Self::Elem, g: &Self::Gen, depth: usize) -> Vec<Self::Elem>;
    fn is_approximation(&self, a: &Self::Elem) -> bool;
}

/// `a ⊑ b`.
pub fn is_initial<S: WSpace>(s: &S, a: &S::Elem, b: &S::Elem) -> bool {
    s.lh(a) <= s.lh(b) && s.truncate(b, s.lh(a)) == *a
}

/// Least `n ≤ limit` with `a ≤_fin r_n(B)`.
pub fn depth_within<S: WSpace>(s: &S, b: &S::Gen, a: &S::Elem, limit: usize) -> Depth {
    (0..=limit).find(|&n| s.le_fin(a, &s.approx(b, n))).map(Depth::Finite).unwrap_or(Depth::Infinity)
}

pub fn depth<S: WSpace>(s: &S, b: &S::Gen, a: &S::Elem) -> Depth {
    depth_within(s, b, a, s.bound(b))
}

/// Truncated `A ≤ B`: every `r_n(A)` with `n ≤ check_depth` is `≤_fin r_m(B)` for some `m ≤ B.bound`.
pub fn le<S: WSpace>(s: &S, a: &S::Gen, b: &S::Gen, check_depth: usize) -> bool {
    let bb: Vec<S::Elem> = (0..=s.bound(b)).map(|m| s.approx(b, m)).collect();
    (0..=check_depth).all(|n| {
        let an = s.approx(a, n);
        bb.iter().any(|bm| s.le_fin(&an, bm))
    })
}

/// `r_{lh(a)+1}[a,A]` restricted to depth at most `ext_depth`, in canonical order.
pub fn one_step_exts<S: WSpace>(s: &S, a: &S::Elem, big: &S::Gen, ext_depth: usize) -> Vec<S::Elem> {
    let n = s.lh(a);
    let levels: Vec<S::Elem> = (0..=ext_depth).map(|m| s.approx(big, m)).collect();
    let mut out: Vec<S::Elem> = s
        .ext_candidates(a, big, ext_depth)
        .into_iter()
        .filter(|b| s.lh(b) == n + 1 && s.truncate(b, n) == *a && levels.iter().any(|r| s.le_fin(b, r)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `B ∈ [a,A]`, checked up to `check_depth`.
pub fn in_neighborhood<S: WSpace>(s: &S, a: &S::Elem, big: &S::Gen, b: &S::Gen, check_depth: usize) -> bool {
    s.approx(b, s.lh(a)) == *a && le(s, b, big, check_depth)
}
