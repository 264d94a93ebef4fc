//! Subspaces all of whose one-step extensions sit deep in a given generator.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::space::{depth, ARElem, Payload, Space, SubspaceGen, Tail, WSpace};

use super::eqrel::{self, FiniteEqRel};
use super::tree::{self, FiniteStrongTree, Node};
use super::{seq_tail_len, tree_split_lengths, tree_nodes};

/// `B ∈ [a,A]` such that every `b ∈ r_{lh(a)+1}[a,B]` has `depth_A(b) ≥ n`.
pub fn deep_witness(big: &SubspaceGen, a: &ARElem, n: usize) -> Result<SubspaceGen> {
    let space = big.space;
    if a.space != space {
        return Err(Error::MixedSpaces(a.space.tag(), space.tag()));
    }
    if !space.is_deep() {
        return Err(Error::UnsupportedSpace(format!("{} is not deep", space.tag())));
    }
    let Some(d) = depth(&space, big, a).finite() else {
        return Err(Error::Malformed("approximation is not below the generator within its bound".into()));
    };
    match (&big.stem.payload, &big.tail) {
        (Payload::Tree(stem), Tail::Tree(base)) => tree_witness(big, stem, base, a, n),
        (Payload::Rel(_), Tail::Classes { .. }) => rel_witness(big, a, n.max(d + 1)),
        _ => seq_witness(big, a, n),
    }
}

/// Tail shift: keep `a` as the stem and continue with `A`'s entries from index `j0 ≥ n - 1`.
fn seq_witness(big: &SubspaceGen, a: &ARElem, n: usize) -> Result<SubspaceGen> {
    let from = n.saturating_sub(1).max(seq_tail_len(big));
    splice(a, big, from)
}

/// First index `j ≥ from` whose entry of `g` comes after `a`.
fn first_after(a: &ARElem, g: &SubspaceGen, from: usize) -> Result<usize> {
    let space = g.space;
    let stem_len = seq_tail_len(g);
    let mut j0 = from;
    loop {
        let next = space.approx(g, j0 + 1);
        let ok = match (&a.payload, &next.payload) {
            (Payload::Set(s), Payload::Set(v)) => s.last().map_or(true, |m| v[j0] > *m),
            (Payload::Blocks(s), Payload::Blocks(v)) => s.last().map_or(true, |m| m.precedes(&v[j0])),
            (Payload::Vectors(s), Payload::Vectors(v)) => s.last().map_or(true, |m| m.precedes(&v[j0])),
            (Payload::Words(s), Payload::Words(v)) => {
                j0 >= stem_len && words_total(g, &v[..j0], stem_len) >= s.iter().map(|w| w.len()).sum::<usize>()
            }
            _ => return Err(Error::WrongSpace(space.tag())),
        };
        if ok {
            return Ok(j0);
        }
        j0 += 1;
    }
}

/// `a` followed by the entries of `g` from the first index `≥ from` that comes after `a`.
pub fn splice(a: &ARElem, g: &SubspaceGen, from: usize) -> Result<SubspaceGen> {
    let space = g.space;
    let stem_len = seq_tail_len(g);
    let j0 = first_after(a, g, from)?;
    if j0 < stem_len {
        let rest = space.approx(g, stem_len);
        let stem = match (&a.payload, &rest.payload) {
            (Payload::Set(s), Payload::Set(v)) => Payload::Set(s.iter().chain(&v[j0..]).copied().collect()),
            (Payload::Blocks(s), Payload::Blocks(v)) => Payload::Blocks(s.iter().chain(&v[j0..]).cloned().collect()),
            (Payload::Vectors(s), Payload::Vectors(v)) => {
                Payload::Vectors(s.iter().chain(&v[j0..]).cloned().collect())
            }
            _ => return Err(Error::WrongSpace(space.tag())),
        };
        return Ok(SubspaceGen::new(ARElem::new(space, stem), g.tail.clone(), g.bound));
    }
    let t = (j0 - stem_len) as u32;
    let tail = match &g.tail {
        Tail::Arithmetic { start, step } => Tail::Arithmetic { start: start + t * step, step: *step },
        Tail::Blocks { templates, start, stride } => {
            let mut templates = templates.clone();
            let q = templates.len();
            templates.rotate_left(t as usize % q);
            Tail::Blocks { templates, start: start + t * stride, stride: *stride }
        }
        Tail::Vectors { templates, start, stride } => {
            let mut templates = templates.clone();
            let q = templates.len();
            templates.rotate_left(t as usize % q);
            Tail::Vectors { templates, start: start + t * stride, stride: *stride }
        }
        Tail::Words { templates, fill, .. } => {
            let mut templates = templates.clone();
            let q = templates.len();
            templates.rotate_left(t as usize % q);
            let Payload::Words(v) = space.approx(g, j0).payload else { unreachable!() };
            Tail::Words { templates, fill: *fill, prior: words_total(g, &v, stem_len) }
        }
        _ => return Err(Error::WrongSpace(space.tag())),
    };
    Ok(SubspaceGen::new(a.clone(), tail, g.bound))
}

/// The member of `[a, g]`-like shape that keeps `a` and continues as `g` does after `a`.
/// Trees and relations keep `g`'s tail rule when `a` is compatible with it.
pub fn paste(a: &ARElem, g: &SubspaceGen) -> Result<SubspaceGen> {
    if a.space != g.space {
        return Err(Error::MixedSpaces(a.space.tag(), g.space.tag()));
    }
    let space = g.space;
    match (&a.payload, &g.tail) {
        (Payload::Unit(_), Tail::Unit) => Ok(SubspaceGen::new(a.clone(), Tail::Unit, g.bound)),
        (Payload::Tree(_), Tail::Tree(_)) | (Payload::Rel(_), Tail::Classes { .. }) => {
            let cand = SubspaceGen::new(a.clone(), g.tail.clone(), g.bound);
            let n = space.lh(a);
            let below = (0..=n + 1).all(|k| (0..=g.bound.max(n + 1)).any(|m| space.le_fin(&space.approx(&cand, k), &space.approx(g, m))));
            if super::gen_is_coherent(&cand.with_bound(n + 1)) && below {
                Ok(cand)
            } else {
                Err(Error::Untranslatable(format!("{} does not continue inside the generator", super::text::encode_elem(a))))
            }
        }
        _ => splice(a, g, 0),
    }
}

/// The running length total a word tail rule sees after `v`.
fn words_total(big: &SubspaceGen, v: &[super::words::VarWord], stem_len: usize) -> usize {
    let Tail::Words { prior, .. } = &big.tail else { return 0 };
    let cut = stem_len.min(v.len());
    let stem_total: usize = v[..cut].iter().map(|w| w.len()).sum();
    let tail_total: usize = v[cut..].iter().map(|w| w.len()).sum();
    (*prior).max(stem_total) + tail_total
}

/// Above each terminal node of `a`, two nodes of split level `lvl` of `A` through
/// different children; for `a = ∅` one node of level `lvl` plus two such nodes above it.
fn tree_witness(
    big: &SubspaceGen,
    stem: &FiniteStrongTree,
    base: &tree::UniformTree,
    a: &ARElem,
    n: usize,
) -> Result<SubspaceGen> {
    let Payload::Tree(at) = &a.payload else { return Err(Error::WrongSpace(a.space.tag())) };
    // the stem's own levels plus its terminal level
    let stem_levels = if stem.nodes.is_empty() { 0 } else { tree::height(stem) + 1 };
    let mut lvl = if at.nodes.is_empty() { n.max(stem_levels).max(1) } else { (n + 1).max(stem_levels) };
    // the new terminals must lie strictly above a's own terminals
    let top = at.terminals().iter().map(|s| s.len()).max();
    while let Some(t) = top {
        if tree_split_lengths(stem, base, lvl + 1)[lvl - 1] > t {
            break;
        }
        lvl += 1;
    }
    let lens = tree_split_lengths(stem, base, lvl + 2);
    let full = tree_nodes(stem, base, lens[lvl]);
    let (prefix, terminals): (Vec<Node>, Vec<Node>) = if at.nodes.is_empty() {
        let u = full.nodes.iter().find(|s| s.len() == lens[lvl - 1]).cloned().expect("level is nonempty");
        (vec![u.clone()], vec![u])
    } else {
        (Vec::new(), at.terminals())
    };
    let target = if at.nodes.is_empty() { lens[lvl] } else { lens[lvl - 1] };
    let mut nodes: BTreeSet<Node> = at.nodes.clone();
    for p in &prefix {
        nodes.extend((0..=p.len()).map(|i| p[..i].to_vec()));
    }
    for s in &terminals {
        let kids = full.children(s);
        if kids.len() < 2 {
            return Err(Error::Malformed("terminal node does not split in the generator".into()));
        }
        for &c in &kids[..2] {
            let t = full
                .nodes
                .iter()
                .find(|u| u.len() == target && u[..s.len()] == s[..] && u[s.len()] == c)
                .cloned()
                .expect("strong tree continues through every child");
            nodes.extend((0..=t.len()).map(|i| t[..i].to_vec()));
        }
    }
    let b = ARElem::new(Space::StrongTrees, Payload::Tree(FiniteStrongTree { nodes }));
    Ok(SubspaceGen::new(b, Tail::Tree(base.clone()), big.bound))
}

/// `a`'s classes absorb the elements `A`-related to them; every other element
/// below `p_n(A)` goes to one new class.
fn rel_witness(big: &SubspaceGen, a: &ARElem, n: usize) -> Result<SubspaceGen> {
    let Payload::Rel(ar) = &a.payload else { return Err(Error::WrongSpace(a.space.tag())) };
    let Payload::Rel(stem) = &big.stem.payload else { unreachable!() };
    let n = n.max(stem.classes());
    let Payload::Rel(rn) = Space::CarlsonSimpson.approx(big, n + 1).payload else { unreachable!() };
    let cut = eqrel::min_reps(&rn)[n];
    let d = ar.domain();
    let fresh = ar.classes() as u32;
    let labels: Vec<u32> = (0..cut)
        .map(|x| {
            if x < d {
                return ar.labels[x];
            }
            match (0..d).find(|&y| rn.related(x, y)) {
                Some(y) => ar.labels[y],
                None => fresh,
            }
        })
        .collect();
    let b = ARElem::new(Space::CarlsonSimpson, Payload::Rel(FiniteEqRel::from_labels(&labels)));
    Ok(SubspaceGen::new(b, big.tail.clone(), big.bound))
}
