//! The eight concrete spaces.

pub mod deep;
pub mod eqrel;
pub mod fin;
pub mod pools;
pub mod text;
pub mod tree;
pub mod vector;
pub mod words;

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::space::{ARElem, Payload, Space, SubspaceGen, Tail, WSpace};
use eqrel::FiniteEqRel;
use fin::FinKElem;
use tree::{FiniteStrongTree, UniformTree};
use vector::BlockVector;
use words::VarWord;

/// Cap on enumerated candidates for the tree and equivalence-relation spaces.
const CANDIDATE_CAP: usize = 50_000;

/// A point of a combinatorial span.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Point {
    Fin(FinKElem),
    Word(String),
    Vector(BlockVector),
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Fin(x) => f.write_str(&fin::encode_fin(x)),
            Point::Word(w) => f.write_str(w),
            Point::Vector(v) => f.write_str(&vector::encode_vector(v)),
        }
    }
}

/// `⟨a⟩` for the FIN spaces and the Hales–Jewett space.
pub fn comb_span(a: &ARElem) -> Result<BTreeSet<Point>> {
    match (&a.space, &a.payload) {
        (Space::Fin { k }, Payload::Blocks(b)) => Ok(fin::comb_span(b, *k, false).into_iter().map(Point::Fin).collect()),
        (Space::FinSigned { k }, Payload::Blocks(b)) => {
            Ok(fin::comb_span(b, *k, true).into_iter().map(Point::Fin).collect())
        }
        (Space::HalesJewett { letters }, Payload::Words(w)) => {
            Ok(words::comb_span(w, *letters).into_iter().map(Point::Word).collect())
        }
        _ => Err(Error::WrongSpace(format!("no combinatorial span for {}", a.space.tag()))),
    }
}

/// Membership in the biasymptotic point set `Y`.
pub fn in_y(p: &Point) -> Result<bool> {
    match p {
        Point::Fin(x) => Ok(fin::in_y_signed(x)),
        Point::Vector(v) => vector::in_y(v),
        Point::Word(_) => Err(Error::WrongSpace("Hales-Jewett space has no biasymptotic point set".into())),
    }
}

/// The last block of a sequence approximation as a point.
pub fn last_point(a: &ARElem) -> Option<Point> {
    match &a.payload {
        Payload::Blocks(b) => b.last().cloned().map(Point::Fin),
        Payload::Vectors(v) => v.last().cloned().map(Point::Vector),
        Payload::Words(w) => w.last().map(|x| Point::Word(x.word.clone())),
        _ => None,
    }
}

/// Membership of the last block in `Y`; defined for the signed FIN space and
/// vector spaces over fields with more than two elements.
pub fn last_in_y(a: &ARElem) -> Result<bool> {
    match a.space {
        Space::FinSigned { .. } | Space::Vector { .. } => {}
        s => return Err(Error::WrongSpace(format!("no biasymptotic set for {}", s.tag()))),
    }
    match last_point(a) {
        Some(p) => in_y(&p),
        None => {
            if let Space::Vector { field: vector::Field::Gf(2) } = a.space {
                return Err(Error::WrongSpace("vector space over GF(2) has no biasymptotic set".into()));
            }
            Ok(false)
        }
    }
}

/// Minimal class representatives of the first `n + 1` classes of a generator (or a finite relation).
pub fn min_reps_of_gen(g: &SubspaceGen, n: usize) -> Vec<usize> {
    let rel = cs_labels_until(g, n + 1);
    eqrel::min_reps(&rel)
}

impl SubspaceGen {
    pub fn new(stem: ARElem, tail: Tail, bound: usize) -> Self {
        SubspaceGen { space: stem.space, stem, tail, bound }
    }

    /// `{start, start + step, ...}` in the Ellentuck space.
    pub fn arithmetic(start: u32, step: u32, bound: usize) -> Self {
        Self::new(ARElem::empty(Space::Ellentuck), Tail::Arithmetic { start, step }, bound)
    }

    pub fn with_bound(&self, bound: usize) -> Self {
        SubspaceGen { bound, ..self.clone() }
    }
}

pub(crate) fn seq_tail_len(g: &SubspaceGen) -> usize {
    match &g.stem.payload {
        Payload::Set(s) => s.len(),
        Payload::Blocks(b) => b.len(),
        Payload::Words(w) => w.len(),
        Payload::Vectors(v) => v.len(),
        _ => 0,
    }
}

fn words_tail(templates: &[VarWord], fill: char, prior: usize, stem: &[VarWord], count: usize) -> Vec<VarWord> {
    let mut total = prior.max(stem.iter().map(VarWord::len).sum());
    let mut out = Vec::with_capacity(count);
    for j in 0..count {
        let t = &templates[j % templates.len()];
        let len = t.len().max(total + 1);
        let mut word = t.word.clone();
        word.extend(std::iter::repeat(fill).take(len - t.len()));
        total += len;
        out.push(VarWord { letters: t.letters, word });
    }
    out
}

/// Nodes of the generator tree up to length `max_len`.
pub(crate) fn tree_nodes(stem: &FiniteStrongTree, base: &UniformTree, max_len: usize) -> FiniteStrongTree {
    if stem.nodes.is_empty() {
        return FiniteStrongTree::new(base.cone(&[], max_len));
    }
    let mut nodes: BTreeSet<Vec<u32>> = stem.nodes.iter().filter(|s| s.len() <= max_len).cloned().collect();
    for t in stem.terminals() {
        if t.len() <= max_len {
            nodes.extend(base.cone(&t, max_len));
        }
    }
    FiniteStrongTree { nodes }
}

/// Lengths of the first `count` split levels of the generator tree.
pub(crate) fn tree_split_lengths(stem: &FiniteStrongTree, base: &UniformTree, count: usize) -> Vec<usize> {
    let mut lens: Vec<usize> = tree::split_levels(stem)
        .iter()
        .filter_map(|l| l.iter().next().map(Vec::len))
        .collect();
    let floor = stem.terminals().first().map(Vec::len).unwrap_or(0);
    let mut i = 0;
    while lens.len() < count {
        let l = base.split_len(i);
        if l >= floor {
            lens.push(l);
        }
        i += 1;
    }
    lens.truncate(count);
    lens
}

/// Labels of the generator relation on an initial segment containing at least `classes` classes.
fn cs_labels_until(g: &SubspaceGen, classes: usize) -> FiniteEqRel {
    let (Payload::Rel(stem), Tail::Classes { width }) = (&g.stem.payload, &g.tail) else {
        panic!("not a Carlson-Simpson generator");
    };
    let width = (*width).max(1) as usize;
    let d = stem.domain();
    let mut labels: Vec<u32> = stem.labels.clone();
    let mut next = stem.classes() as u32;
    let mut x = d;
    // stop right before the element that would open class number `classes`
    loop {
        let seen = labels.iter().max().map(|m| *m as usize + 1).unwrap_or(0);
        let block_start = x / width * width;
        let opens = !(block_start < d || block_start < x);
        if opens && seen >= classes {
            break;
        }
        if block_start < d {
            labels.push(stem.labels[block_start]);
        } else if block_start < x {
            labels.push(labels[block_start]);
        } else {
            labels.push(next);
            next += 1;
        }
        x += 1;
    }
    if stem.classes() >= classes {
        let cut = eqrel::min_reps(stem).get(classes).copied().unwrap_or(d);
        labels.truncate(cut);
    }
    FiniteEqRel::from_labels(&labels)
}

fn approx_gen(g: &SubspaceGen, n: usize) -> ARElem {
    let space = g.space;
    let stem_len = seq_tail_len(g);
    let need_tail = n.saturating_sub(stem_len);
    let payload = match (&g.stem.payload, &g.tail) {
        (Payload::Set(s), Tail::Arithmetic { start, step }) => {
            let mut v: Vec<u32> = s.iter().take(n).copied().collect();
            v.extend((0..need_tail as u32).map(|j| start + j * step));
            Payload::Set(v)
        }
        (Payload::Blocks(b), Tail::Blocks { templates, start, stride }) => {
            let mut v: Vec<FinKElem> = b.iter().take(n).cloned().collect();
            v.extend((0..need_tail as u32).map(|j| templates[j as usize % templates.len()].shifted(start + j * stride)));
            Payload::Blocks(v)
        }
        (Payload::Vectors(b), Tail::Vectors { templates, start, stride }) => {
            let mut v: Vec<BlockVector> = b.iter().take(n).cloned().collect();
            v.extend((0..need_tail as u32).map(|j| templates[j as usize % templates.len()].shifted(start + j * stride)));
            Payload::Vectors(v)
        }
        (Payload::Words(w), Tail::Words { templates, fill, prior }) => {
            let mut v: Vec<VarWord> = w.iter().take(n).cloned().collect();
            v.extend(words_tail(templates, *fill, *prior, w, need_tail));
            Payload::Words(v)
        }
        (Payload::Tree(stem), Tail::Tree(base)) => {
            if n == 0 {
                Payload::Tree(FiniteStrongTree::empty())
            } else {
                let lens = tree_split_lengths(stem, base, n + 1);
                let full = tree_nodes(stem, base, lens[n]);
                Payload::Tree(tree::restrict(&full, n))
            }
        }
        (Payload::Rel(_), Tail::Classes { .. }) => Payload::Rel(eqrel::restrict(&cs_labels_until(g, n), n)),
        (Payload::Unit(_), Tail::Unit) => Payload::Unit(n),
        _ => panic!("generator stem and tail rule disagree for {}", space.tag()),
    };
    ARElem::new(space, payload)
}

fn extend_seq(a: &ARElem, last: Payload) -> ARElem {
    let payload = match (&a.payload, last) {
        (Payload::Blocks(b), Payload::Blocks(x)) => Payload::Blocks(b.iter().chain(&x).cloned().collect()),
        (Payload::Vectors(b), Payload::Vectors(x)) => Payload::Vectors(b.iter().chain(&x).cloned().collect()),
        (Payload::Words(b), Payload::Words(x)) => Payload::Words(b.iter().chain(&x).cloned().collect()),
        _ => unreachable!("sequence payloads only"),
    };
    ARElem::new(a.space, payload)
}

fn tree_ext_candidates(a: &FiniteStrongTree, r: &FiniteStrongTree) -> Vec<FiniteStrongTree> {
    let ok_end = |u: &Vec<u32>| r.splits(u) || r.is_terminal(u);
    // (nodes kept below the new level, nodes that must split)
    let bases: Vec<(BTreeSet<Vec<u32>>, Vec<Vec<u32>>)> = if a.nodes.is_empty() {
        r.nodes
            .iter()
            .filter(|s| r.splits(s))
            .map(|s| ((0..=s.len()).map(|i| s[..i].to_vec()).collect(), vec![s.clone()]))
            .collect()
    } else {
        vec![(a.nodes.clone(), a.terminals())]
    };
    let mut out = Vec::new();
    for (kept, terms) in bases {
        let h = terms[0].len();
        let heights: BTreeSet<usize> = r.nodes.iter().filter(|u| u.len() > h && ok_end(u)).map(Vec::len).collect();
        for &height in &heights {
            // per terminal: list of alternative end-sets
            let mut per_term: Vec<Vec<Vec<Vec<u32>>>> = Vec::new();
            for s in &terms {
                let kids = r.children(s);
                let ends: Vec<Vec<Vec<u32>>> = kids
                    .iter()
                    .map(|&c| {
                        r.nodes
                            .iter()
                            .filter(|u| u.len() == height && u[..h] == s[..] && u[h] == c && ok_end(u))
                            .cloned()
                            .collect()
                    })
                    .collect();
                let mut options = Vec::new();
                for mask in 1u32..(1 << kids.len()) {
                    if mask.count_ones() < 2 {
                        continue;
                    }
                    let chosen: Vec<&Vec<Vec<u32>>> =
                        (0..kids.len()).filter(|&i| mask >> i & 1 == 1).map(|i| &ends[i]).collect();
                    if chosen.iter().any(|e| e.is_empty()) {
                        continue;
                    }
                    let mut combos: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
                    for e in chosen {
                        let mut next = Vec::new();
                        for c in &combos {
                            for u in e {
                                let mut c2 = c.clone();
                                c2.push(u.clone());
                                next.push(c2);
                                if next.len() > CANDIDATE_CAP {
                                    break;
                                }
                            }
                        }
                        combos = next;
                    }
                    options.extend(combos);
                }
                per_term.push(options);
            }
            let mut acc: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
            for options in &per_term {
                let mut next = Vec::new();
                'outer: for prefix in &acc {
                    for o in options {
                        let mut p = prefix.clone();
                        p.extend(o.iter().cloned());
                        next.push(p);
                        if next.len() >= CANDIDATE_CAP {
                            break 'outer;
                        }
                    }
                }
                acc = next;
            }
            for ends in acc {
                if ends.is_empty() {
                    continue;
                }
                let mut nodes = kept.clone();
                for u in &ends {
                    for i in 0..=u.len() {
                        nodes.insert(u[..i].to_vec());
                    }
                }
                out.push(FiniteStrongTree { nodes });
                if out.len() >= CANDIDATE_CAP {
                    return out;
                }
            }
        }
    }
    out
}

fn rel_ext_candidates(a: &FiniteEqRel, r: &FiniteEqRel) -> Vec<FiniteEqRel> {
    let d = a.domain();
    let reps = eqrel::min_reps(r);
    let Some(i0) = reps.iter().position(|&p| p == d) else { return Vec::new() };
    let n = a.classes() as u32;
    let mut out = Vec::new();
    for j in i0 + 1..=reps.len() {
        let e = if j < reps.len() { reps[j] } else { r.domain() };
        let free = j - i0 - 1;
        let mut assign = vec![0u32; free];
        loop {
            // class of each r-class label restricted to [0, e)
            let mut by_r: Vec<Option<u32>> = vec![None; r.classes()];
            for x in 0..d {
                by_r[r.labels[x] as usize] = Some(a.labels[x]);
            }
            by_r[r.labels[reps[i0]] as usize] = Some(n);
            for (t, &c) in assign.iter().enumerate() {
                by_r[r.labels[reps[i0 + 1 + t]] as usize] = Some(c);
            }
            let mut labels = a.labels.clone();
            let mut consistent = true;
            for x in d..e {
                match by_r[r.labels[x] as usize] {
                    Some(c) => labels.push(c),
                    None => {
                        consistent = false;
                        break;
                    }
                }
            }
            if consistent {
                out.push(FiniteEqRel::from_labels(&labels));
                if out.len() >= CANDIDATE_CAP {
                    return out;
                }
            }
            let mut i = 0;
            loop {
                if i == free {
                    break;
                }
                assign[i] += 1;
                if assign[i] <= n {
                    break;
                }
                assign[i] = 0;
                i += 1;
            }
            if i == free {
                break;
            }
        }
    }
    out
}

impl WSpace for Space {
    type Elem = ARElem;
    type Gen = SubspaceGen;

    fn label(&self) -> String {
        self.tag()
    }

    fn approx(&self, g: &SubspaceGen, n: usize) -> ARElem {
        approx_gen(g, n)
    }

    fn bound(&self, g: &SubspaceGen) -> usize {
        g.bound
    }

    fn lh(&self, a: &ARElem) -> usize {
        match &a.payload {
            Payload::Set(s) => s.len(),
            Payload::Blocks(b) => b.len(),
            Payload::Words(w) => w.len(),
            Payload::Tree(t) => tree::height(t),
            Payload::Rel(r) => r.classes(),
            Payload::Vectors(v) => v.len(),
            Payload::Unit(n) => *n,
        }
    }

    fn truncate(&self, a: &ARElem, n: usize) -> ARElem {
        let payload = match &a.payload {
            Payload::Set(s) => Payload::Set(s.iter().take(n).copied().collect()),
            Payload::Blocks(b) => Payload::Blocks(b.iter().take(n).cloned().collect()),
            Payload::Words(w) => Payload::Words(w.iter().take(n).cloned().collect()),
            Payload::Tree(t) => Payload::Tree(tree::restrict(t, n)),
            Payload::Rel(r) => Payload::Rel(eqrel::restrict(r, n)),
            Payload::Vectors(v) => Payload::Vectors(v.iter().take(n).cloned().collect()),
            Payload::Unit(m) => Payload::Unit(n.min(*m)),
        };
        ARElem::new(a.space, payload)
    }

    fn le_fin(&self, a: &ARElem, b: &ARElem) -> bool {
        assert_eq!(a.space, b.space, "mixed-space comparison");
        match (&a.payload, &b.payload) {
            (Payload::Set(x), Payload::Set(y)) => x.iter().all(|e| y.binary_search(e).is_ok()),
            (Payload::Blocks(x), Payload::Blocks(y)) => {
                fin::span_contained(x, y, matches!(a.space, Space::FinSigned { .. }))
            }
            (Payload::Words(x), Payload::Words(y)) => {
                let Space::HalesJewett { letters } = a.space else { unreachable!() };
                words::le_fin(x, y, letters)
            }
            (Payload::Tree(x), Payload::Tree(y)) => tree::le_fin(x, y),
            (Payload::Rel(x), Payload::Rel(y)) => eqrel::le_fin(x, y),
            (Payload::Vectors(x), Payload::Vectors(y)) => x.iter().all(|v| vector::span_membership(v, y)),
            (Payload::Unit(x), Payload::Unit(y)) => x == y,
            _ => panic!("payload does not match space"),
        }
    }

    fn ext_candidates(&self, a: &ARElem, g: &SubspaceGen, depth: usize) -> Vec<ARElem> {
        let r = approx_gen(g, depth);
        match (&a.payload, &r.payload) {
            (Payload::Set(s), Payload::Set(big)) => {
                let floor = s.last().copied();
                big.iter()
                    .filter(|&&x| floor.map_or(true, |m| x > m))
                    .map(|&x| {
                        let mut v = s.clone();
                        v.push(x);
                        ARElem::new(a.space, Payload::Set(v))
                    })
                    .collect()
            }
            (Payload::Blocks(s), Payload::Blocks(big)) => {
                let (k, signed) = match a.space {
                    Space::Fin { k } => (k, false),
                    Space::FinSigned { k } => (k, true),
                    _ => unreachable!(),
                };
                fin::comb_span(big, k, signed)
                    .into_iter()
                    .filter(|y| s.last().map_or(true, |l| l.precedes(y)))
                    .map(|y| extend_seq(a, Payload::Blocks(vec![y])))
                    .collect()
            }
            (Payload::Words(s), Payload::Words(big)) => {
                let Space::HalesJewett { letters } = a.space else { unreachable!() };
                let total: usize = s.iter().map(VarWord::len).sum();
                words::comb_span(big, letters)
                    .into_iter()
                    .filter(|w| w.chars().count() > total)
                    .map(|w| extend_seq(a, Payload::Words(vec![VarWord { letters, word: w }])))
                    .collect()
            }
            (Payload::Vectors(s), Payload::Vectors(big)) => {
                let Space::Vector { field } = a.space else { unreachable!() };
                vector::span_vectors(big, field)
                    .into_iter()
                    .filter(|y| s.last().map_or(true, |l| l.precedes(y)))
                    .map(|y| extend_seq(a, Payload::Vectors(vec![y])))
                    .collect()
            }
            (Payload::Tree(s), Payload::Tree(big)) => {
                tree_ext_candidates(s, big).into_iter().map(|t| ARElem::new(a.space, Payload::Tree(t))).collect()
            }
            (Payload::Rel(s), Payload::Rel(big)) => {
                rel_ext_candidates(s, big).into_iter().map(|t| ARElem::new(a.space, Payload::Rel(t))).collect()
            }
            (Payload::Unit(n), Payload::Unit(_)) => vec![ARElem::new(a.space, Payload::Unit(n + 1))],
            _ => Vec::new(),
        }
    }

    fn is_approximation(&self, a: &ARElem) -> bool {
        if a.space != *self {
            return false;
        }
        match (&a.payload, self) {
            (Payload::Set(s), Space::Ellentuck) => s.windows(2).all(|w| w[0] < w[1]),
            (Payload::Blocks(b), Space::Fin { k }) => {
                b.iter().all(|x| x.k == *k && x.is_valid(false)) && fin::is_block_sequence(b)
            }
            (Payload::Blocks(b), Space::FinSigned { k }) => {
                b.iter().all(|x| x.k == *k && x.is_valid(true)) && fin::is_block_sequence(b)
            }
            (Payload::Words(w), Space::HalesJewett { letters }) => {
                w.iter().all(|x| x.letters == *letters && x.is_valid()) && words::is_rapidly_increasing(w)
            }
            (Payload::Tree(t), Space::StrongTrees) => tree::is_approximation(t),
            (Payload::Rel(r), Space::CarlsonSimpson) => r.is_normalized(),
            (Payload::Vectors(v), Space::Vector { field }) => {
                v.iter().all(|x| x.field == *field) && vector::is_block_sequence(v)
            }
            (Payload::Unit(_), Space::Singleton) => true,
            _ => false,
        }
    }
}

/// Checks that a generator's stem is its own approximation at the stem length
/// and that approximations cohere up to the bound.
pub fn gen_is_coherent(g: &SubspaceGen) -> bool {
    let s = g.space;
    let stem_len = s.lh(&g.stem);
    if !s.is_approximation(&g.stem) || approx_gen(g, stem_len) != g.stem {
        return false;
    }
    let top = approx_gen(g, g.bound);
    s.is_approximation(&top)
        && s.lh(&top) == g.bound
        && (0..=g.bound).all(|n| s.truncate(&top, n) == approx_gen(g, n))
}
