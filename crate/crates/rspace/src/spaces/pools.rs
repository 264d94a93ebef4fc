//! Seeded catalogs of generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::space::{ARElem, Payload, Space, SubspaceGen, Tail};

use super::eqrel::FiniteEqRel;
use super::fin::FinKElem;
use super::tree::UniformTree;
use super::vector::{BlockVector, Field, Scalar};
use super::words::{alphabet, VarWord, VAR};

/// Truncation horizon used by the standard pools.
pub fn default_bound(space: Space) -> usize {
    match space {
        Space::Ellentuck => 8,
        Space::Fin { k } | Space::FinSigned { k } if k > 2 => 4,
        Space::Fin { .. } | Space::FinSigned { .. } => 5,
        Space::HalesJewett { .. } => 4,
        Space::StrongTrees => 3,
        Space::CarlsonSimpson => 5,
        Space::Vector { field: Field::Gf(p) } if p <= 3 => 5,
        Space::Vector { .. } => 4,
        Space::Singleton => 4,
    }
}

/// The canonical largest member: `N`, unit blocks, `v, va, vaaa, ...`, the full
/// tree over `{0,1}`, the identity relation, the standard basis.
pub fn top_gen(space: Space, bound: usize) -> SubspaceGen {
    let stem = ARElem::empty(space);
    let tail = match space {
        Space::Ellentuck => Tail::Arithmetic { start: 0, step: 1 },
        Space::Fin { k } | Space::FinSigned { k } => {
            Tail::Blocks { templates: vec![FinKElem::new(k, &[(0, k as i32)])], start: 0, stride: 1 }
        }
        Space::HalesJewett { letters } => {
            Tail::Words { templates: vec![VarWord::new(letters, "v")], fill: alphabet(letters)[0], prior: 0 }
        }
        Space::StrongTrees => Tail::Tree(UniformTree { split_start: 0, split_step: 1, children: vec![0, 1], fill: 0 }),
        Space::CarlsonSimpson => Tail::Classes { width: 1 },
        Space::Vector { field } => Tail::Vectors { templates: vec![BlockVector::basis(field, 0)], start: 0, stride: 1 },
        Space::Singleton => Tail::Unit,
    };
    SubspaceGen::new(stem, tail, bound)
}

pub fn evens(bound: usize) -> SubspaceGen {
    SubspaceGen::arithmetic(0, 2, bound)
}

pub fn odds(bound: usize) -> SubspaceGen {
    SubspaceGen::arithmetic(1, 2, bound)
}

pub fn naturals(bound: usize) -> SubspaceGen {
    SubspaceGen::arithmetic(0, 1, bound)
}

fn random_fin(rng: &mut ChaCha8Rng, k: u8, signed: bool, width: u32) -> FinKElem {
    let mut pairs: Vec<(u32, i32)> = Vec::new();
    for p in 0..width {
        let v = rng.gen_range(0..=k as i32);
        if v > 0 {
            let sign = if signed && rng.gen_bool(0.5) { -1 } else { 1 };
            pairs.push((p, sign * v));
        }
    }
    let peak = rng.gen_range(0..width);
    let sign = if signed && rng.gen_bool(0.5) { -1 } else { 1 };
    pairs.retain(|(p, _)| *p != peak);
    pairs.push((peak, sign * k as i32));
    FinKElem::new(k, &pairs)
}

fn random_scalar(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    match field {
        Field::Gf(p) => Scalar::from_integer(rng.gen_range(1..p as i64)),
        Field::Rational => {
            let nonzero: Vec<Scalar> =
                field.enumeration_scalars().into_iter().filter(|c| *c != Scalar::from_integer(0)).collect();
            *nonzero.choose(rng).unwrap()
        }
    }
}

fn random_vector(rng: &mut ChaCha8Rng, field: Field, width: u32) -> BlockVector {
    let mut pairs = Vec::new();
    for i in 0..width {
        if rng.gen_bool(0.5) {
            pairs.push((i, random_scalar(rng, field)));
        }
    }
    if pairs.is_empty() {
        pairs.push((rng.gen_range(0..width), random_scalar(rng, field)));
    }
    BlockVector::new(field, &pairs)
}

fn random_word(rng: &mut ChaCha8Rng, letters: u8) -> VarWord {
    let alpha = alphabet(letters);
    let len = rng.gen_range(1..=3);
    let mut w: Vec<char> = (0..len)
        .map(|_| if rng.gen_bool(0.4) { VAR } else { *alpha.choose(rng).unwrap() })
        .collect();
    if !w.contains(&VAR) {
        let i = rng.gen_range(0..len);
        w[i] = VAR;
    }
    VarWord { letters, word: w.into_iter().collect() }
}

fn random_gen(space: Space, rng: &mut ChaCha8Rng, bound: usize) -> SubspaceGen {
    match space {
        Space::Ellentuck => {
            let start = rng.gen_range(0..6);
            let step = rng.gen_range(1..4);
            let stem_len = rng.gen_range(0..=2usize);
            let stem: Vec<u32> = (0..stem_len as u32).map(|i| i * 2 + rng.gen_range(0..2)).collect();
            let floor = stem.last().map(|m| m + 1).unwrap_or(0);
            SubspaceGen::new(ARElem::set(&stem), Tail::Arithmetic { start: start + floor * 2, step }, bound)
        }
        Space::Fin { k } | Space::FinSigned { k } => {
            let signed = matches!(space, Space::FinSigned { .. });
            let width = rng.gen_range(1..=2);
            let q = rng.gen_range(1..=2);
            let templates = (0..q).map(|_| random_fin(rng, k, signed, width)).collect();
            let start = rng.gen_range(0..3);
            let stride = width + rng.gen_range(0..2);
            SubspaceGen::new(ARElem::empty(space), Tail::Blocks { templates, start, stride }, bound)
        }
        Space::HalesJewett { letters } => {
            let q = rng.gen_range(1..=2);
            let templates = (0..q).map(|_| random_word(rng, letters)).collect();
            let fill = *alphabet(letters).choose(rng).unwrap();
            let prior = rng.gen_range(0..2);
            SubspaceGen::new(ARElem::empty(space), Tail::Words { templates, fill, prior }, bound)
        }
        Space::StrongTrees => {
            let mut children: Vec<u32> = vec![0, 1, 2];
            children.shuffle(rng);
            children.truncate(rng.gen_range(2..=3));
            children.sort_unstable();
            let base = UniformTree {
                split_start: rng.gen_range(0..2),
                split_step: rng.gen_range(1..=2),
                children,
                fill: rng.gen_range(0..3),
            };
            SubspaceGen::new(ARElem::empty(space), Tail::Tree(base), bound)
        }
        Space::CarlsonSimpson => {
            let width = rng.gen_range(1..=3u32);
            let blocks = rng.gen_range(0..=2u32);
            let d = (blocks * width) as usize;
            let mut raw = Vec::with_capacity(d);
            for x in 0..d {
                raw.push(if x == 0 { 0 } else { rng.gen_range(0..=x as u32) });
            }
            let stem = ARElem::new(space, Payload::Rel(FiniteEqRel::from_labels(&raw)));
            SubspaceGen::new(stem, Tail::Classes { width }, bound)
        }
        Space::Vector { field } => {
            let width = rng.gen_range(1..=2);
            let q = rng.gen_range(1..=2);
            let templates = (0..q).map(|_| random_vector(rng, field, width)).collect();
            let start = rng.gen_range(0..3);
            let stride = width + rng.gen_range(0..2);
            SubspaceGen::new(ARElem::empty(space), Tail::Vectors { templates, start, stride }, bound)
        }
        Space::Singleton => top_gen(space, bound),
    }
}

/// `size` generators: the top generator first, then seeded random ones.
pub fn standard_pool(space: Space, size: usize, seed: u64) -> Vec<SubspaceGen> {
    let bound = default_bound(space);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_0000);
    let mut out = vec![top_gen(space, bound)];
    if space == Space::Ellentuck && size > 1 {
        out.push(evens(bound));
        out.push(odds(bound));
    }
    while out.len() < size {
        out.push(random_gen(space, &mut rng, bound));
    }
    out.truncate(size.max(1));
    out
}


/// One instance of each example space: Ellentuck, FIN_2, FIN_±2, Hales–Jewett over two
/// letters, strong subtrees, Carlson–Simpson, GF(2) vectors and the singleton.
pub fn example_spaces() -> Vec<Space> {
    vec![
        Space::Ellentuck,
        Space::Fin { k: 2 },
        Space::FinSigned { k: 2 },
        Space::HalesJewett { letters: 2 },
        Space::StrongTrees,
        Space::CarlsonSimpson,
        Space::Vector { field: Field::Gf(2) },
        Space::Singleton,
    ]
}
