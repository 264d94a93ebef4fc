//! The product `R × 2^ω`: approximations carry a bit per level, bits are ignored by `≤_fin`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{is_initial, ARElem, Payload, Space, SubspaceGen, WSpace};
use crate::spaces::text::{encode_elem, parse_elem};
use crate::spaces::vector::{self, BlockVector, Field};

/// `(a, p)` with `|p| = lh(a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductAR {
    pub a: ARElem,
    pub bits: Vec<bool>,
}

/// A finite prefix followed by a constant bit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitStream {
    pub prefix: Vec<bool>,
    pub tail: bool,
}

impl BitStream {
    pub fn zeros() -> Self {
        BitStream { prefix: Vec::new(), tail: false }
    }

    pub fn constant(bit: bool) -> Self {
        BitStream { prefix: Vec::new(), tail: bit }
    }

    pub fn bit(&self, i: usize) -> bool {
        self.prefix.get(i).copied().unwrap_or(self.tail)
    }

    pub fn take(&self, n: usize) -> Vec<bool> {
        (0..n).map(|i| self.bit(i)).collect()
    }
}

/// `(A, u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProductGen {
    pub a: SubspaceGen,
    pub u: BitStream,
}

impl ProductGen {
    pub fn new(a: SubspaceGen, u: BitStream) -> Self {
        ProductGen { a, u }
    }
}

/// The product over one base space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProductSpace {
    pub base: Space,
}

impl ProductSpace {
    pub fn new(base: Space) -> Self {
        ProductSpace { base }
    }
}

impl WSpace for ProductSpace {
    type Elem = ProductAR;
    type Gen = ProductGen;

    fn label(&self) -> String {
        format!("product-{}", self.base.tag())
    }

    fn approx(&self, g: &ProductGen, n: usize) -> ProductAR {
        ProductAR { a: self.base.approx(&g.a, n), bits: g.u.take(n) }
    }

    fn bound(&self, g: &ProductGen) -> usize {
        g.a.bound
    }

    fn lh(&self, x: &ProductAR) -> usize {
        self.base.lh(&x.a)
    }

    fn truncate(&self, x: &ProductAR, n: usize) -> ProductAR {
        ProductAR { a: self.base.truncate(&x.a, n), bits: x.bits.iter().take(n).copied().collect() }
    }

    fn le_fin(&self, x: &ProductAR, y: &ProductAR) -> bool {
        product_le_fin(x, y)
    }

    fn ext_candidates(&self, x: &ProductAR, g: &ProductGen, depth: usize) -> Vec<ProductAR> {
        let n = self.base.lh(&x.a);
        let mut out = Vec::new();
        for c in self.base.ext_candidates(&x.a, &g.a, depth) {
            if self.base.lh(&c) != n + 1 {
                continue;
            }
            for bit in [false, true] {
                let mut bits = x.bits.clone();
                bits.push(bit);
                out.push(ProductAR { a: c.clone(), bits });
            }
        }
        out
    }

    fn is_approximation(&self, x: &ProductAR) -> bool {
        self.base.is_approximation(&x.a) && x.bits.len() == self.base.lh(&x.a)
    }
}

/// `(a,p) ≼_fin (b,q)` iff `a ≤_fin b`.
pub fn product_le_fin(x: &ProductAR, y: &ProductAR) -> bool {
    x.a.space.le_fin(&x.a, &y.a)
}

/// The first coordinate.
pub fn proj0(x: &ProductAR) -> &ARElem {
    &x.a
}

pub fn proj0_gen(g: &ProductGen) -> &SubspaceGen {
    &g.a
}

/// The biasymptotic set of the product: the last bit is `1`.
pub fn product_in_o(x: &ProductAR) -> bool {
    x.bits.last().copied().unwrap_or(false)
}

/// `1` iff `x ∈ Y`; only over fields with more than two elements.
pub fn delta(x: &BlockVector) -> Result<bool> {
    vector::in_y(x)
}

/// `a ⌢ (x_0, x_2, ...)` with `p ⌢ (δ(x_1), δ(x_3), ...)` for the entries `x_k` of `stem` after `a`.
/// Only complete pairs `(x_{2k}, x_{2k+1})` contribute, so both coordinates have equal length.
pub fn lambda(a: &ARElem, p: &[bool], stem: &ARElem) -> Result<ProductAR> {
    let Space::Vector { field } = a.space else { return Err(Error::WrongSpace(a.space.tag())) };
    if field == Field::Gf(2) {
        return Err(Error::WrongSpace("vector space over GF(2) has no biasymptotic point set".into()));
    }
    if stem.space != a.space {
        return Err(Error::MixedSpaces(a.space.tag(), stem.space.tag()));
    }
    let s = a.space;
    if p.len() != s.lh(a) {
        return Err(Error::Malformed(format!("{} bits for an approximation of length {}", p.len(), s.lh(a))));
    }
    if !is_initial(&s, a, stem) {
        return Err(Error::Malformed(format!("{} does not extend {}", encode_elem(stem), encode_elem(a))));
    }
    let (Payload::Vectors(base), Payload::Vectors(all)) = (&a.payload, &stem.payload) else {
        return Err(Error::WrongSpace(s.tag()));
    };
    let rest = &all[base.len()..];
    let mut vs = base.clone();
    let mut bits = p.to_vec();
    for pair in rest.chunks_exact(2) {
        vs.push(pair[0].clone());
        bits.push(delta(&pair[1])?);
    }
    Ok(ProductAR { a: ARElem::new(s, Payload::Vectors(vs)), bits })
}

/// `(base-text,bits)`, e.g. `(ellentuck:{0,2},10)`.
pub fn encode_product(x: &ProductAR) -> String {
    let bits: String = x.bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
    format!("({},{bits})", encode_elem(&x.a))
}

pub fn parse_product(s: &str) -> Result<ProductAR> {
    let bad = || Error::Parse(format!("not a product point: {s}"));
    let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (a, bits) = inner.rsplit_once(',').ok_or_else(bad)?;
    let bits = bits
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            _ => Err(bad()),
        })
        .collect::<Result<Vec<bool>>>()?;
    let a = parse_elem(a)?;
    let x = ProductAR { a, bits };
    if !ProductSpace::new(x.a.space).is_approximation(&x) {
        return Err(Error::Malformed(format!("bit string does not match the length of {}", encode_elem(&x.a))));
    }
    Ok(x)
}

/// The pool `(A, 0⃗)` together with `(A, 1⃗)` for each base generator.
pub fn product_pool(pool: &[SubspaceGen]) -> Vec<ProductGen> {
    pool.iter()
        .flat_map(|g| [ProductGen::new(g.clone(), BitStream::zeros()), ProductGen::new(g.clone(), BitStream::constant(true))])
        .collect()
}
