//! Block vectors over `GF(p)` (`p ≤ 7` prime) or the rationals.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Scalar = Ratio<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Gf(u8),
    Rational,
}

impl Field {
    pub fn is_supported(self) -> bool {
        matches!(self, Field::Rational | Field::Gf(2 | 3 | 5 | 7))
    }

    pub fn order(self) -> Option<u64> {
        match self {
            Field::Gf(p) => Some(p as u64),
            Field::Rational => None,
        }
    }

    pub fn tag(self) -> String {
        match self {
            Field::Gf(p) => format!("gf{p}"),
            Field::Rational => "q".to_string(),
        }
    }

    pub fn from_tag(tag: &str) -> Result<Field> {
        let field = match tag {
            "q" => Field::Rational,
            t => t
                .strip_prefix("gf")
                .and_then(|p| p.parse::<u8>().ok())
                .map(Field::Gf)
                .ok_or_else(|| Error::Parse(format!("unknown field tag {t}")))?,
        };
        if field.is_supported() {
            Ok(field)
        } else {
            Err(Error::Parse(format!("unsupported field {tag}")))
        }
    }

    pub fn reduce(self, x: Scalar) -> Scalar {
        match self {
            Field::Rational => x,
            Field::Gf(p) => {
                let p = p as i64;
                // x = n/d, represent as n * d^{-1} mod p
                let n = x.numer().rem_euclid(p);
                let d = x.denom().rem_euclid(p);
                Scalar::from_integer(n * mod_inverse(d, p) % p)
            }
        }
    }

    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        self.reduce(a + b)
    }

    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        self.reduce(a - b)
    }

    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        self.reduce(a * b)
    }

    pub fn inv(self, a: Scalar) -> Scalar {
        match self {
            Field::Rational => a.recip(),
            Field::Gf(p) => Scalar::from_integer(mod_inverse(a.to_integer().rem_euclid(p as i64), p as i64)),
        }
    }

    /// Scalars used when enumerating spans. Finite fields use every element;
    /// the rationals use a fixed sample.
    pub fn enumeration_scalars(self) -> Vec<Scalar> {
        match self {
            Field::Gf(p) => (0..p as i64).map(Scalar::from_integer).collect(),
            Field::Rational => vec![
                Scalar::zero(),
                Scalar::one(),
                Scalar::from_integer(-1),
                Scalar::from_integer(2),
                Scalar::new(1, 2),
            ],
        }
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    (1..p).find(|x| a * x % p == 1).unwrap_or(0)
}

/// A nonzero vector with finite support over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BlockVector {
    pub field: Field,
    pub coords: BTreeMap<u32, Scalar>,
}

impl Ord for BlockVector {
    /// Colexicographic: compare from the highest index down.
    fn cmp(&self, other: &Self) -> Ordering {
        let a = self.coords.iter().rev();
        let b = other.coords.iter().rev();
        self.field.cmp(&other.field).then_with(|| a.cmp(b))
    }
}

impl PartialOrd for BlockVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BlockVector {
    pub fn new(field: Field, pairs: &[(u32, Scalar)]) -> Self {
        let coords = pairs
            .iter()
            .map(|&(i, c)| (i, field.reduce(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        BlockVector { field, coords }
    }

    pub fn from_ints(field: Field, pairs: &[(u32, i64)]) -> Self {
        let pairs: Vec<(u32, Scalar)> = pairs.iter().map(|&(i, c)| (i, Scalar::from_integer(c))).collect();
        Self::new(field, &pairs)
    }

    pub fn basis(field: Field, n: u32) -> Self {
        Self::from_ints(field, &[(n, 1)])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn min_supp(&self) -> u32 {
        *self.coords.keys().next().expect("nonzero vector")
    }

    pub fn max_supp(&self) -> u32 {
        *self.coords.keys().next_back().expect("nonzero vector")
    }

    pub fn precedes(&self, other: &BlockVector) -> bool {
        self.max_supp() < other.min_supp()
    }

    pub fn shifted(&self, by: u32) -> Self {
        BlockVector { field: self.field, coords: self.coords.iter().map(|(&i, &c)| (i + by, c)).collect() }
    }

    pub fn scaled(&self, c: Scalar) -> Self {
        let pairs: Vec<(u32, Scalar)> = self.coords.iter().map(|(&i, &x)| (i, self.field.mul(x, c))).collect();
        Self::new(self.field, &pairs)
    }

    pub fn plus(&self, other: &BlockVector) -> Self {
        let mut coords = self.coords.clone();
        for (&i, &c) in &other.coords {
            let v = self.field.add(coords.get(&i).copied().unwrap_or_else(Scalar::zero), c);
            coords.insert(i, v);
        }
        coords.retain(|_, c| !c.is_zero());
        BlockVector { field: self.field, coords }
    }
}

impl fmt::Display for BlockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&encode_vector(self))
    }
}

pub fn is_block_sequence(vs: &[BlockVector]) -> bool {
    vs.iter().all(|v| !v.is_zero()) && vs.windows(2).all(|w| w[0].precedes(&w[1]))
}

/// Exact membership of `x` in the linear span of `gens` by Gaussian elimination.
pub fn span_membership(x: &BlockVector, gens: &[BlockVector]) -> bool {
    let field = x.field;
    let mut rows: BTreeSet<u32> = x.coords.keys().copied().collect();
    for g in gens {
        rows.extend(g.coords.keys().copied());
    }
    let rows: Vec<u32> = rows.into_iter().collect();
    let cols = gens.len();
    // augmented matrix: one row per coordinate
    let mut m: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| {
            let mut row: Vec<Scalar> =
                gens.iter().map(|g| g.coords.get(r).copied().unwrap_or_else(Scalar::zero)).collect();
            row.push(x.coords.get(r).copied().unwrap_or_else(Scalar::zero));
            row
        })
        .collect();
    let mut pivot_row = 0;
    for c in 0..cols {
        let Some(p) = (pivot_row..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(pivot_row, p);
        let inv = field.inv(m[pivot_row][c]);
        for j in c..=cols {
            m[pivot_row][j] = field.mul(m[pivot_row][j], inv);
        }
        for r in 0..m.len() {
            if r != pivot_row && !m[r][c].is_zero() {
                let factor = m[r][c];
                for j in c..=cols {
                    let sub = field.mul(factor, m[pivot_row][j]);
                    m[r][j] = field.sub(m[r][j], sub);
                }
            }
        }
        pivot_row += 1;
    }
    // inconsistent iff some zero row has a nonzero right-hand side
    m[pivot_row..].iter().all(|row| row[cols].is_zero())
}

/// Nonzero vectors of the span, using the field's enumeration scalars, in canonical order.
pub fn span_vectors(gens: &[BlockVector], field: Field) -> Vec<BlockVector> {
    let scalars = field.enumeration_scalars();
    let mut out = BTreeSet::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let mut v = BlockVector { field, coords: BTreeMap::new() };
        for (g, &c) in gens.iter().zip(&choice) {
            if !scalars[c].is_zero() {
                v = v.plus(&g.scaled(scalars[c]));
            }
        }
        if !v.is_zero() {
            out.insert(v);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out.into_iter().collect();
            }
            choice[i] += 1;
            if choice[i] < scalars.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Membership in the biasymptotic point set: leading coefficient `1` and a
/// nonzero tail beyond it. Only defined over fields with more than two elements.
pub fn in_y(x: &BlockVector) -> Result<bool> {
    if x.field == Field::Gf(2) {
        return Err(Error::WrongSpace("vector space over GF(2) has no biasymptotic point set".into()));
    }
    let mut it = x.coords.iter();
    let leading_one = it.next().map(|(_, c)| c.is_one()).unwrap_or(false);
    Ok(leading_one && it.next().is_some())
}

fn encode_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text: `field:{index:coeff,...}`.
pub fn encode_vector(v: &BlockVector) -> String {
    let body: Vec<String> = v.coords.iter().map(|(i, c)| format!("{i}:{}", encode_scalar(c))).collect();
    format!("{}:{{{}}}", v.field.tag(), body.join(","))
}

fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Parse(format!("bad coefficient {s}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let d: i64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Scalar::new(n, d))
        }
        None => Ok(Scalar::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

/// Parses `{index:coeff,...}` over a known field.
pub fn parse_vector_body(field: Field, s: &str) -> Result<BlockVector> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {{index:coeff,...}}, got {s}")))?;
    let mut pairs = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (i, c) = part.split_once(':').ok_or_else(|| Error::Parse(format!("bad pair {part}")))?;
        let i: u32 = i.trim().parse().map_err(|_| Error::Parse(format!("bad index {i}")))?;
        pairs.push((i, parse_scalar(c)?));
    }
    Ok(BlockVector::new(field, &pairs))
}

/// Parses `field:{index:coeff,...}`.
pub fn parse_vector(s: &str) -> Result<BlockVector> {
    let (tag, body) = s.trim().split_once(':').ok_or_else(|| Error::Parse(format!("missing field tag in {s}")))?;
    parse_vector_body(Field::from_tag(tag)?, body)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, pairs: &[(u32, i64)]) -> BlockVector {
        BlockVector::from_ints(field, pairs)
    }

    #[test]
    fn membership_examples() {
        let gf2 = Field::Gf(2);
        assert!(span_membership(&v(gf2, &[(0, 1), (1, 1)]), &[v(gf2, &[(0, 1)]), v(gf2, &[(1, 1)])]));
        let gf3 = Field::Gf(3);
        assert!(!span_membership(&v(gf3, &[(0, 1)]), &[v(gf3, &[(0, 1), (1, 1)])]));
        let q = Field::Rational;
        let half = BlockVector::new(q, &[(0, Scalar::new(1, 2))]);
        assert!(span_membership(&half, &[v(q, &[(0, 1)])]));
    }

    #[test]
    fn gf2_span_order() {
        let gf2 = Field::Gf(2);
        let span = span_vectors(&[v(gf2, &[(0, 1)]), v(gf2, &[(1, 1)])], gf2);
        assert_eq!(span, vec![v(gf2, &[(0, 1)]), v(gf2, &[(1, 1)]), v(gf2, &[(0, 1), (1, 1)])]);
    }

    #[test]
    fn y_membership() {
        let gf3 = Field::Gf(3);
        assert!(in_y(&v(gf3, &[(1, 1), (4, 1)])).unwrap());
        assert!(!in_y(&v(gf3, &[(1, 2), (4, 1)])).unwrap());
        assert!(!in_y(&v(gf3, &[(2, 1)])).unwrap());
        assert!(in_y(&v(Field::Gf(2), &[(0, 1), (1, 1)])).is_err());
    }

    #[test]
    fn finite_field_arithmetic() {
        let f = Field::Gf(7);
        for a in 1..7 {
            let x = Scalar::from_integer(a);
            assert_eq!(f.mul(x, f.inv(x)), Scalar::one());
        }
        assert_eq!(Field::Gf(3).reduce(Scalar::from_integer(-1)), Scalar::from_integer(2));
    }

    #[test]
    fn encoding_round_trip() {
        let x = BlockVector::new(Field::Rational, &[(0, Scalar::new(1, 2)), (3, Scalar::from_integer(-2))]);
        assert_eq!(encode_vector(&x), "q:{0:1/2,3:-2}");
        assert_eq!(parse_vector("q:{0:1/2,3:-2}").unwrap(), x);
        assert_eq!(parse_vector("gf3:{1:4}").unwrap(), v(Field::Gf(3), &[(1, 1)]));
    }
}
