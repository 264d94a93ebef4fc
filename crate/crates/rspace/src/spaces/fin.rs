//! Finitely supported maps for the block-sequence spaces `FIN_k` and `FIN_±k`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finitely supported map `N -> Z` with values bounded by `k` in absolute value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FinKElem {
    pub k: u8,
    pub entries: BTreeMap<u32, i32>,
}

impl FinKElem {
    pub fn new(k: u8, pairs: &[(u32, i32)]) -> Self {
        let entries = pairs.iter().copied().filter(|&(_, v)| v != 0).collect();
        FinKElem { k, entries }
    }

    /// Well-formedness for the unsigned (`signed = false`) or signed variant.
    pub fn is_valid(&self, signed: bool) -> bool {
        let k = self.k as i32;
        if self.entries.is_empty() {
            return false;
        }
        let in_range = self.entries.values().all(|&v| {
            v != 0 && if signed { v.abs() <= k } else { (1..=k).contains(&v) }
        });
        in_range && self.entries.values().any(|&v| v.abs() == k)
    }

    pub fn min_supp(&self) -> u32 {
        *self.entries.keys().next().expect("nonzero map")
    }

    pub fn max_supp(&self) -> u32 {
        *self.entries.keys().next_back().expect("nonzero map")
    }

    pub fn shifted(&self, by: u32) -> Self {
        FinKElem { k: self.k, entries: self.entries.iter().map(|(&p, &v)| (p + by, v)).collect() }
    }

    /// `x < y` in the block order.
    pub fn precedes(&self, other: &FinKElem) -> bool {
        self.max_supp() < other.min_supp()
    }

    /// Position of the first entry of absolute value `k`.
    pub fn peak_position(&self) -> Option<u32> {
        let k = self.k as i32;
        self.entries.iter().find(|(_, v)| v.abs() == k).map(|(&p, _)| p)
    }
}

fn step_toward_zero(v: i32, times: u32) -> i32 {
    let t = times as i32;
    if v > 0 {
        (v - t).max(0)
    } else {
        (v + t).min(0)
    }
}

fn tetris_map(entries: &BTreeMap<u32, i32>, times: u32) -> BTreeMap<u32, i32> {
    entries
        .iter()
        .map(|(&p, &v)| (p, step_toward_zero(v, times)))
        .filter(|&(_, v)| v != 0)
        .collect()
}

/// One tetris step. Returns `None` when every entry is annihilated.
///
/// The unsigned variant never holds negative entries, so moving toward zero
/// coincides with `max(x(n) - 1, 0)`; `signed` only documents intent.
pub fn tetris(x: &FinKElem, signed: bool) -> Option<FinKElem> {
    let _ = signed;
    let entries = tetris_map(&x.entries, 1);
    if entries.is_empty() {
        None
    } else {
        Some(FinKElem { k: x.k.saturating_sub(1), entries })
    }
}

/// Pointwise maximum of block-ordered maps (the supports are disjoint).
pub fn block_sum(x: &FinKElem, y: &FinKElem) -> Result<FinKElem> {
    if x.entries.is_empty() || y.entries.is_empty() || !x.precedes(y) {
        return Err(Error::NotBlockOrdered(format!("{} then {}", encode_fin(x), encode_fin(y))));
    }
    let mut entries = x.entries.clone();
    entries.extend(y.entries.iter().map(|(&p, &v)| (p, v)));
    Ok(FinKElem { k: x.k.max(y.k), entries })
}

/// Enumerates the combinatorial span of a block sequence.
///
/// Tetris powers run over `0..=k`; power `k` deletes the term. At least one
/// power must be zero, which also rules out the all-deleted combination.
pub fn comb_span(blocks: &[FinKElem], k: u8, signed: bool) -> BTreeSet<FinKElem> {
    let mut out = BTreeSet::new();
    let n = blocks.len();
    if n == 0 {
        return out;
    }
    let mut lambdas = vec![0u32; n];
    loop {
        if lambdas.iter().any(|&l| l == 0) {
            let parts: Vec<BTreeMap<u32, i32>> =
                blocks.iter().zip(&lambdas).map(|(b, &l)| tetris_map(&b.entries, l)).collect();
            let live: Vec<usize> = (0..n).filter(|&i| !parts[i].is_empty()).collect();
            let sign_patterns: u32 = if signed { 1 << live.len() } else { 1 };
            for mask in 0..sign_patterns {
                let mut entries = BTreeMap::new();
                for (j, &i) in live.iter().enumerate() {
                    let sign = if mask >> j & 1 == 1 { -1 } else { 1 };
                    entries.extend(parts[i].iter().map(|(&p, &v)| (p, sign * v)));
                }
                out.insert(FinKElem { k, entries });
            }
        }
        // odometer over {0..=k}^n
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            lambdas[i] += 1;
            if lambdas[i] <= k as u32 {
                break;
            }
            lambdas[i] = 0;
            i += 1;
        }
    }
}

/// Decides `x ∈ ⟨blocks⟩` by reading off one tetris power (and sign) per block.
pub fn in_comb_span(x: &FinKElem, blocks: &[FinKElem], signed: bool) -> bool {
    let k = blocks.first().map(|b| b.k).unwrap_or(x.k) as u32;
    let mut covered = 0usize;
    let mut some_zero = false;
    for b in blocks {
        let restricted: BTreeMap<u32, i32> = x
            .entries
            .range(b.min_supp()..=b.max_supp())
            .map(|(&p, &v)| (p, v))
            .collect();
        covered += restricted.len();
        let mut matched = false;
        for lambda in 0..=k {
            let t = tetris_map(&b.entries, lambda);
            let neg: BTreeMap<u32, i32> = t.iter().map(|(&p, &v)| (p, -v)).collect();
            if restricted == t || (signed && restricted == neg) {
                matched = true;
                if lambda == 0 {
                    some_zero = true;
                }
                break;
            }
        }
        if !matched {
            return false;
        }
    }
    covered == x.entries.len() && some_zero
}

/// `⟨a⟩ ⊆ ⟨b⟩` for block-ordered sequences: it suffices that each block of `a`
/// lies in `⟨b⟩`, since distinct blocks of `a` can never draw on the same block of `b`.
pub fn span_contained(a: &[FinKElem], b: &[FinKElem], signed: bool) -> bool {
    a.iter().all(|x| in_comb_span(x, b, signed))
}

/// Membership in the signed biasymptotic point set: the first entry of
/// absolute value `k` is `+k`.
pub fn in_y_signed(x: &FinKElem) -> bool {
    let k = x.k as i32;
    x.entries.values().find(|v| v.abs() == k).map(|&v| v == k).unwrap_or(false)
}

pub fn is_block_sequence(blocks: &[FinKElem]) -> bool {
    blocks.windows(2).all(|w| w[0].precedes(&w[1]))
}

/// Canonical text: sorted `pos:val` pairs.
pub fn encode_fin(x: &FinKElem) -> String {
    let body: Vec<String> = x.entries.iter().map(|(p, v)| format!("{p}:{v}")).collect();
    format!("{{{}}}", body.join(","))
}

pub fn parse_fin(k: u8, s: &str) -> Result<FinKElem> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {{pos:val,...}}, got {s}")))?;
    let mut entries = BTreeMap::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (p, v) = part.split_once(':').ok_or_else(|| Error::Parse(format!("bad pair {part}")))?;
        let p: u32 = p.trim().parse().map_err(|_| Error::Parse(format!("bad position {p}")))?;
        let v: i32 = v.trim().parse().map_err(|_| Error::Parse(format!("bad value {v}")))?;
        if v != 0 {
            entries.insert(p, v);
        }
    }
    Ok(FinKElem { k, entries })
}
