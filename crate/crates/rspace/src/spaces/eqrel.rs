//! Finite equivalence relations on initial segments `{0, ..., d-1}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Class labels in order of first appearance, so label `i` is the class whose
/// minimal representative is the `i`-th one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteEqRel {
    pub labels: Vec<u32>,
}

impl FiniteEqRel {
    /// Normalizes arbitrary labels.
    pub fn from_labels(raw: &[u32]) -> Self {
        let mut seen: Vec<u32> = Vec::new();
        let labels = raw
            .iter()
            .map(|l| match seen.iter().position(|s| s == l) {
                Some(i) => i as u32,
                None => {
                    seen.push(*l);
                    (seen.len() - 1) as u32
                }
            })
            .collect();
        FiniteEqRel { labels }
    }

    pub fn from_classes(domain: usize, classes: &[Vec<usize>]) -> Self {
        let mut raw = vec![u32::MAX; domain];
        for (c, members) in classes.iter().enumerate() {
            for &m in members {
                raw[m] = c as u32;
            }
        }
        Self::from_labels(&raw)
    }

    pub fn identity(domain: usize) -> Self {
        FiniteEqRel { labels: (0..domain as u32).collect() }
    }

    pub fn domain(&self) -> usize {
        self.labels.len()
    }

    pub fn classes(&self) -> usize {
        self.labels.iter().max().map(|m| *m as usize + 1).unwrap_or(0)
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    pub fn class_members(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.classes()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }

    pub fn is_normalized(&self) -> bool {
        let mut next = 0;
        for &l in &self.labels {
            if l > next {
                return false;
            }
            if l == next {
                next += 1;
            }
        }
        true
    }
}

/// Increasing minimal representatives `p_0 = 0 < p_1 < ...`.
pub fn min_reps(r: &FiniteEqRel) -> Vec<usize> {
    let mut out = Vec::new();
    let mut next = 0;
    for (i, &l) in r.labels.iter().enumerate() {
        if l == next {
            out.push(i);
            next += 1;
        }
    }
    out
}

/// `r_n`: restriction to `{0, ..., p_n - 1}`.
pub fn restrict(r: &FiniteEqRel, n: usize) -> FiniteEqRel {
    let reps = min_reps(r);
    let cut = if n < reps.len() { reps[n] } else { r.domain() };
    FiniteEqRel { labels: r.labels[..cut].to_vec() }
}

/// `a` is coarser than `b` on a common domain.
pub fn coarser(a: &FiniteEqRel, b: &FiniteEqRel) -> bool {
    if a.domain() != b.domain() {
        return false;
    }
    // each b-class must sit inside one a-class
    let mut image: Vec<Option<u32>> = vec![None; b.classes()];
    for i in 0..a.domain() {
        let slot = &mut image[b.labels[i] as usize];
        match slot {
            None => *slot = Some(a.labels[i]),
            Some(l) if *l != a.labels[i] => return false,
            _ => {}
        }
    }
    true
}

pub fn le_fin(a: &FiniteEqRel, b: &FiniteEqRel) -> bool {
    coarser(a, b)
}

/// Canonical text: classes as `|`-separated member lists, with the domain size.
pub fn encode_rel(r: &FiniteEqRel) -> String {
    let classes: Vec<String> = r
        .class_members()
        .iter()
        .map(|c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("{}[{}]", r.domain(), classes.join("|"))
}

pub fn parse_rel(s: &str) -> Result<FiniteEqRel> {
    let s = s.trim();
    let (d, rest) = s.split_once('[').ok_or_else(|| Error::Parse(format!("expected d[..], got {s}")))?;
    let domain: usize = d.trim().parse().map_err(|_| Error::Parse(format!("bad domain {d}")))?;
    let body = rest.strip_suffix(']').ok_or_else(|| Error::Parse(format!("missing ] in {s}")))?;
    let mut classes = Vec::new();
    for part in body.split('|').filter(|p| !p.trim().is_empty()) {
        let members: std::result::Result<Vec<usize>, _> =
            part.split(',').map(|m| m.trim().parse::<usize>()).collect();
        classes.push(members.map_err(|_| Error::Parse(format!("bad class {part}")))?);
    }
    let covered: usize = classes.iter().map(Vec::len).sum();
    if covered != domain || classes.iter().flatten().any(|&m| m >= domain) {
        return Err(Error::Parse(format!("classes do not partition {domain}: {s}")));
    }
    Ok(FiniteEqRel::from_classes(domain, &classes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_rep_examples() {
        assert_eq!(min_reps(&FiniteEqRel::identity(5)), vec![0, 1, 2, 3, 4]);
        let r = FiniteEqRel::from_classes(5, &[vec![0, 2], vec![1, 3, 4]]);
        assert_eq!(min_reps(&r), vec![0, 1]);
    }

    #[test]
    fn restriction_cuts_before_next_rep() {
        let r = FiniteEqRel::from_classes(5, &[vec![0, 2], vec![1], vec![3, 4]]);
        assert_eq!(restrict(&r, 2).domain(), 3);
        assert_eq!(restrict(&r, 0).domain(), 0);
        assert_eq!(restrict(&r, 3), r);
    }

    #[test]
    fn coarser_order() {
        let fine = FiniteEqRel::identity(3);
        let coarse = FiniteEqRel::from_classes(3, &[vec![0, 2], vec![1]]);
        assert!(le_fin(&coarse, &fine));
        assert!(!le_fin(&fine, &coarse));
        assert!(!le_fin(&FiniteEqRel::identity(2), &fine));
    }

    #[test]
    fn encoding_round_trip() {
        let r = FiniteEqRel::from_classes(4, &[vec![0, 3], vec![1, 2]]);
        assert_eq!(encode_rel(&r), "4[0,3|1,2]");
        assert_eq!(parse_rel("4[0,3|1,2]").unwrap(), r);
    }
}
