//! Finite strong subtrees of `ω^{<ω}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Node = Vec<u32>;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FiniteStrongTree {
    pub nodes: BTreeSet<Node>,
}

impl FiniteStrongTree {
    pub fn new(nodes: impl IntoIterator<Item = Node>) -> Self {
        FiniteStrongTree { nodes: nodes.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.nodes.contains(s)
    }

    pub fn children(&self, s: &[u32]) -> Vec<u32> {
        let mut lo = s.to_vec();
        lo.push(0);
        self.nodes
            .range(lo..)
            .take_while(|t| t.len() > s.len() && t[..s.len()] == *s)
            .filter(|t| t.len() == s.len() + 1)
            .map(|t| t[s.len()])
            .collect()
    }

    pub fn splits(&self, s: &[u32]) -> bool {
        self.children(s).len() >= 2
    }

    pub fn is_terminal(&self, s: &[u32]) -> bool {
        self.children(s).is_empty()
    }

    pub fn terminals(&self) -> Vec<Node> {
        self.nodes.iter().filter(|s| self.is_terminal(s)).cloned().collect()
    }

    /// Number of splitting proper initial segments of `s`.
    pub fn splitting_below(&self, s: &[u32]) -> usize {
        (0..s.len()).filter(|&i| self.splits(&s[..i])).count()
    }

    /// Prefix-closed and nonempty (or empty).
    pub fn is_tree(&self) -> bool {
        self.nodes.iter().all(|s| s.is_empty() || self.nodes.contains(&s[..s.len() - 1]))
            && (self.nodes.is_empty() || self.nodes.contains(&Vec::new()))
    }

    /// Same-length nodes split together and terminal nodes are aligned.
    pub fn is_strong(&self) -> bool {
        if !self.is_tree() {
            return false;
        }
        let mut by_len: BTreeMap<usize, Vec<&Node>> = BTreeMap::new();
        for s in &self.nodes {
            by_len.entry(s.len()).or_default().push(s);
        }
        for nodes in by_len.values() {
            let split: Vec<bool> = nodes.iter().map(|s| self.splits(s)).collect();
            if split.iter().any(|&b| b != split[0]) {
                return false;
            }
        }
        // aligned terminals plus simultaneous splitting leave no dead branches
        let max_len = by_len.keys().next_back().copied().unwrap_or(0);
        self.terminals().iter().all(|t| t.len() == max_len)
    }
}

/// Level `n` (index `n - 1`) holds the splitting nodes with exactly `n - 1`
/// splitting proper predecessors.
pub fn split_levels(t: &FiniteStrongTree) -> Vec<BTreeSet<Node>> {
    let mut levels: Vec<BTreeSet<Node>> = Vec::new();
    for s in &t.nodes {
        if t.splits(s) {
            let n = t.splitting_below(s);
            if levels.len() <= n {
                levels.resize(n + 1, BTreeSet::new());
            }
            levels[n].insert(s.clone());
        }
    }
    while levels.last().map(|l| l.is_empty()).unwrap_or(false) {
        levels.pop();
    }
    levels
}

pub fn height(t: &FiniteStrongTree) -> usize {
    split_levels(t).iter().filter(|l| !l.is_empty()).count()
}

/// `r_n` on a finite tree: empty for `n = 0`, otherwise the nodes with at most
/// `n` splitting proper predecessors.
pub fn restrict(t: &FiniteStrongTree, n: usize) -> FiniteStrongTree {
    if n == 0 {
        return FiniteStrongTree::empty();
    }
    FiniteStrongTree { nodes: t.nodes.iter().filter(|s| t.splitting_below(s) <= n).cloned().collect() }
}

/// `a ⊆ b` and every terminal node of `a` splits in `b` or is terminal in `b`.
pub fn le_fin(a: &FiniteStrongTree, b: &FiniteStrongTree) -> bool {
    a.nodes.is_subset(&b.nodes) && a.terminals().iter().all(|s| b.splits(s) || b.is_terminal(s))
}

/// A finite tree is an approximation when it is empty, or strong with height
/// at least one and equal to its own top restriction.
pub fn is_approximation(t: &FiniteStrongTree) -> bool {
    if t.nodes.is_empty() {
        return true;
    }
    let h = height(t);
    h >= 1 && t.is_strong() && restrict(t, h) == *t && t.terminals().iter().all(|s| t.splitting_below(s) == h)
}

/// Uniform strong tree: nodes of length `ℓ` choose a child from `children` when
/// `ℓ` is a split length and `fill` otherwise. Split lengths are
/// `start, start + step, ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UniformTree {
    pub split_start: u32,
    pub split_step: u32,
    pub children: Vec<u32>,
    pub fill: u32,
}

impl UniformTree {
    pub fn is_split_len(&self, len: usize) -> bool {
        let len = len as u32;
        len >= self.split_start && (len - self.split_start) % self.split_step.max(1) == 0
    }

    /// Length of the `i`-th split level (0-based).
    pub fn split_len(&self, i: usize) -> usize {
        (self.split_start + self.split_step.max(1) * i as u32) as usize
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        s.iter().enumerate().all(|(i, &c)| if self.is_split_len(i) { self.children.contains(&c) } else { c == self.fill })
    }

    /// Nodes of the tree extending `from` with length at most `max_len`.
    pub fn cone(&self, from: &[u32], max_len: usize) -> Vec<Node> {
        let mut out = vec![from.to_vec()];
        let mut frontier = vec![from.to_vec()];
        while let Some(s) = frontier.pop() {
            if s.len() >= max_len {
                continue;
            }
            let options: Vec<u32> = if self.is_split_len(s.len()) { self.children.clone() } else { vec![self.fill] };
            for c in options {
                let mut t = s.clone();
                t.push(c);
                out.push(t.clone());
                frontier.push(t);
            }
        }
        out
    }
}

/// Canonical text: nodes as dotted sequences, root written `()`.
pub fn encode_tree(t: &FiniteStrongTree) -> String {
    let body: Vec<String> = t
        .nodes
        .iter()
        .map(|s| if s.is_empty() { "()".to_string() } else { s.iter().map(u32::to_string).collect::<Vec<_>>().join(".") })
        .collect();
    format!("{{{}}}", body.join(","))
}

pub fn parse_tree(s: &str) -> Result<FiniteStrongTree> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| Error::Parse(format!("expected {{node,...}}, got {s}")))?;
    let mut nodes = BTreeSet::new();
    for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "()" {
            nodes.insert(Vec::new());
            continue;
        }
        let node: std::result::Result<Vec<u32>, _> = part.split('.').map(|c| c.parse::<u32>()).collect();
        nodes.insert(node.map_err(|_| Error::Parse(format!("bad node {part}")))?);
    }
    Ok(FiniteStrongTree { nodes })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full_binary(depth: usize) -> FiniteStrongTree {
        let u = UniformTree { split_start: 0, split_step: 1, children: vec![0, 1], fill: 0 };
        FiniteStrongTree::new(u.cone(&[], depth))
    }

    #[test]
    fn levels_of_small_binary_tree() {
        let t = full_binary(2);
        let levels = split_levels(&t);
        assert_eq!(levels.len(), 2);
        assert_eq!(levels[0], [vec![]].into_iter().collect());
        assert_eq!(levels[1], [vec![0], vec![1]].into_iter().collect());
        assert_eq!(height(&t), 2);
    }

    #[test]
    fn chain_has_no_levels() {
        let t = FiniteStrongTree::new(vec![vec![], vec![0], vec![0, 0]]);
        assert!(split_levels(&t).is_empty());
        assert_eq!(height(&t), 0);
    }

    #[test]
    fn restriction_has_requested_height() {
        let t = full_binary(4);
        for n in 1..=3 {
            let r = restrict(&t, n);
            assert_eq!(height(&r), n);
            assert!(is_approximation(&r));
            assert!(le_fin(&r, &t));
        }
        assert!(restrict(&t, 0).nodes.is_empty());
    }

    #[test]
    fn encoding_round_trip() {
        let t = full_binary(1);
        let s = encode_tree(&t);
        assert_eq!(s, "{(),0,1}");
        assert_eq!(parse_tree(&s).unwrap(), t);
    }
}
