//! Variable words for the Hales–Jewett space.
//!
//! Letters are `a`, `b`, ... and the variable is `v`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const VAR: char = 'v';

/// A word over the first `letters` letters plus the variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarWord {
    pub letters: u8,
    pub word: String,
}

pub fn alphabet(letters: u8) -> Vec<char> {
    ('a'..='z').filter(|&c| c != VAR).take(letters as usize).collect()
}

impl VarWord {
    pub fn new(letters: u8, word: &str) -> Self {
        VarWord { letters, word: word.to_string() }
    }

    pub fn len(&self) -> usize {
        self.word.chars().count()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_valid(&self) -> bool {
        let alpha = alphabet(self.letters);
        self.word.contains(VAR) && self.word.chars().all(|c| c == VAR || alpha.contains(&c))
    }
}

/// Replaces every occurrence of the variable by `lambda`.
pub fn substitute(x: &str, lambda: char) -> String {
    x.chars().map(|c| if c == VAR { lambda } else { c }).collect()
}

pub fn is_rapidly_increasing(words: &[VarWord]) -> bool {
    let mut total = 0usize;
    for w in words {
        if w.len() <= total {
            return false;
        }
        total += w.len();
    }
    true
}

/// Enumerates `⟨a⟩`: concatenations `x_{m_0}[λ_0] ... x_{m_k}[λ_k]` over
/// increasing indices with at least one `λ_i = v`.
pub fn comb_span(words: &[VarWord], letters: u8) -> BTreeSet<String> {
    let mut symbols = alphabet(letters);
    symbols.push(VAR);
    let n = words.len();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let mut choice = vec![0usize; idx.len()];
        loop {
            if choice.iter().any(|&c| symbols[c] == VAR) {
                let s: String =
                    idx.iter().zip(&choice).map(|(&i, &c)| substitute(&words[i].word, symbols[c])).collect();
                out.insert(s);
            }
            let mut j = 0;
            loop {
                if j == choice.len() {
                    break;
                }
                choice[j] += 1;
                if choice[j] < symbols.len() {
                    break;
                }
                choice[j] = 0;
                j += 1;
            }
            if j == choice.len() {
                break;
            }
        }
    }
    out
}

/// Parses `w` as an element of `⟨words⟩` for a rapidly increasing sequence.
///
/// Subset sums of rapidly increasing lengths are distinct, so the index set is
/// forced by `|w|` and can be read greedily from the top. Returns the indices
/// with their substituted symbols.
pub fn parse_in_span(w: &str, words: &[VarWord]) -> Option<Vec<(usize, char)>> {
    let chars: Vec<char> = w.chars().collect();
    let mut remaining = chars.len();
    let mut picked = Vec::new();
    for i in (0..words.len()).rev() {
        let l = words[i].len();
        if l <= remaining {
            picked.push(i);
            remaining -= l;
        }
    }
    if remaining != 0 || picked.is_empty() {
        return None;
    }
    picked.reverse();
    let mut pos = 0;
    let mut out = Vec::new();
    let mut has_var = false;
    for &i in &picked {
        let src: Vec<char> = words[i].word.chars().collect();
        let piece = &chars[pos..pos + src.len()];
        let mut lambda: Option<char> = None;
        for (s, &c) in src.iter().zip(piece) {
            if *s == VAR {
                match lambda {
                    None => lambda = Some(c),
                    Some(l) if l != c => return None,
                    _ => {}
                }
            } else if *s != c {
                return None;
            }
        }
        let lambda = lambda?;
        if lambda == VAR {
            has_var = true;
        }
        out.push((i, lambda));
        pos += src.len();
    }
    has_var.then_some(out)
}

/// `⟨a⟩ ⊆ ⟨b⟩`. Each word of `a` must parse in `b`; when the parsed index sets
/// are increasing the inclusion follows, otherwise the span of `a` is checked
/// element by element.
pub fn span_contained(a: &[VarWord], b: &[VarWord], letters: u8) -> bool {
    let mut ranges = Vec::new();
    for y in a {
        match parse_in_span(&y.word, b) {
            Some(p) => ranges.push((p.first().unwrap().0, p.last().unwrap().0)),
            None => return false,
        }
    }
    if ranges.windows(2).all(|r| r[0].1 < r[1].0) {
        return true;
    }
    comb_span(a, letters).iter().all(|w| parse_in_span(w, b).is_some())
}

/// The finitization order: `⟨a⟩ ⊆ ⟨b⟩` and no proper initial segment of `b` already contains `⟨a⟩`.
pub fn le_fin(a: &[VarWord], b: &[VarWord], letters: u8) -> bool {
    if a.is_empty() {
        return b.is_empty();
    }
    if b.is_empty() || !span_contained(a, b, letters) {
        return false;
    }
    !span_contained(a, &b[..b.len() - 1], letters)
}

pub fn parse_word(letters: u8, s: &str) -> Result<VarWord> {
    let w = VarWord::new(letters, s.trim().trim_matches('"'));
    if w.is_valid() {
        Ok(w)
    } else {
        Err(Error::Parse(format!("not a variable word over {} letters: {s}", letters)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn substitution_examples() {
        assert_eq!(substitute("av", 'b'), "ab");
        assert_eq!(substitute("av", 'v'), "av");
        assert_eq!(substitute("vxv", 'a'), "axa");
    }

    #[test]
    fn singleton_span_is_the_word() {
        let span = comb_span(&[VarWord::new(2, "av")], 2);
        assert_eq!(span, ["av".to_string()].into_iter().collect());
    }

    #[test]
    fn parse_agrees_with_enumeration() {
        let b = vec![VarWord::new(2, "v"), VarWord::new(2, "av"), VarWord::new(2, "vbaa")];
        let span = comb_span(&b, 2);
        assert_eq!(span.len(), 4usize.pow(3) - 3usize.pow(3));
        for w in &span {
            assert!(parse_in_span(w, &b).is_some(), "{w}");
        }
        assert!(parse_in_span("aa", &b).is_none());
        assert!(parse_in_span("ab", &b).is_none());
    }

    #[test]
    fn minimality_clause() {
        let b = vec![VarWord::new(2, "v"), VarWord::new(2, "av")];
        let a = vec![VarWord::new(2, "v")];
        assert!(le_fin(&a, &b[..1], 2));
        assert!(!le_fin(&a, &b, 2));
        let a2 = vec![VarWord::new(2, "bav")];
        assert!(le_fin(&a2, &b, 2));
    }
}
