//! Canonical element texts, `tag:body`.
//!
//! | space | body |
//! |---|---|
//! | ellentuck | `{0,2,4}` |
//! | finK, finpmK | `[{0:2},{1:-2}]` |
//! | hjN | `[av,bvv]` |
//! | trees | `{(),0,1}` |
//! | cs | `4[0,3\|1,2]` |
//! | vec-F | `[{0:1},{2:1/2}]` |
//! | singleton | length as a number |

use crate::error::{Error, Result};
use crate::space::{ARElem, Payload, Space};

use super::{eqrel, fin, tree, vector, words, Point};

fn join_list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    format!("[{}]", items.iter().map(f).collect::<Vec<_>>().join(","))
}

pub fn encode_body(a: &ARElem) -> String {
    match &a.payload {
        Payload::Set(s) => format!("{{{}}}", s.iter().map(u32::to_string).collect::<Vec<_>>().join(",")),
        Payload::Blocks(b) => join_list(b, fin::encode_fin),
        Payload::Words(w) => join_list(w, |x| x.word.clone()),
        Payload::Tree(t) => tree::encode_tree(t),
        Payload::Rel(r) => eqrel::encode_rel(r),
        Payload::Vectors(v) => join_list(v, |x| {
            let full = vector::encode_vector(x);
            full.split_once(':').map(|(_, b)| b.to_string()).unwrap_or(full)
        }),
        Payload::Unit(n) => n.to_string(),
    }
}

pub fn encode_elem(a: &ARElem) -> String {
    format!("{}:{}", a.space.tag(), encode_body(a))
}

/// Splits on commas that are not nested inside brackets or braces.
pub fn split_top(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '{' | '[' | '(' => depth += 1,
            '}' | ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    let last = s[start..].trim();
    if !last.is_empty() || !out.is_empty() {
        out.push(last);
    }
    out
}

fn strip<'a>(s: &'a str, open: char, close: char) -> Result<&'a str> {
    s.trim()
        .strip_prefix(open)
        .and_then(|r| r.strip_suffix(close))
        .ok_or_else(|| Error::Parse(format!("expected {open}...{close}, got {s}")))
}

pub fn parse_body(space: Space, body: &str) -> Result<ARElem> {
    let payload = match space {
        Space::Ellentuck => {
            let mut v = Vec::new();
            for part in split_top(strip(body, '{', '}')?) {
                v.push(part.parse::<u32>().map_err(|_| Error::Parse(format!("bad natural {part}")))?);
            }
            v.sort_unstable();
            v.dedup();
            Payload::Set(v)
        }
        Space::Fin { k } | Space::FinSigned { k } => {
            let items = split_top(strip(body, '[', ']')?);
            Payload::Blocks(items.into_iter().map(|p| fin::parse_fin(k, p)).collect::<Result<_>>()?)
        }
        Space::HalesJewett { letters } => {
            let items = split_top(strip(body, '[', ']')?);
            Payload::Words(items.into_iter().map(|p| words::parse_word(letters, p)).collect::<Result<_>>()?)
        }
        Space::StrongTrees => Payload::Tree(tree::parse_tree(body)?),
        Space::CarlsonSimpson => Payload::Rel(eqrel::parse_rel(body)?),
        Space::Vector { field } => {
            let items = split_top(strip(body, '[', ']')?);
            Payload::Vectors(items.into_iter().map(|p| vector::parse_vector_body(field, p)).collect::<Result<_>>()?)
        }
        Space::Singleton => {
            Payload::Unit(body.trim().parse().map_err(|_| Error::Parse(format!("bad length {body}")))?)
        }
    };
    let a = ARElem::new(space, payload);
    use crate::space::WSpace;
    if !space.is_approximation(&a) {
        return Err(Error::Malformed(format!("not an approximation of {}: {body}", space.tag())));
    }
    Ok(a)
}

/// Parses `tag:body`.
pub fn parse_elem(s: &str) -> Result<ARElem> {
    let (tag, body) = s.trim().split_once(':').ok_or_else(|| Error::Parse(format!("missing space tag in {s}")))?;
    parse_body(Space::from_tag(tag)?, body)
}

pub fn encode_point(p: &Point) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips() {
        for s in [
            "ellentuck:{0,2,4}",
            "fin2:[{0:2},{1:1,2:2}]",
            "finpm2:[{0:-2}]",
            "hj2:[av,bvaa]",
            "trees:{(),0,1}",
            "cs:4[0,3|1,2]",
            "vec-gf3:[{0:1},{2:2}]",
            "vec-q:[{0:1/2}]",
            "singleton:3",
            "ellentuck:{}",
        ] {
            let a = parse_elem(s).unwrap();
            assert_eq!(encode_elem(&a), s);
        }
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_elem("fin2:[{1:2},{0:2}]").is_err());
        assert!(parse_elem("nope:{}").is_err());
        assert!(parse_elem("hj2:[ab]").is_err());
    }
}
