//! Batch commands and the local session service for rspace.

pub mod scenario;
pub mod session;

use serde_json::{json, Value};

use rspace::spaces::text::{encode_elem, encode_point, parse_elem};
use rspace::spaces::{comb_span, pools::default_bound};
use rspace::spaces::vector::span_vectors;
use rspace::verify::{all_spaces, run_bundle, CheckConfig, CHECK_IDS};
use rspace::{Error, Payload, Result, Space};

/// Exit code for malformed input.
pub const EXIT_SCHEMA: i32 = 2;

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Schema(_) | Error::Parse(_) | Error::Malformed(_) | Error::UnknownCheck(_) => EXIT_SCHEMA,
        _ => 1,
    }
}

/// The report bundle for `target` (a space tag or `all`).
pub fn verify_bundle(target: &str, checks: &[String], seed: u64, samples: usize) -> Result<Value> {
    let spaces = if target == "all" { all_spaces() } else { vec![Space::from_tag(target)?] };
    let ids: Vec<String> = if checks.is_empty() { CHECK_IDS.iter().map(|s| s.to_string()).collect() } else { checks.to_vec() };
    let cfg = CheckConfig { samples, seed, ..CheckConfig::default() };
    let reports = run_bundle(&spaces, &ids, cfg)?;
    Ok(json!({ "seed": seed, "samples": samples, "reports": reports }))
}

pub fn spaces_list() -> Value {
    let rows: Vec<Value> = all_spaces()
        .into_iter()
        .map(|s| json!({ "tag": s.tag(), "space": s, "default_bound": default_bound(s), "deep": s.is_deep() }))
        .collect();
    json!({ "spaces": rows })
}

/// Every point of the span of a finite approximation, in canonical order.
pub fn span(text: &str) -> Result<Value> {
    let a = parse_elem(text)?;
    let points: Vec<String> = match (&a.space, &a.payload) {
        (Space::Vector { field }, Payload::Vectors(vs)) => {
            if field.order().is_none() {
                return Err(Error::WrongSpace("the span over the rationals is infinite".into()));
            }
            span_vectors(vs, *field).iter().map(rspace::spaces::vector::encode_vector).collect()
        }
        _ => comb_span(&a)?.iter().map(encode_point).collect(),
    };
    Ok(json!({ "elem": encode_elem(&a), "size": points.len(), "points": points }))
}
