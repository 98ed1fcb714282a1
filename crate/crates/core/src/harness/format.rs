//! Plain-text hyperedge lists.
//!
//! One hyperedge per line as whitespace-separated vertex ids. Optional leading
//! `w=<real>` and `id=<n>` tokens set the weight and hyperedge id. Lines whose
//! first non-blank character is `#` are comments; blank lines are skipped.

use std::fmt::Write as _;
use std::path::Path;

use super::HarnessError;
use crate::hypergraph::{HyperedgeId, HyperedgeInput, Hypergraph, PlainHypergraph};

pub fn parse(text: &str) -> Result<Vec<HyperedgeInput>, HarnessError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| HarnessError::Parse { line: lineno, message };
        let mut input = HyperedgeInput::new([]);
        let mut tokens = line.split_whitespace().peekable();
        while let Some(tok) = tokens.peek() {
            if let Some(w) = tok.strip_prefix("w=") {
                input.weight = w.parse().map_err(|_| err(format!("invalid weight {w:?}")))?;
            } else if let Some(id) = tok.strip_prefix("id=") {
                let id = id.parse().map_err(|_| err(format!("invalid hyperedge id {id:?}")))?;
                input.id = Some(HyperedgeId(id));
            } else {
                break;
            }
            tokens.next();
        }
        for tok in tokens {
            let v = tok.parse().map_err(|_| err(format!("invalid vertex id {tok:?}")))?;
            input.members.push(crate::hypergraph::VertexId(v));
        }
        if input.members.is_empty() {
            return Err(err("hyperedge has no members".into()));
        }
        out.push(input);
    }
    Ok(out)
}

/// Writes one line per hyperedge. Ids are written only when they differ from
/// the line position, weights only when they differ from 1. Vertices without
/// hyperedges cannot be represented and are dropped.
pub fn serialize<VD, HED>(h: &Hypergraph<VD, HED>) -> String {
    let positional = h.hyperedges().iter().enumerate().all(|(i, e)| e.id.0 == i as u64);
    let mut s = String::new();
    for e in h.hyperedges() {
        let mut sep = "";
        if !positional {
            let _ = write!(s, "id={}", e.id.0);
            sep = " ";
        }
        if e.weight != 1.0 {
            let _ = write!(s, "{sep}w={}", e.weight);
            sep = " ";
        }
        for m in &e.members {
            let _ = write!(s, "{sep}{}", m.0);
            sep = " ";
        }
        s.push('\n');
    }
    s
}

pub fn parse_hypergraph(text: &str) -> Result<PlainHypergraph, HarnessError> {
    let (h, report) = PlainHypergraph::build(parse(text)?, None)?;
    if report.duplicate_members > 0 {
        log::warn!("dropped {} duplicate members", report.duplicate_members);
    }
    Ok(h)
}

pub fn load(path: impl AsRef<Path>) -> Result<PlainHypergraph, HarnessError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
    parse_hypergraph(&text)
}

pub fn save<VD, HED>(h: &Hypergraph<VD, HED>, path: impl AsRef<Path>) -> Result<(), HarnessError> {
    let path = path.as_ref();
    std::fs::write(path, serialize(h)).map_err(|e| HarnessError::io(path, e))
}
