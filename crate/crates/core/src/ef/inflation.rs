use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{fmt_set, NodeSet, Sign, SignedEdge, SignedHypergraph};

/// Result of inflating `original` to `target`: `z_original = Σ z_s'` over
/// `family`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InflationRecord {
    pub original: SignedEdge,
    pub target: NodeSet,
    pub family: Vec<SignedEdge>,
}

#[derive(Serialize)]
struct RecordJson<'a> {
    original: String,
    target: Vec<&'a str>,
    family: Vec<String>,
}

impl InflationRecord {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(RecordJson {
            original: self.original.key(),
            target: self.target.iter().map(String::as_str).collect(),
            family: self.family.iter().map(SignedEdge::key).collect(),
        })
        .expect("serializable")
    }
}

/// All sign extensions of `s` to `e`, sorted.
pub fn inflation_family(s: &SignedEdge, e: &NodeSet) -> Result<Vec<SignedEdge>> {
    let support = s.nodes();
    if !support.is_subset(e) || support.len() == e.len() {
        return Err(Error::NotStrictSuperset(format!(
            "{} is not a strict superset of the underlying edge of {s}",
            fmt_set(e)
        )));
    }
    let extra: Vec<&String> = e.difference(&support).collect();
    assert!(extra.len() < 63, "inflation by {} nodes", extra.len());
    let mut family = Vec::with_capacity(1 << extra.len());
    for mask in 0u64..1 << extra.len() {
        let mut literals = s.literals().clone();
        for (i, v) in extra.iter().enumerate() {
            literals.insert((*v).clone(), Sign::from_bool(mask >> i & 1 == 1));
        }
        family.push(SignedEdge::new(literals)?);
    }
    family.sort();
    Ok(family)
}

/// Replaces `s` by its inflation family to `e`; members already present are
/// reused.
pub fn inflate(h: &SignedHypergraph, s: &SignedEdge, e: &NodeSet) -> Result<(SignedHypergraph, InflationRecord)> {
    if !h.contains_edge(s) {
        return Err(Error::MissingEdge(s.to_string()));
    }
    let missing: Vec<String> = e.difference(h.nodes()).cloned().collect();
    if !missing.is_empty() {
        return Err(Error::NotSubset(missing));
    }
    let family = inflation_family(s, e)?;
    let edges = h
        .edges()
        .iter()
        .filter(|t| *t != s)
        .cloned()
        .chain(family.iter().cloned());
    let inflated = SignedHypergraph::new(h.nodes().iter().cloned(), edges.collect::<std::collections::BTreeSet<_>>())?;
    Ok((
        inflated,
        InflationRecord {
            original: s.clone(),
            target: e.clone(),
            family,
        },
    ))
}
