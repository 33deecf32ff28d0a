//! Instance transformations: Max-2SAT to BQO, the three graph-minor
//! reductions, and BQO to PBO by inflation.

mod cnf;
mod lift;
mod minors;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hypergraph::{fmt_set, Hypergraph};
use crate::rational::Rational;

pub use cnf::{max2sat_to_bqo, Literal, TwoCnf};
pub use lift::bqo_to_pbo;
pub use minors::{contracted_graph, minor_contract_edge, minor_delete_edge, minor_delete_node};

/// Machine-readable record of one reduction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub operation: &'static str,
    pub parameters: BTreeMap<String, serde_json::Value>,
    /// Penalty weight `M` of a contraction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub penalty: Option<Rational>,
    /// Source item to the items of the new instance that received its cost.
    pub mapping: BTreeMap<String, Vec<String>>,
}

impl Provenance {
    fn new(operation: &'static str) -> Self {
        Provenance {
            operation,
            parameters: BTreeMap::new(),
            penalty: None,
            mapping: BTreeMap::new(),
        }
    }

    fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters
            .insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// A transformed instance and its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Reduction<T> {
    pub instance: T,
    pub log: Provenance,
}

/// Exact structural equality of an instance graph with the expected minor.
fn check_host(actual: &Hypergraph, expected: &Hypergraph, what: &str) -> Result<()> {
    if let Some(v) = expected.nodes().symmetric_difference(actual.nodes()).next() {
        return Err(Error::HostMismatch(format!(
            "node {v} differs between the instance graph and the host {what}"
        )));
    }
    if let Some(e) = expected.edges().symmetric_difference(actual.edges()).next() {
        return Err(Error::HostMismatch(format!(
            "edge {} differs between the instance graph and the host {what}",
            fmt_set(e)
        )));
    }
    Ok(())
}
