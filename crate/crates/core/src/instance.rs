//! Optimization instances and their JSON form.
//!
//! ```json
//! {"nodes":["a","b"],
//!  "node_costs":{"a":"3/2"},
//!  "signed_edges":[{"literals":{"a":1,"b":-1},"cost":"-2"}],
//!  "offset":"0"}
//! ```
//!
//! Costs are exact rationals written as integer strings or `"p/q"` (bare
//! JSON integers are accepted too). Missing costs are zero.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{fmt_set, Hypergraph, NodeId, NodeSet, Sign, SignedEdge, SignedHypergraph};
use crate::rational::Rational;

/// Objective `c_0 + Σ c_v z_v + Σ c_s Π σ_s(z_v)` over a signed hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PboInstance {
    hypergraph: SignedHypergraph,
    node_costs: BTreeMap<NodeId, Rational>,
    edge_costs: BTreeMap<SignedEdge, Rational>,
    offset: Rational,
}

impl PboInstance {
    /// Zero node costs are dropped; every signed edge gets an entry in the
    /// edge cost map (zero when not given).
    pub fn new(
        hypergraph: SignedHypergraph,
        node_costs: BTreeMap<NodeId, Rational>,
        edge_costs: BTreeMap<SignedEdge, Rational>,
        offset: Rational,
    ) -> Result<Self> {
        if let Some(v) = node_costs.keys().find(|v| !hypergraph.nodes().contains(*v)) {
            return Err(Error::InvalidInstance(format!("cost given for unknown node {v:?}")));
        }
        if let Some(s) = edge_costs.keys().find(|s| !hypergraph.contains_edge(s)) {
            return Err(Error::InvalidInstance(format!("cost given for unknown signed edge {s}")));
        }
        let node_costs = node_costs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let edge_costs = hypergraph
            .edges()
            .iter()
            .map(|s| (s.clone(), edge_costs.get(s).cloned().unwrap_or_default()))
            .collect();
        Ok(PboInstance {
            hypergraph,
            node_costs,
            edge_costs,
            offset,
        })
    }

    /// An instance with all costs zero.
    pub fn structure_only(hypergraph: SignedHypergraph) -> Self {
        Self::new(hypergraph, BTreeMap::new(), BTreeMap::new(), Rational::zero()).expect("no costs to check")
    }

    pub fn hypergraph(&self) -> &SignedHypergraph {
        &self.hypergraph
    }

    pub fn node_cost(&self, v: &str) -> Rational {
        self.node_costs.get(v).cloned().unwrap_or_default()
    }

    pub fn node_costs(&self) -> &BTreeMap<NodeId, Rational> {
        &self.node_costs
    }

    pub fn edge_costs(&self) -> &BTreeMap<SignedEdge, Rational> {
        &self.edge_costs
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// Signed edges stored with cost zero. They carry structure only.
    pub fn zero_cost_edges(&self) -> Vec<&SignedEdge> {
        self.edge_costs.iter().filter(|(_, c)| c.is_zero()).map(|(s, _)| s).collect()
    }

    /// Objective value at a binary point given as a predicate on node ids.
    pub fn evaluate(&self, value: impl Fn(&str) -> bool) -> Rational {
        let mut total = self.offset.clone();
        for (v, c) in &self.node_costs {
            if value(v) {
                total += c;
            }
        }
        for (s, c) in &self.edge_costs {
            if !c.is_zero() && s.evaluate(&value) {
                total += c;
            }
        }
        total
    }

    pub fn to_json(&self) -> String {
        let raw = RawInstance {
            nodes: self.hypergraph.nodes().iter().cloned().collect(),
            node_costs: self.node_costs.clone(),
            signed_edges: self
                .edge_costs
                .iter()
                .map(|(s, c)| RawEdge {
                    literals: s.literals().iter().map(|(v, g)| (v.clone(), g.as_i64())).collect(),
                    cost: Some(c.clone()),
                })
                .collect(),
            offset: Some(self.offset.clone()),
        };
        serde_json::to_string_pretty(&raw).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(text).map_err(parse_error)?;
        raw.into_instance()
    }
}

/// Binary quadratic objective `c_0 + Σ c_v x_v + Σ c_e x_u x_w` on a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BqoInstance {
    graph: Hypergraph,
    node_costs: BTreeMap<NodeId, Rational>,
    edge_costs: BTreeMap<NodeSet, Rational>,
    offset: Rational,
}

impl BqoInstance {
    /// Zero costs are dropped from the maps; the graph keeps every edge.
    pub fn new(
        graph: Hypergraph,
        node_costs: BTreeMap<NodeId, Rational>,
        edge_costs: BTreeMap<NodeSet, Rational>,
        offset: Rational,
    ) -> Result<Self> {
        if !graph.is_graph() {
            return Err(Error::InvalidInstance("quadratic instances need a graph (all edges of size two)".into()));
        }
        if let Some(v) = node_costs.keys().find(|v| !graph.nodes().contains(*v)) {
            return Err(Error::InvalidInstance(format!("cost given for unknown node {v:?}")));
        }
        if let Some(e) = edge_costs.keys().find(|e| !graph.edges().contains(*e)) {
            return Err(Error::InvalidInstance(format!("cost given for unknown edge {}", fmt_set(e))));
        }
        Ok(BqoInstance {
            graph,
            node_costs: node_costs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            edge_costs: edge_costs.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
            offset,
        })
    }

    pub fn graph(&self) -> &Hypergraph {
        &self.graph
    }

    pub fn node_cost(&self, v: &str) -> Rational {
        self.node_costs.get(v).cloned().unwrap_or_default()
    }

    pub fn edge_cost(&self, e: &NodeSet) -> Rational {
        self.edge_costs.get(e).cloned().unwrap_or_default()
    }

    pub fn node_costs(&self) -> &BTreeMap<NodeId, Rational> {
        &self.node_costs
    }

    pub fn edge_costs(&self) -> &BTreeMap<NodeSet, Rational> {
        &self.edge_costs
    }

    pub fn offset(&self) -> &Rational {
        &self.offset
    }

    /// Sum of absolute values of all node and edge coefficients.
    pub fn coefficient_mass(&self) -> Rational {
        self.node_costs.values().chain(self.edge_costs.values()).map(Rational::abs).sum()
    }

    pub fn evaluate(&self, value: impl Fn(&str) -> bool) -> Rational {
        let mut total = self.offset.clone();
        for (v, c) in &self.node_costs {
            if value(v) {
                total += c;
            }
        }
        for (e, c) in &self.edge_costs {
            if e.iter().all(|v| value(v)) {
                total += c;
            }
        }
        total
    }

    /// The same objective as a signed instance with all-positive edges.
    pub fn to_pbo(&self) -> PboInstance {
        let edges: Vec<SignedEdge> = self
            .graph
            .edges()
            .iter()
            .map(|e| SignedEdge::positive(e).expect("graph edge"))
            .collect();
        let costs = edges.iter().map(|s| (s.clone(), self.edge_cost(&s.nodes()))).collect();
        let h = SignedHypergraph::new(self.graph.nodes().iter().cloned(), edges).expect("valid lift");
        PboInstance::new(h, self.node_costs.clone(), costs, self.offset.clone()).expect("costs on known items")
    }

    pub fn to_json(&self) -> String {
        self.to_pbo().to_json()
    }

    /// Reads the signed instance format; every signed edge must be
    /// all-positive with exactly two nodes.
    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_pbo(&PboInstance::from_json(text)?)
    }

    pub fn from_pbo(p: &PboInstance) -> Result<Self> {
        let mut edge_costs = BTreeMap::new();
        for (i, (s, c)) in p.edge_costs().iter().enumerate() {
            if s.len() != 2 || s.literals().values().any(|g| *g == Sign::Neg) {
                return Err(Error::InvalidInstance(format!(
                    "signed edge {s} (#{i} in canonical order) is not an all-positive pair"
                )));
            }
            edge_costs.insert(s.nodes(), c.clone());
        }
        let graph = p.hypergraph().underlying();
        Self::new(graph, p.node_costs().clone(), edge_costs, p.offset().clone())
    }
}

/// A hypergraph from the instance format, ignoring signs and costs.
pub fn hypergraph_from_json(text: &str) -> Result<Hypergraph> {
    Ok(PboInstance::from_json(text)?.hypergraph().underlying())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    nodes: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    node_costs: BTreeMap<String, Rational>,
    #[serde(default)]
    signed_edges: Vec<RawEdge>,
    #[serde(default)]
    offset: Option<Rational>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEdge {
    literals: BTreeMap<String, i64>,
    #[serde(default)]
    cost: Option<Rational>,
}

impl RawInstance {
    fn into_instance(self) -> Result<PboInstance> {
        let mut nodes = NodeSet::new();
        for (i, v) in self.nodes.iter().enumerate() {
            if v.is_empty() {
                return Err(Error::InvalidInstance(format!("nodes[{i}]: empty node id")));
            }
            if !nodes.insert(v.clone()) {
                return Err(Error::InvalidInstance(format!("nodes[{i}]: duplicate node id {v:?}")));
            }
        }
        for v in self.node_costs.keys() {
            if !nodes.contains(v) {
                return Err(Error::InvalidInstance(format!("node_costs: unknown node {v:?}")));
            }
        }
        let mut seen: BTreeMap<SignedEdge, usize> = BTreeMap::new();
        let mut edge_costs = BTreeMap::new();
        for (i, e) in self.signed_edges.into_iter().enumerate() {
            let mut literals = BTreeMap::new();
            for (v, g) in e.literals {
                if !nodes.contains(&v) {
                    return Err(Error::InvalidInstance(format!("signed_edges[{i}]: unknown node {v:?}")));
                }
                let sign = Sign::from_i64(g).ok_or_else(|| {
                    Error::InvalidInstance(format!("signed_edges[{i}]: sign of {v:?} is {g}, expected 1 or -1"))
                })?;
                literals.insert(v, sign);
            }
            let s = SignedEdge::new(literals).map_err(|_| {
                Error::InvalidInstance(format!("signed_edges[{i}]: a signed edge needs at least two nodes"))
            })?;
            if let Some(j) = seen.get(&s) {
                return Err(Error::InvalidInstance(format!(
                    "signed_edges[{i}]: identical to signed_edges[{j}] {s}"
                )));
            }
            seen.insert(s.clone(), i);
            edge_costs.insert(s, e.cost.unwrap_or_default());
        }
        let h = SignedHypergraph::new(nodes, edge_costs.keys().cloned())?;
        PboInstance::new(h, self.node_costs, edge_costs, self.offset.unwrap_or_default())
    }
}

/// A positioned error for malformed JSON.
pub fn parse_error(e: serde_json::Error) -> Error {
    Error::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const SAMPLE: &str = r#"{"nodes":["a","b","c"], "node_costs":{"a":"3/2"},
        "signed_edges":[{"literals":{"a":1,"b":-1},"cost":"-2"},{"literals":{"a":1,"b":1,"c":1}}],
        "offset":"1"}"#;

    #[test]
    fn parses_the_documented_format() {
        let p = PboInstance::from_json(SAMPLE).unwrap();
        assert_eq!(p.node_cost("a"), Rational::new(3, 2));
        assert_eq!(p.node_cost("b"), Rational::zero());
        assert_eq!(p.edge_costs()[&SignedEdge::parse("a+ b-")], Rational::from_int(-2));
        assert_eq!(p.zero_cost_edges(), vec![&SignedEdge::parse("a+ b+ c+")]);
        assert_eq!(p.offset(), &Rational::one());
        // a=1, b=0: 1 + 3/2 - 2
        assert_eq!(p.evaluate(|v| v == "a"), Rational::new(1, 2));
    }

    #[test]
    fn identical_edges_are_positioned() {
        let text = r#"{"nodes":["a","b"],"signed_edges":[
            {"literals":{"a":1,"b":-1}},{"literals":{"a":1,"b":1}},{"literals":{"b":-1,"a":1}}]}"#;
        let err = PboInstance::from_json(text).unwrap_err().to_string();
        assert!(err.contains("signed_edges[2]: identical to signed_edges[0]"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_line_and_column() {
        match PboInstance::from_json("{\"nodes\":[\"a\",\n  ]}") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_invalid_content() {
        for bad in [
            r#"{"nodes":["a","a"]}"#,
            r#"{"nodes":["a",""]}"#,
            r#"{"nodes":["a","b"],"signed_edges":[{"literals":{"a":1}}]}"#,
            r#"{"nodes":["a","b"],"signed_edges":[{"literals":{"a":1,"z":1}}]}"#,
            r#"{"nodes":["a","b"],"signed_edges":[{"literals":{"a":1,"b":2}}]}"#,
            r#"{"nodes":["a","b"],"node_costs":{"z":"1"}}"#,
            r#"{"nodes":["a","b"],"offset":"1/0"}"#,
            r#"{"nodes":["a","b"],"extra":1}"#,
        ] {
            assert!(PboInstance::from_json(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn bqo_requires_positive_pairs() {
        let text = r#"{"nodes":["x","y"],"node_costs":{"x":1},"signed_edges":[{"literals":{"x":1,"y":1},"cost":-1}]}"#;
        let q = BqoInstance::from_json(text).unwrap();
        assert_eq!(q.edge_cost(&crate::hypergraph::node_set(["x", "y"])), Rational::from_int(-1));
        assert!(BqoInstance::from_json(SAMPLE).is_err());
    }

    proptest! {
        #[test]
        fn json_round_trip(seed in any::<u64>(), n in 2usize..8) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = families::random_signed_hypergraph(&mut rng, n, 6, 4);
            let costs = h.edges().iter().enumerate()
                .map(|(i, s)| (s.clone(), Rational::new(i as i64 - 2, (seed % 5 + 1) as i64)))
                .collect();
            let node_costs = h.nodes().iter().enumerate()
                .map(|(i, v)| (v.clone(), Rational::new(i as i64 * 7 - 3, 3)))
                .collect();
            let p = PboInstance::new(h, node_costs, costs, Rational::new(-5, 4)).unwrap();
            let text = p.to_json();
            let back = PboInstance::from_json(&text).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_json(), text);
        }
    }
}
