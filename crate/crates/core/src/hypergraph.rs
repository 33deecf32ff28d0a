//! Hypergraphs and signed hypergraphs.
//!
//! Nodes are identified by strings and every node or edge collection is a
//! `BTreeSet`/`BTreeMap`, so iteration is always in lexicographic order and
//! every construction built on top of these types is deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

pub type NodeId = String;
pub type NodeSet = BTreeSet<NodeId>;

/// Builds a node set from anything string-like.
pub fn node_set<I, S>(ids: I) -> NodeSet
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    ids.into_iter().map(Into::into).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Neg,
    Pos,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_bool(positive: bool) -> Sign {
        if positive {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    /// The literal `x` for a positive sign, `1 - x` for a negative one.
    pub fn literal(self, x: bool) -> bool {
        match self {
            Sign::Pos => x,
            Sign::Neg => !x,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

/// A hypergraph `(V, E)`: every edge has at least two nodes, all inside `V`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Hypergraph {
    nodes: NodeSet,
    edges: BTreeSet<NodeSet>,
}

impl Hypergraph {
    pub fn new<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = NodeId>,
        E: IntoIterator<Item = NodeSet>,
    {
        let nodes: NodeSet = nodes.into_iter().collect();
        let mut set = BTreeSet::new();
        for e in edges {
            if e.len() < 2 {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {} has fewer than two nodes",
                    fmt_set(&e)
                )));
            }
            if let Some(v) = e.iter().find(|v| !nodes.contains(*v)) {
                return Err(Error::InvalidHypergraph(format!(
                    "edge {} uses unknown node {v:?}",
                    fmt_set(&e)
                )));
            }
            set.insert(e);
        }
        check_ids(&nodes)?;
        Ok(Hypergraph { nodes, edges: set })
    }

    /// Convenience constructor from string slices; panics on invalid input.
    pub fn from_edges(nodes: &[&str], edges: &[&[&str]]) -> Self {
        Self::new(
            nodes.iter().map(|s| s.to_string()),
            edges.iter().map(|e| node_set(e.iter().copied())),
        )
        .expect("valid hypergraph")
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<NodeSet> {
        &self.edges
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Edges containing `v`.
    pub fn incident_edges<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a NodeSet> + 'a {
        self.edges.iter().filter(move |e| e.contains(v))
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.len() == 2)
    }

    /// Maximum edge cardinality.
    pub fn rank(&self) -> Result<usize> {
        self.edges.iter().map(BTreeSet::len).max().ok_or(Error::NoEdges)
    }

    /// `G - N`: drops the nodes of `N` and keeps every residual edge
    /// `e \ N` with at least two nodes.
    pub fn delete_nodes(&self, removed: &NodeSet) -> Result<Hypergraph> {
        check_subset(removed, &self.nodes)?;
        let nodes = self.nodes.difference(removed).cloned().collect();
        let edges = self
            .edges
            .iter()
            .map(|e| e.difference(removed).cloned().collect::<NodeSet>())
            .filter(|e| e.len() >= 2)
            .collect();
        Ok(Hypergraph { nodes, edges })
    }

    /// Graph on `V` joining every pair of nodes that share an edge.
    pub fn intersection_graph(&self) -> Hypergraph {
        let mut edges = BTreeSet::new();
        for e in &self.edges {
            let members: Vec<&NodeId> = e.iter().collect();
            for (i, u) in members.iter().enumerate() {
                for w in &members[i + 1..] {
                    edges.insert(node_set([u.as_str(), w.as_str()]));
                }
            }
        }
        Hypergraph {
            nodes: self.nodes.clone(),
            edges,
        }
    }

    /// Bipartite node/edge membership graph. Edge-vertices are named by the
    /// edge they stand for, e.g. `{a,b}`, with `'` appended on a name clash.
    pub fn incidence_graph(&self) -> Hypergraph {
        let mut nodes = self.nodes.clone();
        let mut edges = BTreeSet::new();
        for e in &self.edges {
            let mut name = fmt_set(e);
            while nodes.contains(&name) {
                name.push('\'');
            }
            nodes.insert(name.clone());
            for v in e {
                edges.insert(node_set([v.clone(), name.clone()]));
            }
        }
        Hypergraph { nodes, edges }
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.iter().map(fmt_set).collect();
        write!(f, "V={} E=[{}]", fmt_set(&self.nodes), edges.join(", "))
    }
}

/// A signed edge: a node set with a sign per node. Equality (and hence
/// identity inside a [`SignedHypergraph`]) is the full literal map, so
/// parallel edges with different signs are distinct.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedEdge {
    literals: BTreeMap<NodeId, Sign>,
}

impl SignedEdge {
    pub fn new(literals: BTreeMap<NodeId, Sign>) -> Result<Self> {
        if literals.len() < 2 {
            return Err(Error::InvalidHypergraph(format!(
                "signed edge with {} literal(s); at least two required",
                literals.len()
            )));
        }
        Ok(SignedEdge { literals })
    }

    /// Parses the compact form used in tests and docs: `"a+ b- c+"`.
    /// Panics on malformed input.
    pub fn parse(spec: &str) -> Self {
        let literals = spec
            .split_whitespace()
            .map(|tok| {
                let (id, sign) = tok.split_at(tok.len() - 1);
                let sign = match sign {
                    "+" => Sign::Pos,
                    "-" => Sign::Neg,
                    _ => panic!("bad literal {tok:?}"),
                };
                (id.to_string(), sign)
            })
            .collect();
        Self::new(literals).expect("valid signed edge")
    }

    /// All-positive signed edge over `nodes`.
    pub fn positive(nodes: &NodeSet) -> Result<Self> {
        Self::new(nodes.iter().map(|v| (v.clone(), Sign::Pos)).collect())
    }

    pub fn literals(&self) -> &BTreeMap<NodeId, Sign> {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.literals.contains_key(v)
    }

    pub fn sign(&self, v: &str) -> Option<Sign> {
        self.literals.get(v).copied()
    }

    /// The underlying edge.
    pub fn nodes(&self) -> NodeSet {
        self.literals.keys().cloned().collect()
    }

    /// Product of the literals under an assignment.
    pub fn evaluate(&self, value: impl Fn(&str) -> bool) -> bool {
        self.literals.iter().all(|(v, s)| s.literal(value(v)))
    }

    /// Restriction to `self \ removed`; `None` when fewer than two nodes survive.
    pub fn restrict(&self, removed: &NodeSet) -> Option<SignedEdge> {
        let literals: BTreeMap<_, _> = self
            .literals
            .iter()
            .filter(|(v, _)| !removed.contains(*v))
            .map(|(v, s)| (v.clone(), *s))
            .collect();
        (literals.len() >= 2).then_some(SignedEdge { literals })
    }

    /// Canonical textual key, e.g. `a+,b-`.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self
            .literals
            .iter()
            .map(|(v, s)| format!("{v}{}", s.symbol()))
            .collect();
        parts.join(",")
    }
}

impl fmt::Display for SignedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

/// A signed hypergraph `(V, S)` without identical signed edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SignedHypergraph {
    nodes: NodeSet,
    edges: BTreeSet<SignedEdge>,
}

impl SignedHypergraph {
    /// Validates the node set and inserts the edges; an identical signed edge
    /// given twice is an error.
    pub fn new<N, E>(nodes: N, edges: E) -> Result<Self>
    where
        N: IntoIterator<Item = NodeId>,
        E: IntoIterator<Item = SignedEdge>,
    {
        let nodes: NodeSet = nodes.into_iter().collect();
        check_ids(&nodes)?;
        let mut set = BTreeSet::new();
        for s in edges {
            if let Some(v) = s.literals.keys().find(|v| !nodes.contains(*v)) {
                return Err(Error::InvalidHypergraph(format!("signed edge {s} uses unknown node {v:?}")));
            }
            let shown = s.to_string();
            if !set.insert(s) {
                return Err(Error::InvalidHypergraph(format!("identical signed edge {shown}")));
            }
        }
        Ok(SignedHypergraph { nodes, edges: set })
    }

    /// Convenience constructor from the compact edge notation; panics on invalid input.
    pub fn from_specs(nodes: &[&str], edges: &[&str]) -> Self {
        Self::new(
            nodes.iter().map(|s| s.to_string()),
            edges.iter().map(|e| SignedEdge::parse(e)),
        )
        .expect("valid signed hypergraph")
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<SignedEdge> {
        &self.edges
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_edge(&self, s: &SignedEdge) -> bool {
        self.edges.contains(s)
    }

    /// Signed edges containing `v`.
    pub fn incident_edges<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a SignedEdge> + 'a {
        self.edges.iter().filter(move |s| s.contains(v))
    }

    pub fn rank(&self) -> Result<usize> {
        self.edges.iter().map(SignedEdge::len).max().ok_or(Error::NoEdges)
    }

    /// Signs erased, parallel edges merged.
    pub fn underlying(&self) -> Hypergraph {
        Hypergraph {
            nodes: self.nodes.clone(),
            edges: self.edges.iter().map(SignedEdge::nodes).collect(),
        }
    }

    /// For each signed edge, the positive part joined with every subset of
    /// the negative part, keeping sets with at least two nodes.
    pub fn multilinear(&self) -> Hypergraph {
        let mut edges = BTreeSet::new();
        for s in &self.edges {
            let pos: Vec<&NodeId> = s.literals.iter().filter(|(_, g)| **g == Sign::Pos).map(|(v, _)| v).collect();
            let neg: Vec<&NodeId> = s.literals.iter().filter(|(_, g)| **g == Sign::Neg).map(|(v, _)| v).collect();
            for mask in 0u64..(1u64 << neg.len()) {
                let e: NodeSet = pos
                    .iter()
                    .copied()
                    .chain(neg.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v))
                    .cloned()
                    .collect();
                if e.len() >= 2 {
                    edges.insert(e);
                }
            }
        }
        Hypergraph {
            nodes: self.nodes.clone(),
            edges,
        }
    }

    /// `H - N`: each signed edge is restricted to its nodes outside `N`,
    /// keeping restrictions with at least two nodes; identical results merge.
    pub fn delete_nodes(&self, removed: &NodeSet) -> Result<SignedHypergraph> {
        check_subset(removed, &self.nodes)?;
        Ok(SignedHypergraph {
            nodes: self.nodes.difference(removed).cloned().collect(),
            edges: self.edges.iter().filter_map(|s| s.restrict(removed)).collect(),
        })
    }
}

impl fmt::Display for SignedHypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<String> = self.edges.iter().map(|s| s.to_string()).collect();
        write!(f, "V={} S=[{}]", fmt_set(&self.nodes), edges.join(" "))
    }
}

pub fn fmt_set(s: &NodeSet) -> String {
    let parts: Vec<&str> = s.iter().map(String::as_str).collect();
    format!("{{{}}}", parts.join(","))
}

fn check_ids(nodes: &NodeSet) -> Result<()> {
    if nodes.iter().any(|v| v.is_empty()) {
        return Err(Error::InvalidHypergraph("empty node id".into()));
    }
    Ok(())
}

fn check_subset(sub: &NodeSet, sup: &NodeSet) -> Result<()> {
    let missing: Vec<String> = sub.difference(sup).cloned().collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::NotSubset(missing))
    }
}
