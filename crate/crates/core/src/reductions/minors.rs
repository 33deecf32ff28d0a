use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::hypergraph::{fmt_set, node_set, Hypergraph, NodeId, NodeSet};
use crate::instance::BqoInstance;
use crate::rational::Rational;

use super::{check_host, Provenance, Reduction};

fn known_node(host: &Hypergraph, u: &str) -> Result<()> {
    if !host.nodes().contains(u) {
        return Err(Error::HostMismatch(format!("node {u} is not in the host")));
    }
    Ok(())
}

fn build(host: &Hypergraph, nodes: BTreeMap<NodeId, Rational>, edges: BTreeMap<NodeSet, Rational>, offset: &Rational) -> BqoInstance {
    BqoInstance::new(host.clone(), nodes, edges, offset.clone()).expect("costs on host items")
}

/// Lifts an instance on `host - u` to `host` with zero costs at `u`.
pub fn minor_delete_node(inst: &BqoInstance, u: &str, host: &Hypergraph) -> Result<Reduction<BqoInstance>> {
    known_node(host, u)?;
    let minor = host.delete_nodes(&node_set([u]))?;
    check_host(inst.graph(), &minor, &format!("after deleting node {u}"))?;
    let zeroed: Vec<String> = host.incident_edges(u).map(fmt_set).collect();
    let log = Provenance::new("delete_node").param("node", u).param("zeroed_edges", zeroed);
    let instance = build(host, inst.node_costs().clone(), inst.edge_costs().clone(), inst.offset());
    Ok(Reduction { instance, log })
}

/// Lifts an instance on `host - f` to `host` with `c_f = 0`.
pub fn minor_delete_edge(inst: &BqoInstance, f: &NodeSet, host: &Hypergraph) -> Result<Reduction<BqoInstance>> {
    if !host.edges().contains(f) {
        return Err(Error::HostMismatch(format!("edge {} is not in the host", fmt_set(f))));
    }
    let edges: BTreeSet<NodeSet> = host.edges().iter().filter(|e| *e != f).cloned().collect();
    let minor = Hypergraph::new(host.nodes().iter().cloned(), edges)?;
    check_host(inst.graph(), &minor, &format!("after deleting edge {}", fmt_set(f)))?;
    let log = Provenance::new("delete_edge").param("edge", f);
    let instance = build(host, inst.node_costs().clone(), inst.edge_costs().clone(), inst.offset());
    Ok(Reduction { instance, log })
}

/// `host` with edge `{u, v}` contracted to `v`.
pub fn contracted_graph(host: &Hypergraph, u: &str, v: &str) -> Result<Hypergraph> {
    let uv = node_set([u, v]);
    if u == v || !host.edges().contains(&uv) {
        return Err(Error::HostMismatch(format!("{} is not an edge of the host", fmt_set(&uv))));
    }
    let edges: BTreeSet<NodeSet> = host
        .edges()
        .iter()
        .filter(|e| **e != uv)
        .map(|e| if e.contains(u) { image(e, u, v) } else { e.clone() })
        .collect();
    Hypergraph::new(host.nodes().iter().filter(|w| *w != u).cloned(), edges)
}

fn image(e: &NodeSet, u: &str, v: &str) -> NodeSet {
    e.iter().map(|w| if w == u { v.to_string() } else { w.clone() }).collect()
}

/// Lifts an instance on `host / {u,v}` (contracted to `v`) to `host`, trading
/// the constraint `x_u = x_v` for the penalty `-M (x_u - x_v)^2` with
/// `M = Σ |c'|`.
///
/// An edge `{u,w}` inherits `c'_{v,w}` only when `{v,w}` is not itself a host
/// edge; otherwise `{v,w}` keeps it and `{u,w}` gets zero, so the cost is
/// counted once under `x_u = x_v`.
pub fn minor_contract_edge(inst: &BqoInstance, u: &str, v: &str, host: &Hypergraph) -> Result<Reduction<BqoInstance>> {
    let minor = contracted_graph(host, u, v)?;
    check_host(inst.graph(), &minor, &format!("after contracting {{{u},{v}}} to {v}"))?;
    let m = inst.coefficient_mass();
    let mut nodes = inst.node_costs().clone();
    nodes.insert(u.to_string(), -m.clone());
    nodes.insert(v.to_string(), &inst.node_cost(v) - &m);
    let uv = node_set([u, v]);
    let mut edges = BTreeMap::new();
    let mut mapping: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for e in host.edges() {
        let cost = if *e == uv {
            Rational::from_int(2) * &m
        } else if e.contains(u) {
            let target = image(e, u, v);
            if host.edges().contains(&target) {
                Rational::zero()
            } else {
                mapping.entry(fmt_set(&target)).or_default().push(fmt_set(e));
                inst.edge_cost(&target)
            }
        } else {
            inst.edge_cost(e)
        };
        edges.insert(e.clone(), cost);
    }
    let log = Provenance {
        penalty: Some(m),
        mapping,
        ..Provenance::new("contract_edge").param("edge", &uv).param("into", v)
    };
    Ok(Reduction {
        instance: build(host, nodes, edges, inst.offset()),
        log,
    })
}
