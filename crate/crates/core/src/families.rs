//! Named hypergraph families and seeded random instance generators.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hypergraph::{Hypergraph, NodeId, NodeSet, Sign, SignedEdge, SignedHypergraph};
use crate::instance::BqoInstance;
use crate::rational::Rational;

/// Node ids `v1..vn`, zero-padded so lexicographic order matches numeric order.
pub fn node_ids(n: usize) -> Vec<NodeId> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("v{i:0width$}")).collect()
}

/// All subsets of `n` nodes of cardinality `n - 1`.
pub fn example1(n: usize) -> Hypergraph {
    complete_uniform(n, n - 1)
}

/// All subsets of `n` nodes of cardinality `k`.
pub fn complete_uniform(n: usize, k: usize) -> Hypergraph {
    let ids = node_ids(n);
    let edges = (0u64..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| ids[i].clone()).collect::<NodeSet>());
    Hypergraph::new(ids.clone(), edges).expect("valid family")
}

/// The graph with edges `{v1, vi}` and `{v2, vi}` for `i = 3..n`.
pub fn example2(n: usize) -> Hypergraph {
    let ids = node_ids(n);
    let edges = (2..n).flat_map(|i| {
        [
            [ids[0].clone(), ids[i].clone()].into_iter().collect::<NodeSet>(),
            [ids[1].clone(), ids[i].clone()].into_iter().collect::<NodeSet>(),
        ]
    });
    Hypergraph::new(ids.clone(), edges).expect("valid family")
}

pub fn cycle(n: usize) -> Hypergraph {
    let ids = node_ids(n);
    let edges = (0..n).map(|i| [ids[i].clone(), ids[(i + 1) % n].clone()].into_iter().collect::<NodeSet>());
    Hypergraph::new(ids.clone(), edges).expect("valid family")
}

pub fn path(n: usize) -> Hypergraph {
    let ids = node_ids(n);
    let edges = (0..n.saturating_sub(1)).map(|i| [ids[i].clone(), ids[i + 1].clone()].into_iter().collect::<NodeSet>());
    Hypergraph::new(ids.clone(), edges).expect("valid family")
}

pub fn triangle() -> Hypergraph {
    cycle(3)
}

/// Lifts a hypergraph to a signed hypergraph with all signs positive.
pub fn all_positive(g: &Hypergraph) -> SignedHypergraph {
    SignedHypergraph::new(
        g.nodes().iter().cloned(),
        g.edges().iter().map(|e| SignedEdge::positive(e).expect("edges have two nodes")),
    )
    .expect("valid lift")
}

/// Random hypergraph on `n` nodes with up to `max_edges` edges of
/// cardinality `2..=max_rank`.
pub fn random_hypergraph<R: Rng>(rng: &mut R, n: usize, max_edges: usize, max_rank: usize) -> Hypergraph {
    let ids = node_ids(n);
    let mut edges = BTreeSet::new();
    if n >= 2 {
        let m = rng.gen_range(0..=max_edges);
        for _ in 0..m {
            let size = rng.gen_range(2..=max_rank.min(n).max(2));
            let picked: NodeSet = ids.choose_multiple(rng, size).cloned().collect();
            edges.insert(picked);
        }
    }
    Hypergraph::new(ids, edges).expect("valid random hypergraph")
}

/// Random signed hypergraph with random signs. With probability one half a
/// new edge reuses the node set of an earlier one, producing parallel edges.
pub fn random_signed_hypergraph<R: Rng>(rng: &mut R, n: usize, max_edges: usize, max_rank: usize) -> SignedHypergraph {
    let ids = node_ids(n);
    let mut edges: BTreeSet<SignedEdge> = BTreeSet::new();
    let mut supports: Vec<NodeSet> = Vec::new();
    if n >= 2 {
        let m = rng.gen_range(1..=max_edges.max(1));
        for _ in 0..m {
            let support = if !supports.is_empty() && rng.gen_bool(0.5) {
                supports.choose(rng).unwrap().clone()
            } else {
                let size = rng.gen_range(2..=max_rank.min(n).max(2));
                ids.choose_multiple(rng, size).cloned().collect()
            };
            let literals: BTreeMap<NodeId, Sign> = support
                .iter()
                .map(|v| (v.clone(), if rng.gen_bool(0.5) { Sign::Pos } else { Sign::Neg }))
                .collect();
            edges.insert(SignedEdge::new(literals).expect("two or more nodes"));
            supports.push(support);
        }
    }
    SignedHypergraph::new(ids, edges).expect("valid random signed hypergraph")
}

/// Random integer costs in `[-5, 5]` on every node and edge of a graph, and
/// an offset in `[-3, 3]`.
pub fn random_bqo<R: Rng>(rng: &mut R, g: &Hypergraph) -> BqoInstance {
    let mut draw = |r: i64| Rational::from_int(rng.gen_range(-r..=r));
    let nodes = g.nodes().iter().map(|v| (v.clone(), draw(5))).collect();
    let edges = g.edges().iter().map(|e| (e.clone(), draw(5))).collect();
    BqoInstance::new(g.clone(), nodes, edges, draw(3)).expect("costs on graph items")
}

/// Random BQO instance whose edges are pairs inside edges of `host`, with
/// the host edge each pair was drawn from.
pub fn random_host_bqo<R: Rng>(rng: &mut R, host: &Hypergraph) -> (BqoInstance, BTreeMap<NodeSet, NodeSet>) {
    let mut map = BTreeMap::new();
    for g in host.edges() {
        let members: Vec<&NodeId> = g.iter().collect();
        for _ in 0..rng.gen_range(0..=2) {
            let pair: NodeSet = members.choose_multiple(rng, 2).map(|v| (*v).clone()).collect();
            map.entry(pair).or_insert_with(|| g.clone());
        }
    }
    let graph = Hypergraph::new(host.nodes().iter().cloned(), map.keys().cloned()).expect("pairs of host nodes");
    (random_bqo(rng, &graph), map)
}

/// Random β-acyclic hypergraph. Nodes are added one at a time; a new node
/// `v` joins an existing edge `f` (giving `f + v`) and optionally a single
/// node `u` of `f` (giving `{u, v}`), so its incident edges form a chain and
/// deleting it restores the previous hypergraph. Reverse insertion order is
/// therefore a nest point elimination order.
pub fn random_beta_acyclic<R: Rng>(rng: &mut R, n: usize, max_rank: usize) -> Hypergraph {
    let ids = node_ids(n);
    let mut edges: BTreeSet<NodeSet> = BTreeSet::new();
    for i in 1..n {
        let v = &ids[i];
        let grow: Vec<&NodeSet> = edges.iter().filter(|f| f.len() < max_rank).collect();
        let base: NodeSet = if !grow.is_empty() && rng.gen_bool(0.6) {
            (*grow.choose(rng).unwrap()).clone()
        } else if rng.gen_bool(0.8) {
            [ids[rng.gen_range(0..i)].clone()].into_iter().collect()
        } else {
            continue;
        };
        if base.len() >= 2 && rng.gen_bool(0.5) {
            let u = base.iter().nth(rng.gen_range(0..base.len())).unwrap().clone();
            edges.insert([u, v.clone()].into_iter().collect());
        }
        let mut e = base;
        e.insert(v.clone());
        edges.insert(e);
    }
    Hypergraph::new(ids, edges).expect("valid random hypergraph")
}
