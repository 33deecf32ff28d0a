use std::collections::{BTreeMap, BTreeSet};

use crate::hypergraph::{Hypergraph, NodeId};

/// Width of a min-fill elimination ordering of the intersection graph of
/// `g` (for a graph, of `g` itself). Always an upper bound on treewidth.
///
/// Ties on fill are broken by smaller degree, then by node id.
pub fn treewidth_upper_bound(g: &Hypergraph) -> usize {
    let mut adj: BTreeMap<NodeId, BTreeSet<NodeId>> = g.nodes().iter().map(|v| (v.clone(), BTreeSet::new())).collect();
    for e in g.intersection_graph().edges() {
        let mut it = e.iter();
        let (a, b) = (it.next().unwrap(), it.next().unwrap());
        adj.get_mut(a).unwrap().insert(b.clone());
        adj.get_mut(b).unwrap().insert(a.clone());
    }
    let mut width = 0;
    while !adj.is_empty() {
        let v = adj
            .iter()
            .min_by_key(|(v, nb)| (fill_in(&adj, nb), nb.len(), (*v).clone()))
            .map(|(v, _)| v.clone())
            .unwrap();
        let nb = adj.remove(&v).unwrap();
        width = width.max(nb.len());
        for a in &nb {
            let entry = adj.get_mut(a).unwrap();
            entry.remove(&v);
            entry.extend(nb.iter().filter(|b| *b != a).cloned());
        }
    }
    width
}

fn fill_in(adj: &BTreeMap<NodeId, BTreeSet<NodeId>>, nb: &BTreeSet<NodeId>) -> usize {
    let list: Vec<&NodeId> = nb.iter().collect();
    let mut missing = 0;
    for (i, a) in list.iter().enumerate() {
        for b in &list[i + 1..] {
            if !adj[*a].contains(*b) {
                missing += 1;
            }
        }
    }
    missing
}
