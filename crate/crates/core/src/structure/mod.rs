//! Hypergraph structure: gaps, nest points and nest-sets, elimination orders,
//! nest-set width and gap, β-cycles and a treewidth heuristic.

mod bits;
mod cycle;
mod order;
mod search;
mod treewidth;

pub use cycle::{cycle_separators, find_beta_cycle, nsw_lower_bound_from_cycle, verify_beta_cycle, BetaCycle};
pub use order::{NestSetEliminationOrder, OrderFile};
pub use search::{
    beta_acyclic, find_order_bounded_gap, find_order_bounded_width, nest_sets, nsg_exact, nsw_exact, Limits,
};
pub use treewidth::treewidth_upper_bound;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeSet};

/// `max |V'| - |e ∩ V'|` over the edges `e` meeting `V'`.
pub fn gap(g: &Hypergraph, subset: &NodeSet) -> Result<usize> {
    check_subset(g, subset)?;
    g.edges()
        .iter()
        .filter(|e| !e.is_disjoint(subset))
        .map(|e| subset.len() - e.intersection(subset).count())
        .max()
        .ok_or_else(|| Error::NoIncidentEdge(subset.iter().cloned().collect()))
}

/// True iff the edges containing `v` are totally ordered by inclusion.
pub fn is_nest_point(g: &Hypergraph, v: &str) -> Result<bool> {
    if !g.nodes().contains(v) {
        return Err(Error::NotSubset(vec![v.to_string()]));
    }
    let mut incident: Vec<&NodeSet> = g.incident_edges(v).collect();
    Ok(is_chain(&mut incident))
}

/// True iff `{e \ N : e ∩ N ≠ ∅}` is totally ordered by inclusion.
pub fn is_nest_set(g: &Hypergraph, n: &NodeSet) -> Result<bool> {
    if n.is_empty() {
        return Err(Error::EmptySet);
    }
    check_subset(g, n)?;
    let residuals: Vec<NodeSet> = g
        .edges()
        .iter()
        .filter(|e| !e.is_disjoint(n))
        .map(|e| e.difference(n).cloned().collect())
        .collect();
    let mut refs: Vec<&NodeSet> = residuals.iter().collect();
    Ok(is_chain(&mut refs))
}

fn is_chain(family: &mut Vec<&NodeSet>) -> bool {
    family.sort_by_key(|s| s.len());
    family.windows(2).all(|w| w[0].is_subset(w[1]))
}

fn check_subset(g: &Hypergraph, s: &NodeSet) -> Result<()> {
    let missing: Vec<String> = s.difference(g.nodes()).cloned().collect();
    if missing.is_empty() {
        Ok(())
    } else {
        Err(Error::NotSubset(missing))
    }
}

#[cfg(test)]
mod tests;
