use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::bits::{self, Indexed, Mask};
use super::search::Limits;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId, NodeSet};

/// A β-cycle `v_1, e_1, v_2, e_2, ..., v_l, e_l, v_1`: `nodes[i]` lies in
/// `edges[i - 1]` and `edges[i]` (indices mod `l`) and in no other edge of
/// the cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaCycle {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<NodeSet>,
}

impl BetaCycle {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Exact check of the β-cycle conditions; edges must belong to `g`.
pub fn verify_beta_cycle(g: &Hypergraph, c: &BetaCycle) -> bool {
    check_cycle(g, c).is_ok()
}

fn check_cycle(g: &Hypergraph, c: &BetaCycle) -> Result<()> {
    let l = c.nodes.len();
    let bad = |m: String| Err(Error::InvalidCycle(m));
    if l < 3 || c.edges.len() != l {
        return bad(format!("{l} nodes and {} edges; need equal lengths of at least 3", c.edges.len()));
    }
    if c.nodes.iter().collect::<BTreeSet<_>>().len() != l {
        return bad("nodes are not distinct".into());
    }
    if c.edges.iter().collect::<BTreeSet<_>>().len() != l {
        return bad("edges are not distinct".into());
    }
    if let Some(e) = c.edges.iter().find(|e| !g.edges().contains(*e)) {
        return bad(format!("{} is not an edge", crate::hypergraph::fmt_set(e)));
    }
    for (i, v) in c.nodes.iter().enumerate() {
        let prev = (i + l - 1) % l;
        for (j, e) in c.edges.iter().enumerate() {
            let should = j == i || j == prev;
            if e.contains(v) != should {
                return bad(format!("membership of {v} in edge {} is wrong", j + 1));
            }
        }
    }
    Ok(())
}

/// A shortest β-cycle, or `None` when the hypergraph is β-acyclic.
///
/// Exhaustive: cycles are grown from their least node, one length at a time,
/// enforcing the exclusive-membership condition as each node and edge is
/// appended.
pub fn find_beta_cycle(g: &Hypergraph, limits: &Limits) -> Result<Option<BetaCycle>> {
    limits.check(g, "find_beta_cycle input")?;
    let ix = Indexed::new(g)?;
    let edges = &ix.edges;
    let max_len = ix.ids.len().min(edges.len());
    for len in 3..=max_len {
        for start in 0..ix.ids.len() {
            let mut st = CycleSearch {
                edges,
                len,
                start,
                nodes: vec![start],
                used: Vec::new(),
                node_mask: 1 << start,
                edge_union: 0,
            };
            if st.extend() {
                return Ok(Some(BetaCycle {
                    nodes: st.nodes.iter().map(|&i| ix.ids[i].clone()).collect(),
                    edges: st.used.iter().map(|&j| ix.set(edges[j])).collect(),
                }));
            }
        }
    }
    Ok(None)
}

struct CycleSearch<'a> {
    edges: &'a [Mask],
    len: usize,
    start: usize,
    nodes: Vec<usize>,
    used: Vec<usize>,
    node_mask: Mask,
    // union of all chosen edges except the last one
    edge_union: Mask,
}

impl CycleSearch<'_> {
    /// Chooses `e_i` for the current last node `v_i`, then `v_{i+1}`.
    fn extend(&mut self) -> bool {
        let i = self.nodes.len();
        let current = *self.nodes.last().unwrap();
        let closing = i == self.len;
        // nodes that e_i must avoid: all chosen except v_i, plus v_1 unless closing
        let mut forbidden = self.node_mask & !(1 << current);
        if closing {
            forbidden &= !(1 << self.start);
        }
        for j in 0..self.edges.len() {
            let e = self.edges[j];
            if e >> current & 1 == 0 || e & forbidden != 0 || self.used.contains(&j) {
                continue;
            }
            if closing {
                if e >> self.start & 1 == 1 {
                    self.used.push(j);
                    return true;
                }
                continue;
            }
            let prev_union = self.edge_union;
            let union_without_last = self.used.last().map_or(0, |&p| self.edges[p]) | prev_union;
            // v_{i+1}: in e_i, larger than the start, not yet chosen, in no earlier edge
            let candidates = e & !self.node_mask & !union_without_last & !((1 << (self.start + 1)) - 1);
            self.used.push(j);
            self.edge_union = union_without_last;
            for next in bits::members(candidates) {
                self.nodes.push(next);
                self.node_mask |= 1 << next;
                if self.extend() {
                    return true;
                }
                self.nodes.pop();
                self.node_mask &= !(1 << next);
            }
            self.used.pop();
            self.edge_union = prev_union;
        }
        false
    }
}

/// The sets `U_i = (e_{i-1} ∩ e_i) \ ⋃_{j ≠ i-1, i} e_j` of a cycle.
pub fn cycle_separators(c: &BetaCycle) -> Vec<NodeSet> {
    let l = c.len();
    (0..l)
        .map(|i| {
            let prev = (i + l - 1) % l;
            let others: NodeSet = (0..l)
                .filter(|&j| j != i && j != prev)
                .flat_map(|j| c.edges[j].iter().cloned())
                .collect();
            c.edges[prev]
                .intersection(&c.edges[i])
                .filter(|v| !others.contains(*v))
                .cloned()
                .collect()
        })
        .collect()
}

/// Lower bound `min_k Σ_{j ≠ k} |U_j|` on the nest-set width.
pub fn nsw_lower_bound_from_cycle(g: &Hypergraph, c: &BetaCycle) -> Result<usize> {
    check_cycle(g, c)?;
    let sizes: Vec<usize> = cycle_separators(c).iter().map(NodeSet::len).collect();
    let total: usize = sizes.iter().sum();
    Ok(total - sizes.iter().max().copied().unwrap_or(0))
}
