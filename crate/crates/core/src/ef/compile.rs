use serde::Serialize;

use super::inflation::{inflate, InflationRecord};
use super::piece::{augment_subedges, pointed_ef, pointed_piece};
use super::system::{PolyhedralSystem, Relation, Role, VarKey};
use crate::error::Result;
use crate::hypergraph::{NodeId, NodeSet, SignedHypergraph};
use crate::rational::Rational;
use crate::structure::NestSetEliminationOrder;

/// An extended formulation together with the bookkeeping of its construction.
#[derive(Debug, Clone)]
pub struct CompiledEf {
    pub system: PolyhedralSystem,
    pub inflations: Vec<InflationRecord>,
    pub steps: Vec<StepLedger>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepLedger {
    pub nodes: Vec<NodeId>,
    pub gap: Option<usize>,
    pub inflated_edges: usize,
    pub largest_family: usize,
    pub pieces: Vec<PieceLedger>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PieceLedger {
    pub apex: NodeId,
    pub nodes: usize,
    pub chain: usize,
    pub derived: usize,
}

/// Builds an extended formulation of the pseudo-Boolean polytope of `h` along
/// a nest-set elimination order of its underlying hypergraph.
///
/// Each step `N` first inflates (when `|N| ≥ 2`) every signed edge `s` that
/// meets `N` to `s ∪ N`, recording `z_s = Σ z_s'`. Then the nodes of `N` are
/// eliminated in sorted order: the subedges `s - v` are added, the
/// vertex-listing formulation of the piece pointed at `v` is emitted, and `v`
/// is deleted. Node variables are bounded by `[0, 1]` like every variable, so
/// nodes without incident edges need nothing further.
pub fn compile_ef(h: &SignedHypergraph, order: &NestSetEliminationOrder) -> Result<CompiledEf> {
    let order = NestSetEliminationOrder::replay(&h.underlying(), order.steps().to_vec())?;
    let mut sys = PolyhedralSystem::new();
    for v in h.nodes() {
        sys.variable(VarKey::Node(v.clone()), Role::Node);
    }
    for s in h.edges() {
        sys.variable(VarKey::Edge(s.clone()), Role::SignedEdge);
    }
    let mut current = h.clone();
    let mut inflations = Vec::new();
    let mut steps = Vec::new();
    for (step, gap) in order.steps().iter().zip(order.step_gaps()) {
        let mut ledger = StepLedger {
            nodes: step.iter().cloned().collect(),
            gap: *gap,
            inflated_edges: 0,
            largest_family: 0,
            pieces: Vec::new(),
        };
        if step.len() >= 2 {
            let meeting: Vec<_> = current
                .edges()
                .iter()
                .filter(|s| step.iter().any(|v| s.contains(v)))
                .cloned()
                .collect();
            for s in meeting {
                let target: NodeSet = s.nodes().union(step).cloned().collect();
                if target.len() == s.len() {
                    continue;
                }
                let (next, record) = inflate(&current, &s, &target)?;
                let mut terms = vec![(sys.variable(VarKey::Edge(s.clone()), Role::Derived), Rational::one())];
                for t in &record.family {
                    terms.push((sys.variable(VarKey::Edge(t.clone()), Role::Inflation), Rational::from_int(-1)));
                }
                sys.push_indexed(terms, Relation::Eq, Rational::zero());
                ledger.inflated_edges += 1;
                ledger.largest_family = ledger.largest_family.max(record.family.len());
                inflations.push(record);
                current = next;
            }
        }
        for v in step {
            let augmented = augment_subedges(&current, v)?;
            for s in augmented.edges() {
                sys.variable(VarKey::Edge(s.clone()), Role::Derived);
            }
            if augmented.incident_edges(v).next().is_some() {
                let piece = pointed_piece(&augmented, v)?;
                ledger.pieces.push(PieceLedger {
                    apex: v.clone(),
                    nodes: piece.nodes.len(),
                    chain: piece.chain.len(),
                    derived: piece.derived.len(),
                });
                sys.juxtapose(&pointed_ef(&piece, Role::Derived));
            }
            current = augmented.delete_nodes(&NodeSet::from([v.clone()]))?;
        }
        steps.push(ledger);
    }
    Ok(CompiledEf {
        system: sys,
        inflations,
        steps,
    })
}

/// Upper bounds on the variable and constraint counts of `compile_ef` for a
/// hypergraph with `n` nodes, `m` signed edges and rank `r`, along an order of
/// gap `k`. Inflated edges have at most `r + k` nodes, so each piece lists at
/// most `2^(r+k)` assignments and carries at most `2^(k+1) m` signed edges.
pub fn size_bound(n: usize, m: usize, r: usize, k: usize) -> (u128, u128) {
    let (n, m) = (n as u128, m as u128);
    let piece_rank = (r + k).min(n as usize) as u32;
    let edges_per_piece = (1u128 << (k + 1)) * m;
    let vars = n * ((1u128 << piece_rank) + edges_per_piece) + n + m;
    let constraints = n * (1 + piece_rank as u128 + edges_per_piece) + m;
    (vars, constraints)
}
