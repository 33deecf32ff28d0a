use std::collections::BTreeSet;

use super::system::{PolyhedralSystem, Relation, Role, VarKey};
use crate::error::{Error, Result};
use crate::hypergraph::{fmt_set, NodeId, NodeSet, SignedEdge, SignedHypergraph};
use crate::rational::Rational;

/// A signed hypergraph pointed at `apex`: the chain of signed edges through
/// the apex together with their apex-removed subedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointedPiece {
    pub apex: NodeId,
    /// Underlying edge of the largest chain member.
    pub nodes: NodeSet,
    /// Signed edges containing the apex, by increasing size.
    pub chain: Vec<SignedEdge>,
    /// `s - apex` for chain members with at least three nodes.
    pub derived: Vec<SignedEdge>,
}

impl PointedPiece {
    pub fn edges(&self) -> impl Iterator<Item = &SignedEdge> {
        self.chain.iter().chain(self.derived.iter())
    }

    pub fn as_signed_hypergraph(&self) -> SignedHypergraph {
        let edges: BTreeSet<SignedEdge> = self.edges().cloned().collect();
        SignedHypergraph::new(self.nodes.iter().cloned(), edges).expect("piece edges lie on its nodes")
    }
}

/// Signed edges containing `v`, sorted by size, after checking that their
/// underlying edges form a chain.
fn chain_at(h: &SignedHypergraph, v: &str) -> Result<Vec<SignedEdge>> {
    if !h.nodes().contains(v) {
        return Err(Error::NotSubset(vec![v.to_string()]));
    }
    let mut chain: Vec<SignedEdge> = h.incident_edges(v).cloned().collect();
    chain.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for w in chain.windows(2) {
        if !w[0].nodes().is_subset(&w[1].nodes()) {
            return Err(Error::NotNestPoint(format!(
                "{v}: incident edges {} and {} are not nested",
                w[0], w[1]
            )));
        }
    }
    Ok(chain)
}

fn subedges(chain: &[SignedEdge], v: &str) -> Vec<SignedEdge> {
    let apex = NodeSet::from([v.to_string()]);
    let derived: BTreeSet<SignedEdge> = chain.iter().filter_map(|s| s.restrict(&apex)).collect();
    derived.into_iter().collect()
}

/// Adds `s - v` for every signed edge `s ∋ v` with `|s| ≥ 3`.
pub fn augment_subedges(h: &SignedHypergraph, v: &str) -> Result<SignedHypergraph> {
    let chain = chain_at(h, v)?;
    let edges: BTreeSet<SignedEdge> = h.edges().iter().cloned().chain(subedges(&chain, v)).collect();
    SignedHypergraph::new(h.nodes().iter().cloned(), edges)
}

/// The piece pointed at `v`. Requires the subedges `s - v` to be present.
pub fn pointed_piece(h: &SignedHypergraph, v: &str) -> Result<PointedPiece> {
    let chain = chain_at(h, v)?;
    let Some(top) = chain.last() else {
        return Err(Error::NoIncidentEdge(vec![v.to_string()]));
    };
    let derived = subedges(&chain, v);
    if let Some(missing) = derived.iter().find(|s| !h.contains_edge(s)) {
        return Err(Error::MissingEdge(format!("subedge {missing} of the chain at {v}")));
    }
    Ok(PointedPiece {
        apex: v.to_string(),
        nodes: top.nodes(),
        chain,
        derived,
    })
}

/// Vertex-listing formulation of the piece: one `λ_x ≥ 0` per assignment
/// `x` of the piece's nodes, `Σ λ_x = 1`, and every node and signed-edge
/// variable equal to the total weight of the assignments where it is one.
///
/// Node variables get role `Node`, edge variables `edge_role`.
pub fn pointed_ef(piece: &PointedPiece, edge_role: Role) -> PolyhedralSystem {
    let mut sys = PolyhedralSystem::new();
    let nodes: Vec<&NodeId> = piece.nodes.iter().collect();
    assert!(nodes.len() < 31, "piece {} is too large to enumerate", fmt_set(&piece.nodes));
    let points = 1usize << nodes.len();
    let node_vars: Vec<usize> = nodes.iter().map(|v| sys.variable(VarKey::Node((*v).clone()), Role::Node)).collect();
    let edge_vars: Vec<usize> = piece
        .edges()
        .map(|s| sys.variable(VarKey::Edge(s.clone()), edge_role))
        .collect();
    let lambda: Vec<usize> = (0..points)
        .map(|x| {
            let bits: String = (0..nodes.len()).map(|i| if x >> i & 1 == 1 { '1' } else { '0' }).collect();
            sys.variable(
                VarKey::Lambda {
                    apex: piece.apex.clone(),
                    bits,
                },
                Role::Lambda,
            )
        })
        .collect();
    let one = Rational::one;
    let neg = || Rational::from_int(-1);

    sys.push_indexed(lambda.iter().map(|&l| (l, one())).collect(), Relation::Eq, one());
    for (i, &z) in node_vars.iter().enumerate() {
        let mut terms = vec![(z, one())];
        terms.extend((0..points).filter(|x| x >> i & 1 == 1).map(|x| (lambda[x], neg())));
        sys.push_indexed(terms, Relation::Eq, Rational::zero());
    }
    for (s, &z) in piece.edges().zip(&edge_vars) {
        let mut terms = vec![(z, one())];
        for (x, &l) in lambda.iter().enumerate() {
            let value = |v: &str| {
                let i = nodes.binary_search_by(|w| w.as_str().cmp(v)).expect("edge node in piece");
                x >> i & 1 == 1
            };
            if s.evaluate(value) {
                terms.push((l, neg()));
            }
        }
        sys.push_indexed(terms, Relation::Eq, Rational::zero());
    }
    sys
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::node_set;

    fn chain_example() -> SignedHypergraph {
        SignedHypergraph::from_specs(&["a", "b", "v"], &["a+ v+", "a+ b+ v+"])
    }

    #[test]
    fn augment_adds_one_subedge() {
        let h = augment_subedges(&chain_example(), "v").unwrap();
        assert!(h.contains_edge(&SignedEdge::parse("a+ b+")));
        assert_eq!(h.edges().len(), 3);
        // already closed: unchanged
        assert_eq!(augment_subedges(&h, "v").unwrap(), h);
    }

    #[test]
    fn pairs_contribute_no_subedges() {
        let h = SignedHypergraph::from_specs(&["a", "v"], &["a+ v+", "a+ v-"]);
        assert_eq!(augment_subedges(&h, "v").unwrap(), h);
    }

    #[test]
    fn augment_rejects_non_nest_points() {
        let h = SignedHypergraph::from_specs(&["a", "b", "v"], &["a+ v+", "b+ v+"]);
        assert!(matches!(augment_subedges(&h, "v"), Err(Error::NotNestPoint(_))));
        assert!(pointed_piece(&h, "v").is_err());
    }

    #[test]
    fn pieces_from_the_examples() {
        let h = augment_subedges(&chain_example(), "v").unwrap();
        let p = pointed_piece(&h, "v").unwrap();
        assert_eq!(p.nodes, node_set(["a", "b", "v"]));
        assert_eq!(p.derived, vec![SignedEdge::parse("a+ b+")]);

        let single = SignedHypergraph::from_specs(&["a", "v"], &["a+ v+"]);
        let p = pointed_piece(&single, "v").unwrap();
        assert_eq!(p.nodes, node_set(["a", "v"]));
        assert!(p.derived.is_empty());

        let parallel = SignedHypergraph::from_specs(&["a", "v"], &["a+ v+", "a+ v-"]);
        assert_eq!(pointed_piece(&parallel, "v").unwrap().chain.len(), 2);
    }

    #[test]
    fn pointed_piece_requires_closure() {
        assert!(matches!(pointed_piece(&chain_example(), "v"), Err(Error::MissingEdge(_))));
    }

    #[test]
    fn mccormick_piece_counts() {
        let h = SignedHypergraph::from_specs(&["a", "b"], &["a+ b+"]);
        let sys = pointed_ef(&pointed_piece(&h, "a").unwrap(), Role::SignedEdge);
        assert_eq!(sys.num_vars(), 7);
        assert_eq!(sys.num_constraints(), 4);
        assert!(sys.has_unit_coefficients());
        assert_eq!(sys.projection().len(), 3);
    }

    #[test]
    fn chain_piece_has_eight_lambdas() {
        let h = augment_subedges(&chain_example(), "v").unwrap();
        let sys = pointed_ef(&pointed_piece(&h, "v").unwrap(), Role::SignedEdge);
        let lambdas = sys.variables().iter().filter(|v| v.role == Role::Lambda).count();
        assert_eq!(lambdas, 8);
        assert_eq!(sys.num_vars(), 8 + 3 + 3);
    }
}
