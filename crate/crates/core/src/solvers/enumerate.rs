use std::collections::BTreeMap;

use crate::ef::VarKey;
use crate::error::{Error, Result};
use crate::hypergraph::{NodeId, Sign, SignedHypergraph};
use crate::instance::{BqoInstance, PboInstance};
use crate::rational::Rational;

/// Largest node count enumerated by default.
pub const ENUMERATION_LIMIT: usize = 20;

fn check_limit(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit.min(63) {
        return Err(Error::SizeLimit {
            what,
            size: n,
            limit: limit.min(63),
        });
    }
    Ok(())
}

/// Coordinates of PBS points: the nodes, then the signed edges, both sorted.
pub fn pbs_coordinates(h: &SignedHypergraph) -> Vec<VarKey> {
    h.nodes()
        .iter()
        .map(|v| VarKey::Node(v.clone()))
        .chain(h.edges().iter().map(|s| VarKey::Edge(s.clone())))
        .collect()
}

/// Every point of the pseudo-Boolean set, one per node assignment, in the
/// order of the assignment read as a binary number (first node lowest).
pub fn enumerate_pbs(h: &SignedHypergraph, limit: usize) -> Result<Vec<Vec<bool>>> {
    let n = h.nodes().len();
    check_limit("nodes to enumerate", n, limit)?;
    let edges: Vec<(u64, u64)> = h.edges().iter().map(|s| literal_masks(h, s.literals())).collect();
    Ok((0u64..1 << n)
        .map(|x| {
            (0..n)
                .map(|i| x >> i & 1 == 1)
                .chain(edges.iter().map(|&(p, q)| x & p == p && x & q == 0))
                .collect()
        })
        .collect())
}

fn literal_masks(h: &SignedHypergraph, literals: &BTreeMap<NodeId, Sign>) -> (u64, u64) {
    let index = |v: &NodeId| h.nodes().iter().position(|w| w == v).expect("edge node");
    let mut pos = 0;
    let mut neg = 0;
    for (v, g) in literals {
        match g {
            Sign::Pos => pos |= 1 << index(v),
            Sign::Neg => neg |= 1 << index(v),
        }
    }
    (pos, neg)
}

/// A product term `cost · Π_{pos} x · Π_{neg} (1 - x)` over node bits.
#[derive(Debug, Clone)]
struct Term {
    pos: u64,
    neg: u64,
    cost: Rational,
}

/// An objective that brute force can evaluate.
pub trait Objective {
    fn objective_nodes(&self) -> Vec<NodeId>;
    /// Product terms over `objective_nodes` and the constant.
    fn terms(&self) -> (Vec<(u64, u64, Rational)>, Rational);
}

impl Objective for PboInstance {
    fn objective_nodes(&self) -> Vec<NodeId> {
        self.hypergraph().nodes().iter().cloned().collect()
    }

    fn terms(&self) -> (Vec<(u64, u64, Rational)>, Rational) {
        let h = self.hypergraph();
        let bit = |v: &str| 1u64 << h.nodes().iter().position(|w| w == v).expect("known node");
        let mut terms: Vec<_> = self.node_costs().iter().map(|(v, c)| (bit(v), 0, c.clone())).collect();
        for (s, c) in self.edge_costs() {
            if !c.is_zero() {
                let (p, q) = literal_masks(h, s.literals());
                terms.push((p, q, c.clone()));
            }
        }
        (terms, self.offset().clone())
    }
}

impl Objective for BqoInstance {
    fn objective_nodes(&self) -> Vec<NodeId> {
        self.graph().nodes().iter().cloned().collect()
    }

    fn terms(&self) -> (Vec<(u64, u64, Rational)>, Rational) {
        let g = self.graph();
        let bit = |v: &str| 1u64 << g.nodes().iter().position(|w| w == v).expect("known node");
        let mut terms: Vec<_> = self.node_costs().iter().map(|(v, c)| (bit(v), 0, c.clone())).collect();
        for (e, c) in self.edge_costs() {
            terms.push((e.iter().map(|v| bit(v)).fold(0, |a, b| a | b), 0, c.clone()));
        }
        (terms, self.offset().clone())
    }
}

/// Exact optimum and every optimal assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BruteForceSolution {
    pub optimum: Rational,
    pub nodes: Vec<NodeId>,
    /// Optimal assignments as bit masks over `nodes` (first node lowest), ascending.
    pub argmax: Vec<u64>,
}

impl BruteForceSolution {
    pub fn assignment(&self, mask: u64) -> BTreeMap<NodeId, bool> {
        self.nodes
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), mask >> i & 1 == 1))
            .collect()
    }

    pub fn is_optimal(&self, value: impl Fn(&str) -> bool) -> bool {
        let mask = self
            .nodes
            .iter()
            .enumerate()
            .filter(|(_, v)| value(v))
            .fold(0u64, |m, (i, _)| m | 1 << i);
        self.argmax.binary_search(&mask).is_ok()
    }
}

/// Maximizes by enumerating all `2^|V|` assignments.
pub fn brute_force_solve(inst: &impl Objective, limit: usize) -> Result<BruteForceSolution> {
    let nodes = inst.objective_nodes();
    check_limit("nodes to enumerate", nodes.len(), limit)?;
    let (raw, offset) = inst.terms();
    let terms: Vec<Term> = raw
        .into_iter()
        .filter(|t| !t.2.is_zero())
        .map(|(pos, neg, cost)| Term { pos, neg, cost })
        .collect();
    let mut best: Option<Rational> = None;
    let mut argmax = Vec::new();
    for x in 0u64..1 << nodes.len() {
        let mut value = offset.clone();
        for t in &terms {
            if x & t.pos == t.pos && x & t.neg == 0 {
                value += &t.cost;
            }
        }
        match &best {
            Some(b) if value < *b => {}
            Some(b) if value == *b => argmax.push(x),
            _ => {
                best = Some(value);
                argmax.clear();
                argmax.push(x);
            }
        }
    }
    Ok(BruteForceSolution {
        optimum: best.expect("at least one assignment"),
        nodes,
        argmax,
    })
}

/// `max Σ c_k z_k` over the pseudo-Boolean set, for `c` indexed like
/// `pbs_coordinates`.
pub fn pbs_linear_max(h: &SignedHypergraph, c: &[Rational], limit: usize) -> Result<(Rational, u64)> {
    let n = h.nodes().len();
    check_limit("nodes to enumerate", n, limit)?;
    assert_eq!(c.len(), n + h.edges().len(), "one coefficient per coordinate");
    let edges: Vec<(u64, u64)> = h.edges().iter().map(|s| literal_masks(h, s.literals())).collect();
    let mut best: Option<(Rational, u64)> = None;
    for x in 0u64..1 << n {
        let mut value = Rational::zero();
        for (i, ci) in c[..n].iter().enumerate() {
            if x >> i & 1 == 1 && !ci.is_zero() {
                value += ci;
            }
        }
        for ((p, q), ci) in edges.iter().zip(&c[n..]) {
            if x & p == *p && x & q == 0 && !ci.is_zero() {
                value += ci;
            }
        }
        if best.as_ref().map_or(true, |(b, _)| value > *b) {
            best = Some((value, x));
        }
    }
    Ok(best.expect("at least one assignment"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::hypergraph::SignedEdge;

    #[test]
    fn and_and_nor_truth_tables() {
        let h = SignedHypergraph::from_specs(&["a", "b"], &["a+ b+"]);
        let pts = enumerate_pbs(&h, 20).unwrap();
        assert_eq!(
            pts,
            vec![
                vec![false, false, false],
                vec![true, false, false],
                vec![false, true, false],
                vec![true, true, true]
            ]
        );
        let h = SignedHypergraph::from_specs(&["a", "b"], &["a- b-"]);
        let ones: Vec<usize> = enumerate_pbs(&h, 20)
            .unwrap()
            .iter()
            .enumerate()
            .filter(|(_, p)| p[2])
            .map(|(i, _)| i)
            .collect();
        assert_eq!(ones, vec![0]);
    }

    #[test]
    fn pbs_has_two_to_the_n_points() {
        let h = SignedHypergraph::from_specs(&["a", "b", "c", "d"], &["a+ b-", "b+ c+ d-"]);
        assert_eq!(enumerate_pbs(&h, 20).unwrap().len(), 16);
        assert!(matches!(enumerate_pbs(&h, 3), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn triangle_bqo() {
        let g = families::triangle();
        let q = BqoInstance::new(
            g.clone(),
            g.nodes().iter().map(|v| (v.clone(), Rational::one())).collect(),
            g.edges().iter().map(|e| (e.clone(), Rational::one())).collect(),
            Rational::zero(),
        )
        .unwrap();
        let sol = brute_force_solve(&q, 20).unwrap();
        assert_eq!(sol.optimum, Rational::from_int(6));
        assert_eq!(sol.argmax, vec![0b111]);
        let via_pbo = brute_force_solve(&q.to_pbo(), 20).unwrap();
        assert_eq!(via_pbo, sol);
    }

    #[test]
    fn zero_instance_is_all_optimal() {
        let h = SignedHypergraph::from_specs(&["a", "b", "c"], &["a+ b+"]);
        let sol = brute_force_solve(&PboInstance::structure_only(h), 20).unwrap();
        assert_eq!(sol.optimum, Rational::zero());
        assert_eq!(sol.argmax.len(), 8);
    }

    #[test]
    fn mixed_sign_edge() {
        let h = SignedHypergraph::from_specs(&["a", "b"], &["a+ b-"]);
        let costs = [(SignedEdge::parse("a+ b-"), Rational::one())].into();
        let p = PboInstance::new(h, BTreeMap::new(), costs, Rational::zero()).unwrap();
        let sol = brute_force_solve(&p, 20).unwrap();
        assert_eq!(sol.optimum, Rational::one());
        assert_eq!(sol.assignment(sol.argmax[0]), [("a".to_string(), true), ("b".to_string(), false)].into());
        assert!(sol.is_optimal(|v| v == "a"));
    }

    #[test]
    fn linear_max_matches_points() {
        let h = SignedHypergraph::from_specs(&["a", "b", "c"], &["a+ b-", "a- b+ c+"]);
        let c: Vec<Rational> = [3, -2, 1, -5, 4].iter().map(|&x| Rational::from_int(x)).collect();
        let pts = enumerate_pbs(&h, 20).unwrap();
        let direct = pts
            .iter()
            .map(|p| p.iter().zip(&c).filter(|(b, _)| **b).map(|(_, x)| x.clone()).sum::<Rational>())
            .max()
            .unwrap();
        assert_eq!(pbs_linear_max(&h, &c, 20).unwrap().0, direct);
    }
}
