use std::collections::BTreeMap;

use crate::ef::inflation_family;
use crate::error::{Error, Result};
use crate::hypergraph::{fmt_set, Hypergraph, NodeSet, SignedEdge, SignedHypergraph};
use crate::instance::{BqoInstance, PboInstance};
use crate::rational::Rational;

use super::{Provenance, Reduction};

/// Rewrites a BQO instance over `host`: each edge `e` is inflated to its
/// host edge `g(e) ⊇ e` and every member of the family receives `c_e`.
/// Signed edges whose total cost is zero are dropped.
pub fn bqo_to_pbo(inst: &BqoInstance, host: &Hypergraph, edge_map: &BTreeMap<NodeSet, NodeSet>) -> Result<Reduction<PboInstance>> {
    let missing: Vec<String> = inst.graph().nodes().difference(host.nodes()).cloned().collect();
    if !missing.is_empty() {
        return Err(Error::NotSubset(missing));
    }
    if let Some(e) = edge_map.keys().find(|e| !inst.graph().edges().contains(*e)) {
        return Err(Error::HostMismatch(format!("edge map names {}, which is not an instance edge", fmt_set(e))));
    }
    let mut costs: BTreeMap<SignedEdge, Rational> = BTreeMap::new();
    let mut mapping = BTreeMap::new();
    let mut targets = BTreeMap::new();
    for e in inst.graph().edges() {
        let g = edge_map
            .get(e)
            .ok_or_else(|| Error::HostMismatch(format!("no host edge given for {}", fmt_set(e))))?;
        if !host.edges().contains(g) {
            return Err(Error::HostMismatch(format!("{} is not a host edge", fmt_set(g))));
        }
        if !e.is_subset(g) {
            return Err(Error::HostMismatch(format!("{} does not contain {}", fmt_set(g), fmt_set(e))));
        }
        let base = SignedEdge::positive(e)?;
        let family = if e == g { vec![base] } else { inflation_family(&base, g)? };
        let c = inst.edge_cost(e);
        for s in &family {
            *costs.entry(s.clone()).or_default() += &c;
        }
        mapping.insert(fmt_set(e), family.iter().map(SignedEdge::key).collect());
        targets.insert(fmt_set(e), fmt_set(g));
    }
    costs.retain(|_, c| !c.is_zero());
    let h = SignedHypergraph::new(host.nodes().iter().cloned(), costs.keys().cloned())?;
    let instance = PboInstance::new(h, inst.node_costs().clone(), costs, inst.offset().clone())?;
    let log = Provenance {
        mapping,
        ..Provenance::new("to_pbo").param("host_edges", targets)
    };
    Ok(Reduction { instance, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::hypergraph::node_set;
    use crate::solvers::brute_force_solve;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inflates_to_a_triple() {
        let g = Hypergraph::from_edges(&["u", "v", "w"], &[&["u", "v"]]);
        let host = Hypergraph::from_edges(&["u", "v", "w"], &[&["u", "v", "w"]]);
        let q = BqoInstance::new(g, BTreeMap::new(), [(node_set(["u", "v"]), Rational::from_int(2))].into(), Rational::zero()).unwrap();
        let map = [(node_set(["u", "v"]), node_set(["u", "v", "w"]))].into();
        let p = bqo_to_pbo(&q, &host, &map).unwrap().instance;
        assert_eq!(p.edge_costs().len(), 2);
        assert!(p.edge_costs().values().all(|c| *c == Rational::from_int(2)));
        assert_eq!(p.edge_costs().keys().map(SignedEdge::key).collect::<Vec<_>>(), ["u+,v+,w-", "u+,v+,w+"]);
    }

    #[test]
    fn identity_map_gives_positive_edge() {
        let g = families::path(2);
        let e = node_set(["v1", "v2"]);
        let q = BqoInstance::new(g.clone(), BTreeMap::new(), [(e.clone(), Rational::new(3, 2))].into(), Rational::zero()).unwrap();
        let p = bqo_to_pbo(&q, &g, &[(e.clone(), e.clone())].into()).unwrap().instance;
        assert_eq!(p.edge_costs().iter().collect::<Vec<_>>(), [(&SignedEdge::positive(&e).unwrap(), &Rational::new(3, 2))]);
    }

    #[test]
    fn rejects_bad_maps() {
        let g = families::path(3);
        let host = families::path(3);
        let q = BqoInstance::new(g.clone(), BTreeMap::new(), BTreeMap::new(), Rational::zero()).unwrap();
        assert!(matches!(bqo_to_pbo(&q, &host, &BTreeMap::new()), Err(Error::HostMismatch(_))));
        let e = node_set(["v1", "v2"]);
        let map = g.edges().iter().map(|f| (f.clone(), e.clone())).collect();
        assert!(matches!(bqo_to_pbo(&q, &host, &map), Err(Error::HostMismatch(_))));
        let small = families::path(2);
        assert!(matches!(bqo_to_pbo(&q, &small, &BTreeMap::new()), Err(Error::NotSubset(_))));
    }

    #[test]
    fn pointwise_equal_on_random_hosts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let n = rng.gen_range(2..=6);
            let host = families::random_hypergraph(&mut rng, n, 5, 4);
            let (q, map) = families::random_host_bqo(&mut rng, &host);
            let p = bqo_to_pbo(&q, &host, &map).unwrap().instance;
            for x in 0u32..1 << n {
                let val = |v: &str| x >> host.nodes().iter().position(|w| w == v).unwrap() & 1 == 1;
                assert_eq!(p.evaluate(val), q.evaluate(val));
            }
            assert_eq!(brute_force_solve(&p, 20).unwrap(), brute_force_solve(&q, 20).unwrap());
        }
    }
}
