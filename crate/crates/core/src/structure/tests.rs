use super::*;
use crate::families::{self, example1, example2, triangle};
use crate::hypergraph::node_set;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn set(ids: &[&str]) -> NodeSet {
    node_set(ids.iter().copied())
}

fn abc_triangle() -> Hypergraph {
    Hypergraph::from_edges(&["a", "b", "c"], &[&["a", "b"], &["a", "c"], &["b", "c"]])
}

/// Minimum over all elimination orders of (max step size, max step gap),
/// computed by plain recursion over the public set-based operations.
fn brute_force_widths(g: &Hypergraph) -> (usize, usize) {
    fn rec(g: &Hypergraph, width_mode: bool) -> usize {
        if g.num_nodes() == 0 {
            return 0;
        }
        let nodes: Vec<String> = g.nodes().iter().cloned().collect();
        let mut best = usize::MAX;
        for m in 1u32..(1 << nodes.len()) {
            let n: NodeSet = (0..nodes.len()).filter(|i| m >> i & 1 == 1).map(|i| nodes[i].clone()).collect();
            if !is_nest_set(g, &n).unwrap() {
                continue;
            }
            let here = if width_mode { n.len() } else { gap(g, &n).unwrap_or(0) };
            if here >= best {
                continue;
            }
            let rest = rec(&g.delete_nodes(&n).unwrap(), width_mode);
            best = best.min(here.max(rest));
        }
        best
    }
    (rec(g, true), rec(g, false))
}

#[test]
fn gap_examples() {
    let g = example1(5);
    assert_eq!(gap(&g, &set(&["v1", "v2", "v3", "v4"])), Ok(1));

    let g = Hypergraph::from_edges(&["a", "b", "c"], &[&["a", "b", "c"]]);
    assert_eq!(gap(&g, g.nodes()), Ok(0));

    let g = families::complete_uniform(4, 3);
    assert_eq!(gap(&g, &set(&["v1", "v2", "v3"])), Ok(1));

    let g = Hypergraph::from_edges(&["a", "b", "c"], &[&["a", "b"]]);
    assert!(matches!(gap(&g, &set(&["c"])), Err(Error::NoIncidentEdge(_))));
    assert!(matches!(gap(&g, &set(&["z"])), Err(Error::NotSubset(_))));
}

#[test]
fn nest_point_examples() {
    let g = Hypergraph::from_edges(&["a", "b", "c"], &[&["a", "b"], &["a", "b", "c"]]);
    assert_eq!(is_nest_point(&g, "b"), Ok(true));
    assert_eq!(is_nest_point(&abc_triangle(), "a"), Ok(false));
    let g = Hypergraph::from_edges(&["a", "b", "z"], &[&["a", "b"]]);
    assert_eq!(is_nest_point(&g, "z"), Ok(true));
}

#[test]
fn nest_set_examples() {
    let g = example1(5);
    assert_eq!(is_nest_set(&g, &set(&["v1", "v2", "v3", "v4"])), Ok(true));
    assert_eq!(is_nest_set(&abc_triangle(), &set(&["a", "b"])), Ok(true));
    assert_eq!(is_nest_set(&example2(5), &set(&["v1"])), Ok(false));
    assert_eq!(is_nest_set(&abc_triangle(), &NodeSet::new()), Err(Error::EmptySet));
}

#[test]
fn beta_acyclic_examples() {
    let path = Hypergraph::from_edges(&["a", "b", "c"], &[&["a", "b"], &["b", "c"]]);
    let order = beta_acyclic(&path).unwrap().unwrap();
    assert!(order.is_singleton_order());
    assert_eq!(order.steps(), &[set(&["a"]), set(&["b"]), set(&["c"])]);

    assert_eq!(beta_acyclic(&abc_triangle()).unwrap(), None);

    let chain = Hypergraph::from_edges(
        &["a", "b", "c", "d"],
        &[&["a", "b"], &["a", "b", "c"], &["a", "b", "c", "d"]],
    );
    assert!(beta_acyclic(&chain).unwrap().is_some());
}

#[test]
fn bounded_width_examples() {
    let g = example1(5);
    let order = find_order_bounded_width(&g, 4).unwrap().unwrap();
    assert_eq!(order.width(), 4);
    assert_eq!(find_order_bounded_width(&g, 3).unwrap(), None);

    let order = find_order_bounded_width(&abc_triangle(), 2).unwrap().unwrap();
    assert_eq!(order.steps(), &[set(&["a", "b"]), set(&["c"])]);
    assert!(find_order_bounded_width(&g, 0).is_err());
}

#[test]
fn bounded_gap_examples() {
    let g = example1(5);
    let order = find_order_bounded_gap(&g, 1).unwrap().unwrap();
    assert_eq!(order.gap(), 1);
    assert_eq!(order.width(), 4);

    assert_eq!(find_order_bounded_gap(&abc_triangle(), 0).unwrap(), None);

    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let g = families::random_beta_acyclic(&mut rng, 7, 4);
        let order = find_order_bounded_gap(&g, 0).unwrap().expect("β-acyclic has a gap-0 order");
        assert_eq!(order.gap(), 0);
        assert_eq!(brute_force_widths(&g).1, 0);
    }
}

#[test]
fn exact_width_and_gap_examples() {
    let limits = Limits::default();
    let g = example1(5);
    assert_eq!(nsw_exact(&g, &limits).unwrap().0, 4);
    assert_eq!(nsg_exact(&g, &limits).unwrap().0, 1);
    assert_eq!(nsw_exact(&example2(5), &limits).unwrap().0, 4);

    let single = Hypergraph::from_edges(&["a", "b", "c"], &[&["a", "b", "c"]]);
    assert_eq!(nsw_exact(&single, &limits).unwrap().0, 1);
    assert_eq!(nsg_exact(&single, &limits).unwrap().0, 0);

    let big = families::path(15);
    assert!(matches!(nsw_exact(&big, &limits), Err(Error::SizeLimit { .. })));
    assert!(nsw_exact(&big, &Limits { exact_nodes: 15 }).is_ok());
}

#[test]
fn replay_rejects_bad_orders() {
    let g = abc_triangle();
    let bad = NestSetEliminationOrder::replay(&g, vec![set(&["a"]), set(&["b", "c"])]);
    assert!(matches!(bad, Err(Error::InvalidOrder(_))));
    let missing = NestSetEliminationOrder::replay(&g, vec![set(&["a", "b"])]);
    assert!(matches!(missing, Err(Error::InvalidOrder(_))));
    let repeat = NestSetEliminationOrder::replay(&g, vec![set(&["a", "b"]), set(&["b", "c"])]);
    assert!(matches!(repeat, Err(Error::InvalidOrder(_))));
    let ok = NestSetEliminationOrder::replay(&g, vec![set(&["a", "b"]), set(&["c"])]).unwrap();
    assert_eq!((ok.width(), ok.gap()), (2, 1));
    assert_eq!(ok.step_gaps(), &[Some(1), None]);
}

#[test]
fn order_json_round_trip() {
    let g = example1(4);
    let order = find_order_bounded_gap(&g, 1).unwrap().unwrap();
    let text = serde_json::to_string(&order.to_file()).unwrap();
    assert!(text.starts_with("{\"steps\":[["));
    let back: OrderFile = serde_json::from_str(&text).unwrap();
    assert_eq!(back.into_order(&g).unwrap(), order);

    let lie: OrderFile = serde_json::from_str(r#"{"steps":[["v1","v2","v3"],["v4"]],"width":2}"#).unwrap();
    assert!(lie.into_order(&g).is_err());
}

fn cycle_of(nodes: &[&str], edges: &[&[&str]]) -> BetaCycle {
    BetaCycle {
        nodes: nodes.iter().map(|s| s.to_string()).collect(),
        edges: edges.iter().map(|e| set(e)).collect(),
    }
}

#[test]
fn verify_cycle_examples() {
    let g = abc_triangle();
    let c = cycle_of(&["a", "b", "c"], &[&["a", "b"], &["b", "c"], &["a", "c"]]);
    assert!(verify_beta_cycle(&g, &c));
    let dup = cycle_of(&["a", "b", "c"], &[&["a", "b"], &["a", "b"], &["a", "c"]]);
    assert!(!verify_beta_cycle(&g, &dup));

    let g4 = families::cycle(4);
    let c4 = cycle_of(
        &["v1", "v2", "v3", "v4"],
        &[&["v1", "v2"], &["v2", "v3"], &["v3", "v4"], &["v1", "v4"]],
    );
    assert!(verify_beta_cycle(&g4, &c4));

    // a node shared by three cycle edges breaks exclusivity
    let g = Hypergraph::from_edges(&["a", "b", "c"], &[&["a", "b", "c"], &["a", "b"], &["a", "c"]]);
    let c = cycle_of(&["a", "b", "c"], &[&["a", "b"], &["b", "a", "c"], &["a", "c"]]);
    assert!(!verify_beta_cycle(&g, &c));
}

#[test]
fn find_cycle_examples() {
    let limits = Limits::default();
    let c = find_beta_cycle(&abc_triangle(), &limits).unwrap().unwrap();
    assert_eq!(c.len(), 3);
    assert!(verify_beta_cycle(&abc_triangle(), &c));

    assert_eq!(find_beta_cycle(&families::path(5), &limits).unwrap(), None);

    let g = example2(5);
    let c = find_beta_cycle(&g, &limits).unwrap().unwrap();
    assert_eq!(c.len(), 4);
    assert!(verify_beta_cycle(&g, &c));
}

#[test]
fn cycle_lower_bound_examples() {
    let limits = Limits::default();
    let g = abc_triangle();
    let c = find_beta_cycle(&g, &limits).unwrap().unwrap();
    assert_eq!(nsw_lower_bound_from_cycle(&g, &c), Ok(2));
    assert_eq!(nsw_exact(&g, &limits).unwrap().0, 2);

    let g = example2(5);
    let c = find_beta_cycle(&g, &limits).unwrap().unwrap();
    assert_eq!(nsw_lower_bound_from_cycle(&g, &c), Ok(3));

    let g = families::cycle(4);
    let c = find_beta_cycle(&g, &limits).unwrap().unwrap();
    assert_eq!(cycle_separators(&c).iter().map(|u| u.len()).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    assert_eq!(nsw_lower_bound_from_cycle(&g, &c), Ok(3));

    let bogus = cycle_of(&["a", "b", "c"], &[&["a", "b"], &["a", "b"], &["a", "c"]]);
    assert!(nsw_lower_bound_from_cycle(&abc_triangle(), &bogus).is_err());
}

#[test]
fn treewidth_examples() {
    assert_eq!(treewidth_upper_bound(&families::path(6)), 1);
    let star = Hypergraph::from_edges(&["a", "b", "c", "d"], &[&["a", "b"], &["a", "c"], &["a", "d"]]);
    assert_eq!(treewidth_upper_bound(&star), 1);
    assert_eq!(treewidth_upper_bound(&abc_triangle()), 2);
    assert_eq!(treewidth_upper_bound(&families::cycle(4)), 2);
    assert_eq!(treewidth_upper_bound(&families::complete_uniform(5, 2)), 4);
    assert_eq!(treewidth_upper_bound(&Hypergraph::from_edges(&["a"], &[])), 0);
}

#[test]
fn searches_agree_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let limits = Limits::default();
    for _ in 0..60 {
        let g = families::random_hypergraph(&mut rng, 6, 6, 4);
        let (nsw, nsg) = brute_force_widths(&g);
        assert_eq!(nsw_exact(&g, &limits).unwrap().0, nsw, "{g}");
        assert_eq!(nsg_exact(&g, &limits).unwrap().0, nsg, "{g}");
    }
}

#[test]
fn example_families() {
    let limits = Limits::default();
    for n in 4..=8 {
        let g = example1(n);
        assert_eq!(nsw_exact(&g, &limits).unwrap().0, n - 1);
        assert_eq!(nsg_exact(&g, &limits).unwrap().0, 1);
    }
    for n in 5..=8 {
        let g = example2(n);
        assert_eq!(nsw_exact(&g, &limits).unwrap().0, n - 1);
    }
    assert_eq!(triangle().num_edges(), 3);
}

fn arb_hypergraph() -> impl Strategy<Value = Hypergraph> {
    (any::<u64>(), 2usize..=8, 0usize..=8, 2usize..=4)
        .prop_map(|(seed, n, m, r)| families::random_hypergraph(&mut ChaCha8Rng::seed_from_u64(seed), n, m, r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn found_orders_replay(g in arb_hypergraph(), k in 0usize..4) {
        for order in [find_order_bounded_gap(&g, k).unwrap(), find_order_bounded_width(&g, k + 1).unwrap(), beta_acyclic(&g).unwrap()]
            .into_iter()
            .flatten()
        {
            let replayed = NestSetEliminationOrder::replay(&g, order.steps().to_vec()).unwrap();
            prop_assert_eq!(&replayed, &order);
            prop_assert!(order.gap() + 1 <= order.width());
        }
    }

    #[test]
    fn width_one_iff_beta_acyclic(g in arb_hypergraph()) {
        let limits = Limits::default();
        let nsw = nsw_exact(&g, &limits).unwrap().0;
        let acyclic = beta_acyclic(&g).unwrap().is_some();
        prop_assert_eq!(nsw <= 1, acyclic);
        prop_assert_eq!(find_beta_cycle(&g, &limits).unwrap().is_none(), acyclic);
    }

    #[test]
    fn cycle_bounds_hold(g in arb_hypergraph()) {
        let limits = Limits::default();
        if let Some(c) = find_beta_cycle(&g, &limits).unwrap() {
            prop_assert!(verify_beta_cycle(&g, &c));
            let nsw = nsw_exact(&g, &limits).unwrap().0;
            prop_assert!(nsw_lower_bound_from_cycle(&g, &c).unwrap() <= nsw);
            prop_assert!(c.len() - 1 <= nsw);
            let separators = cycle_separators(&c);
            let union: NodeSet = separators.iter().flatten().cloned().collect();
            for s in nest_sets(&g, g.num_nodes()).unwrap() {
                if s.is_disjoint(&union) {
                    continue;
                }
                let covered = separators.iter().filter(|u| u.is_subset(&s)).count();
                prop_assert!(covered + 1 >= c.len(), "nest-set {:?} covers {} of {} separators", s, covered, c.len());
            }
        }
    }
}
