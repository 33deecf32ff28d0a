//! Exhaustive searches for nest-set elimination orders.
//!
//! Both finders run a depth-first search over residual hypergraphs. The
//! residual after eliminating a union `U` of steps is `G - U` regardless of
//! how `U` was split into steps, so the remaining-node mask is a canonical
//! key and dead ends are memoized on it. Candidate steps are tried by
//! increasing size, then lexicographically, so the first order found is the
//! least one in that ordering.

use std::collections::HashSet;

use super::bits::{self, Indexed, Mask};
use super::order::NestSetEliminationOrder;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bound {
    Width(usize),
    Gap(usize),
}

struct Search<'a> {
    ix: &'a Indexed,
    bound: Bound,
    dead: HashSet<Mask>,
}

impl Search<'_> {
    fn run(&mut self, remaining: Mask) -> Option<Vec<(Mask, Option<usize>)>> {
        if remaining == 0 {
            return Some(Vec::new());
        }
        if self.dead.contains(&remaining) {
            return None;
        }
        let edges = self.ix.residual(remaining);
        let max_size = match self.bound {
            Bound::Width(k) => k.min(remaining.count_ones() as usize),
            Bound::Gap(_) => remaining.count_ones() as usize,
        };
        let mut found = None;
        for size in 1..=max_size {
            let done = bits::for_each_subset(remaining, size, &mut |n| {
                let gap = bits::gap(&edges, n);
                if let (Bound::Gap(k), Some(g)) = (self.bound, gap) {
                    if g > k {
                        return false;
                    }
                }
                if !bits::is_nest_set(&edges, n) {
                    return false;
                }
                match self.run(remaining & !n) {
                    Some(mut rest) => {
                        rest.insert(0, (n, gap));
                        found = Some(rest);
                        true
                    }
                    None => false,
                }
            });
            if done {
                return found;
            }
        }
        self.dead.insert(remaining);
        None
    }
}

fn find(g: &Hypergraph, bound: Bound) -> Result<Option<NestSetEliminationOrder>> {
    let ix = Indexed::new(g)?;
    let mut search = Search {
        ix: &ix,
        bound,
        dead: HashSet::new(),
    };
    Ok(search.run(ix.full()).map(|steps| {
        let (sets, gaps) = steps.into_iter().map(|(m, gap)| (ix.set(m), gap)).unzip();
        NestSetEliminationOrder::from_parts(sets, gaps)
    }))
}

/// An order of width at most `k`, if one exists.
pub fn find_order_bounded_width(g: &Hypergraph, k: usize) -> Result<Option<NestSetEliminationOrder>> {
    if k == 0 {
        return Err(Error::InvalidOrder("width bound must be at least 1".into()));
    }
    find(g, Bound::Width(k))
}

/// An order whose every step has gap at most `k`, if one exists.
pub fn find_order_bounded_gap(g: &Hypergraph, k: usize) -> Result<Option<NestSetEliminationOrder>> {
    find(g, Bound::Gap(k))
}

/// A nest point elimination order (all steps singletons), found greedily by
/// always removing the lexicographically least nest point. Removing a nest
/// point never destroys β-acyclicity, so getting stuck certifies a β-cycle.
pub fn beta_acyclic(g: &Hypergraph) -> Result<Option<NestSetEliminationOrder>> {
    let ix = Indexed::new(g)?;
    let mut remaining = ix.full();
    let mut steps = Vec::new();
    while remaining != 0 {
        let edges = ix.residual(remaining);
        let next = bits::members(remaining).find(|&i| bits::is_nest_set(&edges, 1 << i));
        match next {
            Some(i) => {
                steps.push((1 << i, bits::gap(&edges, 1 << i)));
                remaining &= !(1 << i);
            }
            None => return Ok(None),
        }
    }
    let (sets, gaps) = steps.into_iter().map(|(m, gap)| (ix.set(m), gap)).unzip();
    Ok(Some(NestSetEliminationOrder::from_parts(sets, gaps)))
}

/// Size limits for the exhaustive computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest node count accepted by `nsw_exact`, `nsg_exact` and
    /// `find_beta_cycle`.
    pub exact_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { exact_nodes: 14 }
    }
}

impl Limits {
    pub(crate) fn check(&self, g: &Hypergraph, what: &'static str) -> Result<()> {
        if g.num_nodes() > self.exact_nodes {
            return Err(Error::SizeLimit {
                what,
                size: g.num_nodes(),
                limit: self.exact_nodes,
            });
        }
        Ok(())
    }
}

/// Exact nest-set width with an order attaining it.
pub fn nsw_exact(g: &Hypergraph, limits: &Limits) -> Result<(usize, NestSetEliminationOrder)> {
    limits.check(g, "nsw_exact input")?;
    for k in 1..=g.num_nodes().max(1) {
        if let Some(order) = find_order_bounded_width(g, k)? {
            return Ok((order.width(), order));
        }
    }
    unreachable!("the single step V is always a nest-set")
}

/// Exact nest-set gap with an order attaining it.
pub fn nsg_exact(g: &Hypergraph, limits: &Limits) -> Result<(usize, NestSetEliminationOrder)> {
    limits.check(g, "nsg_exact input")?;
    for k in 0..=g.num_nodes() {
        if let Some(order) = find_order_bounded_gap(g, k)? {
            return Ok((order.gap(), order));
        }
    }
    unreachable!("the single step V is always a nest-set")
}

/// Every nest-set of `g` with at most `max_size` nodes.
pub fn nest_sets(g: &Hypergraph, max_size: usize) -> Result<Vec<crate::hypergraph::NodeSet>> {
    let ix = Indexed::new(g)?;
    let edges = ix.residual(ix.full());
    let mut out = Vec::new();
    for size in 1..=max_size.min(ix.ids.len()) {
        bits::for_each_subset(ix.full(), size, &mut |n| {
            if bits::is_nest_set(&edges, n) {
                out.push(ix.set(n));
            }
            false
        });
    }
    Ok(out)
}
