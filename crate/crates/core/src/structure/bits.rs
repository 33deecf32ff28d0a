//! Bitmask view of a hypergraph used by the searches. Node `i` is bit `i`,
//! with nodes indexed in lexicographic id order.

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, NodeId, NodeSet};

pub(crate) type Mask = u64;

pub(crate) const MAX_NODES: usize = 64;

#[derive(Debug, Clone)]
pub(crate) struct Indexed {
    pub ids: Vec<NodeId>,
    pub edges: Vec<Mask>,
}

impl Indexed {
    pub fn new(g: &Hypergraph) -> Result<Self> {
        if g.num_nodes() > MAX_NODES {
            return Err(Error::SizeLimit {
                what: "hypergraph",
                size: g.num_nodes(),
                limit: MAX_NODES,
            });
        }
        let ids: Vec<NodeId> = g.nodes().iter().cloned().collect();
        let edges = g.edges().iter().map(|e| mask_of(&ids, e)).collect();
        Ok(Indexed { ids, edges })
    }

    pub fn full(&self) -> Mask {
        if self.ids.len() == 64 {
            !0
        } else {
            (1 << self.ids.len()) - 1
        }
    }

    pub fn mask(&self, s: &NodeSet) -> Mask {
        mask_of(&self.ids, s)
    }

    pub fn set(&self, m: Mask) -> NodeSet {
        members(m).map(|i| self.ids[i].clone()).collect()
    }

    /// Edges of `G - (V \ remaining)`, deduplicated.
    pub fn residual(&self, remaining: Mask) -> Vec<Mask> {
        let mut out: Vec<Mask> = self
            .edges
            .iter()
            .map(|e| e & remaining)
            .filter(|e| e.count_ones() >= 2)
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

fn mask_of(ids: &[NodeId], s: &NodeSet) -> Mask {
    s.iter()
        .map(|v| ids.binary_search(v).expect("node of the hypergraph"))
        .fold(0, |m, i| m | 1 << i)
}

pub(crate) fn members(m: Mask) -> impl Iterator<Item = usize> {
    let mut rest = m;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let i = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(i)
    })
}

/// True iff `family` is totally ordered by inclusion.
pub(crate) fn is_chain(family: &mut Vec<Mask>) -> bool {
    family.sort_unstable_by_key(|m| m.count_ones());
    family.windows(2).all(|w| w[0] & !w[1] == 0)
}

/// The nest-set test on a residual edge list.
pub(crate) fn is_nest_set(edges: &[Mask], n: Mask) -> bool {
    let mut family: Vec<Mask> = edges.iter().filter(|e| *e & n != 0).map(|e| e & !n).collect();
    is_chain(&mut family)
}

/// `max |N| - |e ∩ N|` over edges meeting `N`; `None` when no edge does.
pub(crate) fn gap(edges: &[Mask], n: Mask) -> Option<usize> {
    let size = n.count_ones() as usize;
    edges
        .iter()
        .filter(|e| *e & n != 0)
        .map(|e| size - (e & n).count_ones() as usize)
        .max()
}

/// Calls `f` on every `size`-subset of `pool` in lexicographic order of the
/// member indices; stops early when `f` returns `true`.
pub(crate) fn for_each_subset(pool: Mask, size: usize, f: &mut impl FnMut(Mask) -> bool) -> bool {
    let items: Vec<usize> = members(pool).collect();
    fn rec(items: &[usize], start: usize, left: usize, acc: Mask, f: &mut impl FnMut(Mask) -> bool) -> bool {
        if left == 0 {
            return f(acc);
        }
        for i in start..=items.len() - left {
            if rec(items, i + 1, left - 1, acc | 1 << items[i], f) {
                return true;
            }
        }
        false
    }
    if size > items.len() {
        return false;
    }
    rec(&items, 0, size, 0, f)
}
