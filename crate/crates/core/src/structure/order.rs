use serde::{Deserialize, Serialize};

use super::bits::{self, Indexed};
use crate::error::{Error, Result};
use crate::hypergraph::{fmt_set, Hypergraph, NodeSet};

/// An ordered partition `N_1, ..., N_t` of the nodes where each `N_i` is a
/// nest-set of `G - N_1 - ... - N_{i-1}`.
///
/// Instances only come out of [`NestSetEliminationOrder::replay`], which
/// checks the nest-set condition at every step and records the step gaps, so
/// holding one is proof of validity for the hypergraph it was replayed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestSetEliminationOrder {
    steps: Vec<NodeSet>,
    step_gaps: Vec<Option<usize>>,
    width: usize,
    gap: usize,
}

impl NestSetEliminationOrder {
    /// Validates `steps` against `g` and computes width and gap.
    ///
    /// A step that no residual edge meets has no gap of its own (the maximum
    /// is over an empty set); it contributes nothing to the order gap.
    pub fn replay(g: &Hypergraph, steps: Vec<NodeSet>) -> Result<Self> {
        let ix = Indexed::new(g)?;
        let mut remaining = ix.full();
        let mut step_gaps = Vec::with_capacity(steps.len());
        for (i, step) in steps.iter().enumerate() {
            if step.is_empty() {
                return Err(Error::InvalidOrder(format!("step {} is empty", i + 1)));
            }
            if let Some(v) = step.iter().find(|v| !g.nodes().contains(*v)) {
                return Err(Error::InvalidOrder(format!("step {} uses unknown node {v:?}", i + 1)));
            }
            let n = ix.mask(step);
            if n & !remaining != 0 {
                return Err(Error::InvalidOrder(format!(
                    "step {} repeats an eliminated node: {}",
                    i + 1,
                    fmt_set(&ix.set(n & !remaining))
                )));
            }
            let edges = ix.residual(remaining);
            if !bits::is_nest_set(&edges, n) {
                return Err(Error::InvalidOrder(format!(
                    "step {} ({}) is not a nest-set of the residual hypergraph",
                    i + 1,
                    fmt_set(step)
                )));
            }
            step_gaps.push(bits::gap(&edges, n));
            remaining &= !n;
        }
        if remaining != 0 {
            return Err(Error::InvalidOrder(format!(
                "nodes never eliminated: {}",
                fmt_set(&ix.set(remaining))
            )));
        }
        Ok(Self::from_parts(steps, step_gaps))
    }

    pub(crate) fn from_parts(steps: Vec<NodeSet>, step_gaps: Vec<Option<usize>>) -> Self {
        let width = steps.iter().map(NodeSet::len).max().unwrap_or(0);
        let gap = step_gaps.iter().flatten().copied().max().unwrap_or(0);
        if width > 0 {
            assert!(gap < width, "order gap {gap} exceeds width {width} - 1");
        }
        NestSetEliminationOrder {
            steps,
            step_gaps,
            width,
            gap,
        }
    }

    pub fn steps(&self) -> &[NodeSet] {
        &self.steps
    }

    /// Gap of each step within its residual hypergraph.
    pub fn step_gaps(&self) -> &[Option<usize>] {
        &self.step_gaps
    }

    /// Largest step cardinality.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Largest step gap.
    pub fn gap(&self) -> usize {
        self.gap
    }

    pub fn is_singleton_order(&self) -> bool {
        self.steps.iter().all(|s| s.len() == 1)
    }

    pub fn to_file(&self) -> OrderFile {
        OrderFile {
            steps: self.steps.iter().map(|s| s.iter().cloned().collect()).collect(),
            width: Some(self.width),
            gap: Some(self.gap),
        }
    }
}

/// JSON form of an order: `{"steps":[["a","b"],["c"]],"width":2,"gap":1}`.
/// `width` and `gap` are informational; reading an order always replays it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderFile {
    pub steps: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gap: Option<usize>,
}

impl OrderFile {
    /// Replays the steps on `g`; stated width/gap must match when present.
    pub fn into_order(self, g: &Hypergraph) -> Result<NestSetEliminationOrder> {
        let steps = self.steps.into_iter().map(|s| s.into_iter().collect()).collect();
        let order = NestSetEliminationOrder::replay(g, steps)?;
        if let Some(w) = self.width {
            if w != order.width() {
                return Err(Error::InvalidOrder(format!("stated width {w}, actual {}", order.width())));
            }
        }
        if let Some(k) = self.gap {
            if k != order.gap() {
                return Err(Error::InvalidOrder(format!("stated gap {k}, actual {}", order.gap())));
            }
        }
        Ok(order)
    }
}
