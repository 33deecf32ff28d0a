pub mod ef;
pub mod error;
pub mod families;
pub mod hypergraph;
pub mod instance;
pub mod rational;
pub mod reductions;
pub mod solvers;
pub mod structure;

pub use error::{Error, Result};
pub use hypergraph::{Hypergraph, NodeId, NodeSet, Sign, SignedEdge, SignedHypergraph};
pub use rational::Rational;
pub use instance::{BqoInstance, PboInstance};
