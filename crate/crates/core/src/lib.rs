//! Distributed Max-Cut and Max-Dicut approximation on a simulated synchronous
//! network.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`] holds the immutable topology, generators and the edge-list format.
//! * [`sim`] executes per-vertex programs in lock-step rounds and meters every
//!   message against the LOCAL or CONGEST model.
//! * [`coloring`] and [`decomposition`] are the two distributed building blocks.
//! * [`cut_eval`] is the cut/dicut objective with marginal gains.
//! * [`clustering`] and [`greedy`] are the approximation algorithms.
//! * [`oracle`] provides exact solvers and baselines used to score them.

pub mod clustering;
pub mod coloring;
pub mod cut_eval;
pub mod decomposition;
mod error;
pub mod graph;
pub mod greedy;
mod local_solve;
pub mod oracle;
pub mod sim;

pub use cut_eval::{CutAssignment, Objective};
pub use clustering::{ClusterRecord, ClusterSolveReport};
pub use coloring::Coloring;
pub use decomposition::{CenterAssignment, DecompositionParams};
pub use error::{Error, Result};
pub use graph::{Graph, VertexId};
pub use local_solve::SolveMethod;
pub use sim::{CongestBudget, ExecutionMetrics, ModelMode};

/// Default exhaustive-solve cap shared by cluster leaders and the oracle.
pub const DEFAULT_EXACT_CAP: usize = 24;
