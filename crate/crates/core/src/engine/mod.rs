//! Bulk-synchronous execution of vertex and hyperedge programs.
//!
//! Every round runs a vertex phase and then a hyperedge phase. In each phase
//! the masters of active nodes run their procedure; emitted messages travel
//! along local bipartite edges, are pre-combined per partition, shipped to the
//! receiver's master and combined again there. A barrier separates phases.

mod aggregate;
pub mod combine;
mod exec;
mod plan;
mod program;
mod report;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::NodeId;
use crate::partition::PartitionId;

pub use aggregate::{aggregate_messages, Aggregated};
pub use combine::{Combiner, CombinerRegistry, Max, Min};
pub use exec::compute;
pub use program::{Context, Dst, Program, Step};
pub use report::{Halt, PhaseReport, RoundReport, RunReport, Side};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum EngineError {
    #[error("{from} sent a message to non-incident {to}")]
    NonIncidentTarget { from: NodeId, to: NodeId },
    #[error("no default combiner registered for message type {0}")]
    NoDefaultCombiner(&'static str),
    #[error("partition assignment was built for a different hypergraph")]
    AssignmentMismatch,
    #[error("at least one worker thread is required")]
    NoWorkers,
    #[error("failed to start worker pool: {0}")]
    ThreadPool(String),
    #[error("mirror of {node} on partition {part} diverged from its master")]
    MirrorIncoherent { node: NodeId, part: PartitionId },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeOptions {
    pub workers: usize,
    /// Keep attribute replicas on every mirror and compare them with the
    /// master after each phase.
    pub check_mirrors: bool,
}

impl ComputeOptions {
    pub fn with_workers(workers: usize) -> Self {
        ComputeOptions { workers, check_mirrors: false }
    }

    pub fn checked(mut self) -> Self {
        self.check_mirrors = true;
        self
    }
}

impl Default for ComputeOptions {
    fn default() -> Self {
        ComputeOptions { workers: 1, check_mirrors: cfg!(debug_assertions) }
    }
}
