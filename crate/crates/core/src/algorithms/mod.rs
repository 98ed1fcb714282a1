//! Hypergraph algorithms written as vertex and hyperedge programs.

mod label_propagation;
mod pagerank;
mod shortest_paths;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::engine::EngineError;
use crate::hypergraph::{HyperedgeId, Hypergraph, VertexId};

pub use label_propagation::{label_propagation, LabelOutput};
pub use pagerank::{entropy, page_rank, page_rank_entropy, EntropyOutput, PageRankConfig, PageRankOutput};
pub use shortest_paths::{shortest_paths, HopOutput};

#[derive(Debug, Error, PartialEq)]
pub enum AlgorithmError {
    #[error("alpha must lie strictly between 0 and 1, got {0}")]
    InvalidAlpha(f64),
    #[error("hyperedge {0} has non-positive weight")]
    NonPositiveWeight(HyperedgeId),
    #[error("at least one iteration is required")]
    ZeroIterations,
    #[error("at least one source vertex is required")]
    NoSources,
    #[error("source vertex {0} is not in the hypergraph")]
    UnknownSource(VertexId),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

fn vertex_map<VD, HED, T>(h: &Hypergraph<VD, HED>, f: impl Fn(&VD) -> T) -> BTreeMap<VertexId, T> {
    h.vertices().map(|(v, a)| (v, f(a))).collect()
}

fn hyperedge_map<VD, HED, T>(h: &Hypergraph<VD, HED>, f: impl Fn(&HED) -> T) -> BTreeMap<HyperedgeId, T> {
    h.hyperedges_with_attrs().map(|(e, a)| (e.id, f(a))).collect()
}
