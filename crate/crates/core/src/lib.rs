//! Hypergraph processing with vertex and hyperedge programs.
//!
//! * [`hypergraph`]: data model, bipartite incidence and clique expansion.
//! * [`partition`]: seven edge partitioning strategies over the bipartite graph.
//! * [`engine`]: alternating-phase bulk-synchronous execution over partitions.
//! * [`algorithms`]: PageRank, PageRank with entropy, label propagation, shortest paths.
//! * [`harness`]: file formats, generator, run reports and the CLI driver.

pub mod algorithms;
pub mod engine;
pub mod harness;
pub mod hypergraph;
pub mod partition;

pub use hypergraph::{BipartiteEdge, Hyperedge, HyperedgeId, HyperedgeInput, Hypergraph, NodeId, VertexId};
