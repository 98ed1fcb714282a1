//! Edge partitioning of the bipartite representation.
//!
//! Every strategy maps each bipartite edge (vertex → hyperedge) to one of `k`
//! logical partitions. Nodes are then replicated to every partition holding
//! one of their edges; one replica per node is elected master.

mod greedy;
mod hybrid;
mod placement;
mod random;
mod stats;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hypergraph::{BipartiteEdge, Hypergraph, NodeId, Topology};

pub use greedy::greedy_cut;
pub use hybrid::hybrid_cut;
pub use placement::{masters_and_mirrors, Placement};
pub use random::random_cut;
pub use stats::{partition_stats, PartitionStats};

pub type PartitionId = u32;

/// Odd multiplier used to scatter ids before reducing modulo `k`.
pub const M_PRIME: u64 = 1_125_899_906_842_597;

pub const DEFAULT_DEGREE_CUTOFF: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum PartitionError {
    #[error("number of partitions must be at least 1")]
    NoPartitions,
    #[error("hash multiplier {0} must be odd")]
    EvenMultiplier(u64),
    #[error("degree cutoff must be positive")]
    ZeroCutoff,
    #[error("edge assignment has {got} entries, hypergraph has {expected} bipartite edges")]
    EdgeCountMismatch { expected: usize, got: usize },
    #[error("edge {edge} assigned to partition {part}, but only {num_parts} partitions exist")]
    PartitionOutOfRange { edge: usize, part: PartitionId, num_parts: u32 },
    #[error("unknown strategy {0:?}; expected one of rvc, rhec, rbc, hvc, hhec, gvc, ghec")]
    UnknownStrategy(String),
    #[error("unknown {0}")]
    UnknownNode(NodeId),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionConfig {
    pub num_parts: u32,
    pub degree_cutoff: usize,
    pub m_prime: u64,
    /// Recorded for reproducibility. Every strategy breaks ties toward the
    /// lowest partition id, so no current strategy draws from it.
    pub seed: u64,
}

impl PartitionConfig {
    pub fn new(num_parts: u32) -> Self {
        PartitionConfig { num_parts, degree_cutoff: DEFAULT_DEGREE_CUTOFF, m_prime: M_PRIME, seed: 0 }
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.degree_cutoff = cutoff;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), PartitionError> {
        if self.num_parts == 0 {
            return Err(PartitionError::NoPartitions);
        }
        if self.m_prime.is_multiple_of(2) {
            return Err(PartitionError::EvenMultiplier(self.m_prime));
        }
        if self.degree_cutoff == 0 {
            return Err(PartitionError::ZeroCutoff);
        }
        Ok(())
    }

    /// `((raw * m_prime) mod 2^64) mod k`
    #[inline]
    pub fn hash(&self, raw: u64) -> PartitionId {
        (raw.wrapping_mul(self.m_prime) % self.num_parts as u64) as PartitionId
    }
}

impl Default for PartitionConfig {
    fn default() -> Self {
        PartitionConfig::new(1)
    }
}

/// Which side of the bipartite graph a two-way strategy cuts.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Cut {
    /// Keep hyperedges whole, replicate vertices.
    Vertex,
    /// Keep vertices whole, replicate hyperedges.
    Hyperedge,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RandomCut {
    Vertex,
    Hyperedge,
    Both,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Strategy {
    RandomVertexCut,
    RandomHyperedgeCut,
    RandomBothCut,
    HybridVertexCut,
    HybridHyperedgeCut,
    GreedyVertexCut,
    GreedyHyperedgeCut,
}

impl TryFrom<String> for Strategy {
    type Error = PartitionError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Strategy> for String {
    fn from(s: Strategy) -> String {
        s.short_name().to_string()
    }
}

impl Strategy {
    pub const ALL: [Strategy; 7] = [
        Strategy::RandomVertexCut,
        Strategy::RandomHyperedgeCut,
        Strategy::RandomBothCut,
        Strategy::HybridVertexCut,
        Strategy::HybridHyperedgeCut,
        Strategy::GreedyVertexCut,
        Strategy::GreedyHyperedgeCut,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            Strategy::RandomVertexCut => "rvc",
            Strategy::RandomHyperedgeCut => "rhec",
            Strategy::RandomBothCut => "rbc",
            Strategy::HybridVertexCut => "hvc",
            Strategy::HybridHyperedgeCut => "hhec",
            Strategy::GreedyVertexCut => "gvc",
            Strategy::GreedyHyperedgeCut => "ghec",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Strategy {
    type Err = PartitionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Strategy::ALL
            .into_iter()
            .find(|st| st.short_name() == s)
            .ok_or_else(|| PartitionError::UnknownStrategy(s.to_string()))
    }
}

/// Runs `strategy` over the bipartite edges of `h`.
pub fn partition<VD, HED>(
    h: &Hypergraph<VD, HED>,
    cfg: &PartitionConfig,
    strategy: Strategy,
) -> Result<PartitionAssignment, PartitionError> {
    match strategy {
        Strategy::RandomVertexCut => random_cut(h, cfg, RandomCut::Vertex),
        Strategy::RandomHyperedgeCut => random_cut(h, cfg, RandomCut::Hyperedge),
        Strategy::RandomBothCut => random_cut(h, cfg, RandomCut::Both),
        Strategy::HybridVertexCut => hybrid_cut(h, cfg, Cut::Vertex),
        Strategy::HybridHyperedgeCut => hybrid_cut(h, cfg, Cut::Hyperedge),
        Strategy::GreedyVertexCut => greedy_cut(h, cfg, Cut::Vertex),
        Strategy::GreedyHyperedgeCut => greedy_cut(h, cfg, Cut::Hyperedge),
    }
}

/// Partition of every bipartite edge plus the derived master/mirror layout.
///
/// `edge_part[i]` is the partition of the `i`-th edge in
/// [`Hypergraph::bipartite_edges`] order.
#[derive(Debug, Clone)]
pub struct PartitionAssignment {
    topology: Arc<Topology>,
    num_parts: u32,
    edge_part: Vec<PartitionId>,
    placement: Placement,
}

impl PartitionAssignment {
    /// Wraps an explicit edge → partition vector and derives placement.
    pub fn from_edge_parts<VD, HED>(
        h: &Hypergraph<VD, HED>,
        cfg: &PartitionConfig,
        edge_part: Vec<PartitionId>,
    ) -> Result<Self, PartitionError> {
        cfg.validate()?;
        let topology = h.topology().clone();
        if edge_part.len() != topology.num_bipartite_edges() {
            return Err(PartitionError::EdgeCountMismatch {
                expected: topology.num_bipartite_edges(),
                got: edge_part.len(),
            });
        }
        if let Some((edge, &part)) = edge_part.iter().enumerate().find(|(_, &p)| p >= cfg.num_parts) {
            return Err(PartitionError::PartitionOutOfRange { edge, part, num_parts: cfg.num_parts });
        }
        let placement = masters_and_mirrors(&topology, cfg, &edge_part);
        Ok(PartitionAssignment { topology, num_parts: cfg.num_parts, edge_part, placement })
    }

    pub fn num_parts(&self) -> u32 {
        self.num_parts
    }

    pub fn topology(&self) -> &Arc<Topology> {
        &self.topology
    }

    pub fn edge_parts(&self) -> &[PartitionId] {
        &self.edge_part
    }

    pub fn placement(&self) -> &Placement {
        &self.placement
    }

    pub fn part_of(&self, edge: BipartiteEdge) -> Option<PartitionId> {
        let ei = self.topology.hyperedge_index(edge.dst)?;
        self.topology
            .hyperedge_edge_range(ei)
            .find(|&p| self.topology.vertex_id(self.topology.edge_src_index(p)) == edge.src)
            .map(|p| self.edge_part[p])
    }

    pub fn master(&self, node: NodeId) -> Result<PartitionId, PartitionError> {
        self.node_index(node).map(|(vertex, i)| {
            if vertex {
                self.placement.vertex_master[i]
            } else {
                self.placement.hyperedge_master[i]
            }
        })
    }

    pub fn mirrors(&self, node: NodeId) -> Result<&[PartitionId], PartitionError> {
        self.node_index(node).map(|(vertex, i)| {
            if vertex {
                self.placement.vertex_mirrors[i].as_slice()
            } else {
                self.placement.hyperedge_mirrors[i].as_slice()
            }
        })
    }

    fn node_index(&self, node: NodeId) -> Result<(bool, usize), PartitionError> {
        let found = match node {
            NodeId::Vertex(v) => self.topology.vertex_index(v).map(|i| (true, i)),
            NodeId::Hyperedge(e) => self.topology.hyperedge_index(e).map(|i| (false, i)),
        };
        found.ok_or(PartitionError::UnknownNode(node))
    }

    pub fn stats(&self) -> PartitionStats {
        partition_stats(self)
    }
}
