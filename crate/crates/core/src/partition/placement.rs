use super::{PartitionConfig, PartitionId};
use crate::hypergraph::Topology;

/// Master and mirror partitions of every node, indexed by dense vertex and
/// hyperedge position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub vertex_master: Vec<PartitionId>,
    pub vertex_mirrors: Vec<Vec<PartitionId>>,
    pub hyperedge_master: Vec<PartitionId>,
    pub hyperedge_mirrors: Vec<Vec<PartitionId>>,
}

/// Mirrors of a node are the partitions holding at least one of its edges.
/// The master is the mirror holding the most of them, lowest id on ties.
/// Nodes without edges get no mirrors and a hashed master.
pub fn masters_and_mirrors(t: &Topology, cfg: &PartitionConfig, edge_part: &[PartitionId]) -> Placement {
    let mut buf = Vec::new();
    let mut place = |raw: u64, positions: &mut dyn Iterator<Item = usize>| {
        buf.clear();
        buf.extend(positions.map(|p| edge_part[p]));
        elect(raw, cfg, &mut buf)
    };

    let (vertex_master, vertex_mirrors) = (0..t.num_vertices())
        .map(|vi| place(t.vertex_id(vi).0, &mut t.vertex_edge_positions(vi).iter().map(|&p| p as usize)))
        .unzip();
    let (hyperedge_master, hyperedge_mirrors) =
        (0..t.num_hyperedges()).map(|ei| place(t.hyperedge_id(ei).0, &mut t.hyperedge_edge_range(ei))).unzip();
    Placement { vertex_master, vertex_mirrors, hyperedge_master, hyperedge_mirrors }
}

fn elect(raw: u64, cfg: &PartitionConfig, parts: &mut [PartitionId]) -> (PartitionId, Vec<PartitionId>) {
    if parts.is_empty() {
        return (cfg.hash(raw), Vec::new());
    }
    parts.sort_unstable();
    let mut mirrors = Vec::new();
    let (mut master, mut best) = (parts[0], 0usize);
    for run in parts.chunk_by(|a, b| a == b) {
        mirrors.push(run[0]);
        if run.len() > best {
            master = run[0];
            best = run.len();
        }
    }
    (master, mirrors)
}
