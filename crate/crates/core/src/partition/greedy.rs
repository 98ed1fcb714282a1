use super::{Cut, PartitionAssignment, PartitionConfig, PartitionError, PartitionId};
use crate::hypergraph::{Hypergraph, Topology};

/// Sequential overlap-versus-load greedy partitioning.
///
/// For `Cut::Vertex` every vertex first gets a hashed home partition. Then
/// hyperedges are placed one at a time in ascending id order, each on the
/// partition `p` maximizing `overlap(e, p) - sqrt(load(p))`, where `overlap`
/// counts members homed or already replicated on `p` and `load` counts
/// bipartite edges placed so far. Ties go to the lowest partition. All edges
/// of the hyperedge land on the winner and the state is updated before the
/// next hyperedge. `Cut::Hyperedge` swaps the roles of the two sides.
pub fn greedy_cut<VD, HED>(
    h: &Hypergraph<VD, HED>,
    cfg: &PartitionConfig,
    mode: Cut,
) -> Result<PartitionAssignment, PartitionError> {
    cfg.validate()?;
    let t: &Topology = h.topology();
    let edge_part = match mode {
        Cut::Vertex => {
            let homes: Vec<PartitionId> = t.vertex_ids().iter().map(|v| cfg.hash(v.0)).collect();
            assign(t.num_bipartite_edges(), t.num_hyperedges(), &homes, cfg.num_parts as usize, |ei, out| {
                out.extend(t.hyperedge_edge_range(ei).map(|p| (p, t.edge_src_index(p))))
            })
        }
        Cut::Hyperedge => {
            let homes: Vec<PartitionId> = t.hyperedges().iter().map(|e| cfg.hash(e.id.0)).collect();
            assign(t.num_bipartite_edges(), t.num_vertices(), &homes, cfg.num_parts as usize, |vi, out| {
                out.extend(t.vertex_edge_positions(vi).iter().map(|&p| (p as usize, t.edge_dst_index(p as usize))))
            })
        }
    };
    PartitionAssignment::from_edge_parts(h, cfg, edge_part)
}

/// `edges_of(d, out)` fills `out` with `(edge position, other-side index)`
/// pairs for driven node `d`.
fn assign(
    num_edges: usize,
    num_driven: usize,
    homes: &[PartitionId],
    k: usize,
    edges_of: impl Fn(usize, &mut Vec<(usize, usize)>),
) -> Vec<PartitionId> {
    let mut edge_part = vec![0; num_edges];
    let mut replicas: Vec<Vec<PartitionId>> = vec![Vec::new(); homes.len()];
    let mut load = vec![0u64; k];
    let mut overlap = vec![0u64; k];
    let mut edges = Vec::new();

    for d in 0..num_driven {
        edges.clear();
        edges_of(d, &mut edges);
        if edges.is_empty() {
            continue;
        }
        overlap.iter_mut().for_each(|o| *o = 0);
        for &(_, other) in &edges {
            let home = homes[other];
            overlap[home as usize] += 1;
            for &p in &replicas[other] {
                if p != home {
                    overlap[p as usize] += 1;
                }
            }
        }

        let mut best = 0;
        let mut best_score = overlap[0] as f64 - (load[0] as f64).sqrt();
        for p in 1..k {
            let score = overlap[p] as f64 - (load[p] as f64).sqrt();
            if score > best_score {
                best = p;
                best_score = score;
            }
        }

        let best = best as PartitionId;
        load[best as usize] += edges.len() as u64;
        for &(pos, other) in &edges {
            edge_part[pos] = best;
            let reps = &mut replicas[other];
            if let Err(at) = reps.binary_search(&best) {
                reps.insert(at, best);
            }
        }
    }
    edge_part
}
