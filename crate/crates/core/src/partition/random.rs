use rayon::prelude::*;

use super::{PartitionAssignment, PartitionConfig, PartitionError, RandomCut};
use crate::hypergraph::Hypergraph;

/// Hash partitioning of bipartite edges.
///
/// * `Vertex`: by destination hyperedge, so every hyperedge stays whole.
/// * `Hyperedge`: by source vertex, so every vertex stays whole.
/// * `Both`: by a word mixing source and destination; both sides get cut.
pub fn random_cut<VD, HED>(
    h: &Hypergraph<VD, HED>,
    cfg: &PartitionConfig,
    mode: RandomCut,
) -> Result<PartitionAssignment, PartitionError> {
    cfg.validate()?;
    let t = h.topology();
    let edge_part = (0..t.num_bipartite_edges())
        .into_par_iter()
        .map(|pos| {
            let e = t.bipartite_edge_at(pos);
            match mode {
                RandomCut::Vertex => cfg.hash(e.dst.0),
                RandomCut::Hyperedge => cfg.hash(e.src.0),
                RandomCut::Both => cfg.hash(e.src.0 ^ e.dst.0.rotate_left(32)),
            }
        })
        .collect();
    PartitionAssignment::from_edge_parts(h, cfg, edge_part)
}
