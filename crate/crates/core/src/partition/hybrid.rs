use rayon::prelude::*;

use super::{Cut, PartitionAssignment, PartitionConfig, PartitionError};
use crate::hypergraph::Hypergraph;

/// Degree-aware hash partitioning.
///
/// `Cut::Vertex` places an edge by its hyperedge unless that hyperedge's
/// cardinality exceeds the cutoff, in which case the hyperedge is cut and the
/// edge follows its vertex. `Cut::Hyperedge` is the mirror image keyed on
/// vertex degree.
pub fn hybrid_cut<VD, HED>(
    h: &Hypergraph<VD, HED>,
    cfg: &PartitionConfig,
    mode: Cut,
) -> Result<PartitionAssignment, PartitionError> {
    cfg.validate()?;
    let t = h.topology();
    let edge_part = (0..t.num_bipartite_edges())
        .into_par_iter()
        .map(|pos| {
            let e = t.bipartite_edge_at(pos);
            match mode {
                Cut::Vertex => {
                    if t.cardinality_at(t.edge_dst_index(pos)) > cfg.degree_cutoff {
                        cfg.hash(e.src.0)
                    } else {
                        cfg.hash(e.dst.0)
                    }
                }
                Cut::Hyperedge => {
                    if t.degree_at(t.edge_src_index(pos)) > cfg.degree_cutoff {
                        cfg.hash(e.dst.0)
                    } else {
                        cfg.hash(e.src.0)
                    }
                }
            }
        })
        .collect();
    PartitionAssignment::from_edge_parts(h, cfg, edge_part)
}
