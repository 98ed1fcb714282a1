use serde::{Deserialize, Serialize};

use super::PartitionAssignment;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PartitionStats {
    pub num_parts: u32,
    /// Mean replica count over vertices with at least one edge.
    pub rf_vertex: f64,
    /// Mean replica count over hyperedges.
    pub rf_hyperedge: f64,
    /// Largest partition edge count divided by the mean; 1.0 when empty.
    pub edge_balance: f64,
    pub per_partition_edges: Vec<usize>,
    /// Vertices with no incident hyperedge; excluded from `rf_vertex`.
    pub isolated_vertices: usize,
}

pub fn partition_stats(a: &PartitionAssignment) -> PartitionStats {
    let k = a.num_parts() as usize;
    let mut per_partition_edges = vec![0usize; k];
    for &p in a.edge_parts() {
        per_partition_edges[p as usize] += 1;
    }
    let total: usize = per_partition_edges.iter().sum();
    let max = per_partition_edges.iter().copied().max().unwrap_or(0);
    let edge_balance = if total == 0 { 1.0 } else { max as f64 * k as f64 / total as f64 };

    let pl = a.placement();
    let (v_sum, v_count, isolated) =
        pl.vertex_mirrors.iter().fold(
            (0, 0, 0),
            |(s, c, i), m| {
                if m.is_empty() {
                    (s, c, i + 1)
                } else {
                    (s + m.len(), c + 1, i)
                }
            },
        );
    let e_sum: usize = pl.hyperedge_mirrors.iter().map(Vec::len).sum();
    let mean = |sum: usize, n: usize| if n == 0 { 0.0 } else { sum as f64 / n as f64 };

    PartitionStats {
        num_parts: a.num_parts(),
        rf_vertex: mean(v_sum, v_count),
        rf_hyperedge: mean(e_sum, pl.hyperedge_mirrors.len()),
        edge_balance,
        per_partition_edges,
        isolated_vertices: isolated,
    }
}

#[cfg(test)]
mod tests {
    use crate::hypergraph::tests::four_groups;
    use crate::partition::{partition, PartitionConfig, Strategy};

    #[test]
    fn edge_counts_sum_to_total() {
        let h = four_groups();
        for s in Strategy::ALL {
            for k in 1..=5 {
                let st = partition(&h, &PartitionConfig::new(k).with_cutoff(2), s).unwrap().stats();
                assert_eq!(st.per_partition_edges.iter().sum::<usize>(), 11);
                assert!(st.edge_balance >= 1.0);
                assert!(st.rf_vertex >= 1.0 && st.rf_hyperedge >= 1.0);
            }
        }
    }

    #[test]
    fn four_groups_hyperedge_cut_two_parts() {
        let h = four_groups();
        let st = partition(&h, &PartitionConfig::new(2), Strategy::RandomHyperedgeCut).unwrap().stats();
        assert_eq!(st.rf_vertex, 1.0);
        // v2,v4 on P0 (2 + 3 edges), v1,v3,v5 on P1 (3 + 2 + 1)
        assert_eq!(st.per_partition_edges, vec![5, 6]);
        assert!((st.edge_balance - 12.0 / 11.0).abs() < 1e-15);
    }
}
