use crate::hypergraph::Topology;
use crate::partition::PartitionAssignment;

/// Location of a node's master copy: partition and position in that
/// partition's master list.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Slot {
    pub part: u32,
    pub idx: u32,
}

/// Partition-local view of the bipartite graph.
#[derive(Debug, Default)]
pub(crate) struct PartPlan {
    pub vertex_masters: Vec<u32>,
    pub hyperedge_masters: Vec<u32>,
    /// Bipartite edge positions held here, ascending.
    pub edges: Vec<u32>,
    /// Distinct vertices / hyperedges touched by local edges, ascending.
    pub local_vertices: Vec<u32>,
    pub local_hyperedges: Vec<u32>,
    /// Per local edge: (index into `local_vertices`, index into `local_hyperedges`).
    pub edge_local: Vec<(u32, u32)>,
}

#[derive(Debug)]
pub(crate) struct Plan {
    pub parts: Vec<PartPlan>,
    pub vertex_slot: Vec<Slot>,
    pub hyperedge_slot: Vec<Slot>,
    /// Mirrors other than the master, per node.
    pub vertex_remote_mirrors: Vec<u32>,
    pub hyperedge_remote_mirrors: Vec<u32>,
}

impl Plan {
    pub fn new(t: &Topology, a: &PartitionAssignment) -> Plan {
        let k = a.num_parts() as usize;
        let pl = a.placement();
        let mut parts: Vec<PartPlan> = (0..k).map(|_| PartPlan::default()).collect();

        let vertex_slot = pl
            .vertex_master
            .iter()
            .enumerate()
            .map(|(vi, &p)| {
                let masters = &mut parts[p as usize].vertex_masters;
                masters.push(vi as u32);
                Slot { part: p, idx: masters.len() as u32 - 1 }
            })
            .collect();
        let hyperedge_slot = pl
            .hyperedge_master
            .iter()
            .enumerate()
            .map(|(ei, &p)| {
                let masters = &mut parts[p as usize].hyperedge_masters;
                masters.push(ei as u32);
                Slot { part: p, idx: masters.len() as u32 - 1 }
            })
            .collect();

        for (pos, &p) in a.edge_parts().iter().enumerate() {
            parts[p as usize].edges.push(pos as u32);
        }
        for part in &mut parts {
            part.local_vertices = part.edges.iter().map(|&e| t.edge_src_index(e as usize) as u32).collect();
            part.local_vertices.sort_unstable();
            part.local_vertices.dedup();
            part.local_hyperedges = part.edges.iter().map(|&e| t.edge_dst_index(e as usize) as u32).collect();
            part.local_hyperedges.sort_unstable();
            part.local_hyperedges.dedup();
            part.edge_local = part
                .edges
                .iter()
                .map(|&e| {
                    let v = t.edge_src_index(e as usize) as u32;
                    let h = t.edge_dst_index(e as usize) as u32;
                    (
                        part.local_vertices.binary_search(&v).unwrap() as u32,
                        part.local_hyperedges.binary_search(&h).unwrap() as u32,
                    )
                })
                .collect();
        }

        let remote = |master: &[u32], mirrors: &[Vec<u32>]| -> Vec<u32> {
            master.iter().zip(mirrors).map(|(m, ms)| ms.iter().filter(|p| *p != m).count() as u32).collect()
        };
        Plan {
            vertex_remote_mirrors: remote(&pl.vertex_master, &pl.vertex_mirrors),
            hyperedge_remote_mirrors: remote(&pl.hyperedge_master, &pl.hyperedge_mirrors),
            parts,
            vertex_slot,
            hyperedge_slot,
        }
    }
}
