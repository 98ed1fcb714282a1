use std::collections::{BTreeMap, HashMap};

use super::{HyperedgeInput, Hypergraph, VertexId};

/// Simple graph obtained by connecting every pair of vertices that share at
/// least one hyperedge. Pairs are stored as `(low, high)`.
#[derive(Debug, Clone)]
pub struct CliqueGraph<VD, ED> {
    pub vertices: BTreeMap<VertexId, VD>,
    pub edges: BTreeMap<(VertexId, VertexId), ED>,
}

impl<VD, ED> CliqueGraph<VD, ED> {
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Re-expresses the graph as a hypergraph of cardinality-2 hyperedges,
    /// numbered in pair order and weighted by `weight`. Vertices left without
    /// any pair are kept as isolated vertices.
    pub fn into_hypergraph(self, weight: impl Fn(&ED) -> f64) -> Result<Hypergraph<VD, ED>, super::CoreError>
    where
        VD: Default,
        ED: Default,
    {
        let mut inputs = Vec::with_capacity(self.edges.len());
        let mut attrs = Vec::with_capacity(self.edges.len());
        for (i, ((u, w), ed)) in self.edges.into_iter().enumerate() {
            inputs.push(HyperedgeInput {
                id: Some(super::HyperedgeId(i as u64)),
                members: vec![u, w],
                weight: weight(&ed),
            });
            attrs.push(ed);
        }
        let (graph, _) = Hypergraph::<VD, ()>::build(inputs, Some(self.vertices))?;
        let topology = graph.topology.clone();
        Ok(Hypergraph::from_parts(topology, graph.vertex_attrs, attrs))
    }
}

/// Result of a bounded pair count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CliqueCount {
    pub edges: u64,
    /// True when counting stopped at the cap; `edges` is then a lower bound.
    pub capped: bool,
}

impl<VD: Clone, HED> Hypergraph<VD, HED> {
    /// Clique expansion. Every co-occurring vertex pair becomes one edge whose
    /// attribute is `merge` applied to the `(attribute, weight)` of every
    /// hyperedge containing both endpoints, in ascending hyperedge order.
    pub fn to_clique_graph<ED>(&self, merge: impl Fn(&[(&HED, f64)]) -> ED) -> CliqueGraph<VD, ED> {
        let t = &self.topology;
        let mut shared: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for ei in 0..t.num_hyperedges() {
            let mut members = t.member_indices(ei).to_vec();
            members.sort_unstable();
            for (i, &a) in members.iter().enumerate() {
                for &b in &members[i + 1..] {
                    shared.entry((a, b)).or_default().push(ei as u32);
                }
            }
        }

        let mut edges = BTreeMap::new();
        let mut buf = Vec::new();
        for ((a, b), hes) in shared {
            buf.clear();
            buf.extend(hes.iter().map(|&ei| {
                let ei = ei as usize;
                (&self.hyperedge_attrs[ei], t.hyperedges()[ei].weight)
            }));
            edges.insert((t.vertex_id(a as usize), t.vertex_id(b as usize)), merge(&buf));
        }
        let vertices = self.vertices().map(|(v, a)| (v, a.clone())).collect();
        CliqueGraph { vertices, edges }
    }
}

impl<VD, HED> Hypergraph<VD, HED> {
    /// Counts clique-expansion edges without materializing them. Memory is
    /// linear in the vertex count. Stops early once `cap` is exceeded.
    pub fn clique_edge_count(&self, cap: Option<u64>) -> CliqueCount {
        let t = &self.topology;
        let n = t.num_vertices();
        let mut stamp = vec![u32::MAX; n];
        let mut edges = 0u64;
        for u in 0..n {
            for ei in t.incident_hyperedge_indices(u) {
                for &w in t.member_indices(ei) {
                    let w = w as usize;
                    if w > u && stamp[w] != u as u32 {
                        stamp[w] = u as u32;
                        edges += 1;
                    }
                }
            }
            if let Some(cap) = cap {
                if edges > cap {
                    log::warn!("clique edge count exceeded cap {cap}; reporting a lower bound");
                    return CliqueCount { edges, capped: true };
                }
            }
        }
        CliqueCount { edges, capped: false }
    }
}
