//! Hypergraph data model.
//!
//! A [`Hypergraph`] pairs an immutable, shareable [`Topology`] with one
//! attribute per vertex and one per hyperedge. The topology stores the
//! bipartite incidence structure in compressed form: hyperedge `i` owns the
//! contiguous range of bipartite edge positions `edge_offsets[i]..edge_offsets[i + 1]`,
//! and every vertex keeps the ascending list of positions it appears at.

mod clique;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use clique::{CliqueCount, CliqueGraph};

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexId(pub u64);

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HyperedgeId(pub u64);

/// A node of the bipartite representation. Vertex and hyperedge ids share raw
/// values freely; the tag keeps the two spaces apart.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum NodeId {
    Vertex(VertexId),
    Hyperedge(HyperedgeId),
}

impl NodeId {
    pub fn raw(self) -> u64 {
        match self {
            NodeId::Vertex(v) => v.0,
            NodeId::Hyperedge(e) => e.0,
        }
    }

    pub fn is_vertex(self) -> bool {
        matches!(self, NodeId::Vertex(_))
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for HyperedgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::Vertex(v) => write!(f, "vertex {v}"),
            NodeId::Hyperedge(e) => write!(f, "hyperedge {e}"),
        }
    }
}

impl From<VertexId> for NodeId {
    fn from(v: VertexId) -> Self {
        NodeId::Vertex(v)
    }
}

impl From<HyperedgeId> for NodeId {
    fn from(e: HyperedgeId) -> Self {
        NodeId::Hyperedge(e)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hyperedge {
    pub id: HyperedgeId,
    /// Distinct members in input order.
    pub members: Vec<VertexId>,
    pub weight: f64,
}

impl Hyperedge {
    pub fn cardinality(&self) -> usize {
        self.members.len()
    }
}

/// One incidence record of the bipartite representation, always directed
/// from a vertex to a hyperedge that contains it.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BipartiteEdge {
    pub src: VertexId,
    pub dst: HyperedgeId,
}

/// Input record for [`Hypergraph::build`].
#[derive(Clone, Debug, PartialEq)]
pub struct HyperedgeInput {
    pub id: Option<HyperedgeId>,
    pub members: Vec<VertexId>,
    pub weight: f64,
}

impl HyperedgeInput {
    pub fn new<I: IntoIterator<Item = u64>>(members: I) -> Self {
        HyperedgeInput { id: None, members: members.into_iter().map(VertexId).collect(), weight: 1.0 }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_id(mut self, id: u64) -> Self {
        self.id = Some(HyperedgeId(id));
        self
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildReport {
    /// Repeated members dropped while building.
    pub duplicate_members: usize,
}

#[derive(Debug, Error, PartialEq)]
pub enum CoreError {
    #[error("hyperedge at input index {index} has no members")]
    EmptyHyperedge { index: usize },
    #[error("hyperedge at input index {index} has invalid weight {weight}")]
    InvalidWeight { index: usize, weight: f64 },
    #[error("hyperedge id {0} appears more than once")]
    DuplicateHyperedgeId(HyperedgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown hyperedge {0}")]
    UnknownHyperedge(HyperedgeId),
    #[error("too many {0} for 32-bit indexing")]
    TooLarge(&'static str),
}

/// Incidence structure shared by every hypergraph derived from one build.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology {
    vertex_ids: Vec<VertexId>,
    hyperedges: Vec<Hyperedge>,
    edge_offsets: Vec<usize>,
    edge_src: Vec<u32>,
    edge_dst: Vec<u32>,
    vertex_offsets: Vec<usize>,
    vertex_edges: Vec<u32>,
}

impl Topology {
    fn new(vertex_ids: Vec<VertexId>, hyperedges: Vec<Hyperedge>) -> Result<Self, CoreError> {
        if vertex_ids.len() >= u32::MAX as usize {
            return Err(CoreError::TooLarge("vertices"));
        }
        if hyperedges.len() >= u32::MAX as usize {
            return Err(CoreError::TooLarge("hyperedges"));
        }
        let total: usize = hyperedges.iter().map(Hyperedge::cardinality).sum();
        if total >= u32::MAX as usize {
            return Err(CoreError::TooLarge("bipartite edges"));
        }

        let mut edge_offsets = Vec::with_capacity(hyperedges.len() + 1);
        let mut edge_src = Vec::with_capacity(total);
        let mut edge_dst = Vec::with_capacity(total);
        let mut degree = vec![0usize; vertex_ids.len()];
        edge_offsets.push(0);
        for (ei, he) in hyperedges.iter().enumerate() {
            for m in &he.members {
                let vi = vertex_ids.binary_search(m).map_err(|_| CoreError::UnknownVertex(*m))?;
                edge_src.push(vi as u32);
                edge_dst.push(ei as u32);
                degree[vi] += 1;
            }
            edge_offsets.push(edge_src.len());
        }

        let mut vertex_offsets = Vec::with_capacity(vertex_ids.len() + 1);
        vertex_offsets.push(0);
        for d in &degree {
            vertex_offsets.push(vertex_offsets.last().unwrap() + d);
        }
        let mut cursor = vertex_offsets[..vertex_ids.len()].to_vec();
        let mut vertex_edges = vec![0u32; total];
        for (pos, &vi) in edge_src.iter().enumerate() {
            let slot = &mut cursor[vi as usize];
            vertex_edges[*slot] = pos as u32;
            *slot += 1;
        }

        Ok(Topology { vertex_ids, hyperedges, edge_offsets, edge_src, edge_dst, vertex_offsets, vertex_edges })
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn num_hyperedges(&self) -> usize {
        self.hyperedges.len()
    }

    pub fn num_bipartite_edges(&self) -> usize {
        self.edge_src.len()
    }

    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.vertex_ids
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        &self.hyperedges
    }

    pub fn vertex_index(&self, v: VertexId) -> Option<usize> {
        self.vertex_ids.binary_search(&v).ok()
    }

    pub fn hyperedge_index(&self, e: HyperedgeId) -> Option<usize> {
        self.hyperedges.binary_search_by_key(&e, |h| h.id).ok()
    }

    pub fn vertex_id(&self, index: usize) -> VertexId {
        self.vertex_ids[index]
    }

    pub fn hyperedge_id(&self, index: usize) -> HyperedgeId {
        self.hyperedges[index].id
    }

    pub fn degree_at(&self, vi: usize) -> usize {
        self.vertex_offsets[vi + 1] - self.vertex_offsets[vi]
    }

    pub fn cardinality_at(&self, ei: usize) -> usize {
        self.edge_offsets[ei + 1] - self.edge_offsets[ei]
    }

    /// Bipartite edge positions of hyperedge `ei`.
    pub fn hyperedge_edge_range(&self, ei: usize) -> std::ops::Range<usize> {
        self.edge_offsets[ei]..self.edge_offsets[ei + 1]
    }

    /// Ascending bipartite edge positions incident to vertex `vi`.
    pub fn vertex_edge_positions(&self, vi: usize) -> &[u32] {
        &self.vertex_edges[self.vertex_offsets[vi]..self.vertex_offsets[vi + 1]]
    }

    /// Member vertex indices of hyperedge `ei`, in member order.
    pub fn member_indices(&self, ei: usize) -> &[u32] {
        &self.edge_src[self.hyperedge_edge_range(ei)]
    }

    /// Vertex index at the tail of bipartite edge `pos`.
    pub fn edge_src_index(&self, pos: usize) -> usize {
        self.edge_src[pos] as usize
    }

    /// Hyperedge index at the head of bipartite edge `pos`.
    pub fn edge_dst_index(&self, pos: usize) -> usize {
        self.edge_dst[pos] as usize
    }

    pub fn incident_hyperedge_indices(&self, vi: usize) -> impl Iterator<Item = usize> + '_ {
        self.vertex_edge_positions(vi).iter().map(move |&p| self.edge_dst[p as usize] as usize)
    }

    pub fn bipartite_edge_at(&self, pos: usize) -> BipartiteEdge {
        BipartiteEdge {
            src: self.vertex_ids[self.edge_src[pos] as usize],
            dst: self.hyperedges[self.edge_dst[pos] as usize].id,
        }
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_vertices()).map(|v| self.degree_at(v)).max().unwrap_or(0)
    }

    pub fn max_cardinality(&self) -> usize {
        (0..self.num_hyperedges()).map(|e| self.cardinality_at(e)).max().unwrap_or(0)
    }
}

/// Hypergraph with vertex attributes `VD` and hyperedge attributes `HED`.
#[derive(Debug, Clone)]
pub struct Hypergraph<VD, HED> {
    topology: Arc<Topology>,
    vertex_attrs: Vec<VD>,
    hyperedge_attrs: Vec<HED>,
}

impl<VD: Default, HED: Default> Hypergraph<VD, HED> {
    /// Builds a hypergraph from hyperedge member lists.
    ///
    /// Hyperedges without an explicit id take their input index. Vertices are
    /// the union of all members plus every key of `vertex_attrs`; vertices
    /// missing from `vertex_attrs` get `VD::default()`.
    pub fn build(
        inputs: Vec<HyperedgeInput>,
        vertex_attrs: Option<BTreeMap<VertexId, VD>>,
    ) -> Result<(Self, BuildReport), CoreError> {
        let mut report = BuildReport::default();
        let mut hyperedges = Vec::with_capacity(inputs.len());
        let mut seen_ids = HashSet::with_capacity(inputs.len());
        let mut vertex_set: Vec<VertexId> = Vec::new();

        for (index, input) in inputs.into_iter().enumerate() {
            if input.members.is_empty() {
                return Err(CoreError::EmptyHyperedge { index });
            }
            if !(input.weight.is_finite() && input.weight >= 0.0) {
                return Err(CoreError::InvalidWeight { index, weight: input.weight });
            }
            let id = input.id.unwrap_or(HyperedgeId(index as u64));
            if !seen_ids.insert(id) {
                return Err(CoreError::DuplicateHyperedgeId(id));
            }
            let mut seen = HashSet::with_capacity(input.members.len());
            let mut members = Vec::with_capacity(input.members.len());
            for m in input.members {
                if seen.insert(m) {
                    members.push(m);
                } else {
                    report.duplicate_members += 1;
                }
            }
            vertex_set.extend_from_slice(&members);
            hyperedges.push(Hyperedge { id, members, weight: input.weight });
        }
        if report.duplicate_members > 0 {
            log::warn!("dropped {} duplicate hyperedge members", report.duplicate_members);
        }

        let mut attrs = vertex_attrs.unwrap_or_default();
        vertex_set.extend(attrs.keys().copied());
        vertex_set.sort_unstable();
        vertex_set.dedup();
        hyperedges.sort_by_key(|h| h.id);

        let vertex_attrs = vertex_set.iter().map(|v| attrs.remove(v).unwrap_or_default()).collect();
        let hyperedge_attrs = hyperedges.iter().map(|_| HED::default()).collect();
        let topology = Topology::new(vertex_set, hyperedges)?;
        Ok((Hypergraph { topology: Arc::new(topology), vertex_attrs, hyperedge_attrs }, report))
    }
}

impl<VD, HED> Hypergraph<VD, HED> {
    pub(crate) fn from_parts(topology: Arc<Topology>, vertex_attrs: Vec<VD>, hyperedge_attrs: Vec<HED>) -> Self {
        debug_assert_eq!(vertex_attrs.len(), topology.num_vertices());
        debug_assert_eq!(hyperedge_attrs.len(), topology.num_hyperedges());
        Hypergraph { topology, vertex_attrs, hyperedge_attrs }
    }

    pub fn topology(&self) -> &Arc<Topology> {
        &self.topology
    }

    pub fn num_vertices(&self) -> usize {
        self.topology.num_vertices()
    }

    pub fn num_hyperedges(&self) -> usize {
        self.topology.num_hyperedges()
    }

    pub fn num_bipartite_edges(&self) -> usize {
        self.topology.num_bipartite_edges()
    }

    pub fn vertex_ids(&self) -> &[VertexId] {
        self.topology.vertex_ids()
    }

    pub fn hyperedges(&self) -> &[Hyperedge] {
        self.topology.hyperedges()
    }

    pub fn hyperedge(&self, e: HyperedgeId) -> Result<&Hyperedge, CoreError> {
        let i = self.topology.hyperedge_index(e).ok_or(CoreError::UnknownHyperedge(e))?;
        Ok(&self.topology.hyperedges()[i])
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.topology.vertex_index(v).is_some()
    }

    pub fn degree(&self, v: VertexId) -> Result<usize, CoreError> {
        let i = self.topology.vertex_index(v).ok_or(CoreError::UnknownVertex(v))?;
        Ok(self.topology.degree_at(i))
    }

    pub fn cardinality(&self, e: HyperedgeId) -> Result<usize, CoreError> {
        let i = self.topology.hyperedge_index(e).ok_or(CoreError::UnknownHyperedge(e))?;
        Ok(self.topology.cardinality_at(i))
    }

    pub fn max_degree(&self) -> usize {
        self.topology.max_degree()
    }

    pub fn max_cardinality(&self) -> usize {
        self.topology.max_cardinality()
    }

    /// Incident hyperedges of `v`, ascending by id.
    pub fn incident_hyperedges(&self, v: VertexId) -> Result<Vec<HyperedgeId>, CoreError> {
        let i = self.topology.vertex_index(v).ok_or(CoreError::UnknownVertex(v))?;
        Ok(self.topology.incident_hyperedge_indices(i).map(|e| self.topology.hyperedge_id(e)).collect())
    }

    /// Every incidence, ordered by hyperedge id and then member order.
    pub fn bipartite_edges(&self) -> Vec<BipartiteEdge> {
        (0..self.num_bipartite_edges()).map(|p| self.topology.bipartite_edge_at(p)).collect()
    }

    pub fn vertex_attr(&self, v: VertexId) -> Result<&VD, CoreError> {
        let i = self.topology.vertex_index(v).ok_or(CoreError::UnknownVertex(v))?;
        Ok(&self.vertex_attrs[i])
    }

    pub fn hyperedge_attr(&self, e: HyperedgeId) -> Result<&HED, CoreError> {
        let i = self.topology.hyperedge_index(e).ok_or(CoreError::UnknownHyperedge(e))?;
        Ok(&self.hyperedge_attrs[i])
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, &VD)> {
        self.topology.vertex_ids().iter().copied().zip(self.vertex_attrs.iter())
    }

    pub fn hyperedges_with_attrs(&self) -> impl Iterator<Item = (&Hyperedge, &HED)> {
        self.topology.hyperedges().iter().zip(self.hyperedge_attrs.iter())
    }

    pub fn vertex_attrs(&self) -> &[VD] {
        &self.vertex_attrs
    }

    pub fn hyperedge_attrs(&self) -> &[HED] {
        &self.hyperedge_attrs
    }

    pub fn map_vertices<VD2>(&self, mut f: impl FnMut(VertexId, &VD) -> VD2) -> Hypergraph<VD2, HED>
    where
        HED: Clone,
    {
        let vertex_attrs = self.vertices().map(|(v, a)| f(v, a)).collect();
        Hypergraph::from_parts(self.topology.clone(), vertex_attrs, self.hyperedge_attrs.clone())
    }

    pub fn map_hyperedges<HED2>(&self, mut f: impl FnMut(&Hyperedge, &HED) -> HED2) -> Hypergraph<VD, HED2>
    where
        VD: Clone,
    {
        let hyperedge_attrs = self.hyperedges_with_attrs().map(|(h, a)| f(h, a)).collect();
        Hypergraph::from_parts(self.topology.clone(), self.vertex_attrs.clone(), hyperedge_attrs)
    }

    /// Reattaches fresh attributes to the same topology.
    pub fn with_attrs<VD2, HED2>(
        &self,
        mut vertex: impl FnMut(VertexId, &VD) -> VD2,
        mut hyperedge: impl FnMut(&Hyperedge, &HED) -> HED2,
    ) -> Hypergraph<VD2, HED2> {
        let vertex_attrs = self.vertices().map(|(v, a)| vertex(v, a)).collect();
        let hyperedge_attrs = self.hyperedges_with_attrs().map(|(h, a)| hyperedge(h, a)).collect();
        Hypergraph::from_parts(self.topology.clone(), vertex_attrs, hyperedge_attrs)
    }

    pub fn to_inputs(&self) -> Vec<HyperedgeInput> {
        self.hyperedges()
            .iter()
            .map(|h| HyperedgeInput { id: Some(h.id), members: h.members.clone(), weight: h.weight })
            .collect()
    }
}

/// Plain hypergraph without attributes.
pub type PlainHypergraph = Hypergraph<(), ()>;
