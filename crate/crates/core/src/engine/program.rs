use super::combine::{default_combiner, Combiner};
use super::EngineError;
use crate::hypergraph::{HyperedgeId, NodeId, Topology, VertexId};

/// Round counter. Round `r` is one vertex phase followed by one hyperedge phase.
pub type Step = usize;

type Procedure<A, I, O> = dyn Fn(Step, NodeId, &A, I, &mut Context<'_, A, O>) + Send + Sync;

/// Per-side behavior: a procedure run on every active node plus the combiner
/// applied to the messages that procedure emits.
pub struct Program<A, I, O> {
    procedure: Box<Procedure<A, I, O>>,
    combiner: Combiner<O>,
}

impl<A, I, O> Program<A, I, O> {
    pub fn new(
        procedure: impl Fn(Step, NodeId, &A, I, &mut Context<'_, A, O>) + Send + Sync + 'static,
        combiner: Combiner<O>,
    ) -> Self {
        Program { procedure: Box::new(procedure), combiner }
    }

    /// Uses the registered standard combiner for the outgoing message type.
    pub fn with_default_combiner(
        procedure: impl Fn(Step, NodeId, &A, I, &mut Context<'_, A, O>) + Send + Sync + 'static,
    ) -> Result<Self, EngineError>
    where
        O: 'static,
    {
        Ok(Program::new(procedure, default_combiner::<O>()?))
    }

    pub fn combiner(&self) -> &Combiner<O> {
        &self.combiner
    }

    pub(crate) fn run(&self, step: Step, id: NodeId, attr: &A, msg: I, ctx: &mut Context<'_, A, O>) {
        (self.procedure)(step, id, attr, msg, ctx)
    }
}

/// Message recipients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dst {
    /// Every incident node on the other side.
    All,
    /// An explicit subset of incident nodes.
    Nodes(Vec<NodeId>),
}

/// Messages produced by one procedure invocation.
#[derive(Debug, Clone)]
pub(crate) enum Emission<M> {
    None,
    All(M),
    Mixed(Vec<Outgoing<M>>),
}

#[derive(Debug, Clone)]
pub(crate) enum Outgoing<M> {
    All(M),
    /// `(neighbor dense index, message)`, sorted by index.
    To(Vec<(u32, M)>),
}

impl<M> Emission<M> {
    fn push(&mut self, out: Outgoing<M>) {
        *self = match std::mem::replace(self, Emission::None) {
            Emission::None => match out {
                Outgoing::All(m) => Emission::All(m),
                to => Emission::Mixed(vec![to]),
            },
            Emission::All(m) => Emission::Mixed(vec![Outgoing::All(m), out]),
            Emission::Mixed(mut v) => {
                v.push(out);
                Emission::Mixed(v)
            }
        }
    }

    pub(crate) fn is_some(&self) -> bool {
        !matches!(self, Emission::None)
    }

    /// Calls `f` with every message this emission holds for `neighbor`.
    #[inline]
    pub(crate) fn for_each_to(&self, neighbor: u32, mut f: impl FnMut(&M)) {
        let mut visit = |out: &Outgoing<M>| match out {
            Outgoing::All(m) => f(m),
            Outgoing::To(list) => {
                let start = list.partition_point(|(n, _)| *n < neighbor);
                for (_, m) in list[start..].iter().take_while(|(n, _)| *n == neighbor) {
                    f(m)
                }
            }
        };
        match self {
            Emission::None => {}
            Emission::All(m) => f(m),
            Emission::Mixed(v) => v.iter().for_each(&mut visit),
        }
    }
}

/// Neighbor list of the node a procedure runs on.
#[derive(Clone, Copy)]
pub(crate) enum Neighbors<'a> {
    /// Hyperedges of a vertex, given as bipartite edge positions.
    OfVertex(&'a [u32]),
    /// Members of a hyperedge, given as vertex indices.
    OfHyperedge(&'a [u32]),
}

/// Handle through which a procedure updates its node and sends messages.
pub struct Context<'a, A, M> {
    node: NodeId,
    neighbors: Neighbors<'a>,
    topology: &'a Topology,
    new_attr: Option<A>,
    emission: Emission<M>,
    error: Option<EngineError>,
}

impl<'a, A, M> Context<'a, A, M> {
    pub(crate) fn new(node: NodeId, neighbors: Neighbors<'a>, topology: &'a Topology) -> Self {
        Context { node, neighbors, topology, new_attr: None, emission: Emission::None, error: None }
    }

    pub(crate) fn finish(self) -> (Option<A>, Emission<M>, Option<EngineError>) {
        (self.new_attr, self.emission, self.error)
    }

    /// Replaces the node's attribute. Only the last call in an invocation counts.
    pub fn set_attr(&mut self, attr: A) {
        self.new_attr = Some(attr);
    }

    /// Sends `msg` to every incident node.
    pub fn broadcast(&mut self, msg: M) {
        self.emission.push(Outgoing::All(msg));
    }

    /// Sends `msg_fn(recipient)` to each recipient selected by `to`.
    /// Explicit recipients must be incident to this node.
    pub fn send(&mut self, msg_fn: impl Fn(NodeId) -> M, to: Dst) {
        let mut list: Vec<(u32, M)> = match to {
            Dst::All => self.neighbor_indices().map(|n| (n, msg_fn(self.node_of(n)))).collect(),
            Dst::Nodes(targets) => {
                let mut list = Vec::with_capacity(targets.len());
                for target in targets {
                    match self.resolve(target) {
                        Some(n) => list.push((n, msg_fn(target))),
                        None => {
                            self.error.get_or_insert(EngineError::NonIncidentTarget { from: self.node, to: target });
                        }
                    }
                }
                list
            }
        };
        list.sort_by_key(|(n, _)| *n);
        if !list.is_empty() {
            self.emission.push(Outgoing::To(list));
        }
    }

    pub fn node(&self) -> NodeId {
        self.node
    }

    /// Incident nodes on the other side.
    pub fn neighbors(&self) -> Vec<NodeId> {
        self.neighbor_indices().map(|n| self.node_of(n)).collect()
    }

    pub fn num_neighbors(&self) -> usize {
        match self.neighbors {
            Neighbors::OfVertex(s) | Neighbors::OfHyperedge(s) => s.len(),
        }
    }

    fn neighbor_indices(&self) -> impl Iterator<Item = u32> + '_ {
        let (slice, via_edges) = match self.neighbors {
            Neighbors::OfVertex(s) => (s, true),
            Neighbors::OfHyperedge(s) => (s, false),
        };
        slice.iter().map(move |&x| if via_edges { self.topology.edge_dst_index(x as usize) as u32 } else { x })
    }

    fn node_of(&self, n: u32) -> NodeId {
        match self.neighbors {
            Neighbors::OfVertex(_) => NodeId::Hyperedge(self.topology.hyperedge_id(n as usize)),
            Neighbors::OfHyperedge(_) => NodeId::Vertex(self.topology.vertex_id(n as usize)),
        }
    }

    fn resolve(&self, target: NodeId) -> Option<u32> {
        let n = match (self.neighbors, target) {
            (Neighbors::OfVertex(_), NodeId::Hyperedge(HyperedgeId(raw))) => {
                self.topology.hyperedge_index(HyperedgeId(raw))?
            }
            (Neighbors::OfHyperedge(_), NodeId::Vertex(VertexId(raw))) => self.topology.vertex_index(VertexId(raw))?,
            _ => return None,
        } as u32;
        self.neighbor_indices().any(|x| x == n).then_some(n)
    }
}
