//! Random corpora and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use hyperweave::hypergraph::PlainHypergraph;
use hyperweave::partition::{Cut, PartitionAssignment, PartitionConfig};
use hyperweave::{HyperedgeId, HyperedgeInput, NodeId, VertexId};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const M_PRIME: u64 = 1125899906842597;

pub fn four_groups_text() -> &'static str {
    "1 2\n1 2 3 4\n1 4 5\n3 4\n"
}

pub fn four_groups() -> PlainHypergraph {
    hyperweave::harness::format::parse_hypergraph(four_groups_text()).unwrap()
}

pub struct Shape {
    pub max_vertices: usize,
    pub max_hyperedges: usize,
    pub max_cardinality: usize,
    pub weighted: bool,
    pub isolated: bool,
}

/// Random hypergraph with scattered vertex ids, optional weights and optional
/// isolated vertices.
pub fn random_hypergraph(seed: u64, shape: &Shape) -> PlainHypergraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nv = rng.gen_range(1..=shape.max_vertices);
    let ne = rng.gen_range(1..=shape.max_hyperedges);
    let ids: Vec<u64> = (0..nv as u64).map(|i| i * 7 + rng.gen_range(0..7)).collect();
    let inputs = (0..ne)
        .map(|_| {
            let card = rng.gen_range(1..=shape.max_cardinality.min(nv));
            let members = sample(&mut rng, nv, card).into_iter().map(|i| ids[i]);
            let mut e = HyperedgeInput::new(members);
            if shape.weighted {
                e = e.with_weight(rng.gen_range(0.5..2.0));
            }
            e
        })
        .collect();
    let attrs = shape.isolated.then(|| {
        let mut m: BTreeMap<VertexId, ()> = ids.iter().map(|&v| (VertexId(v), ())).collect();
        m.insert(VertexId(10_000 + rng.gen_range(0..100)), ());
        m
    });
    PlainHypergraph::build(inputs, attrs).unwrap().0
}

pub fn small_corpus(n: u64, seed: u64, shape: &Shape) -> Vec<PlainHypergraph> {
    (0..n).map(|i| random_hypergraph(seed * 1000 + i, shape)).collect()
}

fn members(h: &PlainHypergraph) -> Vec<(HyperedgeId, Vec<VertexId>, f64)> {
    h.hyperedges().iter().map(|e| (e.id, e.members.clone(), e.weight)).collect()
}

/// Replays the unnormalized PageRank recurrence on plain member lists.
/// Vertices without hyperedges are left out.
pub fn pagerank_oracle(
    h: &PlainHypergraph,
    alpha: f64,
    rounds: usize,
) -> (BTreeMap<VertexId, f64>, BTreeMap<HyperedgeId, f64>) {
    let edges = members(h);
    let mut total_weight: HashMap<VertexId, f64> = HashMap::new();
    for (_, ms, w) in &edges {
        for m in ms {
            *total_weight.entry(*m).or_default() += w;
        }
    }
    let mut vr: BTreeMap<VertexId, f64> = BTreeMap::new();
    let mut er: BTreeMap<HyperedgeId, f64> = BTreeMap::new();
    for r in 0..rounds {
        let mut incoming: BTreeMap<VertexId, (f64, f64)> = BTreeMap::new();
        if r == 0 {
            for v in total_weight.keys() {
                incoming.insert(*v, (1.0, 1.0));
            }
        } else {
            for (id, ms, w) in &edges {
                for m in ms {
                    let slot = incoming.entry(*m).or_insert((0.0, 0.0));
                    slot.0 += w;
                    slot.1 += er[id] / ms.len() as f64;
                }
            }
        }
        for (v, (_, share)) in &incoming {
            vr.insert(*v, alpha + (1.0 - alpha) * share);
        }
        for (id, ms, w) in &edges {
            let tw = |m: &VertexId| if r == 0 { 1.0 } else { total_weight[m] };
            let sum: f64 = ms.iter().map(|m| vr[m] / tw(m)).sum();
            er.insert(*id, sum * w);
        }
    }
    (vr, er)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

/// Largest vertex id in each node's connected component.
pub fn component_max(h: &PlainHypergraph) -> (BTreeMap<VertexId, u64>, BTreeMap<HyperedgeId, u64>) {
    let vs: Vec<VertexId> = h.vertex_ids().to_vec();
    let pos: HashMap<VertexId, usize> = vs.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut uf = UnionFind((0..vs.len()).collect());
    for e in h.hyperedges() {
        for w in e.members.windows(2) {
            uf.union(pos[&w[0]], pos[&w[1]]);
        }
    }
    let mut best: HashMap<usize, u64> = HashMap::new();
    for (i, v) in vs.iter().enumerate() {
        let r = uf.find(i);
        let b = best.entry(r).or_insert(0);
        *b = (*b).max(v.0);
    }
    let vl = vs.iter().enumerate().map(|(i, v)| (*v, best[&uf.find(i)])).collect();
    let el = h.hyperedges().iter().map(|e| (e.id, best[&uf.find(pos[&e.members[0]])])).collect();
    (vl, el)
}

/// Breadth-first distances on the bipartite incidence graph, halved into
/// hyperedge-crossing counts.
pub fn bfs_hops(h: &PlainHypergraph, sources: &[VertexId]) -> (BTreeMap<VertexId, f64>, BTreeMap<HyperedgeId, f64>) {
    let mut adj: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
    for e in h.hyperedges() {
        for m in &e.members {
            adj.entry(NodeId::Vertex(*m)).or_default().push(NodeId::Hyperedge(e.id));
            adj.entry(NodeId::Hyperedge(e.id)).or_default().push(NodeId::Vertex(*m));
        }
    }
    let mut dist: HashMap<NodeId, u64> = HashMap::new();
    let mut queue = VecDeque::new();
    for s in sources {
        dist.insert(NodeId::Vertex(*s), 0);
        queue.push_back(NodeId::Vertex(*s));
    }
    while let Some(n) = queue.pop_front() {
        let d = dist[&n];
        for m in adj.get(&n).into_iter().flatten() {
            if !dist.contains_key(m) {
                dist.insert(*m, d + 1);
                queue.push_back(*m);
            }
        }
    }
    let get = |n: NodeId| dist.get(&n).map_or(f64::INFINITY, |&d| d.div_ceil(2) as f64);
    let vh = h.vertex_ids().iter().map(|v| (*v, get(NodeId::Vertex(*v)))).collect();
    let eh = h.hyperedges().iter().map(|e| (e.id, get(NodeId::Hyperedge(e.id)))).collect();
    (vh, eh)
}

pub fn hash(raw: u64, k: u32) -> u32 {
    (raw.wrapping_mul(M_PRIME) % k as u64) as u32
}

/// Replays a greedy assignment step by step and checks that each driven node
/// went to the argmax of `overlap - sqrt(load)` with ties to the lowest part.
/// Returns the first step that disagrees.
pub fn greedy_replay(
    h: &PlainHypergraph,
    cfg: &PartitionConfig,
    cut: Cut,
    a: &PartitionAssignment,
) -> Result<(), String> {
    let k = cfg.num_parts;
    // driven nodes with their neighbors, in ascending id order
    let mut driven: Vec<(NodeId, Vec<NodeId>)> = match cut {
        Cut::Vertex => h
            .hyperedges()
            .iter()
            .map(|e| (NodeId::Hyperedge(e.id), e.members.iter().map(|m| NodeId::Vertex(*m)).collect()))
            .collect(),
        Cut::Hyperedge => {
            let mut inc: BTreeMap<VertexId, Vec<NodeId>> = h.vertex_ids().iter().map(|v| (*v, Vec::new())).collect();
            for e in h.hyperedges() {
                for m in &e.members {
                    inc.get_mut(m).unwrap().push(NodeId::Hyperedge(e.id));
                }
            }
            inc.into_iter().map(|(v, ns)| (NodeId::Vertex(v), ns)).collect()
        }
    };
    driven.sort_by_key(|(n, _)| n.raw());
    let mut replicas: HashMap<NodeId, BTreeSet<u32>> = HashMap::new();
    let mut load = vec![0u64; k as usize];
    for (node, ns) in driven {
        if ns.is_empty() {
            continue;
        }
        let score = |p: u32, replicas: &HashMap<NodeId, BTreeSet<u32>>| {
            let overlap =
                ns.iter().filter(|n| hash(n.raw(), k) == p || replicas.get(n).is_some_and(|s| s.contains(&p))).count();
            overlap as f64 - (load[p as usize] as f64).sqrt()
        };
        let mut best = 0;
        for p in 1..k {
            if score(p, &replicas) > score(best, &replicas) {
                best = p;
            }
        }
        let chosen: BTreeSet<u32> = ns
            .iter()
            .map(|n| {
                let edge = match (node, *n) {
                    (NodeId::Hyperedge(e), NodeId::Vertex(v)) | (NodeId::Vertex(v), NodeId::Hyperedge(e)) => {
                        hyperweave::BipartiteEdge { src: v, dst: e }
                    }
                    _ => unreachable!(),
                };
                a.part_of(edge).unwrap()
            })
            .collect();
        if chosen != BTreeSet::from([best]) {
            return Err(format!("{node}: expected P{best}, found {chosen:?}"));
        }
        load[best as usize] += ns.len() as u64;
        for n in ns {
            replicas.entry(n).or_default().insert(best);
        }
    }
    Ok(())
}
