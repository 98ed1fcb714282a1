use std::time::Instant;

use rayon::prelude::*;
use rayon::ThreadPool;

use super::combine::{fold_into, Combiner};
use super::plan::{PartPlan, Plan, Slot};
use super::program::{Context, Emission, Neighbors, Program, Step};
use super::report::{Halt, PhaseReport, RoundReport, RunReport, Side};
use super::{ComputeOptions, EngineError};
use crate::hypergraph::{Hypergraph, NodeId, Topology};
use crate::partition::{PartitionAssignment, PartitionId, Placement};

/// Messages bound for one side: `[destination partition][source partition]`
/// lists of `(master slot, message)`.
type Routed<M> = Vec<Vec<Vec<(u32, M)>>>;

enum Inbound<M> {
    Initial(M),
    Routed(Routed<M>),
}

enum PartInput<'a, M> {
    Initial(&'a M),
    Routed(Vec<Vec<(u32, M)>>),
}

struct PassOne<O> {
    emissions: Vec<Emission<O>>,
    updated_slots: Vec<u32>,
    active: usize,
    updated: usize,
    mirror_syncs: u64,
    error: Option<EngineError>,
}

struct Scan<O> {
    outboxes: Vec<Vec<(u32, O)>>,
    emitted: u64,
    combined: u64,
    shipped: u64,
}

impl Side {
    fn masters(self, p: &PartPlan) -> &[u32] {
        match self {
            Side::Vertex => &p.vertex_masters,
            Side::Hyperedge => &p.hyperedge_masters,
        }
    }

    fn locals(self, p: &PartPlan) -> &[u32] {
        match self {
            Side::Vertex => &p.local_vertices,
            Side::Hyperedge => &p.local_hyperedges,
        }
    }

    fn other(self) -> Side {
        match self {
            Side::Vertex => Side::Hyperedge,
            Side::Hyperedge => Side::Vertex,
        }
    }
}

struct Exec<'a> {
    t: &'a Topology,
    plan: &'a Plan,
    placement: &'a Placement,
    pool: &'a ThreadPool,
}

impl<'a> Exec<'a> {
    fn slots(&self, side: Side) -> &'a [Slot] {
        match side {
            Side::Vertex => &self.plan.vertex_slot,
            Side::Hyperedge => &self.plan.hyperedge_slot,
        }
    }

    fn node_id(&self, side: Side, idx: usize) -> NodeId {
        match side {
            Side::Vertex => NodeId::Vertex(self.t.vertex_id(idx)),
            Side::Hyperedge => NodeId::Hyperedge(self.t.hyperedge_id(idx)),
        }
    }

    fn neighbors(&self, side: Side, idx: usize) -> Neighbors<'a> {
        match side {
            Side::Vertex => Neighbors::OfVertex(self.t.vertex_edge_positions(idx)),
            Side::Hyperedge => Neighbors::OfHyperedge(self.t.member_indices(idx)),
        }
    }

    fn mirrors(&self, side: Side, idx: usize) -> &'a [PartitionId] {
        match side {
            Side::Vertex => &self.placement.vertex_mirrors[idx],
            Side::Hyperedge => &self.placement.hyperedge_mirrors[idx],
        }
    }

    fn remote_mirrors(&self, side: Side) -> &'a [u32] {
        match side {
            Side::Vertex => &self.plan.vertex_remote_mirrors,
            Side::Hyperedge => &self.plan.hyperedge_remote_mirrors,
        }
    }

    /// One phase: final combine at masters, procedures, mirror sync, then an
    /// edge scan with local pre-combine routed toward the other side's masters.
    #[allow(clippy::too_many_arguments)]
    fn phase<A, I, O>(
        &self,
        side: Side,
        step: Step,
        attrs: &mut [Vec<A>],
        replicas: Option<&mut Vec<Vec<A>>>,
        inbound: Inbound<I>,
        in_combiner: &Combiner<I>,
        prog: &Program<A, I, O>,
    ) -> Result<(Routed<O>, PhaseReport), EngineError>
    where
        A: Clone + PartialEq + Send + Sync,
        I: Clone + Send + Sync,
        O: Clone + Send + Sync,
    {
        let started = Instant::now();
        let k = self.plan.parts.len();
        let check = replicas.is_some();

        let initial;
        let inputs: Vec<PartInput<'_, I>> = match inbound {
            Inbound::Initial(m) => {
                initial = m;
                (0..k).map(|_| PartInput::Initial(&initial)).collect()
            }
            Inbound::Routed(mut r) => {
                r.resize_with(k, Vec::new);
                r.into_iter().map(PartInput::Routed).collect()
            }
        };

        let remote = self.remote_mirrors(side);
        let pass_one: Vec<PassOne<O>> = self.pool.install(|| {
            attrs
                .par_iter_mut()
                .zip(inputs.into_par_iter())
                .enumerate()
                .map(|(q, (attrs_q, input))| {
                    let masters = side.masters(&self.plan.parts[q]);
                    let (initial, mut inbox) = match input {
                        PartInput::Initial(m) => (Some(m), Vec::new()),
                        PartInput::Routed(from) => {
                            let mut inbox: Vec<Option<I>> = Vec::new();
                            inbox.resize_with(masters.len(), || None);
                            for list in from {
                                for (slot, m) in list {
                                    fold_into(&mut inbox[slot as usize], m, in_combiner);
                                }
                            }
                            (None, inbox)
                        }
                    };

                    let mut out = PassOne {
                        emissions: Vec::with_capacity(masters.len()),
                        updated_slots: Vec::new(),
                        active: 0,
                        updated: 0,
                        mirror_syncs: 0,
                        error: None,
                    };
                    for (slot, &node) in masters.iter().enumerate() {
                        let msg = match initial {
                            Some(m) => m.clone(),
                            None => match inbox[slot].take() {
                                Some(m) => m,
                                None => {
                                    out.emissions.push(Emission::None);
                                    continue;
                                }
                            },
                        };
                        out.active += 1;
                        let node = node as usize;
                        let id = self.node_id(side, node);
                        let mut ctx = Context::new(id, self.neighbors(side, node), self.t);
                        prog.run(step, id, &attrs_q[slot], msg, &mut ctx);
                        let (new_attr, emission, error) = ctx.finish();
                        if let Some(e) = error {
                            out.error.get_or_insert(e);
                        }
                        if let Some(a) = new_attr {
                            attrs_q[slot] = a;
                            out.updated += 1;
                            out.mirror_syncs += remote[node] as u64;
                            if check {
                                out.updated_slots.push(slot as u32);
                            }
                        }
                        out.emissions.push(emission);
                    }
                    out
                })
                .collect()
        });

        if let Some(e) = pass_one.iter().find_map(|p| p.error.clone()) {
            return Err(e);
        }

        if let Some(replicas) = replicas {
            self.sync_mirrors(side, attrs, replicas, &pass_one);
            self.sweep_mirrors(side, attrs, replicas)?;
        }

        let emissions: Vec<Vec<Emission<O>>> = Vec::new();
        let mut report = PhaseReport {
            side,
            active: 0,
            updated: 0,
            emitted: 0,
            combined: 0,
            shipped: 0,
            mirror_syncs: 0,
            seconds: 0.0,
        };
        let emissions = pass_one.into_iter().fold(emissions, |mut acc, p| {
            report.active += p.active;
            report.updated += p.updated;
            report.mirror_syncs += p.mirror_syncs;
            acc.push(p.emissions);
            acc
        });

        let scans: Vec<Scan<O>> = if emissions.iter().flatten().any(Emission::is_some) {
            self.pool.install(|| (0..k).into_par_iter().map(|p| self.scan(side, p, &emissions, prog)).collect())
        } else {
            Vec::new()
        };

        let mut routed: Routed<O> = (0..k).map(|_| Vec::with_capacity(k)).collect();
        for scan in scans {
            report.emitted += scan.emitted;
            report.combined += scan.combined;
            report.shipped += scan.shipped;
            for (q, list) in scan.outboxes.into_iter().enumerate() {
                routed[q].push(list);
            }
        }
        report.seconds = started.elapsed().as_secs_f64();
        Ok((routed, report))
    }

    fn scan<A, I, O: Clone>(
        &self,
        side: Side,
        p: usize,
        emissions: &[Vec<Emission<O>>],
        prog: &Program<A, I, O>,
    ) -> Scan<O> {
        let part = &self.plan.parts[p];
        let receivers = side.other().locals(part);
        let sender_slots = self.slots(side);
        let receiver_slots = self.slots(side.other());
        let combiner = prog.combiner();

        let mut scratch: Vec<Option<O>> = Vec::new();
        scratch.resize_with(receivers.len(), || None);
        let mut emitted = 0;
        for (&pos, &(lv, lh)) in part.edges.iter().zip(&part.edge_local) {
            let pos = pos as usize;
            let (sender, receiver, local) = match side {
                Side::Vertex => (self.t.edge_src_index(pos), self.t.edge_dst_index(pos), lh),
                Side::Hyperedge => (self.t.edge_dst_index(pos), self.t.edge_src_index(pos), lv),
            };
            let s = sender_slots[sender];
            let emission = &emissions[s.part as usize][s.idx as usize];
            if !emission.is_some() {
                continue;
            }
            let slot = &mut scratch[local as usize];
            emission.for_each_to(receiver as u32, |m| {
                fold_into(slot, m.clone(), combiner);
                emitted += 1;
            });
        }

        let mut outboxes: Vec<Vec<(u32, O)>> = (0..self.plan.parts.len()).map(|_| Vec::new()).collect();
        let (mut combined, mut shipped) = (0, 0);
        for (local, m) in scratch.into_iter().enumerate() {
            if let Some(m) = m {
                let dst = receiver_slots[receivers[local] as usize];
                outboxes[dst.part as usize].push((dst.idx, m));
                combined += 1;
                if dst.part as usize != p {
                    shipped += 1;
                }
            }
        }
        Scan { outboxes, emitted, combined, shipped }
    }

    fn init_replicas<A: Clone>(&self, side: Side, attrs: &[Vec<A>]) -> Vec<Vec<A>> {
        let slots = self.slots(side);
        self.plan
            .parts
            .iter()
            .map(|part| {
                side.locals(part)
                    .iter()
                    .map(|&n| {
                        let s = slots[n as usize];
                        attrs[s.part as usize][s.idx as usize].clone()
                    })
                    .collect()
            })
            .collect()
    }

    fn sync_mirrors<A: Clone, O>(
        &self,
        side: Side,
        attrs: &[Vec<A>],
        replicas: &mut [Vec<A>],
        pass_one: &[PassOne<O>],
    ) {
        for (q, p) in pass_one.iter().enumerate() {
            let masters = side.masters(&self.plan.parts[q]);
            for &slot in &p.updated_slots {
                let node = masters[slot as usize];
                for &m in self.mirrors(side, node as usize) {
                    let locals = side.locals(&self.plan.parts[m as usize]);
                    let li = locals.binary_search(&node).expect("mirror holds a local copy");
                    replicas[m as usize][li] = attrs[q][slot as usize].clone();
                }
            }
        }
    }

    fn sweep_mirrors<A: PartialEq>(
        &self,
        side: Side,
        attrs: &[Vec<A>],
        replicas: &[Vec<A>],
    ) -> Result<(), EngineError> {
        let slots = self.slots(side);
        for (m, part) in self.plan.parts.iter().enumerate() {
            for (li, &n) in side.locals(part).iter().enumerate() {
                let s = slots[n as usize];
                if replicas[m][li] != attrs[s.part as usize][s.idx as usize] {
                    return Err(EngineError::MirrorIncoherent {
                        node: self.node_id(side, n as usize),
                        part: m as PartitionId,
                    });
                }
            }
        }
        Ok(())
    }
}

fn scatter<A>(slots: &[Slot], parts: Vec<Vec<A>>) -> Vec<A> {
    let mut out: Vec<Option<A>> = Vec::new();
    out.resize_with(slots.len(), || None);
    let mut index: Vec<Vec<usize>> = parts.iter().map(|p| Vec::with_capacity(p.len())).collect();
    for (n, s) in slots.iter().enumerate() {
        index[s.part as usize].push(n);
    }
    for (p, attrs) in parts.into_iter().enumerate() {
        for (slot, a) in attrs.into_iter().enumerate() {
            out[index[p][slot]] = Some(a);
        }
    }
    out.into_iter().map(|a| a.expect("every node has a master")).collect()
}

fn gather<A: Clone>(masters: impl Fn(&PartPlan) -> &[u32], plan: &Plan, attrs: &[A]) -> Vec<Vec<A>> {
    plan.parts.iter().map(|p| masters(p).iter().map(|&n| attrs[n as usize].clone()).collect()).collect()
}

/// Runs alternating vertex and hyperedge phases until `max_iters` full
/// rounds complete or a phase emits no messages.
///
/// Round 0 delivers `initial_msg` to every vertex. After that a node runs only
/// when it has a combined message waiting. Partitions of one phase execute in
/// parallel on a pool of `opts.workers` threads, separated by a barrier.
pub fn compute<VD, HED, ToV, ToHE>(
    h: &Hypergraph<VD, HED>,
    assignment: &PartitionAssignment,
    max_iters: usize,
    initial_msg: ToV,
    vprog: &Program<VD, ToV, ToHE>,
    heprog: &Program<HED, ToHE, ToV>,
    opts: &ComputeOptions,
) -> Result<(Hypergraph<VD, HED>, RunReport), EngineError>
where
    VD: Clone + PartialEq + Send + Sync,
    HED: Clone + PartialEq + Send + Sync,
    ToV: Clone + Send + Sync,
    ToHE: Clone + Send + Sync,
{
    let started = Instant::now();
    let t = h.topology();
    if !std::sync::Arc::ptr_eq(t, assignment.topology()) && **t != **assignment.topology() {
        return Err(EngineError::AssignmentMismatch);
    }
    if opts.workers == 0 {
        return Err(EngineError::NoWorkers);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.workers)
        .build()
        .map_err(|e| EngineError::ThreadPool(e.to_string()))?;
    let plan = Plan::new(t, assignment);
    let exec = Exec { t, plan: &plan, placement: assignment.placement(), pool: &pool };

    let mut vattrs = gather(|p| &p.vertex_masters, &plan, h.vertex_attrs());
    let mut hattrs = gather(|p| &p.hyperedge_masters, &plan, h.hyperedge_attrs());
    let mut vreplicas = opts.check_mirrors.then(|| exec.init_replicas(Side::Vertex, &vattrs));
    let mut hreplicas = opts.check_mirrors.then(|| exec.init_replicas(Side::Hyperedge, &hattrs));

    let mut report = RunReport::new(opts.workers, assignment.num_parts(), max_iters);
    let mut to_vertices = Inbound::Initial(initial_msg);
    for step in 0..max_iters {
        let input = std::mem::replace(&mut to_vertices, Inbound::Routed(Vec::new()));
        let (to_hyperedges, vertex) =
            exec.phase(Side::Vertex, step, &mut vattrs, vreplicas.as_mut(), input, heprog.combiner(), vprog)?;
        if vertex.emitted == 0 {
            report.push(RoundReport { step, vertex, hyperedge: None });
            report.halt = Halt::Quiescent;
            break;
        }
        let (routed, hyperedge) = exec.phase(
            Side::Hyperedge,
            step,
            &mut hattrs,
            hreplicas.as_mut(),
            Inbound::Routed(to_hyperedges),
            vprog.combiner(),
            heprog,
        )?;
        let quiet = hyperedge.emitted == 0;
        report.push(RoundReport { step, vertex, hyperedge: Some(hyperedge) });
        if quiet {
            report.halt = Halt::Quiescent;
            break;
        }
        to_vertices = Inbound::Routed(routed);
    }

    let vertex_attrs = scatter(&plan.vertex_slot, vattrs);
    let hyperedge_attrs = scatter(&plan.hyperedge_slot, hattrs);
    report.seconds = started.elapsed().as_secs_f64();
    Ok((Hypergraph::from_parts(t.clone(), vertex_attrs, hyperedge_attrs), report))
}
