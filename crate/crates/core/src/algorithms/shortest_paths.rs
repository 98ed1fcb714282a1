use std::collections::BTreeMap;

use super::{hyperedge_map, vertex_map, AlgorithmError};
use crate::engine::{compute, ComputeOptions, Context, Min, Program, RunReport};
use crate::hypergraph::{HyperedgeId, Hypergraph, VertexId};
use crate::partition::PartitionAssignment;

#[derive(Clone, Debug)]
pub struct HopOutput {
    /// Hops from the nearest source; infinite when unreachable.
    pub vertex_hops: BTreeMap<VertexId, f64>,
    pub hyperedge_hops: BTreeMap<HyperedgeId, f64>,
    pub report: RunReport,
}

/// Multi-source hop counts. A vertex's hop is the fewest hyperedges crossed to
/// reach it from a source; a hyperedge's hop is one more than its nearest
/// member's.
pub fn shortest_paths<VD, HED>(
    h: &Hypergraph<VD, HED>,
    assignment: &PartitionAssignment,
    sources: &[VertexId],
    max_iters: usize,
    opts: &ComputeOptions,
) -> Result<HopOutput, AlgorithmError> {
    if sources.is_empty() {
        return Err(AlgorithmError::NoSources);
    }
    if max_iters == 0 {
        return Err(AlgorithmError::ZeroIterations);
    }
    if let Some(&v) = sources.iter().find(|&&v| !h.contains_vertex(v)) {
        return Err(AlgorithmError::UnknownSource(v));
    }
    let g = h.with_attrs(|v, _| if sources.contains(&v) { 0.0 } else { f64::INFINITY }, |_, _| f64::INFINITY);
    let vprog = Program::with_default_combiner(
        |step, _, cur: &f64, Min(msg): Min<f64>, ctx: &mut Context<'_, f64, Min<f64>>| {
            if msg < *cur {
                ctx.set_attr(msg);
                ctx.broadcast(Min(msg + 1.0));
            } else if step == 0 && cur.is_finite() {
                ctx.broadcast(Min(cur + 1.0));
            }
        },
    )?;
    let heprog =
        Program::with_default_combiner(|_, _, cur: &f64, Min(msg): Min<f64>, ctx: &mut Context<'_, f64, Min<f64>>| {
            if msg < *cur {
                ctx.set_attr(msg);
                ctx.broadcast(Min(msg));
            }
        })?;
    let (out, report) = compute(&g, assignment, max_iters, Min(f64::INFINITY), &vprog, &heprog, opts)?;
    Ok(HopOutput { vertex_hops: vertex_map(&out, |d| *d), hyperedge_hops: hyperedge_map(&out, |d| *d), report })
}
