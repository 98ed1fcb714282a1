use std::collections::BTreeMap;

use super::{hyperedge_map, vertex_map, AlgorithmError};
use crate::engine::{compute, ComputeOptions, Context, Max, Program, RunReport};
use crate::hypergraph::{HyperedgeId, Hypergraph, VertexId};
use crate::partition::PartitionAssignment;

#[derive(Clone, Debug)]
pub struct LabelOutput {
    pub vertex_labels: BTreeMap<VertexId, u64>,
    pub hyperedge_labels: BTreeMap<HyperedgeId, u64>,
    pub report: RunReport,
}

/// Max-label propagation. Each vertex starts with its own id and every node
/// keeps the largest label it has seen. Nodes only broadcast when their label
/// changes, so the run stops early once labels settle. After enough rounds each
/// connected component carries the largest vertex id it contains.
pub fn label_propagation<VD, HED>(
    h: &Hypergraph<VD, HED>,
    assignment: &PartitionAssignment,
    max_iters: usize,
    opts: &ComputeOptions,
) -> Result<LabelOutput, AlgorithmError> {
    if max_iters == 0 {
        return Err(AlgorithmError::ZeroIterations);
    }
    let g = h.with_attrs(|v, _| v.0, |_, _| 0u64);
    let vprog = Program::with_default_combiner(
        |step, _, label: &u64, Max(msg): Max<u64>, ctx: &mut Context<'_, u64, Max<u64>>| {
            let new = (*label).max(msg);
            if step == 0 || new != *label {
                ctx.set_attr(new);
                ctx.broadcast(Max(new));
            }
        },
    )?;
    let heprog = Program::with_default_combiner(
        |_, _, label: &u64, Max(msg): Max<u64>, ctx: &mut Context<'_, u64, Max<u64>>| {
            if msg > *label {
                ctx.set_attr(msg);
                ctx.broadcast(Max(msg));
            }
        },
    )?;
    let (out, report) = compute(&g, assignment, max_iters, Max(0), &vprog, &heprog, opts)?;
    Ok(LabelOutput { vertex_labels: vertex_map(&out, |l| *l), hyperedge_labels: hyperedge_map(&out, |l| *l), report })
}
