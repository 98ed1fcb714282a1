use serde::{Deserialize, Serialize};

use super::Step;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Vertex,
    Hyperedge,
}

/// Counters for one phase of one round.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseReport {
    pub side: Side,
    /// Nodes that ran their procedure.
    pub active: usize,
    /// Nodes whose attribute changed.
    pub updated: usize,
    /// Edge-level messages produced before any combining.
    pub emitted: u64,
    /// `(partition, destination)` groups left after the local pre-combine.
    pub combined: u64,
    /// Groups sent to a master on a different partition.
    pub shipped: u64,
    /// Attribute copies pushed from masters to remote mirrors.
    pub mirror_syncs: u64,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RoundReport {
    pub step: Step,
    pub vertex: PhaseReport,
    /// Absent when the run went quiet after the vertex phase.
    pub hyperedge: Option<PhaseReport>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Halt {
    MaxIters,
    /// A phase emitted no messages.
    Quiescent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub workers: usize,
    pub num_parts: u32,
    pub max_iters: usize,
    pub halt: Halt,
    pub rounds: Vec<RoundReport>,
    pub total_emitted: u64,
    pub total_shipped: u64,
    pub total_mirror_syncs: u64,
    /// `total_shipped + total_mirror_syncs`.
    pub cross_partition_volume: u64,
    pub seconds: f64,
}

impl RunReport {
    pub(crate) fn new(workers: usize, num_parts: u32, max_iters: usize) -> Self {
        RunReport {
            workers,
            num_parts,
            max_iters,
            halt: Halt::MaxIters,
            rounds: Vec::new(),
            total_emitted: 0,
            total_shipped: 0,
            total_mirror_syncs: 0,
            cross_partition_volume: 0,
            seconds: 0.0,
        }
    }

    pub(crate) fn push(&mut self, round: RoundReport) {
        for ph in std::iter::once(&round.vertex).chain(round.hyperedge.as_ref()) {
            self.total_emitted += ph.emitted;
            self.total_shipped += ph.shipped;
            self.total_mirror_syncs += ph.mirror_syncs;
        }
        self.cross_partition_volume = self.total_shipped + self.total_mirror_syncs;
        self.rounds.push(round);
    }

    pub fn phases(&self) -> impl Iterator<Item = &PhaseReport> {
        self.rounds.iter().flat_map(|r| std::iter::once(&r.vertex).chain(r.hyperedge.as_ref()))
    }
}
