use std::collections::BTreeMap;

use super::combine::{fold_into, Combiner};
use crate::partition::PartitionId;

#[derive(Debug, Clone, PartialEq)]
pub struct Aggregated<K, M> {
    /// One combined message per destination that received any emission.
    pub combined: BTreeMap<K, M>,
    /// `(partition, destination)` pairs after the local pre-combine.
    pub local_groups: u64,
    /// Pre-combined groups that had to leave their partition.
    pub shipped: u64,
}

/// Two-level message aggregation.
///
/// Emissions are tagged with the partition that produced them. Each partition
/// first folds its own messages per destination; each resulting group is then
/// shipped to the destination's master (counted when the partitions differ)
/// and folded again there, in ascending source partition order.
pub fn aggregate_messages<K: Ord + Copy, M>(
    emissions: impl IntoIterator<Item = (PartitionId, K, M)>,
    master_of: impl Fn(K) -> PartitionId,
    combiner: &Combiner<M>,
) -> Aggregated<K, M> {
    let mut local: BTreeMap<(PartitionId, K), Option<M>> = BTreeMap::new();
    for (p, k, m) in emissions {
        fold_into(local.entry((p, k)).or_insert(None), m, combiner);
    }

    let local_groups = local.len() as u64;
    let mut shipped = 0;
    let mut at_master: BTreeMap<K, Option<M>> = BTreeMap::new();
    for ((p, k), m) in local {
        if p != master_of(k) {
            shipped += 1;
        }
        if let Some(m) = m {
            fold_into(at_master.entry(k).or_insert(None), m, combiner);
        }
    }
    let combined = at_master.into_iter().filter_map(|(k, m)| m.map(|m| (k, m))).collect();
    Aggregated { combined, local_groups, shipped }
}
