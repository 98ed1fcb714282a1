use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{hyperedge_map, vertex_map, AlgorithmError};
use crate::engine::combine::{concat, default_combiner};
use crate::engine::{compute, ComputeOptions, Context, Program, RunReport};
use crate::hypergraph::{HyperedgeId, Hypergraph, VertexId};
use crate::partition::PartitionAssignment;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PageRankConfig {
    /// Teleport weight.
    pub alpha: f64,
    pub iterations: usize,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig { alpha: 0.15, iterations: 30 }
    }
}

impl PageRankConfig {
    pub fn validate(&self) -> Result<(), AlgorithmError> {
        if self.alpha > 0.0 && self.alpha < 1.0 {
            Ok(())
        } else {
            Err(AlgorithmError::InvalidAlpha(self.alpha))
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
struct EdgeRank {
    cardinality: usize,
    weight: f64,
    rank: f64,
    entropy: f64,
}

#[derive(Clone, Debug)]
pub struct PageRankOutput {
    /// Ranks of vertices with at least one hyperedge.
    pub vertex_ranks: BTreeMap<VertexId, f64>,
    pub hyperedge_ranks: BTreeMap<HyperedgeId, f64>,
    /// Vertices without hyperedges; they have no rank.
    pub excluded: Vec<VertexId>,
    pub report: RunReport,
}

#[derive(Clone, Debug)]
pub struct EntropyOutput {
    pub ranks: PageRankOutput,
    /// Entropy in bits of each hyperedge's normalized member ranks.
    pub entropy: BTreeMap<HyperedgeId, f64>,
}

/// Entropy in bits of `ranks` after normalizing them to sum to one.
/// Zero when the ranks sum to zero.
pub fn entropy(ranks: &[f64]) -> f64 {
    let total: f64 = ranks.iter().sum();
    if total <= 0.0 {
        return 0.0;
    }
    ranks.iter().map(|r| r / total).filter(|&p| p > 0.0).map(|p| p * (1.0 / p).ln()).sum::<f64>()
        / std::f64::consts::LN_2
}

fn prepare<VD, HED>(
    h: &Hypergraph<VD, HED>,
    cfg: &PageRankConfig,
) -> Result<(Hypergraph<f64, EdgeRank>, Vec<VertexId>), AlgorithmError> {
    cfg.validate()?;
    if let Some(e) = h.hyperedges().iter().find(|e| e.weight <= 0.0) {
        return Err(AlgorithmError::NonPositiveWeight(e.id));
    }
    let excluded: Vec<VertexId> =
        h.vertex_ids().iter().enumerate().filter(|(i, _)| h.topology().degree_at(*i) == 0).map(|(_, &v)| v).collect();
    if !excluded.is_empty() {
        log::warn!("{} vertices without hyperedges excluded from PageRank", excluded.len());
    }
    let g = h.with_attrs(
        |_, _| 0.0,
        |e, _| EdgeRank { cardinality: e.cardinality(), weight: e.weight, rank: 0.0, entropy: 0.0 },
    );
    Ok((g, excluded))
}

fn collect(g: &Hypergraph<f64, EdgeRank>, excluded: Vec<VertexId>, report: RunReport) -> PageRankOutput {
    let mut vertex_ranks = vertex_map(g, |r| *r);
    for v in &excluded {
        vertex_ranks.remove(v);
    }
    PageRankOutput { vertex_ranks, hyperedge_ranks: hyperedge_map(g, |a| a.rank), excluded, report }
}

/// Hypergraph PageRank over vertices and hyperedges.
///
/// Vertices receive `(sum of incident weights, sum of hyperedge rank shares)`,
/// set `rank = alpha + (1 - alpha) * share` and send `rank / total weight` to
/// each hyperedge. Hyperedges set `rank = weight * incoming` and send
/// `(weight, rank / cardinality)` back. Ranks are not normalized.
pub fn page_rank<VD, HED>(
    h: &Hypergraph<VD, HED>,
    assignment: &PartitionAssignment,
    cfg: &PageRankConfig,
    opts: &ComputeOptions,
) -> Result<PageRankOutput, AlgorithmError> {
    let (g, excluded) = prepare(h, cfg)?;
    let alpha = cfg.alpha;
    let vprog = Program::with_default_combiner(
        move |_, _, _: &f64, (total_weight, rank): (f64, f64), ctx: &mut Context<'_, f64, f64>| {
            let new_rank = alpha + (1.0 - alpha) * rank;
            ctx.set_attr(new_rank);
            ctx.broadcast(new_rank / total_weight);
        },
    )?;
    let heprog = Program::with_default_combiner(
        |_, _, attr: &EdgeRank, msg: f64, ctx: &mut Context<'_, EdgeRank, (f64, f64)>| {
            let rank = msg * attr.weight;
            ctx.set_attr(EdgeRank { rank, ..attr.clone() });
            ctx.broadcast((attr.weight, rank / attr.cardinality as f64));
        },
    )?;
    let (out, report) = compute(&g, assignment, cfg.iterations, (1.0, 1.0), &vprog, &heprog, opts)?;
    Ok(collect(&out, excluded, report))
}

/// PageRank where each hyperedge also records the entropy of its members'
/// ranks. Vertices send `(rank, total weight)` lists, combined by
/// concatenation; hyperedges sort the list before reducing it so the result
/// does not depend on arrival order.
pub fn page_rank_entropy<VD, HED>(
    h: &Hypergraph<VD, HED>,
    assignment: &PartitionAssignment,
    cfg: &PageRankConfig,
    opts: &ComputeOptions,
) -> Result<EntropyOutput, AlgorithmError> {
    let (g, excluded) = prepare(h, cfg)?;
    let alpha = cfg.alpha;
    let vprog = Program::new(
        move |_, _, _: &f64, (total_weight, rank): (f64, f64), ctx: &mut Context<'_, f64, Vec<(f64, f64)>>| {
            let new_rank = alpha + (1.0 - alpha) * rank;
            ctx.set_attr(new_rank);
            ctx.broadcast(vec![(new_rank, total_weight)]);
        },
        concat(),
    );
    let heprog = Program::new(
        |_, _, attr: &EdgeRank, mut msg: Vec<(f64, f64)>, ctx: &mut Context<'_, EdgeRank, (f64, f64)>| {
            msg.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
            let rank: f64 = msg.iter().map(|(r, tw)| r * attr.weight / tw).sum();
            let ranks: Vec<f64> = msg.iter().map(|(r, _)| *r).collect();
            ctx.set_attr(EdgeRank { rank, entropy: entropy(&ranks), ..attr.clone() });
            ctx.broadcast((attr.weight, rank / attr.cardinality as f64));
        },
        default_combiner()?,
    );
    let (out, report) = compute(&g, assignment, cfg.iterations, (1.0, 1.0), &vprog, &heprog, opts)?;
    let entropy = hyperedge_map(&out, |a| a.entropy);
    Ok(EntropyOutput { ranks: collect(&out, excluded, report), entropy })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::tests::four_groups;
    use crate::hypergraph::{HyperedgeInput, PlainHypergraph};
    use crate::partition::{partition, PartitionConfig, Strategy};

    /// Replays the recurrence directly on member lists.
    fn dense_oracle(h: &PlainHypergraph, alpha: f64, rounds: usize) -> (Vec<f64>, Vec<f64>) {
        let n = h.num_vertices();
        let idx = |v: VertexId| h.vertex_ids().iter().position(|&x| x == v).unwrap();
        let mut vr = vec![0.0; n];
        let mut er = vec![0.0; h.num_hyperedges()];
        for r in 0..rounds {
            let mut tw = vec![0.0; n];
            let mut share = vec![0.0; n];
            if r == 0 {
                tw.fill(1.0);
                share.fill(1.0);
            } else {
                for (e, he) in h.hyperedges().iter().enumerate() {
                    for &m in &he.members {
                        tw[idx(m)] += he.weight;
                        share[idx(m)] += er[e] / he.members.len() as f64;
                    }
                }
            }
            for v in 0..n {
                if tw[v] > 0.0 {
                    vr[v] = alpha + (1.0 - alpha) * share[v];
                }
            }
            for (e, he) in h.hyperedges().iter().enumerate() {
                let incoming: f64 = he.members.iter().map(|&m| vr[idx(m)] / tw[idx(m)]).sum();
                er[e] = incoming * he.weight;
            }
        }
        (vr, er)
    }

    #[test]
    fn single_member_fixed_point() {
        let (h, _) = PlainHypergraph::build(vec![HyperedgeInput::new([3])], None).unwrap();
        let a = partition(&h, &PartitionConfig::new(1), Strategy::RandomVertexCut).unwrap();
        for rounds in 1..5 {
            let cfg = PageRankConfig { iterations: rounds, ..Default::default() };
            let out = page_rank(&h, &a, &cfg, &ComputeOptions::default()).unwrap();
            assert_eq!(out.vertex_ranks[&VertexId(3)], 1.0);
            assert_eq!(out.hyperedge_ranks[&HyperedgeId(0)], 1.0);
        }
    }

    #[test]
    fn four_groups_matches_dense_oracle() {
        let h = four_groups();
        let (vr, er) = dense_oracle(&h, 0.15, 30);
        for s in Strategy::ALL {
            let a = partition(&h, &PartitionConfig::new(2).with_cutoff(2), s).unwrap();
            let out = page_rank(&h, &a, &PageRankConfig::default(), &ComputeOptions::default()).unwrap();
            for (i, v) in h.vertex_ids().iter().enumerate() {
                assert!((out.vertex_ranks[v] - vr[i]).abs() < 1e-9, "{s} {v}");
            }
            for (i, e) in h.hyperedges().iter().enumerate() {
                assert!((out.hyperedge_ranks[&e.id] - er[i]).abs() < 1e-9, "{s} {}", e.id);
            }
        }
    }

    #[test]
    fn alpha_bounds() {
        let h = four_groups();
        let a = partition(&h, &PartitionConfig::new(1), Strategy::RandomVertexCut).unwrap();
        for alpha in [0.0, 1.0, -0.5, f64::NAN] {
            let cfg = PageRankConfig { alpha, iterations: 3 };
            assert!(matches!(
                page_rank(&h, &a, &cfg, &ComputeOptions::default()),
                Err(AlgorithmError::InvalidAlpha(_))
            ));
        }
        // close to one every vertex rank approaches 1
        let cfg = PageRankConfig { alpha: 1.0 - 1e-12, iterations: 10 };
        let out = page_rank(&h, &a, &cfg, &ComputeOptions::default()).unwrap();
        assert!(out.vertex_ranks.values().all(|r| (r - 1.0).abs() < 1e-9));
    }

    #[test]
    fn isolated_vertices_are_excluded() {
        let mut attrs = BTreeMap::new();
        attrs.insert(VertexId(9), ());
        let (h, _) = PlainHypergraph::build(vec![HyperedgeInput::new([1, 2])], Some(attrs)).unwrap();
        let a = partition(&h, &PartitionConfig::new(2), Strategy::RandomBothCut).unwrap();
        let out = page_rank(&h, &a, &PageRankConfig::default(), &ComputeOptions::default()).unwrap();
        assert_eq!(out.excluded, vec![VertexId(9)]);
        assert!(!out.vertex_ranks.contains_key(&VertexId(9)));
        assert_eq!(out.vertex_ranks.len(), 2);
    }

    #[test]
    fn zero_weight_rejected() {
        let (h, _) = PlainHypergraph::build(vec![HyperedgeInput::new([1, 2]).with_weight(0.0)], None).unwrap();
        let a = partition(&h, &PartitionConfig::new(1), Strategy::RandomVertexCut).unwrap();
        assert_eq!(
            page_rank(&h, &a, &PageRankConfig::default(), &ComputeOptions::default()).unwrap_err(),
            AlgorithmError::NonPositiveWeight(HyperedgeId(0))
        );
    }

    #[test]
    fn entropy_examples() {
        assert!((entropy(&[0.3; 4]) - 2.0).abs() < 1e-12);
        assert_eq!(entropy(&[0.7]), 0.0);
        let expected = 0.75 * (4.0f64 / 3.0).log2() + 0.25 * 4.0f64.log2();
        assert!((entropy(&[3.0, 1.0]) - expected).abs() < 1e-12);
        assert!((expected - 0.811278).abs() < 1e-6);
        assert_eq!(entropy(&[0.0, 0.0]), 0.0);
        assert_eq!(entropy(&[]), 0.0);
    }

    #[test]
    fn entropy_variant_ranks_match_plain_pagerank() {
        let h = four_groups();
        let a = partition(&h, &PartitionConfig::new(3), Strategy::RandomBothCut).unwrap();
        let cfg = PageRankConfig::default();
        let plain = page_rank(&h, &a, &cfg, &ComputeOptions::default()).unwrap();
        let ent = page_rank_entropy(&h, &a, &cfg, &ComputeOptions::default()).unwrap();
        for (v, r) in &plain.vertex_ranks {
            assert!((ent.ranks.vertex_ranks[v] - r).abs() < 1e-9);
        }
        for (e, r) in &plain.hyperedge_ranks {
            assert!((ent.ranks.hyperedge_ranks[e] - r).abs() < 1e-9);
            let card = h.cardinality(*e).unwrap() as f64;
            let hbits = ent.entropy[e];
            assert!(hbits >= 0.0 && hbits <= card.log2() + 1e-12);
        }
    }
}
