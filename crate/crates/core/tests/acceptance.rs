//! Acceptance criteria, one line per criterion. Exits nonzero on any failure.
//!
//! Set `HYPERWEAVE_APACHE_PATH` to a hyperedge-list file of the Apache dataset
//! to enable criterion 2.

mod common;

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use common::*;
use hyperweave::algorithms::{entropy, label_propagation, page_rank, shortest_paths, PageRankConfig};
use hyperweave::engine::{Combiner, CombinerRegistry, ComputeOptions, Max, Min};
use hyperweave::harness::{dataset_stats, format, RunReport};
use hyperweave::hypergraph::PlainHypergraph;
use hyperweave::partition::{partition, PartitionConfig, Strategy};
use hyperweave::{NodeId, VertexId};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Outcome + 'a>);

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    match result {
        Ok(detail) => match limit {
            Some(l) if elapsed > l => Outcome::Fail(format!("{detail}; took {elapsed:.2?}, limit {l:?}")),
            _ => Outcome::Pass(format!("{detail}; {elapsed:.2?}")),
        },
        Err(e) => Outcome::Fail(e),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hyperweave"))
}

fn criterion_1(dir: &Path) -> Check {
    let path = dir.join("four_groups.txt");
    std::fs::write(&path, four_groups_text()).unwrap();
    let out = bin()
        .args(["stats", "--input", path.to_str().unwrap(), "--representation", "clique"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let text = String::from_utf8_lossy(&out.stdout);
    let counts: Vec<u64> = text.lines().filter_map(|l| l.split('\t').nth(1)?.parse().ok()).collect();
    ensure(counts == [5, 4, 3, 4, 11, 8], || format!("got {counts:?}"))?;
    Ok("5/4/3/4/11/8".into())
}

fn criterion_2() -> Outcome {
    let Some(path) = std::env::var_os("HYPERWEAVE_APACHE_PATH") else {
        return Outcome::Skip("Apache dataset not available; set HYPERWEAVE_APACHE_PATH".into());
    };
    timed(None, || {
        let h = format::load(&path).map_err(|e| e.to_string())?;
        let s = dataset_stats(&h, true, None);
        let got = (s.vertices, s.hyperedges, s.max_degree, s.max_cardinality, s.bipartite_edges, s.clique_edges);
        let want = (3_316, 78_080, 4_507, 179, 408_231, Some(196_452));
        ensure(got == want, || format!("got {got:?}, want {want:?}"))?;
        Ok(format!("{got:?}"))
    })
}

fn tiny() -> Shape {
    Shape { max_vertices: 12, max_hyperedges: 10, max_cardinality: 6, weighted: true, isolated: true }
}

fn medium() -> Shape {
    Shape { max_vertices: 30, max_hyperedges: 20, max_cardinality: 6, weighted: true, isolated: true }
}

fn criterion_3() -> Check {
    let mut graphs = small_corpus(25, 3, &tiny());
    graphs.push(four_groups());
    let mut worst = 0.0f64;
    for (i, h) in graphs.iter().enumerate() {
        let s = Strategy::ALL[i % 7];
        let a = partition(h, &PartitionConfig::new(1 + i as u32 % 4).with_cutoff(3), s).map_err(|e| e.to_string())?;
        let out =
            page_rank(h, &a, &PageRankConfig::default(), &ComputeOptions::default()).map_err(|e| e.to_string())?;
        let (vr, er) = pagerank_oracle(h, 0.15, 30);
        ensure(out.vertex_ranks.len() == vr.len(), || format!("graph {i}: vertex count differs"))?;
        for (v, r) in &vr {
            worst = worst.max((out.vertex_ranks[v] - r).abs());
        }
        for (e, r) in &er {
            worst = worst.max((out.hyperedge_ranks[e] - r).abs());
        }
    }
    ensure(worst < 1e-9, || format!("max deviation {worst:e}"))?;
    Ok(format!("26 hypergraphs, max deviation {worst:.1e}"))
}

type Snapshot = (BTreeMap<VertexId, f64>, Vec<f64>, BTreeMap<VertexId, u64>, Vec<u64>, Vec<f64>, Vec<f64>);

fn snapshot(h: &PlainHypergraph, s: Strategy, k: u32, threads: usize) -> Result<Snapshot, String> {
    let a = partition(h, &PartitionConfig::new(k).with_cutoff(3), s).map_err(|e| e.to_string())?;
    let opts = ComputeOptions::with_workers(threads).checked();
    let pr = page_rank(h, &a, &PageRankConfig::default(), &opts).map_err(|e| e.to_string())?;
    let lp = label_propagation(h, &a, 100, &opts).map_err(|e| e.to_string())?;
    let src = h.vertex_ids()[0];
    let sp = shortest_paths(h, &a, &[src], 100, &opts).map_err(|e| e.to_string())?;
    Ok((
        pr.vertex_ranks,
        pr.hyperedge_ranks.into_values().collect(),
        lp.vertex_labels,
        lp.hyperedge_labels.into_values().collect(),
        sp.vertex_hops.into_values().collect(),
        sp.hyperedge_hops.into_values().collect(),
    ))
}

fn close(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
}

fn criterion_4() -> Check {
    let mut graphs = small_corpus(10, 4, &medium());
    graphs.push(four_groups());
    let mut runs = 0;
    for (i, h) in graphs.iter().enumerate() {
        let base = snapshot(h, Strategy::RandomVertexCut, 1, 1)?;
        for s in Strategy::ALL {
            for k in [1, 2, 4, 8] {
                for threads in [1, 4] {
                    let got = snapshot(h, s, k, threads)?;
                    runs += 1;
                    let ranks_ok = base.0.keys().eq(got.0.keys())
                        && close(
                            &base.0.values().copied().collect::<Vec<_>>(),
                            &got.0.values().copied().collect::<Vec<_>>(),
                        )
                        && close(&base.1, &got.1);
                    let exact = base.2 == got.2 && base.3 == got.3 && base.4 == got.4 && base.5 == got.5;
                    ensure(ranks_ok && exact, || format!("graph {i} differs under {s} k={k} threads={threads}"))?;
                }
            }
        }
    }
    Ok(format!("{runs} configurations x 3 algorithms identical"))
}

fn replicas(a: &hyperweave::partition::PartitionAssignment, n: NodeId) -> usize {
    a.mirrors(n).unwrap().len()
}

fn criterion_5() -> Check {
    let graphs = small_corpus(50, 5, &medium());
    for (i, h) in graphs.iter().enumerate() {
        for k in [2, 4, 8] {
            let cfg = PartitionConfig::new(k);
            let part = |s| partition(h, &cfg, s).map_err(|e: hyperweave::partition::PartitionError| e.to_string());
            for s in [Strategy::RandomVertexCut, Strategy::GreedyVertexCut] {
                let a = part(s)?;
                ensure(h.hyperedges().iter().all(|e| replicas(&a, NodeId::Hyperedge(e.id)) == 1), || {
                    format!("graph {i}: {s} replicated a hyperedge")
                })?;
            }
            for s in [Strategy::RandomHyperedgeCut, Strategy::GreedyHyperedgeCut] {
                let a = part(s)?;
                ensure(
                    h.vertex_ids()
                        .iter()
                        .filter(|v| h.degree(**v).unwrap() > 0)
                        .all(|&v| replicas(&a, NodeId::Vertex(v)) == 1),
                    || format!("graph {i}: {s} replicated a vertex"),
                )?;
            }
            for cutoff in [1, 3, h.max_cardinality()] {
                let a = partition(h, &cfg.clone().with_cutoff(cutoff), Strategy::HybridVertexCut)
                    .map_err(|e| e.to_string())?;
                for e in h.hyperedges() {
                    let r = replicas(&a, NodeId::Hyperedge(e.id));
                    ensure(r == 1 || e.cardinality() > cutoff, || {
                        format!(
                            "graph {i}: hvc cutoff {cutoff} replicated hyperedge {} of cardinality {}",
                            e.id,
                            e.cardinality()
                        )
                    })?;
                }
            }
        }
    }
    Ok("50 hypergraphs, k in {2,4,8}".into())
}

fn criterion_6() -> Check {
    let shape = Shape { max_vertices: 30, max_hyperedges: 20, max_cardinality: 4, weighted: false, isolated: true };
    for (i, h) in small_corpus(50, 6, &shape).iter().enumerate() {
        let a = partition(h, &PartitionConfig::new(4), Strategy::ALL[i % 7]).map_err(|e| e.to_string())?;
        let out = label_propagation(h, &a, 200, &ComputeOptions::default()).map_err(|e| e.to_string())?;
        let (vl, el) = component_max(h);
        ensure(out.vertex_labels == vl && out.hyperedge_labels == el, || {
            format!("graph {i} disagrees with union-find")
        })?;
    }
    Ok("50 hypergraphs match union-find".into())
}

fn criterion_7() -> Check {
    let h = four_groups();
    let a = partition(&h, &PartitionConfig::new(2), Strategy::RandomBothCut).map_err(|e| e.to_string())?;
    let out = shortest_paths(&h, &a, &[VertexId(5)], 30, &ComputeOptions::default()).map_err(|e| e.to_string())?;
    let hops: Vec<f64> = out.vertex_hops.values().copied().collect();
    ensure(hops == [1.0, 2.0, 2.0, 1.0, 0.0], || format!("four groups from v5: {hops:?}"))?;
    let shape = Shape { max_vertices: 30, max_hyperedges: 20, max_cardinality: 4, weighted: false, isolated: true };
    for (i, h) in small_corpus(50, 6, &shape).iter().enumerate() {
        let a = partition(h, &PartitionConfig::new(4), Strategy::ALL[i % 7]).map_err(|e| e.to_string())?;
        let sources = [h.vertex_ids()[i % h.num_vertices()]];
        let out = shortest_paths(h, &a, &sources, 200, &ComputeOptions::default()).map_err(|e| e.to_string())?;
        let (vh, eh) = bfs_hops(h, &sources);
        ensure(out.vertex_hops == vh && out.hyperedge_hops == eh, || format!("graph {i} disagrees with BFS"))?;
    }
    Ok("four groups: v1=v4=1 v2=v3=2; 50 hypergraphs match BFS/2".into())
}

fn criterion_8() -> Check {
    let cases = [(vec![0.25; 4], 2.0), (vec![0.7], 0.0), (vec![3.0, 1.0], 0.811_278_124_459_132_8)];
    for (ranks, want) in &cases {
        let got = entropy(ranks);
        ensure((got - want).abs() < 1e-12, || format!("entropy({ranks:?}) = {got}, want {want}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=20);
        let uniform = rng.gen_bool(0.1);
        let c = rng.gen_range(0.01..5.0);
        let ranks: Vec<f64> = (0..n).map(|_| if uniform { c } else { rng.gen_range(0.0..5.0) }).collect();
        let hbits = entropy(&ranks);
        let bound = (n as f64).log2();
        ensure(hbits >= 0.0 && hbits <= bound + 1e-12, || format!("entropy {hbits} outside [0, {bound}]"))?;
        if uniform {
            ensure((hbits - bound).abs() < 1e-12, || format!("uniform entropy {hbits} != {bound}"))?;
        }
    }
    Ok("examples exact; 1000 vectors within [0, log2 n]".into())
}

fn contract<M: Clone + PartialEq + std::fmt::Debug + 'static>(
    reg: &CombinerRegistry,
    rng: &mut ChaCha8Rng,
    sample: impl Fn(&mut ChaCha8Rng) -> M,
    eq: impl Fn(&M, &M) -> bool,
) -> Result<(), String> {
    let c: Combiner<M> = reg.get::<M>().map_err(|e| e.to_string())?;
    for _ in 0..1000 {
        let (a, b, d) = (sample(rng), sample(rng), sample(rng));
        let left = c(c(a.clone(), b.clone()), d.clone());
        let right = c(a.clone(), c(b.clone(), d.clone()));
        ensure(eq(&left, &right), || format!("{}: not associative on {a:?} {b:?} {d:?}", std::any::type_name::<M>()))?;
        ensure(eq(&c(a.clone(), b.clone()), &c(b.clone(), a.clone())), || {
            format!("{}: not commutative on {a:?} {b:?}", std::any::type_name::<M>())
        })?;
    }
    Ok(())
}

fn exact<T: PartialEq>(a: &T, b: &T) -> bool {
    a == b
}

fn criterion_9() -> Check {
    let reg = CombinerRegistry::standard();
    let rng = &mut ChaCha8Rng::seed_from_u64(9);
    let real = |a: &f64, b: &f64| (a - b).abs() <= 1e-12;
    contract::<f64>(&reg, rng, |r| r.gen_range(-1e3..1e3), real)?;
    contract::<u64>(&reg, rng, |r| r.gen_range(0..1 << 40), exact)?;
    contract::<i64>(&reg, rng, |r| r.gen_range(-(1 << 40)..1 << 40), exact)?;
    contract::<usize>(&reg, rng, |r| r.gen_range(0..1 << 30), exact)?;
    contract::<(f64, f64)>(
        &reg,
        rng,
        |r| (r.gen_range(-1e3..1e3), r.gen_range(-1e3..1e3)),
        |a, b| real(&a.0, &b.0) && real(&a.1, &b.1),
    )?;
    contract::<(u64, u64)>(&reg, rng, |r| (r.gen_range(0..1 << 40), r.gen_range(0..1 << 40)), exact)?;
    contract::<Max<u64>>(&reg, rng, |r| Max(r.gen()), exact)?;
    contract::<Min<u64>>(&reg, rng, |r| Min(r.gen()), exact)?;
    contract::<Max<i64>>(&reg, rng, |r| Max(r.gen()), exact)?;
    contract::<Min<i64>>(&reg, rng, |r| Min(r.gen()), exact)?;
    contract::<Max<f64>>(&reg, rng, |r| Max(r.gen_range(-1e6..1e6)), exact)?;
    contract::<Min<f64>>(&reg, rng, |r| Min(r.gen_range(-1e6..1e6)), exact)?;
    let n = reg.type_names().len();
    ensure(n == 12, || format!("registry has {n} entries, 12 checked"))?;
    Ok("12 standard combiners x 1000 triples".into())
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    xs[xs.len() / 2]
}

fn criterion_10(dir: &Path) -> Check {
    let input = dir.join("perf.txt");
    let out = bin()
        .args(["generate", "--vertices", "20000", "--hyperedges", "10000", "--cardinality", "fixed:10", "--seed", "10"])
        .args(["--output", input.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
    let run = |threads: usize| -> Result<(f64, f64), String> {
        let start = Instant::now();
        let out = bin()
            .args(["run", "--input", input.to_str().unwrap(), "--algorithm", "labelprop", "--parts", "8"])
            .args(["--max-iters", "10", "--threads", &threads.to_string()])
            .output()
            .map_err(|e| e.to_string())?;
        let wall = start.elapsed().as_secs_f64();
        ensure(out.status.success(), || String::from_utf8_lossy(&out.stderr).into_owned())?;
        let report: RunReport = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
        ensure(report.partition.per_partition_edges.iter().sum::<usize>() == 100_000, || {
            "expected 100000 edges".into()
        })?;
        Ok((wall, report.execution_seconds))
    };
    let (mut one, mut four) = (Vec::new(), Vec::new());
    let mut slowest_wall = 0.0f64;
    for _ in 0..5 {
        let (w1, e1) = run(1)?;
        let (w4, e4) = run(4)?;
        slowest_wall = slowest_wall.max(w4);
        one.push(e1);
        four.push(e4);
        let _ = w1;
    }
    let (m1, m4) = (median(one), median(four));
    let cores = std::thread::available_parallelism().map_or(1, |n| n.get());
    let detail = format!(
        "threads=4 run {slowest_wall:.2}s; median execution 1 thread {m1:.3}s, 4 threads {m4:.3}s; {cores} cores"
    );
    ensure(slowest_wall < 60.0, || format!("too slow: {detail}"))?;
    ensure(m4 <= m1 * 1.10, || format!("threads=4 more than 10% slower: {detail}"))?;
    Ok(detail)
}

fn main() -> ExitCode {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion<'_>> = vec![
        (
            "structural counts on the four-group example",
            Box::new(|| timed(Some(Duration::from_secs(1)), || criterion_1(dir.path()))),
        ),
        ("Apache dataset counts", Box::new(criterion_2)),
        ("PageRank matches dense oracle", Box::new(|| timed(Some(Duration::from_secs(10)), criterion_3))),
        ("partition invariance", Box::new(|| timed(Some(Duration::from_secs(60)), criterion_4))),
        ("replication invariants", Box::new(|| timed(None, criterion_5))),
        ("label propagation fixed point", Box::new(|| timed(None, criterion_6))),
        ("shortest paths optimality", Box::new(|| timed(None, criterion_7))),
        ("entropy", Box::new(|| timed(None, criterion_8))),
        ("combiner contract", Box::new(|| timed(None, criterion_9))),
        ("performance smoke test", Box::new(|| timed(None, || criterion_10(dir.path())))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        let (tag, detail) = match check() {
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Outcome::Skip(d) => ("SKIP", d),
        };
        println!("[{tag}] criterion {}: {name} ({detail})", i + 1);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
