use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use super::{format, HarnessError};
use crate::algorithms::{self, PageRankConfig};
use crate::engine::{self, ComputeOptions, Side};
use crate::hypergraph::{Hypergraph, VertexId};
use crate::partition::{
    partition, PartitionAssignment, PartitionConfig, PartitionStats, Strategy, DEFAULT_DEGREE_CUTOFF,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum Algorithm {
    #[value(name = "pagerank")]
    #[serde(rename = "pagerank")]
    PageRank,
    #[value(name = "pagerank-entropy")]
    #[serde(rename = "pagerank-entropy")]
    PageRankEntropy,
    #[value(name = "labelprop")]
    #[serde(rename = "labelprop")]
    LabelPropagation,
    #[value(name = "sssp")]
    #[serde(rename = "sssp")]
    ShortestPaths,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    #[default]
    Bipartite,
    Clique,
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionOpts {
    /// rvc, rhec, rbc, hvc, hhec, gvc or ghec.
    #[arg(long, default_value = "hvc")]
    pub strategy: Strategy,
    #[arg(long, default_value_t = 4)]
    pub parts: u32,
    #[arg(long, default_value_t = DEFAULT_DEGREE_CUTOFF)]
    pub cutoff: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl PartitionOpts {
    pub fn config(&self) -> PartitionConfig {
        PartitionConfig::new(self.parts).with_cutoff(self.cutoff).with_seed(self.seed)
    }
}

#[derive(Args, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub algorithm: Algorithm,
    #[command(flatten)]
    pub partition: PartitionOpts,
    #[arg(long, default_value_t = 30)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 0.15)]
    pub alpha: f64,
    /// Source vertex for sssp; repeat for several.
    #[arg(long = "source", required_if_eq("algorithm", "sssp"))]
    pub sources: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Representation::Bipartite)]
    pub representation: Representation,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Compare mirror replicas with their master after every phase.
    #[arg(long)]
    pub check_mirrors: bool,
    /// Directory for report.json and results.tsv.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunArgs {
    pub fn new(algorithm: Algorithm, partition: PartitionOpts) -> Self {
        RunArgs {
            input: None,
            algorithm,
            partition,
            max_iters: 30,
            alpha: 0.15,
            sources: Vec::new(),
            representation: Representation::Bipartite,
            threads: 1,
            check_mirrors: false,
            out: None,
        }
    }

    /// Checks everything that can be rejected before loading or computing.
    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.representation == Representation::Clique && self.algorithm != Algorithm::PageRank {
            return Err(HarnessError::Usage(format!(
                "--representation clique only supports pagerank; {:?} needs hyperedge state",
                self.algorithm
            )));
        }
        if self.algorithm == Algorithm::ShortestPaths && self.sources.is_empty() {
            return Err(HarnessError::Usage("sssp needs at least one --source".into()));
        }
        if self.threads == 0 {
            return Err(HarnessError::Usage("--threads must be at least 1".into()));
        }
        self.partition.config().validate()?;
        Ok(())
    }
}

/// Table-style dataset counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub vertices: usize,
    pub hyperedges: usize,
    pub max_degree: usize,
    pub max_cardinality: usize,
    pub bipartite_edges: usize,
    pub clique_edges: Option<u64>,
    /// Set when clique counting stopped at the cap.
    pub clique_capped: bool,
}

impl DatasetStats {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "vertices\t{}", self.vertices);
        let _ = writeln!(s, "hyperedges\t{}", self.hyperedges);
        let _ = writeln!(s, "max_degree\t{}", self.max_degree);
        let _ = writeln!(s, "max_cardinality\t{}", self.max_cardinality);
        let _ = writeln!(s, "bipartite_edges\t{}", self.bipartite_edges);
        if let Some(c) = self.clique_edges {
            let suffix = if self.clique_capped { " (capped)" } else { "" };
            let _ = writeln!(s, "clique_edges\t{c}{suffix}");
        }
        s
    }
}

pub fn dataset_stats<VD: Clone, HED>(h: &Hypergraph<VD, HED>, clique: bool, cap: Option<u64>) -> DatasetStats {
    let count = clique.then(|| h.clique_edge_count(cap));
    if count.is_some_and(|c| c.capped) {
        log::warn!("clique edge count stopped at the cap; the value is a lower bound");
    }
    DatasetStats {
        vertices: h.num_vertices(),
        hyperedges: h.num_hyperedges(),
        max_degree: h.max_degree(),
        max_cardinality: h.max_cardinality(),
        bipartite_edges: h.num_bipartite_edges(),
        clique_edges: count.map(|c| c.edges),
        clique_capped: count.is_some_and(|c| c.capped),
    }
}

/// Per-node results as `kind, id, values...` rows.
#[derive(Clone, Debug, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<(Side, u64, Vec<String>)>,
}

impl ResultTable {
    fn new(columns: Vec<&'static str>) -> Self {
        ResultTable { columns, rows: Vec::new() }
    }

    fn extend<K: Into<u64>, T: ToString>(&mut self, side: Side, items: impl IntoIterator<Item = (K, Vec<T>)>) {
        for (id, vals) in items {
            self.rows.push((side, id.into(), vals.iter().map(ToString::to_string).collect()));
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut s = format!("kind\tid\t{}\n", self.columns.join("\t"));
        for (side, id, vals) in &self.rows {
            let kind = match side {
                Side::Vertex => "vertex",
                Side::Hyperedge => "hyperedge",
            };
            let _ = writeln!(s, "{kind}\t{id}\t{}", vals.join("\t"));
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// Everything needed to repeat the run.
    pub config: RunArgs,
    pub partition_seconds: f64,
    pub execution_seconds: f64,
    /// Wall time of each round, vertex plus hyperedge phase.
    pub round_seconds: Vec<f64>,
    pub partition: PartitionStats,
    pub engine: engine::RunReport,
    /// Vertices left out of the result, such as isolated vertices in PageRank.
    pub excluded_vertices: usize,
    pub result_paths: Vec<PathBuf>,
}

impl RunReport {
    /// Copy with every wall time zeroed, for comparing repeated runs.
    pub fn without_timings(&self) -> RunReport {
        let mut r = self.clone();
        r.partition_seconds = 0.0;
        r.execution_seconds = 0.0;
        r.round_seconds.iter_mut().for_each(|s| *s = 0.0);
        r.engine.seconds = 0.0;
        for round in &mut r.engine.rounds {
            round.vertex.seconds = 0.0;
            if let Some(h) = &mut round.hyperedge {
                h.seconds = 0.0;
            }
        }
        r
    }
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub report: RunReport,
    pub results: ResultTable,
}

fn timed_partition<VD, HED>(
    h: &Hypergraph<VD, HED>,
    opts: &PartitionOpts,
) -> Result<(PartitionAssignment, f64), HarnessError> {
    let start = Instant::now();
    let a = partition(h, &opts.config(), opts.strategy)?;
    Ok((a, start.elapsed().as_secs_f64()))
}

/// Partitions `h` and runs the selected algorithm on it.
pub fn run_on<VD: Clone, HED>(h: &Hypergraph<VD, HED>, args: &RunArgs) -> Result<RunOutcome, HarnessError> {
    args.validate()?;
    let opts = ComputeOptions { workers: args.threads, check_mirrors: args.check_mirrors };
    let pr = PageRankConfig { alpha: args.alpha, iterations: args.max_iters };
    let vid = |v: &VertexId| v.0;
    let (assignment, partition_seconds, engine_report, results, excluded) = match args.algorithm {
        Algorithm::PageRank if args.representation == Representation::Clique => {
            let clique = h
                .with_attrs(|_, _| (), |_, _| ())
                .to_clique_graph(|shared| shared.iter().map(|(_, w)| w).sum::<f64>())
                .into_hypergraph(|w| *w)?;
            let (a, secs) = timed_partition(&clique, &args.partition)?;
            let out = algorithms::page_rank(&clique, &a, &pr, &opts)?;
            let mut t = ResultTable::new(vec!["rank"]);
            t.extend(Side::Vertex, out.vertex_ranks.iter().map(|(v, r)| (vid(v), vec![r])));
            (a, secs, out.report, t, out.excluded.len())
        }
        Algorithm::PageRank => {
            let (a, secs) = timed_partition(h, &args.partition)?;
            let out = algorithms::page_rank(h, &a, &pr, &opts)?;
            let mut t = ResultTable::new(vec!["rank"]);
            t.extend(Side::Vertex, out.vertex_ranks.iter().map(|(v, r)| (vid(v), vec![r])));
            t.extend(Side::Hyperedge, out.hyperedge_ranks.iter().map(|(e, r)| (e.0, vec![r])));
            (a, secs, out.report, t, out.excluded.len())
        }
        Algorithm::PageRankEntropy => {
            let (a, secs) = timed_partition(h, &args.partition)?;
            let out = algorithms::page_rank_entropy(h, &a, &pr, &opts)?;
            let mut t = ResultTable::new(vec!["rank", "entropy"]);
            t.extend(Side::Vertex, out.ranks.vertex_ranks.iter().map(|(v, r)| (vid(v), vec![r])));
            t.extend(Side::Hyperedge, out.ranks.hyperedge_ranks.iter().map(|(e, r)| (e.0, vec![r, &out.entropy[e]])));
            (a, secs, out.ranks.report, t, out.ranks.excluded.len())
        }
        Algorithm::LabelPropagation => {
            let (a, secs) = timed_partition(h, &args.partition)?;
            let out = algorithms::label_propagation(h, &a, args.max_iters, &opts)?;
            let mut t = ResultTable::new(vec!["label"]);
            t.extend(Side::Vertex, out.vertex_labels.iter().map(|(v, l)| (vid(v), vec![l])));
            t.extend(Side::Hyperedge, out.hyperedge_labels.iter().map(|(e, l)| (e.0, vec![l])));
            (a, secs, out.report, t, 0)
        }
        Algorithm::ShortestPaths => {
            let (a, secs) = timed_partition(h, &args.partition)?;
            let sources: Vec<VertexId> = args.sources.iter().map(|&s| VertexId(s)).collect();
            let out = algorithms::shortest_paths(h, &a, &sources, args.max_iters, &opts)?;
            let mut t = ResultTable::new(vec!["hops"]);
            t.extend(Side::Vertex, out.vertex_hops.iter().map(|(v, d)| (vid(v), vec![d])));
            t.extend(Side::Hyperedge, out.hyperedge_hops.iter().map(|(e, d)| (e.0, vec![d])));
            (a, secs, out.report, t, 0)
        }
    };
    let round_seconds = engine_report
        .rounds
        .iter()
        .map(|r| r.vertex.seconds + r.hyperedge.as_ref().map_or(0.0, |p| p.seconds))
        .collect();
    let report = RunReport {
        config: args.clone(),
        partition_seconds,
        execution_seconds: engine_report.seconds,
        round_seconds,
        partition: assignment.stats(),
        engine: engine_report,
        excluded_vertices: excluded,
        result_paths: Vec::new(),
    };
    Ok(RunOutcome { report, results })
}

/// Loads `args.input`, runs, and writes `report.json` and `results.tsv` into
/// `args.out` when given.
pub fn run(args: &RunArgs) -> Result<RunOutcome, HarnessError> {
    args.validate()?;
    let input = args.input.as_ref().ok_or_else(|| HarnessError::Usage("--input is required".into()))?;
    let h = format::load(input)?;
    let mut outcome = run_on(&h, args)?;
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
        let tsv = dir.join("results.tsv");
        let json = dir.join("report.json");
        outcome.report.result_paths = vec![tsv.clone(), json.clone()];
        write(&tsv, outcome.results.to_tsv())?;
        write(&json, serde_json::to_string_pretty(&outcome.report)?)?;
    }
    Ok(outcome)
}

pub(crate) fn write(path: &Path, contents: String) -> Result<(), HarnessError> {
    std::fs::write(path, contents).map_err(|e| HarnessError::io(path, e))
}
