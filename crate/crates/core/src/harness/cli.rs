//! Command-line surface shared by the binary and the tests.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use super::run::write;
use super::{
    dataset_stats, format, generate, run, CardinalityDist, GeneratorConfig, HarnessError, PartitionOpts,
    Representation, RunArgs,
};
use crate::partition::{partition, PartitionStats};

#[derive(Parser, Debug)]
#[command(name = "hyperweave", version, about = "Hypergraph processing with vertex and hyperedge programs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print dataset counts.
    Stats(StatsArgs),
    /// Partition a hypergraph and print replication statistics.
    Partition(PartitionArgs),
    /// Run an algorithm.
    Run(RunArgs),
    /// Write a random hypergraph.
    Generate(GenerateArgs),
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// `clique` also counts clique-expansion edges.
    #[arg(long, value_enum, default_value_t = Representation::Bipartite)]
    pub representation: Representation,
    /// Stop counting clique edges after this many.
    #[arg(long)]
    pub clique_cap: Option<u64>,
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[command(flatten)]
    pub partition: PartitionOpts,
    /// Directory for partition.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub vertices: usize,
    #[arg(long)]
    pub hyperedges: usize,
    /// fixed:C, uniform:MIN:MAX or powerlaw:MIN:MAX:EXP.
    #[arg(long, default_value = "uniform:2:10")]
    pub cardinality: CardinalityDist,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output hyperedge-list file.
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Serialize)]
struct PartitionReport<'a> {
    input: &'a PathBuf,
    config: &'a PartitionOpts,
    partition_seconds: f64,
    stats: PartitionStats,
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), HarnessError> {
    let stdout = |out: &mut dyn Write, text: String| {
        out.write_all(text.as_bytes()).map_err(|e| HarnessError::io("<stdout>".as_ref(), e))
    };
    match command {
        Command::Stats(args) => {
            let h = format::load(&args.input)?;
            let s = dataset_stats(&h, args.representation == Representation::Clique, args.clique_cap);
            stdout(out, s.to_text())
        }
        Command::Partition(args) => {
            args.partition.config().validate()?;
            let h = format::load(&args.input)?;
            let start = Instant::now();
            let a = partition(&h, &args.partition.config(), args.partition.strategy)?;
            let report = PartitionReport {
                input: &args.input,
                config: &args.partition,
                partition_seconds: start.elapsed().as_secs_f64(),
                stats: a.stats(),
            };
            let json = serde_json::to_string_pretty(&report)?;
            if let Some(dir) = &args.out {
                std::fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
                write(&dir.join("partition.json"), json.clone())?;
            }
            stdout(out, json + "\n")
        }
        Command::Run(args) => {
            let outcome = run(&args)?;
            stdout(out, serde_json::to_string_pretty(&outcome.report)? + "\n")
        }
        Command::Generate(args) => {
            let cfg = GeneratorConfig {
                num_vertices: args.vertices,
                num_hyperedges: args.hyperedges,
                cardinality: args.cardinality,
                seed: args.seed,
            };
            let (h, shape) = generate(&cfg)?;
            if shape.isolated_vertices > 0 {
                log::warn!("{} isolated vertices are not written", shape.isolated_vertices);
            }
            format::save(&h, &args.output)?;
            stdout(out, serde_json::to_string_pretty(&shape)? + "\n")
        }
    }
}
