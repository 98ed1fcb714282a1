//! File formats, synthetic data, run reports and the command-line driver.

pub mod cli;
pub mod format;
mod generate;
mod run;

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::algorithms::AlgorithmError;
use crate::hypergraph::CoreError;
use crate::partition::PartitionError;

pub use format::{load, parse, save, serialize};
pub use generate::{generate, CardinalityDist, GeneratedShape, GeneratorConfig};
pub use run::{
    dataset_stats, run, run_on, Algorithm, DatasetStats, PartitionOpts, Representation, ResultTable, RunArgs,
    RunOutcome, RunReport,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Algorithm(#[from] AlgorithmError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.to_path_buf(), source }
    }
}
