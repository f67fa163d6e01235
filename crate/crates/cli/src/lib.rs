//! Experiment harness for `distcut`: configs, batch runs scored against the
//! exact oracle, CSV/JSON reports and summary tables.

use std::path::PathBuf;

pub mod algorithm;
pub mod config;
pub mod experiment;
pub mod table;

pub use algorithm::{solve, Algorithm, Guarantee, Mode, Params, Solved};
pub use config::{ExperimentConfig, GraphSpec, Seeds};
pub use experiment::{run_experiment, ExperimentRecord, RunRecord};
pub use table::{summary_csv, summary_table};

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("invalid config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] distcut::Error),
    #[error("{path}: {source}", path = .0.display(), source = .1)]
    Io(PathBuf, #[source] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}
