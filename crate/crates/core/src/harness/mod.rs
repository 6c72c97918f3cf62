//! Dataset ingestion, experiment grids, and report emission.

mod config;
mod loader;
mod report;
mod runner;

pub use config::{AlgorithmSpec, ExperimentConfig, OracleChoice, DEFAULT_FRACTIONS, DEFAULT_SEEDS};
pub use loader::{load_instances, read_instances};
pub use report::{emit_report, Report, ReportAggregate, ReportFormat, ReportRow};
pub use runner::{cell_budget, error_rate, regret, run_algorithm, run_cells, run_experiment};

use thiserror::Error;

/// Errors raised by the harness: file handling, schema validation, config
/// parsing, and anything bubbling up from the core library.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: field `{field}`: {message}")]
    Schema {
        line: usize,
        field: String,
        message: String,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] crate::error::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Process exit code per the external interface: 1 for config/schema
    /// problems, 2 for i/o.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Io(_) => 2,
            HarnessError::Csv(e) if e.is_io_error() => 2,
            _ => 1,
        }
    }
}
