//! Benchmark harness: named test families, single runs and sweeps, CSV and
//! Markdown reports, power-law fits and the table manifest.

pub mod config;
pub mod family;
pub mod fit;
pub mod report;
pub mod run;
pub mod tables;

use thiserror::Error;

use crate::baselines::BaselineError;
use crate::engine::MdiError;
use crate::expr::ParseError;

pub use config::ConfigFile;
pub use family::{expand_family, TestFamily};
pub use fit::{fit_power_law, FitError, FitResult};
pub use report::{emit_table, parse_csv, Format, RunReport, Status, CSV_HEADER};
pub use run::{run, sweep, sweep_parallel, Method, RunConfig, SweepAxis};
pub use tables::{reproduce_table, table_ids, TableRun, TableSpec};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("family {family} is not defined for d = {d}")]
    BadDimension { family: String, d: usize },
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Mdi(#[from] MdiError),
    #[error(transparent)]
    Baseline(#[from] BaselineError),
    #[error(transparent)]
    Fit(#[from] FitError),
    #[error("sweep values must be sorted ascending")]
    UnsortedValues,
    #[error("unknown table `{0}`")]
    UnknownTable(String),
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
