//! Study orchestration, persistence and the aggregation of power tables into
//! group averages, gaps, ranks and power curves.

mod config;
mod data;
mod report;
mod study;
mod table;

use std::path::PathBuf;

use thiserror::Error;

pub use config::StudyConfig;
pub use data::{read_column, test_data, DataOptions, DataReport, Transform};
pub use report::{aggregate, power_curves, CurvePoint, GapRow, GroupRow, GroupSummary, Grouping};
pub use study::{calibrate_table, power_for_regions, run_study, StudyOutput};
pub use table::{fmt_float, read_regions, write_curves, write_gaps, write_regions, write_report, PowerTable};

/// Errors raised by the study harness and the command line.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("{path}:{line}: {reason}")]
    Parse { path: PathBuf, line: u64, reason: String },

    #[error("{path}: need at least {min} numeric rows, found {found}")]
    TooFewRows { path: PathBuf, min: usize, found: usize },

    #[error("{path}:{line}: non-positive price {value} cannot be log-transformed")]
    NonPositivePrice { path: PathBuf, line: u64, value: f64 },

    #[error("incomplete table: {0}")]
    IncompleteTable(String),

    #[error("data: {0}")]
    Data(crate::Error),

    #[error("{context}: {source}")]
    Numerical { context: String, source: crate::Error },
}

impl HarnessError {
    /// Process exit status: 2 configuration, 3 data, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::Io { .. }
            | HarnessError::Parse { .. }
            | HarnessError::TooFewRows { .. }
            | HarnessError::NonPositivePrice { .. }
            | HarnessError::IncompleteTable(_)
            | HarnessError::Data(_) => 3,
            HarnessError::Numerical { .. } => 4,
        }
    }

    /// Wraps a library error raised while computing `context`; parameter and
    /// name errors become configuration errors.
    pub fn numerical(context: impl Into<String>, source: crate::Error) -> Self {
        use crate::Error as E;
        match source {
            E::UnknownTest(_) | E::UnknownSubmodel(_) | E::InvalidParams { .. } | E::UnsupportedN { .. } => {
                HarnessError::Config(format!("{}: {source}", context.into()))
            }
            _ => HarnessError::Numerical { context: context.into(), source },
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        HarnessError::Io { path: path.into(), source }
    }
}

pub type HarnessResult<T> = std::result::Result<T, HarnessError>;
