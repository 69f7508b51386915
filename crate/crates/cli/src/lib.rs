//! Batch pipeline over the `relrips` library: config files, report bundles and diffs.

pub mod config;
pub mod pipeline;
pub mod report;

pub use config::{Mode, Overrides, RunConfig};
pub use pipeline::{run_pipeline, ReportBundle};
pub use report::{diff_reports, DiffEntry, Summary};

/// Pipeline failure, grouped by process exit code.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Failure {
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("truncation: {0}")]
    Truncation(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Validation(_) => 1,
            Failure::Resource(_) => 2,
            Failure::Truncation(_) => 3,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Validation(_) => "validation",
            Failure::Resource(_) => "resource",
            Failure::Truncation(_) => "truncation",
        }
    }
}

impl From<relrips::Error> for Failure {
    fn from(e: relrips::Error) -> Self {
        let msg = e.to_string();
        match e {
            relrips::Error::Input(_) => Failure::Validation(msg),
            relrips::Error::Resource { .. } | relrips::Error::Budget { .. } => Failure::Resource(msg),
            relrips::Error::Truncation(_) => Failure::Truncation(msg),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Resource(format!("i/o: {e}"))
    }
}
