//! Spec files, prime sweeps, reports and the result cache behind the `psupp`
//! command line tool.

pub mod cache;
pub mod corpus;
pub mod pipeline;
pub mod report;
pub mod spec;

pub use cache::Cache;
pub use pipeline::{analyze_prime, char0_holonomy, run_pipeline, RunOptions};
pub use report::{emit_report, Format, PrimeRecord, SweepReport};
pub use spec::{parse_module_spec, ModuleSpec, ModuleSpecFile};

/// Problems with an input file.
#[derive(Debug, thiserror::Error)]
pub enum SpecError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("in {field}: {source}")]
    Operator { field: String, source: psupp_core::Error },
    #[error("{0}")]
    Core(#[from] psupp_core::Error),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}
