//! Instance generation, Monte Carlo experiments, the reference suite and
//! report emission.

mod check;
mod generate;
mod report;
mod suite;
mod trials;

pub use check::{check_instance, CheckLine};
pub use generate::{generate_instance, generate_raw, GeneratorKind, GeneratorParams};
pub use report::{
    emit_exact, emit_runs, frequencies_path, read_run_stats, write_exact_csv,
    write_frequencies_csv, write_summary_csv, ReportFormat, EXACT_HEADER, FREQUENCY_HEADER,
    SUMMARY_HEADER,
};
pub use suite::{laminar_four, reference_instances, suite, SuiteInstance};
pub use trials::{run_one, run_trials, trial_rng, ExperimentConfig, RunStats, DEFAULT_TRIALS};

use thiserror::Error;

use crate::algorithm::Algorithm;
use crate::error::InstanceError;
use crate::exact::OracleError;
use crate::laminar::LaminarError;
use crate::weight::ElementId;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Instance(#[from] InstanceError),
    #[error(transparent)]
    Laminar(#[from] LaminarError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{algorithm} needs a laminar matroid, got {matroid}")]
    Incompatible {
        algorithm: Algorithm,
        matroid: &'static str,
    },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("trial {trial} produced a dependent set {selected:?}")]
    DependentOutput {
        trial: u64,
        selected: Vec<ElementId>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl HarnessError {
    /// Input was rejected before any run started.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            HarnessError::Instance(_)
                | HarnessError::Laminar(LaminarError::NotLaminar(_))
                | HarnessError::Laminar(LaminarError::InvalidProbability(_))
                | HarnessError::Incompatible { .. }
                | HarnessError::Config(_)
                | HarnessError::Oracle(OracleError::TooLarge { .. })
                | HarnessError::Oracle(OracleError::Unsupported(_))
                | HarnessError::Json(_)
        )
    }
}
