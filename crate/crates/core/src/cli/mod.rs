//! Library side of the `hlocus` binary: configuration, run records and
//! their cache, the batch verification harness and figure output.
//!
//! The command layer in [`commands`] returns captured output and an exit
//! code instead of printing, so it can be driven from tests.

pub mod commands;
pub mod figure;
pub mod record;
pub mod verify;

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::locus::NumericsConfig;
use crate::{Error, Result};

pub use commands::{execute, Cli, Command, Outcome};
pub use figure::{fig1, FigureReport};
pub use record::{compute_record, RecordKey, RunCache, RunRecord};
pub use verify::{gated_family, run_suite, run_suites, Suite, SuiteResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_NO_CONVERGENCE: i32 = 3;

/// Output encoding selected with `--format`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
    Svg,
}

/// Everything a command needs besides its own arguments.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ToolConfig {
    pub numerics: NumericsConfig,
    pub format: OutputFormat,
    pub cache: Option<PathBuf>,
    /// Worker threads for batch work.
    pub jobs: usize,
}

impl Default for ToolConfig {
    fn default() -> Self {
        ToolConfig {
            numerics: NumericsConfig::default(),
            format: OutputFormat::Json,
            cache: None,
            jobs: 1,
        }
    }
}

impl ToolConfig {
    pub fn validate(&self) -> Result<()> {
        self.numerics.validate()?;
        if self.jobs == 0 {
            return Err(Error::InvalidConfig("jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Runs `f` on a pool with `self.jobs` threads.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
}

/// Process exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NoConvergence { .. } | Error::SingularJacobian => EXIT_NO_CONVERGENCE,
        Error::InvalidPartition(_)
        | Error::Parse(_)
        | Error::BoxOutsideDiagram { .. }
        | Error::ZeroPolynomial
        | Error::EmptyPartition
        | Error::DimensionMismatch(_)
        | Error::CoincidentPoints { .. }
        | Error::SimplicityGateFailed
        | Error::EvaluationAtPole
        | Error::InvalidConfig(_) => EXIT_INPUT_ERROR,
        Error::NotAContentMultiset
        | Error::NonTriangularMultiplicity(_)
        | Error::MultiplicityMismatch { .. }
        | Error::PotentialMismatch(_)
        | Error::NonIntegerSpectrum { .. }
        | Error::SpectrumMismatch { .. }
        | Error::InconsistentBlockSystem(..)
        | Error::AsymmetricCharacter
        | Error::NonzeroConstantTerm
        | Error::NegativeCoefficient(_) => EXIT_VERIFICATION_FAILED,
    }
}
