//! The `nsp` command line: loading programs, running the analyses with a
//! recorded configuration, and the acceptance suite.

pub mod commands;
pub mod config;
pub mod load;
pub mod suite;

use std::fmt;

pub use commands::{execute, read_witness, witness_file, Report};
pub use config::{Format, RunConfig};
pub use suite::{CriterionResult, SuiteOptions};

/// Failures that stop a verb before it reaches a verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments or input files.
    Usage(String),
    /// Search space or fuel beyond what the bounds allow.
    Resource(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Resource(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Resource(m) => f.write_str(m),
        }
    }
}

impl std::error::Error for CliError {}

/// Runs `f` on a thread with a large stack; deep procedure trees recurse deeply.
pub fn with_big_stack<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new().stack_size(1 << 30).spawn(f).expect("spawn worker thread").join().expect("worker thread panicked")
}
