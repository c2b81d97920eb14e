//! PCF with oracle constants: syntax, typing, operational semantics and approximants.

pub mod approx;
pub mod classify;
pub mod library;
pub mod parse;
pub mod step;
pub mod term;
pub mod types;

pub use approx::approximate;
pub use classify::{classify, SublanguageTag};
pub use library::retraction_combinators;
pub use parse::{parse_oracle_tsv, parse_pcf, parse_pcf_in, parse_type, Context};
pub use step::{run, step, step_full, RunResult, Step};
pub use term::{Kind, Oracle, Term};
pub use types::{Shape, SimpleType, Sublevel};

use thiserror::Error;

/// Byte range plus 1-based line and column of its start.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Span {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PcfError {
    #[error("parse error at {span}: {msg}")]
    Parse { span: Span, msg: String },
    #[error("type error{}: {msg}", .span.map(|s| format!(" at {s}")).unwrap_or_default())]
    Type { span: Option<Span>, msg: String },
    #[error("unknown oracle {name}{}", .span.map(|s| format!(" at {s}")).unwrap_or_default())]
    UnknownOracle { span: Option<Span>, name: String },
    #[error("oracle table line {line}: {msg}")]
    Oracle { line: usize, msg: String },
    #[error("fuel must be positive")]
    ZeroFuel,
    #[error("not a closed program of type N")]
    NotProgram,
}
