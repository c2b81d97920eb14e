//! Denotations of PCF terms as nested sequential procedures.

pub mod build;
pub mod denote;
pub mod plug;

pub use build::{denotable_build, Clause, Denotable};
pub use denote::{
    apply, apply_all, apply_meta, as_lambda, byval_proc, denote, denote_meta, ifzero_proc, oracle_proc, pre_proc, suc_proc, y_proc, DenotationEnv,
    Denoted,
};
pub use plug::{plug, plug_iterate, PlugResult, Plugging};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DenoteError {
    #[error("type error: {0}")]
    Type(String),
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("level cap violated: {0}")]
    Cap(String),
    #[error("clause premise not met: {0}")]
    Premise(String),
}
