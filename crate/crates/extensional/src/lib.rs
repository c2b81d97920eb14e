//! Observational comparison of procedures by applicative testing, enumeration
//! of finite procedures, and the extensional order on finite elements.

pub mod bounds;
pub mod compare;
pub mod enumerate;
pub mod improve;
pub mod order;
pub mod report;
pub mod semantic;

pub use bounds::EnumBounds;
pub use compare::{argument_tuples, distinguish, obs_leq, outcome, ComparisonVerdict, Outcome, Witness};
pub use enumerate::{count_finite, enumerate_at, enumerate_exprs, enumerate_finite};
pub use improve::{identity_proc, improve, improve_at, saturate, super_identity_scan, Improvement, ImprovementCase, ScanDomain, ScanVerdict};
pub use order::{ext_order_finite, OrderVerdict};
pub use semantic::{Interp, Sem};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExtError {
    #[error("search space of about {estimate} elements exceeds the ceiling {ceiling}")]
    Infeasible { estimate: u128, ceiling: u128 },
    #[error("type {0} is above the enumerable level")]
    Level(String),
    #[error("type mismatch: {0}")]
    Type(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error(transparent)]
    Denote(#[from] denote::DenoteError),
}
