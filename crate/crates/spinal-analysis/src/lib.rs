//! Spinal structure in procedures over a designated variable `g`: bounded
//! certificates, masking and triviality, strictification, and a gallery of
//! standard procedures to run them on.

pub mod decompose;
pub mod dict;
pub mod figure;
pub mod gallery;
pub mod generate;
pub mod mask;
pub mod spine;

pub use decompose::{only_at, qn_chain, qn_decompose, strict_samples, x_samples, CheckResult, DecomposeConfig, Decomposition};
pub use dict::{Candidate, SubstDictionary};
pub use figure::{eta_spine_levels, funnel_report, FunnelReport};
pub use gallery::{endo, gallery, p_n, rho, GalleryItem, GalleryName};
pub use generate::random_pcf_k;
pub use mask::{is_simple, mask, mask_var, strict_wrapper, strictify, trivial_at};
pub use spine::{head_spinal_check, path_string, spinal_check, Evidence, Mode, SpinalCertificate, SpinalConfig, SpineRecord, Step, Substituend};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpinalError {
    #[error("unknown gallery entry {0}")]
    UnknownName(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("type mismatch: {0}")]
    Type(String),
    #[error("bad input: {0}")]
    Input(String),
    #[error(transparent)]
    Denote(#[from] denote::DenoteError),
    #[error(transparent)]
    Ext(#[from] extensional::ExtError),
}
