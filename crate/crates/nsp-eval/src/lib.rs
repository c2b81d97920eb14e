//! Reduction of meta-terms and their bounded evaluation to finite terms.

pub mod eval;
pub mod random;
pub mod stages;
pub mod step;
pub mod trace;

pub use eval::{apply_head, eval_expr, eval_ground, eval_proc, unfold, Bounds, Evaluated};
pub use random::{meta_size, Instance, MetaGen};
pub use stages::{all_normal_forms, eval_in_stages, eval_meta, meta_key, MetaContext, Plug, SearchExhausted};
pub use step::{basic_step, family_then, general_redexes, general_steps, head_redex, head_step, is_head_normal, path_to_string, step_at, subterm, Meta, Path, PathStep, Rule, Sub};
pub use trace::{meta_alpha_eq, occurrences, origin_of, Origin, OccurrenceRef, OriginError, ReductionTrace, TraceStep};
