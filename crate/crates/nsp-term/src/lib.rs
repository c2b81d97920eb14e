//! Nested sequential procedures: terms, meta-terms and the operations on them
//! that do not need evaluation.

pub mod compare;
pub mod dot;
pub mod eta;
pub mod leaf;
pub mod regular;
pub mod sexpr;
pub mod subst;
pub mod term;
pub mod truncate;

pub use compare::{alpha_eq_expr, alpha_eq_proc, syn_leq_expr, syn_leq_proc};
pub use dot::proc_to_dot;
pub use eta::{eta_expand, is_eta_of};
pub use leaf::{compose_families, leaf_subst, leaf_subst_family, leaf_subst_proc};
pub use regular::{check_regular, typecheck_proc, Cap, TypingError};
pub use sexpr::{expr_to_sexpr, parse_proc, parse_proc_in_env, proc_to_sexpr, type_to_sexpr, SexprError};
pub use subst::{beta, free_vars_expr, free_vars_proc, freshen_expr, freshen_proc, rename_expr, rename_proc, substitute_expr, substitute_family, substitute_ground, substitute_proc, Binding};
pub use term::{Binder, Case, Default, Expr, Family, Fix, Generator, Ground, Head, Lam, Name, Proc};
pub use truncate::{truncate, truncate_proc};
