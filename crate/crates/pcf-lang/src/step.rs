//! Small-step call-by-name reduction.

use crate::term::{Kind, Term};
use crate::PcfError;

/// Outcome of one reduction attempt.
#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    Reduced(Term),
    /// A numeral, an abstraction, or a partially applied constant.
    Value,
    /// An oracle applied to a numeral outside its table.
    Stuck(String, u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunResult {
    Value(u64),
    Diverged(u64),
    StuckOracle(String, u64),
}

impl std::fmt::Display for RunResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunResult::Value(n) => write!(f, "Value {n}"),
            RunResult::Diverged(fuel) => write!(f, "Diverged({fuel})"),
            RunResult::StuckOracle(name, n) => write!(f, "StuckOracle({name}, {n})"),
        }
    }
}

/// The unique successor of a closed term, if any.
pub fn step(term: &Term) -> Option<Term> {
    match step_full(term) {
        Step::Reduced(t) => Some(t),
        _ => None,
    }
}

fn rebuild(head: Term, args: &[Term]) -> Term {
    args.iter().fold(head, |f, a| Term::app(f, a.clone()).expect("reduction preserves types"))
}

fn lam_xy(first: bool) -> Term {
    let n = crate::types::SimpleType::base();
    let x = crate::term::fresh_name("x");
    let y = crate::term::fresh_name("y");
    let body = if first { Term::var(x.clone(), n.clone()) } else { Term::var(y.clone(), n.clone()) };
    Term::lam(x, n.clone(), Term::lam(y, n, body))
}

/// Reduces the argument at `idx`, keeping the rest of the spine.
fn step_arg(head: &Term, args: &[Term], idx: usize) -> Step {
    match step_full(&args[idx]) {
        Step::Reduced(a) => {
            let mut args2 = args.to_vec();
            args2[idx] = a;
            Step::Reduced(rebuild(head.clone(), &args2))
        }
        Step::Value => Step::Value,
        s @ Step::Stuck(..) => s,
    }
}

/// One step under the evaluation contexts `[-] N`, `suc [-]`, `pre [-]`, `ifzero [-]`
/// (and `byval M [-]`).
pub fn step_full(term: &Term) -> Step {
    let (head, args) = term.spine();
    let rest = |k: usize, new_head: Term| Step::Reduced(rebuild(new_head, &args[k..]));
    match head.kind() {
        Kind::Lam(x, _, body) if !args.is_empty() => rest(1, body.subst(x, &args[0])),
        Kind::Suc | Kind::Pre | Kind::Ifzero | Kind::Oracle(_) if !args.is_empty() => match args[0].as_num() {
            None => step_arg(&head, &args, 0),
            Some(n) => match head.kind() {
                Kind::Suc => rest(1, Term::num(n + 1)),
                Kind::Pre => rest(1, Term::num(n.saturating_sub(1))),
                Kind::Ifzero => rest(1, lam_xy(n == 0)),
                Kind::Oracle(o) => match o.get(n) {
                    Some(m) => rest(1, Term::num(m)),
                    None => Step::Stuck(o.name.clone(), n),
                },
                _ => unreachable!(),
            },
        },
        Kind::Y(_) if !args.is_empty() => {
            let ym = Term::app(head.clone(), args[0].clone()).expect("typed");
            rest(1, Term::app(args[0].clone(), ym).expect("typed"))
        }
        Kind::Byval if args.len() >= 2 => match args[1].as_num() {
            None => step_arg(&head, &args, 1),
            Some(_) => rest(2, Term::app(args[0].clone(), args[1].clone()).expect("typed")),
        },
        _ => Step::Value,
    }
}

/// Runs a closed base-type program for at most `fuel` steps.
pub fn run(term: &Term, fuel: u64) -> Result<RunResult, PcfError> {
    if fuel == 0 {
        return Err(PcfError::ZeroFuel);
    }
    if !term.ty().is_base() || !term.is_closed() {
        return Err(PcfError::NotProgram);
    }
    let mut t = term.clone();
    for _ in 0..fuel {
        if let Some(n) = t.as_num() {
            return Ok(RunResult::Value(n));
        }
        match step_full(&t) {
            Step::Reduced(t2) => t = t2,
            Step::Stuck(name, n) => return Ok(RunResult::StuckOracle(name, n)),
            Step::Value => unreachable!("closed base-type non-numeral always reduces or sticks"),
        }
    }
    match t.as_num() {
        Some(n) => Ok(RunResult::Value(n)),
        None => Ok(RunResult::Diverged(fuel)),
    }
}
