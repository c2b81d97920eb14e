//! Applicative testing: `p ≈ p′` and `p ≼ p′` up to enumerated arguments.

use std::fmt;

use denote::apply_all;
use nsp_eval::Bounds;
use nsp_term::{proc_to_sexpr, Expr, Proc};
use pcf_lang::SimpleType;

use crate::bounds::EnumBounds;
use crate::enumerate::enumerate_at;
use crate::ExtError;

/// Base-type result of one application. Fuel-flagged or elided results are
/// `Unknown`, never ⊥.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Num(u64),
    Bot,
    Unknown,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Num(n) => write!(f, "{n}"),
            Outcome::Bot => write!(f, "bot"),
            Outcome::Unknown => write!(f, "unknown"),
        }
    }
}

/// `p·q⃗` at base type.
pub fn outcome(p: &Proc, args: &[Proc], eb: &Bounds) -> Result<Outcome, ExtError> {
    let r = apply_all(p, args, eb)?;
    if r.fuel_exhausted {
        return Ok(Outcome::Unknown);
    }
    Ok(match r.proc.ground_body() {
        Some(Expr::Num(n)) => Outcome::Num(*n),
        Some(Expr::Bot) => Outcome::Bot,
        _ => Outcome::Unknown,
    })
}

/// Arguments with the results they produced on each side.
#[derive(Clone, Debug)]
pub struct Witness {
    pub args: Vec<Proc>,
    pub left: Outcome,
    pub right: Outcome,
}

impl Witness {
    /// Re-runs the application on both sides and checks the recorded results.
    pub fn replay(&self, p: &Proc, q: &Proc, eb: &Bounds) -> bool {
        matches!(outcome(p, &self.args, eb), Ok(o) if o == self.left) && matches!(outcome(q, &self.args, eb), Ok(o) if o == self.right)
    }

    /// One argument per line, as s-expressions.
    pub fn to_sexpr_lines(&self) -> String {
        let mut s = String::new();
        for a in &self.args {
            s.push_str(&proc_to_sexpr(a));
            s.push('\n');
        }
        s
    }
}

#[derive(Clone, Debug)]
pub enum ComparisonVerdict {
    Distinguished(Witness),
    IndistinguishableUpTo(EnumBounds),
    LeqUpTo(EnumBounds),
    NotLeq(Witness),
}

impl ComparisonVerdict {
    pub fn is_positive(&self) -> bool {
        matches!(self, ComparisonVerdict::IndistinguishableUpTo(_) | ComparisonVerdict::LeqUpTo(_))
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            ComparisonVerdict::Distinguished(w) | ComparisonVerdict::NotLeq(w) => Some(w),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ComparisonVerdict::Distinguished(_) => "Distinguished",
            ComparisonVerdict::IndistinguishableUpTo(_) => "IndistinguishableUpTo",
            ComparisonVerdict::LeqUpTo(_) => "LeqUpTo",
            ComparisonVerdict::NotLeq(_) => "NotLeq",
        }
    }
}

impl fmt::Display for ComparisonVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComparisonVerdict::Distinguished(w) | ComparisonVerdict::NotLeq(w) => {
                write!(f, "{} left={} right={}", self.label(), w.left, w.right)
            }
            ComparisonVerdict::IndistinguishableUpTo(b) | ComparisonVerdict::LeqUpTo(b) => write!(f, "{}({b})", self.label()),
        }
    }
}

/// Candidate argument tuples for a procedure type, first argument outermost.
pub fn argument_tuples(sigma: &SimpleType, b: &EnumBounds) -> Result<Vec<Vec<Proc>>, ExtError> {
    let mut lists = Vec::new();
    let mut total: u128 = 1;
    for a in sigma.args() {
        let l = enumerate_at(&a, &[], b)?;
        total = total.saturating_mul(l.len() as u128);
        if total > b.ceiling {
            return Err(ExtError::Infeasible { estimate: total, ceiling: b.ceiling });
        }
        lists.push(l);
    }
    let mut out = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for prefix in &out {
            for p in &l {
                let mut v: Vec<Proc> = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    Ok(out)
}

fn same_type(p: &Proc, q: &Proc) -> Result<SimpleType, ExtError> {
    let (s, t) = (p.ty(), q.ty());
    if s != t {
        return Err(ExtError::Type(format!("{s} vs {t}")));
    }
    Ok(s)
}

fn differ(a: Outcome, b: Outcome) -> bool {
    match (a, b) {
        (Outcome::Num(m), Outcome::Num(n)) => m != n,
        (Outcome::Num(_), Outcome::Bot) | (Outcome::Bot, Outcome::Num(_)) => true,
        _ => false,
    }
}

/// First argument tuple on which `p` and `p′` give provably different results.
/// The search order does not depend on which side is which.
pub fn distinguish(p: &Proc, q: &Proc, b: &EnumBounds, eb: &Bounds) -> Result<ComparisonVerdict, ExtError> {
    let sigma = same_type(p, q)?;
    for args in argument_tuples(&sigma, b)? {
        let left = outcome(p, &args, eb)?;
        if left == Outcome::Unknown {
            continue;
        }
        let right = outcome(q, &args, eb)?;
        if differ(left, right) {
            return Ok(ComparisonVerdict::Distinguished(Witness { args, left, right }));
        }
    }
    Ok(ComparisonVerdict::IndistinguishableUpTo(*b))
}

/// `p ≼ p′` on every enumerated tuple where both sides are known.
pub fn obs_leq(p: &Proc, q: &Proc, b: &EnumBounds, eb: &Bounds) -> Result<ComparisonVerdict, ExtError> {
    let sigma = same_type(p, q)?;
    for args in argument_tuples(&sigma, b)? {
        let left = outcome(p, &args, eb)?;
        let Outcome::Num(n) = left else { continue };
        let right = outcome(q, &args, eb)?;
        let bad = match right {
            Outcome::Num(m) => m != n,
            Outcome::Bot => true,
            Outcome::Unknown => false,
        };
        if bad {
            return Ok(ComparisonVerdict::NotLeq(Witness { args, left, right }));
        }
    }
    Ok(ComparisonVerdict::LeqUpTo(*b))
}
