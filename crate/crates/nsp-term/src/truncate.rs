//! Rightward truncation `e^(c)`.

use std::collections::BTreeMap;

use crate::term::{Default, Expr, Family, Proc};

/// `n^(c) = n`, `⊥^(c) = ⊥`, `case^(0) = ⊥`, and `case^(c+1)` keeps the
/// scrutinee and truncates every branch at `c`. Branches at or beyond
/// `branch_bound` survive only through a closed-form default; otherwise the
/// default is marked elided.
pub fn truncate(e: &Expr, c: usize, branch_bound: usize) -> Expr {
    match e {
        Expr::Bot | Expr::Elided | Expr::Num(_) => e.clone(),
        Expr::Case(_) if c == 0 => Expr::Elided,
        Expr::Case(cs) => {
            let bb = branch_bound as u64;
            let mut overrides = BTreeMap::new();
            for i in 0..bb {
                let t = truncate(&cs.branches.get(i), c - 1, branch_bound);
                let dflt = cs.branches.default.get(i);
                let same = match (&t, &dflt) {
                    (Expr::Num(a), Expr::Num(b)) => a == b,
                    (Expr::Bot, Expr::Bot) => true,
                    _ => false,
                };
                if !same || !matches!(cs.branches.default, Default::Bot | Default::Affine(_)) {
                    overrides.insert(i, t);
                }
            }
            let beyond = cs.branches.max_override().map_or(false, |m| m >= bb);
            let default = match &cs.branches.default {
                Default::Bot if !beyond => Default::Bot,
                Default::Affine(k) if !beyond => Default::Affine(*k),
                _ => Default::Elided,
            };
            Expr::case(cs.scrut.clone(), Family::new(overrides, default))
        }
    }
}

pub fn truncate_proc(p: &Proc, c: usize, branch_bound: usize) -> Proc {
    match p {
        Proc::Lam(l) => Proc::lam(l.params.clone(), truncate(&l.body, c, branch_bound)),
        Proc::Fix(_) => p.clone(),
    }
}
