//! Exhaustive enumeration of pruned finite procedures.
//!
//! Grammar at depth `d` in an environment `Γ`: `⊥`, numerals up to the value
//! bound, and, when `d > 0`, `case x q⃗ of (0 ⇒ e₀ | … | B ⇒ e_B)` for `x ∈ Γ`,
//! arguments `q⃗` at depth `d − 1` and branches at depth `d − 1`. A case whose
//! branches are all ⊥ is never produced, so every yielded term is pruned.
//! Order is canonical: ⊥, numerals ascending, then cases by variable, arguments
//! and branches, each lexicographic.

use std::collections::BTreeMap;

use nsp_term::{Binder, Expr, Family, Name, Proc};
use pcf_lang::SimpleType;

use crate::bounds::EnumBounds;
use crate::ExtError;

/// Closed finite procedures of type `σ` (level at most 2).
pub fn enumerate_finite(sigma: &SimpleType, b: &EnumBounds) -> Result<Vec<Proc>, ExtError> {
    if sigma.level() > 2 {
        return Err(ExtError::Level(sigma.to_string()));
    }
    enumerate_at(sigma, &[], b)
}

/// Finite procedures of type `σ` over free variables `env`, at any level.
/// Only the ceiling guards feasibility.
pub fn enumerate_at(sigma: &SimpleType, env: &[(Name, SimpleType)], b: &EnumBounds) -> Result<Vec<Proc>, ExtError> {
    let types: Vec<SimpleType> = env.iter().map(|(_, t)| t.clone()).collect();
    let estimate = count_procs(&types, sigma, b.max_depth, b);
    if estimate > b.ceiling {
        return Err(ExtError::Infeasible { estimate, ceiling: b.ceiling });
    }
    Ok(procs(env, sigma, b.max_depth, b))
}

/// Expressions at depth `d` over `env`.
pub fn enumerate_exprs(env: &[(Name, SimpleType)], d: usize, b: &EnumBounds) -> Result<Vec<Expr>, ExtError> {
    let types: Vec<SimpleType> = env.iter().map(|(_, t)| t.clone()).collect();
    let estimate = count_exprs(&types, d, b);
    if estimate > b.ceiling {
        return Err(ExtError::Infeasible { estimate, ceiling: b.ceiling });
    }
    Ok(exprs(env, d, b))
}

/// Number of closed finite procedures `enumerate_finite` would yield.
pub fn count_finite(sigma: &SimpleType, b: &EnumBounds) -> u128 {
    count_procs(&[], sigma, b.max_depth, b)
}

fn procs(env: &[(Name, SimpleType)], sigma: &SimpleType, d: usize, b: &EnumBounds) -> Vec<Proc> {
    let params: Vec<Binder> = sigma.args().into_iter().map(|t| Binder::fresh(hint(&t), t)).collect();
    let mut inner = env.to_vec();
    inner.extend(params.iter().map(|p| (p.name.clone(), p.ty.clone())));
    exprs(&inner, d, b).into_iter().map(|e| Proc::lam(params.clone(), e)).collect()
}

fn hint(t: &SimpleType) -> &'static str {
    match t.level() {
        0 => "x",
        1 => "f",
        _ => "F",
    }
}

fn exprs(env: &[(Name, SimpleType)], d: usize, b: &EnumBounds) -> Vec<Expr> {
    let mut out = vec![Expr::Bot];
    out.extend((0..=b.max_value).map(Expr::Num));
    if d == 0 {
        return out;
    }
    let below = exprs(env, d - 1, b);
    let families = branch_tuples(&below, b);
    for (x, t) in env {
        let arg_lists: Vec<Vec<Proc>> = t.args().iter().map(|a| procs(env, a, d - 1, b)).collect();
        for args in product(&arg_lists) {
            for fam in &families {
                out.push(Expr::case_app(x.clone(), args.clone(), fam.clone()));
            }
        }
    }
    out
}

/// Every branch assignment on `0..=max_branch` with at least one and at most
/// `max_fanout` non-⊥ entries.
fn branch_tuples(below: &[Expr], b: &EnumBounds) -> Vec<Family> {
    let n = b.branches() as usize;
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let live = idx.iter().filter(|&&i| i != 0).count();
        if live > 0 && live <= b.max_fanout {
            let table: BTreeMap<u64, Expr> =
                idx.iter().enumerate().filter(|(_, &i)| i != 0).map(|(j, &i)| (j as u64, below[i].clone())).collect();
            out.push(Family::table(table));
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < below.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn product(lists: &[Vec<Proc>]) -> Vec<Vec<Proc>> {
    let mut out = vec![Vec::new()];
    for l in lists {
        let mut next = Vec::with_capacity(out.len() * l.len());
        for prefix in &out {
            for p in l {
                let mut v = prefix.clone();
                v.push(p.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn count_procs(env: &[SimpleType], sigma: &SimpleType, d: usize, b: &EnumBounds) -> u128 {
    let mut inner = env.to_vec();
    inner.extend(sigma.args());
    count_exprs(&inner, d, b)
}

fn count_exprs(env: &[SimpleType], d: usize, b: &EnumBounds) -> u128 {
    let leaves = 2 + b.max_value as u128;
    if d == 0 {
        return leaves;
    }
    let below = count_exprs(env, d - 1, b);
    let fams = count_branch_tuples(below, b);
    let mut total = leaves;
    for t in env {
        let mut args: u128 = 1;
        for a in t.args() {
            args = args.saturating_mul(count_procs(env, &a, d - 1, b));
        }
        total = total.saturating_add(args.saturating_mul(fams));
    }
    total
}

fn count_branch_tuples(below: u128, b: &EnumBounds) -> u128 {
    let n = b.branches() as u128;
    let mut total: u128 = 0;
    let mut choose: u128 = 1;
    for m in 1..=n.min(b.max_fanout as u128) {
        choose = choose * (n - m + 1) / m;
        total = total.saturating_add(choose.saturating_mul((below - 1).saturating_pow(m as u32)));
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_type() {
        let ps = enumerate_finite(&SimpleType::base(), &EnumBounds::tiny()).unwrap();
        assert_eq!(ps.len(), 3);
        assert!(ps[0].ground_body().unwrap().is_bot());
        assert_eq!(ps[2].as_num(), Some(1));
    }

    #[test]
    fn fanout_limits_branches() {
        let b = EnumBounds::new(1, 1, 1, 1);
        // 3 leaves plus one live branch out of two, each 0 or 1
        assert_eq!(enumerate_finite(&SimpleType::pure(1), &b).unwrap().len(), 3 + 4);
        assert_eq!(count_finite(&SimpleType::pure(1), &b), 7);
    }

    #[test]
    fn level_three_rejected() {
        assert!(matches!(enumerate_finite(&SimpleType::pure(3), &EnumBounds::tiny()), Err(ExtError::Level(_))));
    }

    #[test]
    fn ceiling() {
        let b = EnumBounds::new(3, 2, 3, 4).with_ceiling(1000);
        assert!(matches!(enumerate_finite(&SimpleType::pure(2), &b), Err(ExtError::Infeasible { .. })));
    }
}
