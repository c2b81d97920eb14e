//! Top-level shape of simple procedures above `p_n`, checked on samples.

use std::fmt;

use denote::as_lambda;
use extensional::{enumerate_at, enumerate_exprs, obs_leq, outcome, ComparisonVerdict, EnumBounds};
use nsp_eval::{eval_proc, Bounds};
use nsp_term::{alpha_eq_proc, eta_expand, proc_to_sexpr, substitute_proc, Binder, Binding, Expr, Family, Ground, Head, Name, Proc};
use pcf_lang::SimpleType;

use crate::gallery::{p_n, rho};
use crate::mask::{mask, mask_var, trivial_at};
use crate::SpinalError;

#[derive(Clone, Debug)]
pub struct DecomposeConfig {
    pub k: usize,
    pub eval: Bounds,
    /// Number of sampled `G` (and of sampled `X`) per check.
    pub samples: usize,
    /// Bounds for the arguments used when comparing procedures.
    pub enum_bounds: EnumBounds,
}

impl DecomposeConfig {
    pub fn new(k: usize) -> DecomposeConfig {
        DecomposeConfig { k, eval: Bounds::new(8, 4, 100_000), samples: 50, enum_bounds: EnumBounds::tiny() }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub samples: usize,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{verdict} {} ({} samples)", self.name, self.samples)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub x: Binder,
    pub a: Proc,
    pub r: Proc,
    pub o: Proc,
    pub checks: Vec<CheckResult>,
}

impl Decomposition {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// `λizx. case i of (j ⇒ e_j)` for sampled `e_j`: strict in `i`.
pub fn strict_samples(k: usize, count: usize) -> Result<Vec<Proc>, SpinalError> {
    let ty = rho(k);
    let params: Vec<Binder> = ty.args().into_iter().enumerate().map(|(j, t)| Binder::fresh(if j == 0 { "i" } else { "z" }, t)).collect();
    let env: Vec<(Name, SimpleType)> = params.iter().map(|b| (b.name.clone(), b.ty.clone())).collect();
    let exprs = enumerate_exprs(&env, 1, &EnumBounds::tiny())?;
    let m = exprs.len();
    let mut out = vec![Proc::bot(&ty)];
    let mut t = 0usize;
    while out.len() < count {
        let (e0, e1) = (&exprs[(t * 7 + 1) % m], &exprs[(t * 13 + 3) % m]);
        let fam = Family::table([(0, e0.clone()), (1, e1.clone())]);
        out.push(Proc::lam(params.clone(), Expr::case_app(params[0].name.clone(), vec![], fam)));
        t += 1;
    }
    Ok(out)
}

/// Sampled arguments of type `k`, spread over a depth-2 enumeration.
pub fn x_samples(k: usize, count: usize) -> Result<Vec<Proc>, SpinalError> {
    let pool = enumerate_at(&SimpleType::pure(k), &[], &EnumBounds::tiny().with_depth(2))?;
    let m = pool.len();
    Ok((0..count).map(|t| pool[(t * 11) % m].clone()).collect())
}

fn subst(p: &Proc, pairs: &[(&Name, &Proc)]) -> Proc {
    let b: Binding = pairs.iter().map(|(n, q)| ((*n).clone(), (*q).clone())).collect();
    substitute_proc(p, &b)
}

fn leq(lhs: &Proc, rhs: &Proc, cfg: &DecomposeConfig) -> Result<Option<String>, SpinalError> {
    Ok(match obs_leq(lhs, rhs, &cfg.enum_bounds, &cfg.eval)? {
        ComparisonVerdict::NotLeq(w) => Some(format!("{} vs {} at\n{}", w.left, w.right, w.to_sexpr_lines())),
        _ => None,
    })
}

/// `λizx. case i of (n ⇒ 0 | − ⇒ ⊥)`.
pub fn only_at(k: usize, n: u64) -> Proc {
    let ty = rho(k);
    let params: Vec<Binder> = ty.args().into_iter().map(|t| Binder::fresh("i", t)).collect();
    let body = Expr::case_app(params[0].name.clone(), vec![], Family::table([(n, Expr::Num(0))]));
    Proc::lam(params, body)
}

/// Splits `q = λx. case g a r o of …` and checks on samples that `a = λ.n`,
/// that `o[g ↦ G] ⪰ x^η` for `G` trivial at `n`, and that
/// `r[g ↦ μ_n(G), x ↦ X] ⪰ p_{n+1}[g ↦ G]` for strict `G`.
pub fn qn_decompose(q: &Proc, g: &Name, n: u64, cfg: &DecomposeConfig) -> Result<Decomposition, SpinalError> {
    let k = cfg.k;
    let (params, body) = as_lambda(q);
    let shape_err = || SpinalError::Input(format!("not of the form λx. case g a r o of …: {}", proc_to_sexpr(q)));
    let [x] = params.as_slice() else { return Err(shape_err()) };
    let Expr::Case(c) = &body else { return Err(shape_err()) };
    let Ground::App(Head::Var(h), args) = &c.scrut else { return Err(shape_err()) };
    if h != g || args.len() != 3 {
        return Err(shape_err());
    }
    let (a, r, o) = (&args[0], &args[1], &args[2]);
    let mut checks = Vec::new();

    // Claim 1.
    let want = Proc::num(n);
    if alpha_eq_proc(a, &want, 2, 2) {
        checks.push(CheckResult { name: "a = λ.n", passed: true, samples: 1, detail: String::new() });
    } else {
        let gp = only_at(k, n);
        let bot = Proc::bot(&x.ty);
        let mine = outcome(&subst(q, &[(g, &gp)]), std::slice::from_ref(&bot), &cfg.eval)?;
        let theirs = outcome(&subst(&p_n(g, k, n, cfg.eval.depth), &[(g, &gp)]), &[bot], &cfg.eval)?;
        let detail = format!("a = {}; G′ = {} gives {mine} where p_n gives {theirs}", proc_to_sexpr(a), proc_to_sexpr(&gp));
        checks.push(CheckResult { name: "a = λ.n", passed: false, samples: 1, detail });
    }

    // Claim 2.
    let strict = strict_samples(k, cfg.samples)?;
    let mut trivial: Vec<Proc> = vec![Proc::constant(&rho(k), 0)];
    for s in &strict {
        trivial.push(mask(s, n, n + 1)?);
    }
    trivial.truncate(cfg.samples.max(1));
    let eta = eta_expand(&x.name, &x.ty);
    let close = |p: &Proc| {
        let (ps, e) = as_lambda(p);
        let mut all = vec![x.clone()];
        all.extend(ps);
        Proc::lam(all, e)
    };
    let mut detail = String::new();
    for gp in &trivial {
        if !trivial_at(gp, n, &cfg.eval) {
            detail = format!("sample {} is not trivial at {n}", proc_to_sexpr(gp));
            break;
        }
        let spec = eval_proc(&subst(o, &[(g, gp)]), &cfg.eval).term;
        if let Some(w) = leq(&close(&eta), &close(&spec), cfg)? {
            detail = format!("G = {}: {w}", proc_to_sexpr(gp));
            break;
        }
    }
    checks.push(CheckResult { name: "o[g ↦ G] ⪰ x^η for G trivial at n", passed: detail.is_empty(), samples: trivial.len(), detail });

    // Claim 3.
    let xs = x_samples(k, cfg.samples)?;
    let next = p_n(g, k, n + 1, cfg.eval.depth);
    let mut detail = String::new();
    let count = strict.len().max(xs.len());
    for t in 0..count {
        let gp = &strict[t % strict.len()];
        let xp = &xs[t % xs.len()];
        let masked = mask(gp, n, n + 1)?;
        let lhs = eval_proc(&subst(&next, &[(g, gp)]), &cfg.eval).term;
        let rhs = eval_proc(&subst(r, &[(g, &masked), (&x.name, xp)]), &cfg.eval).term;
        if let Some(w) = leq(&lhs, &rhs, cfg)? {
            detail = format!("G = {}, X = {}: {w}", proc_to_sexpr(gp), proc_to_sexpr(xp));
            break;
        }
    }
    checks.push(CheckResult { name: "r[g ↦ μ_n(G), x ↦ X] ⪰ p_{n+1}[g ↦ G]", passed: detail.is_empty(), samples: count, detail });

    Ok(Decomposition { x: x.clone(), a: a.clone(), r: r.clone(), o: o.clone(), checks })
}

/// Decomposes `q` at `n₀`, then `⇓r[g ↦ μ_{n₀}(g), x ↦ ⊥]` at `n₀ + 1`, and so on.
pub fn qn_chain(q: &Proc, g: &Name, n0: u64, steps: usize, cfg: &DecomposeConfig) -> Result<Vec<Decomposition>, SpinalError> {
    let g_ty = rho(cfg.k);
    let mut out = Vec::new();
    let mut cur = q.clone();
    for s in 0..steps as u64 {
        let n = n0 + s;
        let d = qn_decompose(&cur, g, n, cfg)?;
        let masked = mask_var(g, &g_ty, n, n + 1)?;
        let bot = Proc::bot(&d.x.ty);
        cur = eval_proc(&subst(&d.r, &[(g, &masked), (&d.x.name, &bot)]), &cfg.eval).term;
        out.push(d);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use extensional::Outcome;

    #[test]
    fn samples_are_strict_and_sized() {
        let s = strict_samples(1, 50).unwrap();
        assert_eq!(s.len(), 50);
        let b = Bounds::new(6, 4, 10_000);
        for p in &s {
            let mut args = vec![Proc::bot(&SimpleType::base())];
            args.extend(rho(1).args()[1..].iter().map(|t| Proc::constant(t, 0)));
            assert_eq!(outcome(p, &args, &b).unwrap(), Outcome::Bot);
        }
        assert_eq!(x_samples(1, 50).unwrap().len(), 50);
    }
}
