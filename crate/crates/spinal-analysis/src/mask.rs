//! Masking, triviality, strictification and simplicity for `g : 0 -> (k+1) -> (k+1)`.

use std::collections::BTreeMap;

use denote::apply_all;
use nsp_eval::{eval_proc, Bounds};
use nsp_term::{eta_expand, substitute_proc, Binder, Binding, Default, Expr, Family, Ground, Head, Name, Proc};
use pcf_lang::SimpleType;

use crate::SpinalError;

fn check_rho(ty: &SimpleType) -> Result<Vec<SimpleType>, SpinalError> {
    let args = ty.args();
    match args.first() {
        Some(a) if a.is_base() && args.len() >= 2 => Ok(args),
        _ => Err(SpinalError::Type(format!("{ty} does not take a numeral first"))),
    }
}

fn mask_head(h: Head, ty: &SimpleType, n: u64, n2: u64) -> Result<Proc, SpinalError> {
    if n > n2 {
        return Err(SpinalError::Input(format!("mask bounds {n} > {n2}")));
    }
    let params: Vec<Binder> = check_rho(ty)?.into_iter().enumerate().map(|(j, t)| Binder::fresh(if j == 0 { "i" } else { "z" }, t)).collect();
    let args = params.iter().map(|b| eta_expand(&b.name, &b.ty)).collect();
    let delegate = Expr::case(Ground::App(h, args), Family::identity());
    let overrides: BTreeMap<u64, Expr> = (n..n2).map(|j| (j, Expr::Num(0))).collect();
    let fam = Family::new(overrides, Default::Const(delegate));
    let body = Expr::case_app(params[0].name.clone(), vec![], fam);
    Ok(Proc::lam(params, body))
}

/// `μ_{n,n′}(P) = λizx. case i of (n ⇒ 0 | … | n′−1 ⇒ 0 | − ⇒ P i z x)`, unevaluated.
pub fn mask(p: &Proc, n: u64, n2: u64) -> Result<Proc, SpinalError> {
    mask_head(Head::Proc(p.clone()), &p.ty(), n, n2)
}

/// `μ_{n,n′}(g)` for a variable `g : ty`.
pub fn mask_var(g: &Name, ty: &SimpleType, n: u64, n2: u64) -> Result<Proc, SpinalError> {
    mask_head(Head::Var(g.clone()), ty, n, n2)
}

/// `G(λ.n) ⊥ ⊥ = 0`, unflagged.
pub fn trivial_at(gp: &Proc, n: u64, b: &Bounds) -> bool {
    let Ok(args) = check_rho(&gp.ty()) else { return false };
    let mut qs = vec![Proc::num(n)];
    qs.extend(args[1..].iter().map(Proc::bot));
    match apply_all(gp, &qs, b) {
        Ok(r) => !r.fuel_exhausted && r.proc.as_num() == Some(0),
        Err(_) => false,
    }
}

/// `S[g] = λizx. case i of (j ⇒ g (λ.j) z^η x^η)`.
pub fn strict_wrapper(g: &Name, ty: &SimpleType) -> Result<Proc, SpinalError> {
    let params: Vec<Binder> = check_rho(ty)?.into_iter().enumerate().map(|(j, t)| Binder::fresh(if j == 0 { "i" } else { "z" }, t)).collect();
    let rest: Vec<Binder> = params[1..].to_vec();
    let gn = g.clone();
    let fam = Family::generator("strict", move |j| {
        let mut args = vec![Proc::num(j)];
        args.extend(rest.iter().map(|b| eta_expand(&b.name, &b.ty)));
        Expr::case_app(gn.clone(), args, Family::identity())
    });
    let body = Expr::case_app(params[0].name.clone(), vec![], fam);
    Ok(Proc::lam(params, body))
}

/// `⇓ q[g ↦ S[g]]`: every `g`-application in the result has a numeral first argument.
pub fn strictify(q: &Proc, g: &Name, g_ty: &SimpleType, b: &Bounds) -> Result<(Proc, bool), SpinalError> {
    let s = strict_wrapper(g, g_ty)?;
    let binding: Binding = [(g.clone(), s)].into_iter().collect();
    let r = eval_proc(&substitute_proc(q, &binding), b);
    Ok((r.term, r.fuel_exhausted))
}

/// Every `g`-application's first argument is `λ.m`, looking at `bb` branches per case.
/// A fixed point stepping through `g` passes itself to `g` and so is never simple.
pub fn is_simple(q: &Proc, g: &Name, bb: usize) -> bool {
    fn proc(p: &Proc, g: &Name, bb: usize) -> bool {
        match p {
            Proc::Lam(l) => expr(&l.body, g, bb),
            Proc::Fix(f) => match &f.step {
                Head::Var(h) => h != g,
                Head::Proc(p) => proc(p, g, bb),
            },
        }
    }
    fn expr(e: &Expr, g: &Name, bb: usize) -> bool {
        let Expr::Case(c) = e else { return true };
        let scrut_ok = match &c.scrut {
            Ground::Expr(e) => expr(e, g, bb),
            Ground::App(h, args) => {
                let head_ok = match h {
                    Head::Var(x) if x == g => args.first().is_some_and(|a| a.as_num().is_some()),
                    Head::Var(_) => true,
                    Head::Proc(p) => proc(p, g, bb),
                };
                head_ok && args.iter().all(|a| proc(a, g, bb))
            }
        };
        scrut_ok && family(&c.branches, g, bb)
    }
    fn family(f: &Family, g: &Name, bb: usize) -> bool {
        if !f.overrides.values().all(|e| expr(e, g, bb)) {
            return false;
        }
        match &f.default {
            Default::Const(e) => expr(e, g, bb),
            Default::Shift(_, inner) => family(inner, g, bb),
            Default::Gen(_) => (0..bb as u64).all(|i| expr(&f.default.get(i), g, bb)),
            _ => true,
        }
    }
    proc(q, g, bb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::rho;

    fn b() -> Bounds {
        Bounds::new(8, 4, 100_000)
    }

    #[test]
    fn mask_is_trivial_inside_its_range() {
        let g = Proc::bot(&rho(1));
        let m = mask(&g, 2, 4).unwrap();
        assert!(trivial_at(&m, 2, &b()));
        assert!(trivial_at(&m, 3, &b()));
        assert!(!trivial_at(&m, 4, &b()));
        assert!(!trivial_at(&m, 1, &b()));
    }

    #[test]
    fn constant_zero_is_trivial() {
        let z = Proc::constant(&rho(1), 0);
        assert!((0..5).all(|n| trivial_at(&z, n, &b())));
    }

    #[test]
    fn wrapper_is_simple_after_evaluation() {
        let g = Name::new("g");
        let q = eta_expand(&g, &rho(1));
        assert!(!is_simple(&q, &g, 4));
        let (s, flagged) = strictify(&q, &g, &rho(1), &b()).unwrap();
        assert!(!flagged);
        assert!(is_simple(&s, &g, 4));
    }
}
