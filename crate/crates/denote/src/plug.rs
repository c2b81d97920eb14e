//! Plugging: `Π(e, ξ) = ⊔_m Π^m(e, ξ)°`.

use std::rc::Rc;

use nsp_eval::{eval_proc, Bounds};
use nsp_term::{alpha_eq_proc, substitute_expr, Binding, Cap, Case, Default, Expr, Family, Generator, Ground, Head, Name, Proc};
use pcf_lang::SimpleType;

use crate::{DenotationEnv, DenoteError};

#[derive(Clone, Debug)]
pub struct Plugging {
    pub env: DenotationEnv,
    /// Plugging variables with their assigned procedures.
    pub vars: Vec<(Name, SimpleType, Proc)>,
    pub root: Expr,
    pub cap: Cap,
}

#[derive(Clone, Debug)]
pub struct PlugResult {
    /// `λ.⇓Π(e, ξ)` at the requested bounds.
    pub proc: Proc,
    /// The number of expansion rounds used for the final answer.
    pub rounds: usize,
    /// Whether two successive round counts agreed at the bounds.
    pub stable: bool,
    pub fuel_exhausted: bool,
}

impl Plugging {
    pub fn validate(&self) -> Result<(), DenoteError> {
        for (z, t, p) in &self.vars {
            if !self.cap.admits(t) {
                return Err(DenoteError::Cap(format!("plugging variable {z} : {t}")));
            }
            if self.env.lookup(z).is_some() {
                return Err(DenoteError::Premise(format!("{z} occurs in the environment")));
            }
            if p.ty() != *t {
                return Err(DenoteError::Type(format!("ξ({z}) has type {}, expected {t}", p.ty())));
            }
        }
        Ok(())
    }

    fn names(&self) -> Vec<Name> {
        self.vars.iter().map(|(z, _, _)| z.clone()).collect()
    }
}

/// `T°`: every ground subterm headed by a plugging variable becomes ⊥.
fn cut_expr(e: &Expr, zs: &Rc<Vec<Name>>) -> Expr {
    match e {
        Expr::Case(c) => {
            let scrut = match &c.scrut {
                Ground::App(Head::Var(x), _) if zs.contains(x) => return Expr::Bot,
                Ground::App(h, args) => Ground::App(cut_head(h, zs), args.iter().map(|a| cut_proc(a, zs)).collect()),
                Ground::Expr(e) => Ground::Expr(cut_expr(e, zs)),
            };
            Expr::Case(Rc::new(Case { scrut, branches: cut_family(&c.branches, zs) }))
        }
        _ => e.clone(),
    }
}

fn cut_head(h: &Head, zs: &Rc<Vec<Name>>) -> Head {
    match h {
        Head::Var(_) => h.clone(),
        Head::Proc(p) => Head::Proc(cut_proc(p, zs)),
    }
}

fn cut_proc(p: &Proc, zs: &Rc<Vec<Name>>) -> Proc {
    match p {
        Proc::Lam(l) => Proc::lam(l.params.clone(), cut_expr(&l.body, zs)),
        Proc::Fix(f) => match &f.step {
            Head::Var(x) if zs.contains(x) => Proc::bot(&f.ty),
            h => Proc::fix(f.ty.clone(), cut_head(h, zs)),
        },
    }
}

fn cut_family(f: &Family, zs: &Rc<Vec<Name>>) -> Family {
    let overrides = f.overrides.iter().map(|(i, e)| (*i, cut_expr(e, zs))).collect();
    let default = match &f.default {
        Default::Const(e) => Default::Const(cut_expr(e, zs)),
        Default::Shift(k, g) => Default::Shift(*k, Rc::new(cut_family(g, zs))),
        Default::Gen(g) => {
            let inner = g.f.clone();
            let zs = zs.clone();
            Default::Gen(Generator { label: g.label.clone(), f: Rc::new(move |i| cut_expr(&inner(i), &zs)) })
        }
        d => d.clone(),
    };
    Family { overrides, default }
}

/// `Π^m(e, ξ)°`.
pub fn plug_iterate(p: &Plugging, m: usize) -> Expr {
    let binding: Binding = p.vars.iter().map(|(z, _, q)| (z.clone(), q.clone())).collect();
    let mut e = p.root.clone();
    for _ in 0..m {
        e = substitute_expr(&e, &binding);
    }
    cut_expr(&e, &Rc::new(p.names()))
}

/// Evaluates the plugging, doubling the number of expansion rounds (starting
/// above the depth bound) until two successive answers agree at the bounds.
pub fn plug(p: &Plugging, b: &Bounds, max_rounds: usize) -> Result<PlugResult, DenoteError> {
    p.validate()?;
    let run = |m: usize| eval_proc(&Proc::lam(vec![], plug_iterate(p, m)), b);
    let mut m = b.depth + 1;
    let mut prev = run(m);
    loop {
        let next_m = (m * 2).min(max_rounds.max(m));
        if next_m == m {
            return Ok(PlugResult { proc: prev.term, rounds: m, stable: false, fuel_exhausted: prev.fuel_exhausted });
        }
        let next = run(next_m);
        if alpha_eq_proc(&prev.term, &next.term, b.depth, b.branch_bound) && !next.fuel_exhausted {
            return Ok(PlugResult { proc: next.term, rounds: next_m, stable: true, fuel_exhausted: false });
        }
        m = next_m;
        prev = next;
    }
}
