//! Structural measurements on the trees of `Y_{k+1}` and `Z_{k+1}`.

use std::collections::HashMap;

use denote::as_lambda;
use nsp_term::{alpha_eq_proc, eta_expand, free_vars_expr, Expr, Ground, Head, Name, Proc};
use pcf_lang::SimpleType;

/// Number of consecutive spine levels, starting at the body of `λg x. …`,
/// whose last `g`-argument is literally `x^η` for the λ-bound `x` of that level.
pub fn eta_spine_levels(p: &Proc, max_levels: usize, bb: usize) -> usize {
    let (params, body) = as_lambda(p);
    let Some((g, xs)) = params.split_first() else { return 0 };
    let mut xs = xs.to_vec();
    let mut e = body;
    let mut levels = 0;
    while levels < max_levels {
        let Some(c) = e.as_case() else { break };
        let Ground::App(Head::Var(h), args) = &c.scrut else { break };
        if *h != g.name || args.len() != 1 + xs.len() {
            break;
        }
        let ok = args[1..].iter().zip(&xs).all(|(o, x)| alpha_eq_proc(o, &eta_expand(&x.name, &x.ty), 8, bb));
        if !ok {
            break;
        }
        levels += 1;
        let (next, body) = as_lambda(&args[0]);
        xs = next;
        e = body;
    }
    levels
}

/// Arguments passed to applications whose head has the given level.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FunnelReport {
    pub applications: usize,
    pub arguments: usize,
    /// Arguments whose body mentions one of their own parameters.
    pub using_parameters: usize,
}

/// Counts, over the finite tree `p`, the applications headed by a variable
/// of level `level` and how many of their non-nullary arguments depend on
/// their own parameters.
pub fn funnel_report(p: &Proc, level: usize, bb: usize) -> FunnelReport {
    fn proc(p: &Proc, level: usize, bb: usize, types: &mut HashMap<Name, SimpleType>, out: &mut FunnelReport) {
        let (params, body) = match p {
            Proc::Lam(l) => (l.params.clone(), l.body.clone()),
            Proc::Fix(_) => return,
        };
        for b in &params {
            types.insert(b.name.clone(), b.ty.clone());
        }
        expr(&body, level, bb, types, out);
    }
    fn expr(e: &Expr, level: usize, bb: usize, types: &mut HashMap<Name, SimpleType>, out: &mut FunnelReport) {
        let Expr::Case(c) = e else { return };
        match &c.scrut {
            Ground::Expr(s) => expr(s, level, bb, types, out),
            Ground::App(h, args) => {
                if let Head::Var(v) = h {
                    if types.get(v).is_some_and(|t| t.level() == level) {
                        out.applications += 1;
                        for a in args {
                            if let Some(l) = a.as_lam() {
                                if l.params.is_empty() {
                                    continue;
                                }
                                out.arguments += 1;
                                let fv = free_vars_expr(&l.body, bb);
                                if l.params.iter().any(|b| fv.contains(&b.name)) {
                                    out.using_parameters += 1;
                                }
                            }
                        }
                    }
                }
                if let Head::Proc(p) = h {
                    proc(p, level, bb, types, out);
                }
                for a in args {
                    proc(a, level, bb, types, out);
                }
            }
        }
        for i in 0..bb as u64 {
            expr(&c.branches.get(i), level, bb, types, out);
        }
    }
    let mut out = FunnelReport::default();
    proc(p, level, bb, &mut HashMap::new(), &mut out);
    out
}
