//! Meta-term contexts, staged evaluation and the exhaustive general-reduction oracle.

use std::collections::{HashSet, VecDeque};
use std::rc::Rc;

use nsp_term::{expr_to_sexpr, proc_to_sexpr, Case, Default, Expr, Family, Generator, Ground, Head, Name, Proc};

use crate::eval::{eval_expr, eval_proc, Bounds, Evaluated};
use crate::step::{general_steps, Meta};

/// What fills a hole.
#[derive(Clone, Debug)]
pub enum Plug {
    Expr(Expr),
    Proc(Proc),
}

/// A meta-term with holes. An expression hole is written `case h() of (i ⇒ i)`;
/// a procedure hole is any `λx⃗. case h() of (i ⇒ i)`. Filling does not rename,
/// so the plugged term may mention variables bound around the hole.
#[derive(Clone, Debug)]
pub struct MetaContext {
    pub term: Meta,
    pub holes: Vec<Name>,
}

fn hole_of(e: &Expr, holes: &[Name]) -> Option<usize> {
    let Expr::Case(c) = e else { return None };
    match &c.scrut {
        Ground::App(Head::Var(h), args) if args.is_empty() && c.branches.is_identity() => holes.iter().position(|x| x == h),
        _ => None,
    }
}

struct Filler<'a> {
    holes: &'a [Name],
    plugs: &'a [Plug],
}

impl Filler<'_> {
    fn proc(&self, p: &Proc) -> Proc {
        match p {
            Proc::Lam(l) => {
                if let Some(k) = hole_of(&l.body, self.holes) {
                    if let Plug::Proc(q) = &self.plugs[k] {
                        return q.clone();
                    }
                }
                Proc::lam(l.params.clone(), self.expr(&l.body))
            }
            Proc::Fix(f) => Proc::fix(f.ty.clone(), self.head(&f.step)),
        }
    }

    fn head(&self, h: &Head) -> Head {
        match h {
            Head::Var(_) => h.clone(),
            Head::Proc(p) => Head::Proc(self.proc(p)),
        }
    }

    fn expr(&self, e: &Expr) -> Expr {
        if let Some(k) = hole_of(e, self.holes) {
            if let Plug::Expr(t) = &self.plugs[k] {
                return t.clone();
            }
        }
        match e {
            Expr::Case(c) => {
                let scrut = match &c.scrut {
                    Ground::Expr(e) => Ground::Expr(self.expr(e)),
                    Ground::App(h, args) => Ground::App(self.head(h), args.iter().map(|a| self.proc(a)).collect()),
                };
                Expr::Case(Rc::new(Case { scrut, branches: self.family(&c.branches) }))
            }
            _ => e.clone(),
        }
    }

    fn family(&self, f: &Family) -> Family {
        let overrides = f.overrides.iter().map(|(i, e)| (*i, self.expr(e))).collect();
        let default = match &f.default {
            Default::Const(e) => Default::Const(self.expr(e)),
            Default::Shift(k, g) => Default::Shift(*k, Rc::new(self.family(g))),
            Default::Gen(g) => {
                let holes = self.holes.to_vec();
                let plugs = self.plugs.to_vec();
                let inner = g.f.clone();
                Default::Gen(Generator { label: g.label.clone(), f: Rc::new(move |i| Filler { holes: &holes, plugs: &plugs }.expr(&inner(i))) })
            }
            d => d.clone(),
        };
        Family { overrides, default }
    }
}

impl MetaContext {
    pub fn new(term: Meta, holes: Vec<Name>) -> MetaContext {
        MetaContext { term, holes }
    }

    pub fn fill(&self, plugs: &[Plug]) -> Meta {
        assert_eq!(plugs.len(), self.holes.len(), "one plug per hole");
        let f = Filler { holes: &self.holes, plugs };
        match &self.term {
            Meta::Proc(p) => Meta::Proc(f.proc(p)),
            Meta::Expr(e) => Meta::Expr(f.expr(e)),
            Meta::Ground(g) => Meta::Expr(f.expr(&Expr::case(g.clone(), Family::identity()))),
        }
    }
}

pub fn eval_meta(m: &Meta, b: &Bounds) -> Evaluated<Meta> {
    match m {
        Meta::Proc(p) => {
            let r = eval_proc(p, b);
            Evaluated { term: Meta::Proc(r.term), fuel_exhausted: r.fuel_exhausted, steps: r.steps }
        }
        Meta::Expr(e) => {
            let r = eval_expr(e, b);
            Evaluated { term: Meta::Expr(r.term), fuel_exhausted: r.fuel_exhausted, steps: r.steps }
        }
        Meta::Ground(g) => {
            let r = crate::eval::eval_ground(g, b);
            Evaluated { term: Meta::Expr(r.term), fuel_exhausted: r.fuel_exhausted, steps: r.steps }
        }
    }
}

/// `(⇓C[T⃗], ⇓C[⇓T⃗])`. The plugs are evaluated with `inner` bounds, which
/// must be generous enough that truncating them cannot show at `outer`.
pub fn eval_in_stages(ctx: &MetaContext, plugs: &[Plug], outer: &Bounds, inner: &Bounds) -> (Evaluated<Meta>, Evaluated<Meta>) {
    let direct = eval_meta(&ctx.fill(plugs), outer);
    let mut flagged = false;
    let pre: Vec<Plug> = plugs
        .iter()
        .map(|p| match p {
            Plug::Expr(e) => {
                let r = eval_expr(e, inner);
                flagged |= r.fuel_exhausted;
                Plug::Expr(r.term)
            }
            Plug::Proc(q) => {
                let r = eval_proc(q, inner);
                flagged |= r.fuel_exhausted;
                Plug::Proc(r.term)
            }
        })
        .collect();
    let mut staged = eval_meta(&ctx.fill(&pre), outer);
    staged.fuel_exhausted |= flagged;
    (direct, staged)
}

/// A rendering that identifies α-equivalent finite meta-terms.
pub fn meta_key(m: &Meta) -> String {
    match m {
        Meta::Proc(p) => proc_to_sexpr(p),
        Meta::Expr(e) => expr_to_sexpr(e),
        Meta::Ground(g) => expr_to_sexpr(&Expr::case(g.clone(), Family::identity())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("general-reduction search exceeded {0} states")]
pub struct SearchExhausted(pub usize);

/// All normal forms reachable from a finite meta-term by general reduction,
/// up to α. Meant for small instances without fixed points or generators.
pub fn all_normal_forms(m: &Meta, bb: u64, max_states: usize) -> Result<Vec<Meta>, SearchExhausted> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut normals: Vec<(String, Meta)> = Vec::new();
    seen.insert(meta_key(m));
    queue.push_back(m.clone());
    while let Some(t) = queue.pop_front() {
        let succ = general_steps(&t, bb);
        if succ.is_empty() {
            let k = meta_key(&t);
            if !normals.iter().any(|(k2, _)| *k2 == k) {
                normals.push((k, t));
            }
            continue;
        }
        for (_, _, t2) in succ {
            if seen.insert(meta_key(&t2)) {
                if seen.len() > max_states {
                    return Err(SearchExhausted(max_states));
                }
                queue.push_back(t2);
            }
        }
    }
    Ok(normals.into_iter().map(|(_, t)| t).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::meta_alpha_eq;
    use nsp_term::parse_proc;

    #[test]
    fn hole_under_case() {
        let h = Name::new("hole");
        let ctx = MetaContext::new(Meta::Expr(Expr::case_of(Expr::case_app(h.clone(), vec![], Family::identity()), Family::identity())), vec![h]);
        let t = Plug::Expr(Expr::case(Ground::redex(Proc::num(2), vec![]), Family::identity()));
        let b = Bounds::new(4, 4, 1000);
        let (a, s) = eval_in_stages(&ctx, &[t], &b, &b);
        assert!(meta_alpha_eq(&a.term, &s.term, 4, 4));
        assert!(matches!(a.term, Meta::Expr(Expr::Num(2))));
    }

    #[test]
    fn confluent_small_instance() {
        let p = parse_proc("(lam ((f (-> N N))) (case (app f (lam () (case (app (lam (y) (case (app y) (default affine 1))) (lam () 2)) (default affine 0)))) (0 (case (app (lam () 4)) (default affine 0))) (default bot)))").unwrap();
        let nfs = all_normal_forms(&Meta::Proc(p.clone()), 4, 10_000).unwrap();
        assert_eq!(nfs.len(), 1);
        let ev = eval_proc(&p, &Bounds::new(6, 4, 1000)).term;
        assert!(meta_alpha_eq(&nfs[0], &Meta::Proc(ev), 6, 4));
    }
}
