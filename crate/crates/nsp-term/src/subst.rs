//! Simultaneous capture-avoiding substitution. Every binder met on the way is
//! renamed to a fresh name, so the result never repeats a binder along a path.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use crate::term::{Binder, Case, Default, Expr, Family, Fix, Generator, Ground, Head, Lam, Name, Proc};

pub type Binding = HashMap<Name, Proc>;

#[derive(Clone, Default)]
struct Env {
    map: HashMap<Name, Head>,
}

impl Env {
    fn bind(&mut self, params: &[Binder]) -> (Vec<Binder>, Vec<(Name, Option<Head>)>) {
        let mut saved = Vec::with_capacity(params.len());
        let mut out = Vec::with_capacity(params.len());
        for b in params {
            let fresh = b.name.refresh();
            saved.push((b.name.clone(), self.map.insert(b.name.clone(), Head::Var(fresh.clone()))));
            out.push(Binder { name: fresh, ty: b.ty.clone() });
        }
        (out, saved)
    }

    fn restore(&mut self, saved: Vec<(Name, Option<Head>)>) {
        for (n, old) in saved.into_iter().rev() {
            match old {
                Some(h) => self.map.insert(n, h),
                None => self.map.remove(&n),
            };
        }
    }

    fn proc(&mut self, p: &Proc) -> Proc {
        match p {
            Proc::Lam(l) => {
                let (params, saved) = self.bind(&l.params);
                let body = self.expr(&l.body);
                self.restore(saved);
                Proc::Lam(Rc::new(Lam { params, body }))
            }
            Proc::Fix(f) => Proc::Fix(Rc::new(Fix { ty: f.ty.clone(), step: self.head(&f.step) })),
        }
    }

    fn head(&mut self, h: &Head) -> Head {
        match h {
            Head::Var(x) => self.map.get(x).cloned().unwrap_or_else(|| h.clone()),
            Head::Proc(p) => Head::Proc(self.proc(p)),
        }
    }

    fn ground(&mut self, g: &Ground) -> Ground {
        match g {
            Ground::Expr(e) => Ground::Expr(self.expr(e)),
            Ground::App(h, args) => Ground::App(self.head(h), args.iter().map(|a| self.proc(a)).collect()),
        }
    }

    fn expr(&mut self, e: &Expr) -> Expr {
        match e {
            Expr::Case(c) => {
                let scrut = self.ground(&c.scrut);
                let branches = self.family(&c.branches);
                Expr::Case(Rc::new(Case { scrut, branches }))
            }
            _ => e.clone(),
        }
    }

    fn family(&mut self, f: &Family) -> Family {
        let overrides = f.overrides.iter().map(|(i, e)| (*i, self.expr(e))).collect();
        let default = match &f.default {
            Default::Const(e) => Default::Const(self.expr(e)),
            Default::Shift(k, g) => Default::Shift(*k, Rc::new(self.family(g))),
            Default::Gen(g) => {
                let snapshot = self.clone();
                let inner = g.f.clone();
                Default::Gen(Generator {
                    label: g.label.clone(),
                    f: Rc::new(move |i| snapshot.clone().expr(&inner(i))),
                })
            }
            d => d.clone(),
        };
        Family { overrides, default }
    }
}

fn env_of(binding: &Binding) -> Env {
    Env { map: binding.iter().map(|(k, v)| (k.clone(), Head::Proc(v.clone()))).collect() }
}

/// `p[x⃗ ↦ q⃗]`. A substituted variable in head position becomes a redex head,
/// so `x` with `x ↦ λ.3` turns `case x of …` into `case (λ.3)() of …`.
pub fn substitute_proc(p: &Proc, binding: &Binding) -> Proc {
    env_of(binding).proc(p)
}

pub fn substitute_expr(e: &Expr, binding: &Binding) -> Expr {
    env_of(binding).expr(e)
}

pub fn substitute_ground(g: &Ground, binding: &Binding) -> Ground {
    env_of(binding).ground(g)
}

pub fn substitute_family(f: &Family, binding: &Binding) -> Family {
    env_of(binding).family(f)
}

/// Renames variables to variables (free occurrences only), freshening binders.
pub fn rename_expr(e: &Expr, renaming: &HashMap<Name, Name>) -> Expr {
    let mut env = Env { map: renaming.iter().map(|(k, v)| (k.clone(), Head::Var(v.clone()))).collect() };
    env.expr(e)
}

pub fn rename_proc(p: &Proc, renaming: &HashMap<Name, Name>) -> Proc {
    let mut env = Env { map: renaming.iter().map(|(k, v)| (k.clone(), Head::Var(v.clone()))).collect() };
    env.proc(p)
}

/// Free variables of `p`, looking at the first `bb` branches of generated families.
pub fn free_vars_proc(p: &Proc, bb: usize) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    fv_proc(p, bb, &mut Vec::new(), &mut out);
    out
}

pub fn free_vars_expr(e: &Expr, bb: usize) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    fv_expr(e, bb, &mut Vec::new(), &mut out);
    out
}

fn fv_head(h: &Head, bb: usize, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match h {
        Head::Var(x) => {
            if !bound.contains(x) {
                out.insert(x.clone());
            }
        }
        Head::Proc(p) => fv_proc(p, bb, bound, out),
    }
}

fn fv_proc(p: &Proc, bb: usize, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    match p {
        Proc::Lam(l) => {
            let n = bound.len();
            bound.extend(l.params.iter().map(|b| b.name.clone()));
            fv_expr(&l.body, bb, bound, out);
            bound.truncate(n);
        }
        Proc::Fix(f) => fv_head(&f.step, bb, bound, out),
    }
}

fn fv_expr(e: &Expr, bb: usize, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    let Expr::Case(c) = e else { return };
    match &c.scrut {
        Ground::Expr(e) => fv_expr(e, bb, bound, out),
        Ground::App(h, args) => {
            fv_head(h, bb, bound, out);
            for a in args {
                fv_proc(a, bb, bound, out);
            }
        }
    }
    fv_family(&c.branches, bb, bound, out);
}

fn fv_family(f: &Family, bb: usize, bound: &mut Vec<Name>, out: &mut BTreeSet<Name>) {
    for e in f.overrides.values() {
        fv_expr(e, bb, bound, out);
    }
    match &f.default {
        Default::Const(e) => fv_expr(e, bb, bound, out),
        Default::Shift(_, g) => fv_family(g, bb, bound, out),
        Default::Gen(g) => {
            for i in 0..bb as u64 {
                fv_expr(&(g.f)(i), bb, bound, out);
            }
        }
        _ => {}
    }
}

/// A copy of `p` with every binder renamed fresh.
pub fn freshen_proc(p: &Proc) -> Proc {
    Env::default().proc(p)
}

pub fn freshen_expr(e: &Expr) -> Expr {
    Env::default().expr(e)
}

/// Substitutes into the body of `λx⃗.E` applied to `args` (β with fresh binders).
pub fn beta(l: &Lam, args: &[Proc]) -> Expr {
    assert_eq!(l.params.len(), args.len(), "β-redex arity");
    let mut env = Env::default();
    for (b, a) in l.params.iter().zip(args) {
        env.map.insert(b.name.clone(), Head::Proc(a.clone()));
    }
    env.expr(&l.body)
}
