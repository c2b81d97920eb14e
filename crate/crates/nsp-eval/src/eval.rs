//! Bounded evaluation: head-reduce, emit the head constructor, recurse into
//! arguments and branches with one less unit of depth.

use std::collections::BTreeMap;

use nsp_term::{beta, eta_expand, Binder, Default, Expr, Family, Fix, Ground, Head, Lam, Name, Proc};

/// Truncation bounds and the head-reduction budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub depth: usize,
    pub branch_bound: usize,
    pub fuel: u64,
}

impl Bounds {
    pub fn new(depth: usize, branch_bound: usize, fuel: u64) -> Bounds {
        Bounds { depth, branch_bound, fuel }
    }

    pub fn with_depth(self, depth: usize) -> Bounds {
        Bounds { depth, ..self }
    }
}

impl std::default::Default for Bounds {
    fn default() -> Bounds {
        Bounds { depth: 8, branch_bound: 4, fuel: 1_000_000 }
    }
}

/// A result together with whether the budget ran out somewhere. When it did,
/// the affected nodes read ⊥ but nothing is claimed about them.
#[derive(Clone, Debug)]
pub struct Evaluated<T> {
    pub term: T,
    pub fuel_exhausted: bool,
    pub steps: u64,
}

/// `F_σ[h]` one level down: `λx⃗. case h (F_σ[h]) x⃗^η of (i ⇒ i)`.
pub fn unfold(fix: &std::rc::Rc<Fix>) -> Lam {
    let params: Vec<Binder> = fix.ty.args().into_iter().map(|t| Binder::fresh("x", t)).collect();
    let mut args = vec![Proc::Fix(fix.clone())];
    args.extend(params.iter().map(|b| eta_expand(&b.name, &b.ty)));
    Lam { params, body: Expr::case(Ground::App(fix.step.clone(), args), Family::identity()) }
}

/// β for any procedure head, unfolding a fixed point first.
pub fn apply_head(p: &Proc, args: &[Proc]) -> Expr {
    match p {
        Proc::Lam(l) => beta(l, args),
        Proc::Fix(f) => beta(&unfold(f), args),
    }
}

pub(crate) enum Hnf {
    Bot,
    Elided,
    Num(u64),
    /// `case y Q⃗ of F` still owing the pending outer families.
    Case(Name, Vec<Proc>, Family, Vec<Family>),
}

pub(crate) struct Evaluator {
    pub bb: u64,
    pub fuel: u64,
    pub exhausted: bool,
    pub steps: u64,
}

fn wrap(mut e: Expr, stack: &[Family]) -> Expr {
    for f in stack.iter().rev() {
        if e.is_bot() {
            return e;
        }
        e = Expr::case_of(e, f.clone());
    }
    e
}

impl Evaluator {
    pub fn new(b: &Bounds) -> Evaluator {
        Evaluator { bb: b.branch_bound as u64, fuel: b.fuel, exhausted: false, steps: 0 }
    }

    fn tick(&mut self) -> bool {
        if self.fuel == 0 {
            self.exhausted = true;
            return false;
        }
        self.fuel -= 1;
        self.steps += 1;
        true
    }

    /// Head reduction with case-of-case folded into a stack of pending families.
    /// Identity families are dropped: `case E of (i ⇒ i)` and `E` evaluate alike.
    pub fn head_normalize(&mut self, e: &Expr) -> Hnf {
        let mut stack: Vec<Family> = Vec::new();
        let mut cur = e.clone();
        loop {
            match cur {
                Expr::Bot => return Hnf::Bot,
                Expr::Elided => return Hnf::Elided,
                Expr::Num(n) => match stack.pop() {
                    None => return Hnf::Num(n),
                    Some(f) => {
                        if !self.tick() {
                            return Hnf::Bot;
                        }
                        cur = f.get(n);
                    }
                },
                Expr::Case(c) => match &c.scrut {
                    Ground::App(Head::Var(y), args) => {
                        return Hnf::Case(y.clone(), args.clone(), c.branches.clone(), stack);
                    }
                    Ground::Expr(inner) => {
                        if !self.tick() {
                            return Hnf::Bot;
                        }
                        if !c.branches.is_identity() {
                            stack.push(c.branches.clone());
                        }
                        cur = inner.clone();
                    }
                    Ground::App(Head::Proc(p), args) => {
                        if !self.tick() {
                            return Hnf::Bot;
                        }
                        if !c.branches.is_identity() {
                            stack.push(c.branches.clone());
                        }
                        cur = apply_head(p, args);
                    }
                },
            }
        }
    }

    pub fn expr(&mut self, e: &Expr, d: usize) -> Expr {
        match self.head_normalize(e) {
            Hnf::Bot => Expr::Bot,
            Hnf::Elided => Expr::Elided,
            Hnf::Num(n) => Expr::Num(n),
            Hnf::Case(_, _, _, _) if d == 0 => Expr::Elided,
            Hnf::Case(y, args, fam, stack) => {
                let args = args.iter().map(|a| self.proc(a, d - 1)).collect();
                let fam = self.family(&fam, &stack, d - 1);
                Expr::case_app(y, args, fam)
            }
        }
    }

    pub fn proc(&mut self, p: &Proc, d: usize) -> Proc {
        match p {
            Proc::Lam(l) => Proc::lam(l.params.clone(), self.expr(&l.body, d)),
            Proc::Fix(f) => {
                let l = unfold(f);
                Proc::lam(l.params, self.expr(&l.body, d))
            }
        }
    }

    fn family(&mut self, fam: &Family, stack: &[Family], d: usize) -> Family {
        let beyond = fam.max_override().map_or(false, |m| m >= self.bb);
        let default = if beyond {
            Default::Elided
        } else {
            match &fam.default {
                Default::Bot => Default::Bot,
                Default::Affine(k) => composed_affine(*k, stack).map_or(Default::Elided, Default::Affine),
                _ => Default::Elided,
            }
        };
        let mut overrides = BTreeMap::new();
        for i in 0..self.bb {
            let v = self.expr(&wrap(fam.get(i), stack), d);
            let redundant = match (&default, &v) {
                (Default::Bot, Expr::Bot) => true,
                (Default::Affine(k), Expr::Num(n)) => default_num(i, *k) == Some(*n),
                _ => false,
            };
            if !redundant {
                overrides.insert(i, v);
            }
        }
        Family::new(overrides, default)
    }
}

fn default_num(i: u64, k: i64) -> Option<u64> {
    let v = i as i128 + k as i128;
    (v >= 0).then_some(v as u64)
}

/// `i ⇒ i+k` followed by the pending families, when that is again affine.
fn composed_affine(k: i64, stack: &[Family]) -> Option<i64> {
    if stack.is_empty() {
        return Some(k);
    }
    if k < 0 {
        return None;
    }
    let mut total = k;
    for f in stack {
        match f.default {
            Default::Affine(j) if j >= 0 && f.overrides.is_empty() => total += j,
            _ => return None,
        }
    }
    Some(total)
}

/// `⇓p` truncated at the bounds.
pub fn eval_proc(p: &Proc, b: &Bounds) -> Evaluated<Proc> {
    let mut ev = Evaluator::new(b);
    let term = ev.proc(p, b.depth);
    Evaluated { term, fuel_exhausted: ev.exhausted, steps: ev.steps }
}

/// `⇓E` truncated at the bounds.
pub fn eval_expr(e: &Expr, b: &Bounds) -> Evaluated<Expr> {
    let mut ev = Evaluator::new(b);
    let term = ev.expr(e, b.depth);
    Evaluated { term, fuel_exhausted: ev.exhausted, steps: ev.steps }
}

/// `⇓G` for a ground meta-term, read as `case G of (i ⇒ i)`.
pub fn eval_ground(g: &Ground, b: &Bounds) -> Evaluated<Expr> {
    eval_expr(&Expr::case(g.clone(), Family::identity()), b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsp_term::{alpha_eq_proc, parse_proc, proc_to_sexpr, truncate_proc};
    use pcf_lang::SimpleType;

    fn b() -> Bounds {
        Bounds::new(6, 4, 10_000)
    }

    #[test]
    fn empty_redex() {
        let e = Expr::case(Ground::redex(Proc::num(2), vec![]), Family::identity());
        assert_eq!(eval_expr(&e, &b()).term.as_num(), Some(2));
    }

    #[test]
    fn successor_of_three() {
        let suc = parse_proc("(lam (x) (case (app x) (default affine 1)))").unwrap();
        let e = Expr::case(Ground::redex(suc, vec![Proc::num(3)]), Family::identity());
        let r = eval_expr(&e, &b());
        assert_eq!(r.term.as_num(), Some(4));
        assert!(!r.fuel_exhausted);
    }

    #[test]
    fn fixed_point_of_identity_runs_out() {
        let id = parse_proc("(lam (x) (case (app x) (default affine 0)))").unwrap();
        let fix = Proc::fix(SimpleType::base(), Head::Proc(id));
        let r = eval_proc(&fix, &b());
        assert!(r.term.ground_body().unwrap().is_bot());
        assert!(r.fuel_exhausted);
    }

    #[test]
    fn normal_form_is_its_truncation() {
        let p = parse_proc("(lam ((f (-> (-> N N) N))) (case (app f (lam (y) (case (app y) (0 5) (default bot)))) (0 (case (app f (lam (z) 1)) (default affine 0))) (default affine 2)))").unwrap();
        for d in 0..4 {
            let r = eval_proc(&p, &b().with_depth(d)).term;
            let t = truncate_proc(&p, d, 4);
            assert!(alpha_eq_proc(&r, &t, d, 4), "{} vs {}", proc_to_sexpr(&r), proc_to_sexpr(&t));
        }
    }

    #[test]
    fn case_of_case_composes_offsets() {
        let p = parse_proc("(lam ((f (-> N N))) (case (case (app f (lam () 0)) (default affine 1)) (default affine 2)))").unwrap();
        let r = eval_proc(&p, &b()).term;
        assert_eq!(proc_to_sexpr(&r), "(lam ((f0 (-> N N))) (case (app f0 (lam () 0)) (default affine 3)))");
    }
}
