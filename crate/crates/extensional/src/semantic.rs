//! A direct interpreter for finite procedures, much cheaper than bounded
//! evaluation when only base-type results are wanted.
//!
//! A procedure denotes a function from argument meanings to an optional
//! numeral. Evaluation is lazy in arguments, as in the tree model, and a step
//! budget guards against fixed points slipping in.

use std::cell::Cell;
use std::rc::Rc;

use nsp_eval::unfold;
use nsp_term::{Expr, Ground, Head, Name, Proc};

/// Meaning of a procedure: argument meanings to a numeral, `None` for ⊥.
#[derive(Clone)]
pub struct Sem(Rc<dyn Fn(&[Sem]) -> Option<u64>>);

impl Sem {
    pub fn call(&self, args: &[Sem]) -> Option<u64> {
        (self.0)(args)
    }

    pub fn constant(v: Option<u64>) -> Sem {
        Sem(Rc::new(move |_| v))
    }
}

#[derive(Clone)]
enum Env {
    Nil,
    Cons(Name, Sem, Rc<Env>),
}

impl Env {
    fn lookup(&self, x: &Name) -> Option<Sem> {
        let mut e = self;
        loop {
            match e {
                Env::Nil => return None,
                Env::Cons(n, s, rest) => {
                    if n == x {
                        return Some(s.clone());
                    }
                    e = rest;
                }
            }
        }
    }
}

/// Shared step budget for one batch of evaluations.
pub struct Interp {
    fuel: Cell<u64>,
    exhausted: Cell<bool>,
}

impl Interp {
    pub fn new(fuel: u64) -> Rc<Interp> {
        Rc::new(Interp { fuel: Cell::new(fuel), exhausted: Cell::new(false) })
    }

    pub fn exhausted(&self) -> bool {
        self.exhausted.get()
    }

    fn tick(&self) -> bool {
        let f = self.fuel.get();
        if f == 0 {
            self.exhausted.set(true);
            return false;
        }
        self.fuel.set(f - 1);
        true
    }

    /// Meaning of a closed procedure. Free variables read as ⊥.
    pub fn proc(self: &Rc<Interp>, p: &Proc) -> Sem {
        self.proc_in(p, &Rc::new(Env::Nil))
    }

    /// `p·q⃗` for closed `p` and `q⃗`.
    pub fn apply(self: &Rc<Interp>, p: &Proc, args: &[Proc]) -> Option<u64> {
        let sems: Vec<Sem> = args.iter().map(|a| self.proc(a)).collect();
        self.proc(p).call(&sems)
    }

    fn proc_in(self: &Rc<Interp>, p: &Proc, env: &Rc<Env>) -> Sem {
        let (params, body) = match p {
            Proc::Lam(l) => (l.params.clone(), l.body.clone()),
            Proc::Fix(f) => {
                let l = unfold(f);
                (l.params, l.body)
            }
        };
        let me = self.clone();
        let env = env.clone();
        Sem(Rc::new(move |args: &[Sem]| {
            let mut e = env.clone();
            for (b, a) in params.iter().zip(args) {
                e = Rc::new(Env::Cons(b.name.clone(), a.clone(), e));
            }
            me.expr(&body, &e)
        }))
    }

    fn expr(self: &Rc<Interp>, e: &Expr, env: &Rc<Env>) -> Option<u64> {
        if !self.tick() {
            return None;
        }
        match e {
            Expr::Num(n) => Some(*n),
            Expr::Bot | Expr::Elided => None,
            Expr::Case(c) => {
                let i = match &c.scrut {
                    Ground::Expr(s) => self.expr(s, env)?,
                    Ground::App(h, args) => {
                        let f = match h {
                            Head::Var(x) => env.lookup(x)?,
                            Head::Proc(p) => self.proc_in(p, env),
                        };
                        let sems: Vec<Sem> = args.iter().map(|a| self.proc_in(a, env)).collect();
                        f.call(&sems)?
                    }
                };
                self.expr(&c.branches.get(i), env)
            }
        }
    }
}

/// `⊥` at every type.
pub fn bottom() -> Sem {
    Sem::constant(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsp_term::parse_proc;

    #[test]
    fn table_lookup() {
        let it = Interp::new(1000);
        let p = parse_proc("(lam (x) (case (app x) (0 5) (1 (case (app x) (default affine 1))) (default bot)))").unwrap();
        assert_eq!(it.apply(&p, &[Proc::num(0)]), Some(5));
        assert_eq!(it.apply(&p, &[Proc::num(1)]), Some(2));
        assert_eq!(it.apply(&p, &[Proc::num(2)]), None);
    }

    #[test]
    fn higher_order_laziness() {
        let it = Interp::new(1000);
        let f = parse_proc("(lam ((g (-> N N))) (case (app g (lam () bot)) (default affine 0)))").unwrap();
        let g = parse_proc("(lam (y) 7)").unwrap();
        assert_eq!(it.apply(&f, &[g]), Some(7));
    }
}
