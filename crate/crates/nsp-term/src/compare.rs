//! Bounded α-equivalence and syntactic order. Both compare the
//! `(depth, branch_bound)` truncations: depth counts nested `case` nodes along
//! any path, and only branch indices below the bound are inspected.

use std::collections::HashMap;

use crate::term::{Expr, Ground, Head, Name, Proc};

#[derive(Clone, Copy, PartialEq)]
enum Mode {
    Eq,
    Leq,
}

struct Cmp {
    mode: Mode,
    bb: u64,
    left: HashMap<Name, usize>,
    right: HashMap<Name, usize>,
    next: usize,
}

impl Cmp {
    fn new(mode: Mode, bb: usize) -> Cmp {
        Cmp { mode, bb: bb as u64, left: HashMap::new(), right: HashMap::new(), next: 0 }
    }

    fn proc(&mut self, p: &Proc, q: &Proc, d: usize) -> bool {
        match (p, q) {
            (Proc::Lam(a), Proc::Lam(b)) => {
                if a.params.len() != b.params.len() || a.params.iter().zip(&b.params).any(|(x, y)| x.ty != y.ty) {
                    return false;
                }
                let mut saved = Vec::new();
                for (x, y) in a.params.iter().zip(&b.params) {
                    let lvl = self.next;
                    self.next += 1;
                    saved.push((x.name.clone(), self.left.insert(x.name.clone(), lvl), y.name.clone(), self.right.insert(y.name.clone(), lvl)));
                }
                let ok = self.expr(&a.body, &b.body, d);
                for (xn, xo, yn, yo) in saved.into_iter().rev() {
                    restore(&mut self.left, xn, xo);
                    restore(&mut self.right, yn, yo);
                }
                ok
            }
            (Proc::Fix(a), Proc::Fix(b)) => a.ty == b.ty && self.head(&a.step, &b.step, d),
            _ => false,
        }
    }

    fn head(&mut self, h: &Head, k: &Head, d: usize) -> bool {
        match (h, k) {
            (Head::Var(x), Head::Var(y)) => match (self.left.get(x), self.right.get(y)) {
                (Some(i), Some(j)) => i == j,
                (None, None) => x == y,
                _ => false,
            },
            (Head::Proc(p), Head::Proc(q)) => self.proc(p, q, d),
            _ => false,
        }
    }

    fn ground(&mut self, g: &Ground, h: &Ground, d: usize) -> bool {
        match (g, h) {
            (Ground::Expr(e), Ground::Expr(f)) => self.expr(e, f, d),
            (Ground::App(x, xs), Ground::App(y, ys)) => {
                xs.len() == ys.len() && self.head(x, y, d) && xs.iter().zip(ys).all(|(p, q)| self.proc(p, q, d))
            }
            _ => false,
        }
    }

    fn expr(&mut self, e: &Expr, f: &Expr, d: usize) -> bool {
        let bottomish = |x: &Expr| x.is_bot() || (d == 0 && matches!(x, Expr::Case(_)));
        if bottomish(e) {
            return self.mode == Mode::Leq || bottomish(f);
        }
        match (e, f) {
            (Expr::Num(m), Expr::Num(n)) => m == n,
            (Expr::Case(a), Expr::Case(b)) if d > 0 => {
                if !self.ground(&a.scrut, &b.scrut, d - 1) {
                    return false;
                }
                (0..self.bb).all(|i| self.expr(&a.branches.get(i), &b.branches.get(i), d - 1))
            }
            _ => false,
        }
    }
}

fn restore(m: &mut HashMap<Name, usize>, n: Name, old: Option<usize>) {
    match old {
        Some(v) => m.insert(n, v),
        None => m.remove(&n),
    };
}

pub fn alpha_eq_proc(p: &Proc, q: &Proc, depth: usize, branch_bound: usize) -> bool {
    Cmp::new(Mode::Eq, branch_bound).proc(p, q, depth)
}

pub fn alpha_eq_expr(e: &Expr, f: &Expr, depth: usize, branch_bound: usize) -> bool {
    Cmp::new(Mode::Eq, branch_bound).expr(e, f, depth)
}

/// `trunc(p) ⊑ trunc(q)`: `p` arises from `q` by replacing ground subterms with ⊥.
pub fn syn_leq_proc(p: &Proc, q: &Proc, depth: usize, branch_bound: usize) -> bool {
    Cmp::new(Mode::Leq, branch_bound).proc(p, q, depth)
}

pub fn syn_leq_expr(e: &Expr, f: &Expr, depth: usize, branch_bound: usize) -> bool {
    Cmp::new(Mode::Leq, branch_bound).expr(e, f, depth)
}
