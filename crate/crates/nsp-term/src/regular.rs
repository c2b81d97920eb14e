//! Typing, no-hiding and regularity checks.

use std::collections::HashMap;

use pcf_lang::{SimpleType, Sublevel};

use crate::term::{Default, Expr, Family, Ground, Head, Name, Proc};

/// Level cap used by regularity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cap {
    Level(usize),
    Sublevel(usize, usize),
}

impl Cap {
    pub fn admits(&self, t: &SimpleType) -> bool {
        match *self {
            Cap::Level(k) => t.level() <= k,
            Cap::Sublevel(k, l) => t.sublevel() <= Sublevel { level: k, width: l } || t.level() == 0,
        }
    }
}

/// Calls `f` on every binder of `p` (including those a `Fix` node binds on unfolding),
/// exploring families up to `bb` branches.
pub fn for_each_binder(p: &Proc, bb: usize, f: &mut dyn FnMut(&Name, &SimpleType)) {
    match p {
        Proc::Lam(l) => {
            for b in &l.params {
                f(&b.name, &b.ty);
            }
            binders_expr(&l.body, bb, f);
        }
        Proc::Fix(fx) => {
            for (i, t) in fx.ty.args().iter().enumerate() {
                f(&Name::new(&format!("#fix{i}")), t);
            }
            if let Head::Proc(q) = &fx.step {
                for_each_binder(q, bb, f);
            }
        }
    }
}

fn binders_expr(e: &Expr, bb: usize, f: &mut dyn FnMut(&Name, &SimpleType)) {
    if let Expr::Case(c) = e {
        match &c.scrut {
            Ground::Expr(e) => binders_expr(e, bb, f),
            Ground::App(h, args) => {
                if let Head::Proc(p) = h {
                    for_each_binder(p, bb, f);
                }
                for a in args {
                    for_each_binder(a, bb, f);
                }
            }
        }
        for i in 0..bb as u64 {
            binders_expr(&c.branches.get(i), bb, f);
        }
    }
}

/// True iff every variable of `p` other than the free `g` fits the cap.
/// `env` gives the types of the free variables.
pub fn check_regular(p: &Proc, env: &[(Name, SimpleType)], g: &Name, cap: Cap, bb: usize) -> bool {
    if env.iter().any(|(n, t)| n != g && !cap.admits(t)) {
        return false;
    }
    let mut ok = true;
    for_each_binder(p, bb, &mut |_, t| {
        if !cap.admits(t) {
            ok = false
        }
    });
    ok
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TypingError {
    #[error("unbound variable {0}")]
    Unbound(String),
    #[error("variable {0} applied to {1} arguments but has type {2}")]
    Arity(String, usize, String),
    #[error("argument {1} of {0} has type {2}, expected {3}")]
    ArgType(String, usize, String, String),
    #[error("binder {0} hides an enclosing variable")]
    Hiding(String),
}

/// Checks typing and the no-hiding condition, exploring families up to `bb` branches.
pub fn typecheck_proc(p: &Proc, env: &[(Name, SimpleType)], bb: usize) -> Result<(), TypingError> {
    let mut scope: HashMap<Name, SimpleType> = env.iter().cloned().collect();
    tc_proc(p, &mut scope, bb)
}

fn tc_proc(p: &Proc, scope: &mut HashMap<Name, SimpleType>, bb: usize) -> Result<(), TypingError> {
    match p {
        Proc::Lam(l) => {
            for b in &l.params {
                if scope.contains_key(&b.name) {
                    return Err(TypingError::Hiding(b.name.to_string()));
                }
            }
            for b in &l.params {
                scope.insert(b.name.clone(), b.ty.clone());
            }
            let r = tc_expr(&l.body, scope, bb);
            for b in &l.params {
                scope.remove(&b.name);
            }
            r
        }
        Proc::Fix(fx) => {
            let want = SimpleType::arrow(fx.ty.clone(), fx.ty.clone());
            let got = head_type(&fx.step, scope, bb)?;
            if got != want {
                return Err(TypingError::ArgType("fix".into(), 0, got.to_string(), want.to_string()));
            }
            Ok(())
        }
    }
}

fn head_type(h: &Head, scope: &mut HashMap<Name, SimpleType>, bb: usize) -> Result<SimpleType, TypingError> {
    match h {
        Head::Var(x) => scope.get(x).cloned().ok_or_else(|| TypingError::Unbound(x.to_string())),
        Head::Proc(p) => {
            tc_proc(p, scope, bb)?;
            Ok(p.ty())
        }
    }
}

fn tc_expr(e: &Expr, scope: &mut HashMap<Name, SimpleType>, bb: usize) -> Result<(), TypingError> {
    let Expr::Case(c) = e else { return Ok(()) };
    match &c.scrut {
        Ground::Expr(e) => tc_expr(e, scope, bb)?,
        Ground::App(h, args) => {
            let ht = head_type(h, scope, bb)?;
            let name = match h {
                Head::Var(x) => x.to_string(),
                Head::Proc(_) => "redex".into(),
            };
            let want = ht.args();
            if want.len() != args.len() {
                return Err(TypingError::Arity(name, args.len(), ht.to_string()));
            }
            for (i, (a, t)) in args.iter().zip(&want).enumerate() {
                tc_proc(a, scope, bb)?;
                if a.ty() != *t {
                    return Err(TypingError::ArgType(name, i, a.ty().to_string(), t.to_string()));
                }
            }
        }
    }
    tc_family(&c.branches, scope, bb)
}

fn tc_family(f: &Family, scope: &mut HashMap<Name, SimpleType>, bb: usize) -> Result<(), TypingError> {
    for i in 0..bb as u64 {
        tc_expr(&f.get(i), scope, bb)?;
    }
    if let Default::Const(e) = &f.default {
        tc_expr(e, scope, bb)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::eta_expand;
    use crate::term::Binder;

    #[test]
    fn eta_typechecks() {
        let x = Name::new("x");
        let t = SimpleType::pure(3);
        let p = eta_expand(&x, &t);
        assert_eq!(typecheck_proc(&p, &[(x, t)], 3), Ok(()));
    }

    #[test]
    fn unbound_and_arity() {
        let x = Name::new("x");
        let p = Proc::lam(vec![], Expr::case_app(x.clone(), vec![], Family::identity()));
        assert!(matches!(typecheck_proc(&p, &[], 2), Err(TypingError::Unbound(_))));
        assert!(matches!(typecheck_proc(&p, &[(x, SimpleType::pure(1))], 2), Err(TypingError::Arity(..))));
    }

    #[test]
    fn hiding_detected() {
        let x = Name::new("x");
        let inner = Proc::lam(vec![Binder::new(x.clone(), SimpleType::base())], Expr::Bot);
        let p = Proc::lam(
            vec![Binder::new(x.clone(), SimpleType::pure(2))],
            Expr::case_app(x.clone(), vec![inner], Family::identity()),
        );
        assert!(matches!(typecheck_proc(&p, &[], 2), Err(TypingError::Hiding(_))));
    }

    #[test]
    fn regularity() {
        let g = Name::new("g");
        let t2 = SimpleType::pure(2);
        let gt = SimpleType::arrow(t2.clone(), t2.clone());
        let p = eta_expand(&g, &gt);
        assert!(!check_regular(&p, &[(g.clone(), gt.clone())], &g, Cap::Level(1), 2));
        assert!(check_regular(&p, &[(g.clone(), gt)], &g, Cap::Level(2), 2));
    }
}
