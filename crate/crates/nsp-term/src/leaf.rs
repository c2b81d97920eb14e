//! Substitution for rightward numeral leaves, `t[i ↦ e_i]`.

use std::rc::Rc;

use crate::term::{Case, Default, Expr, Family, Generator, Proc};

pub fn leaf_subst_proc(p: &Proc, fam: &Family) -> Proc {
    match p {
        Proc::Lam(l) => Proc::lam(l.params.clone(), leaf_subst(&l.body, fam)),
        Proc::Fix(_) => panic!("leaf substitution expects a λ-procedure"),
    }
}

/// Replaces each numeral reachable through case branches (never through a
/// scrutinee) by the corresponding member of `fam`.
pub fn leaf_subst(e: &Expr, fam: &Family) -> Expr {
    match e {
        Expr::Bot | Expr::Elided => e.clone(),
        Expr::Num(n) => fam.get(*n),
        Expr::Case(c) => Expr::Case(Rc::new(Case { scrut: c.scrut.clone(), branches: leaf_subst_family(&c.branches, fam) })),
    }
}

pub fn leaf_subst_family(f: &Family, fam: &Family) -> Family {
    let overrides = f.overrides.iter().map(|(i, e)| (*i, leaf_subst(e, fam))).collect();
    let default = match &f.default {
        Default::Bot => Default::Bot,
        Default::Elided => Default::Elided,
        Default::Affine(k) => Default::Shift(*k, Rc::new(fam.clone())),
        Default::Const(e) => Default::Const(leaf_subst(e, fam)),
        Default::Shift(k, g) => Default::Shift(*k, Rc::new(leaf_subst_family(g, fam))),
        Default::Gen(g) => {
            let inner = g.f.clone();
            let fam = fam.clone();
            Default::Gen(Generator { label: g.label.clone(), f: Rc::new(move |i| leaf_subst(&inner(i), &fam)) })
        }
    };
    Family { overrides, default }
}

/// The family `i ↦ g(f(i))` on numeral families (composition for leaf substitution).
pub fn compose_families(f: &Family, g: &Family) -> Family {
    leaf_subst_family(f, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::alpha_eq_expr;
    use crate::term::Name;

    #[test]
    fn numeral_clause() {
        let f = Family::affine(2);
        assert_eq!(leaf_subst(&Expr::Num(3), &f).as_num(), Some(5));
    }

    #[test]
    fn case_clause() {
        let a = Name::new("a");
        let t = Expr::case_app(a.clone(), vec![], Family::identity());
        let d = Expr::Num(7);
        let e = Expr::case_app(Name::new("b"), vec![], Family::identity());
        let fam = Family::constant(e.clone()).with(0, d.clone());
        let got = leaf_subst(&t, &fam);
        let want = Expr::case_app(a, vec![], Family::constant(e).with(0, d));
        assert!(alpha_eq_expr(&got, &want, 5, 6));
    }

    #[test]
    fn scrutinee_leaves_untouched() {
        let inner = Expr::case_of(Expr::Num(1), Family::identity());
        let got = leaf_subst(&inner, &Family::affine(10));
        match got {
            Expr::Case(c) => assert!(matches!(&c.scrut, crate::term::Ground::Expr(Expr::Num(1)))),
            _ => panic!(),
        }
    }
}
