//! Hereditary η-expansion.

use pcf_lang::SimpleType;

use crate::term::{Binder, Expr, Family, Name, Proc};

/// `x^η = λz⃗. case x z⃗^η of (i ⇒ i)`.
pub fn eta_expand(x: &Name, ty: &SimpleType) -> Proc {
    let params: Vec<Binder> = ty.args().into_iter().map(|t| Binder::fresh(hint_for(&t), t)).collect();
    let args = params.iter().map(|b| eta_expand(&b.name, &b.ty)).collect();
    Proc::lam(params, Expr::case_app(x.clone(), args, Family::identity()))
}

fn hint_for(t: &SimpleType) -> &'static str {
    match t.level() {
        0 => "n",
        1 => "f",
        2 => "F",
        _ => "H",
    }
}

/// True iff `p` is syntactically `x^η` up to renaming of its own binders.
pub fn is_eta_of(p: &Proc, x: &Name) -> bool {
    let Some(l) = p.as_lam() else { return false };
    let Expr::Case(c) = &l.body else { return false };
    if !c.branches.is_identity() {
        return false;
    }
    match &c.scrut {
        crate::term::Ground::App(crate::term::Head::Var(h), args) => {
            h == x && args.len() == l.params.len() && args.iter().zip(&l.params).all(|(a, b)| is_eta_of(a, &b.name))
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::{Ground, Head};

    #[test]
    fn ground_eta() {
        let x = Name::new("x");
        let p = eta_expand(&x, &SimpleType::base());
        let l = p.as_lam().unwrap();
        assert!(l.params.is_empty());
        let c = l.body.as_case().unwrap();
        assert!(c.branches.is_identity());
        assert!(matches!(&c.scrut, Ground::App(Head::Var(h), a) if *h == x && a.is_empty()));
    }

    #[test]
    fn first_order_eta() {
        let x = Name::new("x");
        let p = eta_expand(&x, &SimpleType::pure(1));
        assert_eq!(p.ty(), SimpleType::pure(1));
        assert!(is_eta_of(&p, &x));
        assert!(!is_eta_of(&p, &Name::new("y")));
        assert!(!is_eta_of(&Proc::bot(&SimpleType::pure(1)), &x));
    }
}
