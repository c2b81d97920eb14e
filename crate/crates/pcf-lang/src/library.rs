//! Standard PCF programs: retractions, the level-lowering fixed point `Z`, and `Φ`.

use crate::term::{fresh_name, Term};
use crate::types::SimpleType;

fn ty(k: usize) -> SimpleType {
    SimpleType::pure(k)
}

/// The retraction pair `(up_k : k -> k+1, down_k : k+1 -> k)`.
pub fn retraction_combinators(k: usize) -> (Term, Term) {
    (up(k), down(k))
}

pub fn up(k: usize) -> Term {
    let x = fresh_name("x");
    let z = fresh_name("z");
    if k == 0 {
        return Term::lam(x.clone(), ty(0), Term::lam(z, ty(0), Term::var(x, ty(0))));
    }
    let body = Term::app(Term::var(x.clone(), ty(k)), Term::app(down(k - 1), Term::var(z.clone(), ty(k))).unwrap()).unwrap();
    Term::lam(x, ty(k), Term::lam(z, ty(k), body))
}

pub fn down(k: usize) -> Term {
    let y = fresh_name("y");
    if k == 0 {
        return Term::lam(y.clone(), ty(1), Term::app(Term::var(y, ty(1)), Term::num(0)).unwrap());
    }
    let w = fresh_name("w");
    let body = Term::app(Term::var(y.clone(), ty(k + 1)), Term::app(up(k - 1), Term::var(w.clone(), ty(k - 1))).unwrap()).unwrap();
    Term::lam(y, ty(k + 1), Term::lam(w, ty(k - 1), body))
}

/// `Z_{k+1} = \g. up_k (Y_k (down_k ∘ g ∘ up_k))` with `g : (k+1) -> (k+1)`.
pub fn z_updown(k: usize) -> Term {
    let gty = SimpleType::arrow(ty(k + 1), ty(k + 1));
    let g = fresh_name("g");
    let w = fresh_name("w");
    let inner = Term::app(
        down(k),
        Term::app(Term::var(g.clone(), gty.clone()), Term::app(up(k), Term::var(w.clone(), ty(k))).unwrap()).unwrap(),
    )
    .unwrap();
    let comp = Term::lam(w, ty(k), inner);
    let fix = Term::app(Term::y(ty(k)), comp).unwrap();
    Term::lam(g, gty, Term::app(up(k), fix).unwrap())
}

/// `Φ_{k+1} = \g. Y[N->(k+1)] (\f. \n. g n (f (suc n)))` with `g : N -> (k+1) -> (k+1)`.
pub fn phi(k: usize) -> Term {
    let t = ty(k + 1);
    let nat = SimpleType::base();
    let fty = SimpleType::arrow(nat.clone(), t.clone());
    let gty = SimpleType::from_args(vec![nat.clone(), t.clone(), ty(k)]);
    let (g, f, n) = (fresh_name("g"), fresh_name("f"), fresh_name("n"));
    let body = Term::apps(
        Term::var(g.clone(), gty.clone()),
        [
            Term::var(n.clone(), nat.clone()),
            Term::app(Term::var(f.clone(), fty.clone()), Term::app(Term::suc(), Term::var(n.clone(), nat.clone())).unwrap())
                .unwrap(),
        ],
    )
    .unwrap();
    let step = Term::lam(f, fty.clone(), Term::lam(n, nat, body));
    Term::lam(g, gty, Term::app(Term::y(fty), step).unwrap())
}

/// `\x y. Y[N->N->N] (...) x y`, addition by recursion on the first argument.
pub fn add() -> Term {
    crate::parse::parse_pcf("Y[N->N->N] (\\a:N->N->N. \\x:N. \\y:N. ifzero x y (suc (a (pre x) y)))").unwrap()
}

/// Multiplication by repeated addition.
pub fn mul() -> Term {
    let src = format!("Y[N->N->N] (\\m:N->N->N. \\x:N. \\y:N. ifzero x 0 (({}) y (m (pre x) y)))", add());
    crate::parse::parse_pcf(&src).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::step::{run, RunResult};

    #[test]
    fn retraction_types() {
        for k in 0..4 {
            let (u, d) = retraction_combinators(k);
            assert_eq!(*u.ty(), SimpleType::arrow(ty(k), ty(k + 1)));
            assert_eq!(*d.ty(), SimpleType::arrow(ty(k + 1), ty(k)));
        }
    }

    #[test]
    fn down_up_zero() {
        let t = Term::app(down(0), Term::app(up(0), Term::num(7)).unwrap()).unwrap();
        assert_eq!(run(&t, 100).unwrap(), RunResult::Value(7));
    }

    #[test]
    fn z_and_phi_typecheck() {
        for k in 0..3 {
            let z = z_updown(k);
            let g = SimpleType::arrow(ty(k + 1), ty(k + 1));
            assert_eq!(*z.ty(), SimpleType::arrow(g.clone(), ty(k + 1)));
            assert!(z.well_typed());
            assert!(phi(k).well_typed());
        }
    }

    #[test]
    fn arithmetic() {
        let t = Term::apps(mul(), [Term::num(3), Term::num(4)]).unwrap();
        assert_eq!(run(&t, 1_000_000).unwrap(), RunResult::Value(12));
    }
}
