//! Syntactic approximants `Y^(j)` and `C_f^(j)`.

use crate::term::{fresh_name, Kind, Oracle, Term};
use crate::types::SimpleType;

/// `Y[σ]^(j) = \f. f^j(⊥_σ)`.
pub fn y_approximant(sigma: &SimpleType, j: usize) -> Term {
    let f = fresh_name("f");
    let fty = SimpleType::arrow(sigma.clone(), sigma.clone());
    let mut body = Term::bottom_at(sigma);
    for _ in 0..j {
        body = Term::app(Term::var(f.clone(), fty.clone()), body).expect("typed");
    }
    Term::lam(f, fty, body)
}

/// `C_f^(j) = \n. case n of (0 => f(0) | ... | j-1 => f(j-1))`, as nested `ifzero`.
pub fn oracle_approximant(o: &Oracle, j: usize) -> Term {
    let nat = SimpleType::base();
    let n = fresh_name("n");
    let mut body = Term::bottom();
    for i in (0..j as u64).rev() {
        let mut scrut = Term::var(n.clone(), nat.clone());
        for _ in 0..i {
            scrut = Term::app(Term::pre(), scrut).expect("typed");
        }
        let hit = match o.get(i) {
            Some(m) => Term::num(m),
            None => Term::bottom(),
        };
        body = Term::apps(Term::ifzero(), [scrut, hit, body]).expect("typed");
    }
    Term::lam(n, nat, body)
}

/// Replaces every `Y[σ]` by `Y[σ]^(j)` and every oracle by its `j`-bounded table.
pub fn approximate(term: &Term, j: usize) -> Term {
    match term.kind() {
        Kind::Y(s) => y_approximant(s, j),
        Kind::Oracle(o) => oracle_approximant(o, j),
        Kind::Lam(x, ty, b) => Term::lam(x.clone(), ty.clone(), approximate(b, j)),
        Kind::App(f, a) => Term::app(approximate(f, j), approximate(a, j)).expect("typed"),
        _ => term.clone(),
    }
}
