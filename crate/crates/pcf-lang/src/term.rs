//! Typed PCF terms with oracle constants and `byval`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::types::SimpleType;
use crate::PcfError;

/// A partial function `N -> N` given by a finite table.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Oracle {
    pub name: String,
    pub table: BTreeMap<u64, u64>,
}

impl Oracle {
    pub fn new(name: impl Into<String>, table: BTreeMap<u64, u64>) -> Oracle {
        Oracle { name: name.into(), table }
    }

    pub fn get(&self, n: u64) -> Option<u64> {
        self.table.get(&n).copied()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Term(Rc<Node>);

#[derive(PartialEq, Eq)]
struct Node {
    kind: Kind,
    ty: SimpleType,
}

#[derive(Clone, PartialEq, Eq)]
pub enum Kind {
    Var(String),
    Lam(String, SimpleType, Term),
    App(Term, Term),
    Num(u64),
    Suc,
    Pre,
    Ifzero,
    Y(SimpleType),
    Oracle(Rc<Oracle>),
    Byval,
}

static FRESH: AtomicU64 = AtomicU64::new(1);

/// A binder name not producible by the parser.
pub fn fresh_name(base: &str) -> String {
    let stem = base.split('%').next().unwrap_or(base);
    format!("{stem}%{}", FRESH.fetch_add(1, Ordering::Relaxed))
}

fn nat() -> SimpleType {
    SimpleType::base()
}

fn nat_nat() -> SimpleType {
    SimpleType::pure(1)
}

impl Term {
    fn mk(kind: Kind, ty: SimpleType) -> Term {
        Term(Rc::new(Node { kind, ty }))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn ty(&self) -> &SimpleType {
        &self.0.ty
    }

    pub fn var(name: impl Into<String>, ty: SimpleType) -> Term {
        Term::mk(Kind::Var(name.into()), ty)
    }

    pub fn lam(name: impl Into<String>, ty: SimpleType, body: Term) -> Term {
        let t = SimpleType::arrow(ty.clone(), body.ty().clone());
        Term::mk(Kind::Lam(name.into(), ty, body), t)
    }

    pub fn app(f: Term, a: Term) -> Result<Term, PcfError> {
        match f.ty().split() {
            Some((dom, cod)) if dom == a.ty() => {
                let cod = cod.clone();
                Ok(Term::mk(Kind::App(f, a), cod))
            }
            Some((dom, _)) => Err(PcfError::Type {
                span: None,
                msg: format!("argument has type {} but function expects {}", a.ty(), dom),
            }),
            None => Err(PcfError::Type {
                span: None,
                msg: format!("cannot apply a term of type {}", f.ty()),
            }),
        }
    }

    /// Applies `f` to each argument in turn.
    pub fn apps(f: Term, args: impl IntoIterator<Item = Term>) -> Result<Term, PcfError> {
        args.into_iter().try_fold(f, Term::app)
    }

    pub fn num(n: u64) -> Term {
        Term::mk(Kind::Num(n), nat())
    }

    pub fn suc() -> Term {
        Term::mk(Kind::Suc, nat_nat())
    }

    pub fn pre() -> Term {
        Term::mk(Kind::Pre, nat_nat())
    }

    /// `ifzero : N -> N -> N -> N`.
    pub fn ifzero() -> Term {
        Term::mk(Kind::Ifzero, SimpleType::from_args(vec![nat(), nat(), nat()]))
    }

    /// `Y[σ] : (σ -> σ) -> σ`.
    pub fn y(sigma: SimpleType) -> Term {
        let t = SimpleType::arrow(SimpleType::arrow(sigma.clone(), sigma.clone()), sigma.clone());
        Term::mk(Kind::Y(sigma), t)
    }

    pub fn oracle(o: Oracle) -> Term {
        Term::mk(Kind::Oracle(Rc::new(o)), nat_nat())
    }

    /// `byval : (N -> N) -> N -> N`.
    pub fn byval() -> Term {
        Term::mk(Kind::Byval, SimpleType::from_args(vec![nat_nat(), nat()]))
    }

    /// The divergent numeral program `Y[N] (\x:N. x)`.
    pub fn bottom() -> Term {
        let x = fresh_name("x");
        Term::app(Term::y(nat()), Term::lam(x.clone(), nat(), Term::var(x, nat()))).unwrap()
    }

    /// `\x⃗. ⊥` at type `σ`.
    pub fn bottom_at(sigma: &SimpleType) -> Term {
        let mut body = Term::bottom();
        for a in sigma.args().into_iter().rev() {
            body = Term::lam(fresh_name("u"), a, body);
        }
        body
    }

    pub fn is_value(&self) -> bool {
        matches!(self.kind(), Kind::Num(_) | Kind::Lam(..))
    }

    pub fn as_num(&self) -> Option<u64> {
        match self.kind() {
            Kind::Num(n) => Some(*n),
            _ => None,
        }
    }

    /// Splits an application spine into head and arguments.
    pub fn spine(&self) -> (Term, Vec<Term>) {
        let mut args = Vec::new();
        let mut t = self.clone();
        while let Kind::App(f, a) = t.kind().clone() {
            args.push(a);
            t = f;
        }
        args.reverse();
        (t, args)
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut BTreeSet<String>) {
        match self.kind() {
            Kind::Var(x) => {
                if !bound.contains(x) {
                    out.insert(x.clone());
                }
            }
            Kind::Lam(x, _, b) => {
                bound.push(x.clone());
                b.collect_free(bound, out);
                bound.pop();
            }
            Kind::App(f, a) => {
                f.collect_free(bound, out);
                a.collect_free(bound, out);
            }
            _ => {}
        }
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Capture-avoiding `self[x := n]`. Binders of every inserted copy of `n` are
    /// renamed, so no binder is repeated along a path.
    pub fn subst(&self, x: &str, n: &Term) -> Term {
        let fv = n.free_vars();
        self.subst_inner(x, n, &fv)
    }

    fn subst_inner(&self, x: &str, n: &Term, fv: &BTreeSet<String>) -> Term {
        match self.kind() {
            Kind::Var(y) if y == x => n.freshen_binders(),
            Kind::Var(_) => self.clone(),
            Kind::Lam(y, _, _) if y == x => self.clone(),
            Kind::Lam(y, ty, b) => {
                if fv.contains(y) {
                    let y2 = fresh_name(y);
                    let b2 = b.rename_free(y, &y2);
                    Term::lam(y2, ty.clone(), b2.subst_inner(x, n, fv))
                } else {
                    Term::lam(y.clone(), ty.clone(), b.subst_inner(x, n, fv))
                }
            }
            Kind::App(f, a) => Term::mk(
                Kind::App(f.subst_inner(x, n, fv), a.subst_inner(x, n, fv)),
                self.ty().clone(),
            ),
            _ => self.clone(),
        }
    }

    fn rename_free(&self, from: &str, to: &str) -> Term {
        self.subst(from, &Term::var(to, self.type_of_free(from).unwrap_or_else(nat)))
    }

    fn type_of_free(&self, x: &str) -> Option<SimpleType> {
        match self.kind() {
            Kind::Var(y) if y == x => Some(self.ty().clone()),
            Kind::Lam(y, _, _) if y == x => None,
            Kind::Lam(_, _, b) => b.type_of_free(x),
            Kind::App(f, a) => f.type_of_free(x).or_else(|| a.type_of_free(x)),
            _ => None,
        }
    }

    /// Renames every binder to a fresh name.
    pub fn freshen_binders(&self) -> Term {
        if !self.has_binders() {
            return self.clone();
        }
        self.freshen(&mut Vec::new())
    }

    fn has_binders(&self) -> bool {
        match self.kind() {
            Kind::Lam(..) => true,
            Kind::App(f, a) => f.has_binders() || a.has_binders(),
            _ => false,
        }
    }

    fn freshen(&self, env: &mut Vec<(String, String)>) -> Term {
        match self.kind() {
            Kind::Var(y) => match env.iter().rev().find(|(a, _)| a == y) {
                Some((_, b)) => Term::var(b.clone(), self.ty().clone()),
                None => self.clone(),
            },
            Kind::Lam(y, ty, b) => {
                let y2 = fresh_name(y);
                env.push((y.clone(), y2.clone()));
                let b2 = b.freshen(env);
                env.pop();
                Term::lam(y2, ty.clone(), b2)
            }
            Kind::App(f, a) => Term::mk(Kind::App(f.freshen(env), a.freshen(env)), self.ty().clone()),
            _ => self.clone(),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self.kind() {
            Kind::Lam(_, _, b) => 1 + b.size(),
            Kind::App(f, a) => 1 + f.size() + a.size(),
            _ => 1,
        }
    }

    /// True iff no binder name repeats along any root-to-leaf path.
    pub fn no_hiding(&self) -> bool {
        fn go(t: &Term, path: &mut Vec<String>) -> bool {
            match t.kind() {
                Kind::Lam(x, _, b) => {
                    if path.contains(x) {
                        return false;
                    }
                    path.push(x.clone());
                    let ok = go(b, path);
                    path.pop();
                    ok
                }
                Kind::App(f, a) => go(f, path) && go(a, path),
                _ => true,
            }
        }
        go(self, &mut Vec::new())
    }

    /// Re-checks every node's type annotation against its children.
    pub fn well_typed(&self) -> bool {
        match self.kind() {
            Kind::Lam(_, ty, b) => {
                b.well_typed() && *self.ty() == SimpleType::arrow(ty.clone(), b.ty().clone())
            }
            Kind::App(f, a) => {
                f.well_typed()
                    && a.well_typed()
                    && matches!(f.ty().split(), Some((d, c)) if d == a.ty() && c == self.ty())
            }
            _ => true,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Var(x) => write!(f, "{x}"),
            Kind::Lam(x, ty, b) => write!(f, "\\{x}:{ty}. {b}"),
            Kind::App(..) => {
                let (h, args) = self.spine();
                fmt_atom(&h, f)?;
                for a in args {
                    write!(f, " ")?;
                    fmt_atom(&a, f)?;
                }
                Ok(())
            }
            Kind::Num(n) => write!(f, "{n}"),
            Kind::Suc => write!(f, "suc"),
            Kind::Pre => write!(f, "pre"),
            Kind::Ifzero => write!(f, "ifzero"),
            Kind::Y(s) => write!(f, "Y[{s}]"),
            Kind::Oracle(o) => write!(f, "oracle {}", o.name),
            Kind::Byval => write!(f, "byval"),
        }
    }
}

fn fmt_atom(t: &Term, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match t.kind() {
        Kind::Lam(..) | Kind::App(..) | Kind::Oracle(_) => write!(f, "({t})"),
        _ => write!(f, "{t}"),
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} : {}", self.ty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn app_checks_types() {
        assert!(Term::app(Term::suc(), Term::num(1)).is_ok());
        assert!(Term::app(Term::num(1), Term::num(1)).is_err());
        assert!(Term::app(Term::byval(), Term::num(1)).is_err());
    }

    #[test]
    fn subst_avoids_capture() {
        let n = nat();
        // (\y. x) [x := y]  must not capture y
        let t = Term::lam("y", n.clone(), Term::var("x", n.clone()));
        let r = t.subst("x", &Term::var("y", n.clone()));
        match r.kind() {
            Kind::Lam(b, _, body) => {
                assert_ne!(b, "y");
                assert_eq!(body.free_vars().into_iter().collect::<Vec<_>>(), vec!["y".to_string()]);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn subst_keeps_no_hiding() {
        let n = nat();
        let id = Term::lam("y", n.clone(), Term::var("y", n.clone()));
        let body = Term::lam("y", n.clone(), Term::var("f", SimpleType::pure(1)));
        let f_id = body.subst("f", &id);
        assert!(f_id.no_hiding());
    }
}
