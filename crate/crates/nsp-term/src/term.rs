//! Procedures, expressions and applications. The same syntax carries meta-terms:
//! a normal form is a term with no redex heads, no `Fix` nodes and no
//! expression in scrutinee position.

use std::collections::BTreeMap;
use std::fmt;
use std::rc::Rc;
use std::sync::atomic::{AtomicU64, Ordering};

use pcf_lang::SimpleType;

/// A variable name. User-supplied names have id 0; generated names have a unique id.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Name {
    hint: Rc<str>,
    id: u64,
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

impl Name {
    pub fn new(s: &str) -> Name {
        Name { hint: Rc::from(s), id: 0 }
    }

    pub fn fresh(hint: &str) -> Name {
        Name { hint: Rc::from(hint), id: NEXT_ID.fetch_add(1, Ordering::Relaxed) }
    }

    /// A fresh name with the same hint.
    pub fn refresh(&self) -> Name {
        Name { hint: self.hint.clone(), id: NEXT_ID.fetch_add(1, Ordering::Relaxed) }
    }

    pub fn hint(&self) -> &str {
        &self.hint
    }

    pub fn is_user(&self) -> bool {
        self.id == 0
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.id == 0 {
            write!(f, "{}", self.hint)
        } else {
            write!(f, "{}_{}", self.hint, self.id)
        }
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binder {
    pub name: Name,
    pub ty: SimpleType,
}

impl Binder {
    pub fn new(name: Name, ty: SimpleType) -> Binder {
        Binder { name, ty }
    }

    pub fn fresh(hint: &str, ty: SimpleType) -> Binder {
        Binder { name: Name::fresh(hint), ty }
    }
}

/// `λx⃗.E`, or the corecursive procedure `F_σ[h] = λx⃗. case h (F_σ[h]) x⃗^η of (i ⇒ i)`.
#[derive(Clone)]
pub enum Proc {
    Lam(Rc<Lam>),
    Fix(Rc<Fix>),
}

pub struct Lam {
    pub params: Vec<Binder>,
    pub body: Expr,
}

pub struct Fix {
    pub ty: SimpleType,
    pub step: Head,
}

#[derive(Clone)]
pub enum Expr {
    Bot,
    /// Cut off by a depth or branch bound; denotes ⊥.
    Elided,
    Num(u64),
    Case(Rc<Case>),
}

pub struct Case {
    pub scrut: Ground,
    pub branches: Family,
}

#[derive(Clone)]
pub enum Ground {
    Expr(Expr),
    App(Head, Vec<Proc>),
}

#[derive(Clone)]
pub enum Head {
    Var(Name),
    /// A redex head; with no arguments this is the `P()` form.
    Proc(Proc),
}

/// Branches `i ⇒ e_i`: explicit overrides first, then the default rule.
#[derive(Clone)]
pub struct Family {
    pub overrides: BTreeMap<u64, Expr>,
    pub default: Default,
}

#[derive(Clone)]
pub enum Default {
    Bot,
    Elided,
    /// `i ⇒ i + k` (⊥ when negative).
    Affine(i64),
    /// `i ⇒ E` for every `i`.
    Const(Expr),
    /// `i ⇒ F(i + k)` (⊥ when negative).
    Shift(i64, Rc<Family>),
    Gen(Generator),
}

/// An on-demand producer of branches.
#[derive(Clone)]
pub struct Generator {
    pub label: Rc<str>,
    pub f: Rc<dyn Fn(u64) -> Expr>,
}

impl Generator {
    pub fn new(label: &str, f: impl Fn(u64) -> Expr + 'static) -> Generator {
        Generator { label: Rc::from(label), f: Rc::new(f) }
    }
}

fn offset(i: u64, k: i64) -> Option<u64> {
    let v = i as i128 + k as i128;
    if v < 0 || v > u64::MAX as i128 {
        None
    } else {
        Some(v as u64)
    }
}

impl Family {
    pub fn new(overrides: BTreeMap<u64, Expr>, default: Default) -> Family {
        Family { overrides, default }
    }

    pub fn bot() -> Family {
        Family::new(BTreeMap::new(), Default::Bot)
    }

    /// `i ⇒ i`.
    pub fn identity() -> Family {
        Family::affine(0)
    }

    pub fn affine(k: i64) -> Family {
        Family::new(BTreeMap::new(), Default::Affine(k))
    }

    pub fn constant(e: Expr) -> Family {
        Family::new(BTreeMap::new(), Default::Const(e))
    }

    pub fn generator(label: &str, f: impl Fn(u64) -> Expr + 'static) -> Family {
        Family::new(BTreeMap::new(), Default::Gen(Generator::new(label, f)))
    }

    /// Finitely many branches, the rest ⊥.
    pub fn table(entries: impl IntoIterator<Item = (u64, Expr)>) -> Family {
        Family::new(entries.into_iter().collect(), Default::Bot)
    }

    pub fn with(mut self, i: u64, e: Expr) -> Family {
        self.overrides.insert(i, e);
        self
    }

    pub fn get(&self, i: u64) -> Expr {
        if let Some(e) = self.overrides.get(&i) {
            return e.clone();
        }
        self.default.get(i)
    }

    pub fn is_identity(&self) -> bool {
        self.overrides.iter().all(|(i, e)| matches!(e, Expr::Num(n) if n == i)) && matches!(self.default, Default::Affine(0))
    }

    /// True if every branch is ⊥ (decidable for closed-form defaults only).
    pub fn is_all_bot(&self) -> bool {
        self.overrides.values().all(|e| e.is_bot()) && matches!(self.default, Default::Bot | Default::Elided)
    }

    /// Largest explicit index, if any.
    pub fn max_override(&self) -> Option<u64> {
        self.overrides.keys().next_back().copied()
    }

    /// True if the default can be stated without evaluation (`bot`, `elided`, `affine`).
    pub fn has_closed_default(&self) -> bool {
        matches!(self.default, Default::Bot | Default::Elided | Default::Affine(_))
    }
}

impl Default {
    pub fn get(&self, i: u64) -> Expr {
        match self {
            Default::Bot => Expr::Bot,
            Default::Elided => Expr::Elided,
            Default::Affine(k) => offset(i, *k).map(Expr::Num).unwrap_or(Expr::Bot),
            Default::Const(e) => e.clone(),
            Default::Shift(k, f) => offset(i, *k).map(|j| f.get(j)).unwrap_or(Expr::Bot),
            Default::Gen(g) => (g.f)(i),
        }
    }
}

impl Proc {
    pub fn lam(params: Vec<Binder>, body: Expr) -> Proc {
        Proc::Lam(Rc::new(Lam { params, body }))
    }

    pub fn fix(ty: SimpleType, step: Head) -> Proc {
        Proc::Fix(Rc::new(Fix { ty, step }))
    }

    /// `λ.n`.
    pub fn num(n: u64) -> Proc {
        Proc::lam(vec![], Expr::Num(n))
    }

    /// `λx⃗.⊥` at type `ty`.
    pub fn bot(ty: &SimpleType) -> Proc {
        Proc::lam(ty.args().into_iter().map(|t| Binder::fresh("u", t)).collect(), Expr::Bot)
    }

    /// `λx⃗.n` at type `ty`.
    pub fn constant(ty: &SimpleType, n: u64) -> Proc {
        Proc::lam(ty.args().into_iter().map(|t| Binder::fresh("u", t)).collect(), Expr::Num(n))
    }

    pub fn ty(&self) -> SimpleType {
        match self {
            Proc::Lam(l) => SimpleType::from_args(l.params.iter().map(|b| b.ty.clone()).collect()),
            Proc::Fix(f) => f.ty.clone(),
        }
    }

    pub fn as_lam(&self) -> Option<&Lam> {
        match self {
            Proc::Lam(l) => Some(l),
            Proc::Fix(_) => None,
        }
    }

    /// The body of a nullary procedure.
    pub fn ground_body(&self) -> Option<&Expr> {
        match self {
            Proc::Lam(l) if l.params.is_empty() => Some(&l.body),
            _ => None,
        }
    }

    /// `Some(n)` iff this is `λ.n`.
    pub fn as_num(&self) -> Option<u64> {
        match self.ground_body() {
            Some(Expr::Num(n)) => Some(*n),
            _ => None,
        }
    }

    pub fn is_normal(&self) -> bool {
        match self {
            Proc::Lam(l) => l.body.is_normal(),
            Proc::Fix(_) => false,
        }
    }

    /// Number of syntax nodes, exploring families only through their overrides.
    pub fn size(&self) -> usize {
        match self {
            Proc::Lam(l) => 1 + l.body.size(),
            Proc::Fix(f) => 1 + f.step.size(),
        }
    }
}

impl Head {
    pub fn var(name: Name) -> Head {
        Head::Var(name)
    }

    pub fn size(&self) -> usize {
        match self {
            Head::Var(_) => 1,
            Head::Proc(p) => p.size(),
        }
    }
}

impl Ground {
    pub fn app(x: Name, args: Vec<Proc>) -> Ground {
        Ground::App(Head::Var(x), args)
    }

    pub fn redex(p: Proc, args: Vec<Proc>) -> Ground {
        Ground::App(Head::Proc(p), args)
    }

    pub fn is_normal(&self) -> bool {
        match self {
            Ground::App(Head::Var(_), args) => args.iter().all(Proc::is_normal),
            _ => false,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Ground::Expr(e) => e.size(),
            Ground::App(h, args) => h.size() + args.iter().map(Proc::size).sum::<usize>(),
        }
    }
}

impl Expr {
    pub fn case(scrut: Ground, branches: Family) -> Expr {
        Expr::Case(Rc::new(Case { scrut, branches }))
    }

    /// `case x q⃗ of F`.
    pub fn case_app(x: Name, args: Vec<Proc>, branches: Family) -> Expr {
        Expr::case(Ground::app(x, args), branches)
    }

    /// `case E of F`.
    pub fn case_of(e: Expr, branches: Family) -> Expr {
        Expr::case(Ground::Expr(e), branches)
    }

    pub fn is_bot(&self) -> bool {
        matches!(self, Expr::Bot | Expr::Elided)
    }

    pub fn as_num(&self) -> Option<u64> {
        match self {
            Expr::Num(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_case(&self) -> Option<&Case> {
        match self {
            Expr::Case(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_normal(&self) -> bool {
        match self {
            Expr::Case(c) => {
                c.scrut.is_normal()
                    && c.branches.overrides.values().all(Expr::is_normal)
                    && match &c.branches.default {
                        Default::Const(e) => e.is_normal(),
                        Default::Shift(_, f) => f.overrides.values().all(Expr::is_normal),
                        _ => true,
                    }
            }
            _ => true,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Expr::Case(c) => {
                1 + c.scrut.size()
                    + c.branches.overrides.values().map(Expr::size).sum::<usize>()
                    + match &c.branches.default {
                        Default::Const(e) => e.size(),
                        _ => 0,
                    }
            }
            _ => 1,
        }
    }
}

impl From<u64> for Expr {
    fn from(n: u64) -> Expr {
        Expr::Num(n)
    }
}

impl fmt::Debug for Proc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::sexpr::proc_to_sexpr_raw(self))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::sexpr::expr_to_sexpr_raw(self))
    }
}

impl fmt::Debug for Ground {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ground::Expr(e) => write!(f, "{e:?}"),
            Ground::App(..) => write!(f, "{:?}", Expr::case(self.clone(), Family::identity())),
        }
    }
}

impl fmt::Debug for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Head::Var(x) => write!(f, "{x}"),
            Head::Proc(p) => write!(f, "{p:?}"),
        }
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = Expr::case_of(Expr::Bot, self.clone());
        write!(f, "{e:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_names_differ() {
        let a = Name::fresh("x");
        let b = Name::fresh("x");
        assert_ne!(a, b);
        assert_eq!(Name::new("x"), Name::new("x"));
    }

    #[test]
    fn family_lookup() {
        let f = Family::affine(-1).with(0, Expr::Num(0));
        assert_eq!(f.get(0).as_num(), Some(0));
        assert_eq!(f.get(5).as_num(), Some(4));
        let g = Family::new(BTreeMap::new(), Default::Shift(2, Rc::new(Family::table([(3, Expr::Num(9))]))));
        assert_eq!(g.get(1).as_num(), Some(9));
        assert!(g.get(0).is_bot());
        assert!(Family::affine(-3).get(1).is_bot());
    }

    #[test]
    fn proc_types() {
        let t = SimpleType::from_args(vec![SimpleType::pure(1), SimpleType::base()]);
        assert_eq!(Proc::bot(&t).ty(), t);
        assert_eq!(Proc::num(3).ty(), SimpleType::base());
        assert_eq!(Proc::num(3).as_num(), Some(3));
    }
}
