//! Standard procedures: fixed points and their variants, `Φ`, and `p_n`.

use std::fmt;
use std::str::FromStr;

use denote::{denote, y_proc, DenotationEnv};
use nsp_eval::Bounds;
use nsp_term::{eta_expand, Binder, Expr, Family, Head, Name, Proc};
use pcf_lang::{library, SimpleType};

use crate::SpinalError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GalleryName {
    F,
    Y,
    ZUpDown,
    Phi,
    Pn,
    Z0,
    Z1,
    X0,
}

impl GalleryName {
    pub const ALL: [GalleryName; 8] =
        [GalleryName::F, GalleryName::Y, GalleryName::ZUpDown, GalleryName::Phi, GalleryName::Pn, GalleryName::Z0, GalleryName::Z1, GalleryName::X0];

    pub fn as_str(&self) -> &'static str {
        match self {
            GalleryName::F => "F",
            GalleryName::Y => "Y",
            GalleryName::ZUpDown => "Z_upDown",
            GalleryName::Phi => "Phi",
            GalleryName::Pn => "p_n",
            GalleryName::Z0 => "Z0",
            GalleryName::Z1 => "Z1",
            GalleryName::X0 => "X0",
        }
    }
}

impl fmt::Display for GalleryName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GalleryName {
    type Err = SpinalError;

    fn from_str(s: &str) -> Result<GalleryName, SpinalError> {
        GalleryName::ALL.into_iter().find(|n| n.as_str().eq_ignore_ascii_case(s)).ok_or_else(|| SpinalError::UnknownName(s.to_string()))
    }
}

/// A procedure together with its free variables. `g` names the variable the
/// spine runs through, when there is one: either a free variable of the
/// procedure or its first binder.
#[derive(Clone, Debug)]
pub struct GalleryItem {
    pub name: String,
    pub env: Vec<(Name, SimpleType)>,
    pub proc: Proc,
    pub g: Option<Name>,
}

/// `(k+1) -> (k+1)`.
pub fn endo(k: usize) -> SimpleType {
    SimpleType::arrow(SimpleType::pure(k + 1), SimpleType::pure(k + 1))
}

/// `0 -> (k+1) -> (k+1)`.
pub fn rho(k: usize) -> SimpleType {
    SimpleType::from_args(vec![SimpleType::base(), SimpleType::pure(k + 1), SimpleType::pure(k)])
}

fn fix_of(g: &Name, k: usize) -> Proc {
    Proc::fix(SimpleType::pure(k + 1), Head::Var(g.clone()))
}

/// `g (F[g]) x^η`.
fn a_of(g: &Name, x: &Binder, k: usize) -> (Name, Vec<Proc>) {
    (g.clone(), vec![fix_of(g, k), eta_expand(&x.name, &x.ty)])
}

/// `C[g,x] = case g (F[g]) x^η of (i ⇒ i)`.
fn c_of(g: &Name, x: &Binder, k: usize) -> Expr {
    let (h, args) = a_of(g, x, k);
    Expr::case_app(h, args, Family::identity())
}

fn z0(k: usize) -> Proc {
    let g = Binder::fresh("g", endo(k));
    let x = Binder::fresh("x", SimpleType::pure(k));
    let (h, args) = a_of(&g.name, &x, k);
    let body = Expr::case_app(h, args, Family::constant(c_of(&g.name, &x, k)));
    Proc::lam(vec![g, x], body)
}

fn z1(k: usize) -> Proc {
    let g = Binder::fresh("g", endo(k));
    let x = Binder::fresh("x", SimpleType::pure(k));
    let x1 = Binder::fresh("x", SimpleType::pure(k));
    let (h, args) = a_of(&g.name, &x, k);
    let inner = Expr::case_app(h, args, Family::constant(c_of(&g.name, &x1, k)));
    let r = Proc::lam(vec![x1], inner);
    let body = Expr::case_app(g.name.clone(), vec![r, eta_expand(&x.name, &x.ty)], Family::identity());
    Proc::lam(vec![g, x], body)
}

fn x0() -> (Vec<(Name, SimpleType)>, Proc) {
    let x = Name::new("x");
    let y = Binder::fresh("y", SimpleType::base());
    let probe = Expr::case_app(x.clone(), vec![Proc::num(0)], Family::constant(Expr::Num(0)));
    let fam = Family::identity().with(0, probe);
    let inner = Proc::lam(vec![], Expr::case_app(y.name.clone(), vec![], fam));
    let body = Expr::case_app(x.clone(), vec![inner], Family::identity());
    (vec![(x, SimpleType::pure(1))], Proc::lam(vec![y], body))
}

/// `p_n = λx. case g (λ.n) p_{n+1} x^η of (i ⇒ i)`, unrolled `levels` times and
/// elided below.
pub fn p_n(g: &Name, k: usize, n: u64, levels: usize) -> Proc {
    let x = Binder::fresh("x", SimpleType::pure(k));
    if levels == 0 {
        return Proc::lam(vec![x], Expr::Elided);
    }
    let args = vec![Proc::num(n), p_n(g, k, n + 1, levels - 1), eta_expand(&x.name, &x.ty)];
    Proc::lam(vec![x], Expr::case_app(g.clone(), args, Family::identity()))
}

fn evaluated(t: &pcf_lang::Term, b: &Bounds) -> Result<Proc, SpinalError> {
    Ok(denote(t, &DenotationEnv::new(), b)?.proc)
}

/// The entry `name` at level `k`. `n` is used by `p_n` only; `b` bounds the
/// denotations that need evaluating and the unrolling depth of `p_n`.
///
/// `F`, `Y`, `Z_upDown`, `Z0`, `Z1` are the `(k+1)`-level fixed points and
/// variants (`F` in the environment `g`), `Phi` is `Φ_{k+1}`, `p_n` lives in
/// the environment `g : 0 -> (k+1) -> (k+1)`, and `X0` (level 1 only) lives in
/// the environment `x : 1`.
pub fn gallery(name: GalleryName, k: usize, n: u64, b: &Bounds) -> Result<GalleryItem, SpinalError> {
    if k == 0 || k > 3 {
        return Err(SpinalError::Infeasible(format!("level {k} outside 1..=3")));
    }
    let item = |env: Vec<(Name, SimpleType)>, proc: Proc, g: Option<Name>| GalleryItem { name: name.to_string(), env, proc, g };
    let first_binder = |p: &Proc| p.as_lam().and_then(|l| l.params.first()).map(|b| b.name.clone());
    Ok(match name {
        GalleryName::F => {
            let g = Name::new("g");
            item(vec![(g.clone(), endo(k))], fix_of(&g, k), Some(g))
        }
        GalleryName::Y => {
            let p = y_proc(&SimpleType::pure(k + 1));
            let g = first_binder(&p);
            item(vec![], p, g)
        }
        GalleryName::ZUpDown => {
            let p = evaluated(&library::z_updown(k), b)?;
            let g = first_binder(&p);
            item(vec![], p, g)
        }
        GalleryName::Phi => {
            let p = evaluated(&library::phi(k), b)?;
            let g = first_binder(&p);
            item(vec![], p, g)
        }
        GalleryName::Pn => {
            let g = Name::new("g");
            item(vec![(g.clone(), rho(k))], p_n(&g, k, n, b.depth), Some(g))
        }
        GalleryName::Z0 => {
            let p = z0(k);
            let g = first_binder(&p);
            item(vec![], p, g)
        }
        GalleryName::Z1 => {
            let p = z1(k);
            let g = first_binder(&p);
            item(vec![], p, g)
        }
        GalleryName::X0 => {
            if k != 1 {
                return Err(SpinalError::Infeasible("X0 is defined at level 1 only".into()));
            }
            let (env, p) = x0();
            item(env, p, None)
        }
    })
}
