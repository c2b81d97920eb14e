//! The interpretation `⟦M⟧_Γ`.

use std::collections::HashMap;

use nsp_eval::{eval_proc, unfold, Bounds};
use nsp_term::{eta_expand, substitute_proc, Binder, Binding, Default, Expr, Family, Head, Name, Proc};
use pcf_lang::{Kind, SimpleType, Term};

use crate::DenoteError;

/// An ordered, non-repetitive list of typed variables.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DenotationEnv {
    vars: Vec<(Name, SimpleType)>,
}

impl DenotationEnv {
    pub fn new() -> DenotationEnv {
        DenotationEnv::default()
    }

    pub fn with(mut self, name: &str, ty: SimpleType) -> DenotationEnv {
        self.push(Name::new(name), ty);
        self
    }

    pub fn push(&mut self, name: Name, ty: SimpleType) {
        assert!(self.vars.iter().all(|(n, _)| *n != name), "repeated variable {name}");
        self.vars.push((name, ty));
    }

    pub fn vars(&self) -> &[(Name, SimpleType)] {
        &self.vars
    }

    pub fn lookup(&self, name: &Name) -> Option<&SimpleType> {
        self.vars.iter().find(|(n, _)| n == name).map(|(_, t)| t)
    }
}

/// A denotation evaluated to bounds.
#[derive(Clone, Debug)]
pub struct Denoted {
    pub proc: Proc,
    pub fuel_exhausted: bool,
}

/// `⟦Y_σ⟧ = λg. F_σ[g]`, i.e. `λg x⃗. case g (F_σ[g]) x⃗^η of (i ⇒ i)`.
pub fn y_proc(sigma: &SimpleType) -> Proc {
    let g = Binder::fresh("g", SimpleType::arrow(sigma.clone(), sigma.clone()));
    let (params, body) = as_lambda(&Proc::fix(sigma.clone(), Head::Var(g.name.clone())));
    let mut all = vec![g];
    all.extend(params);
    Proc::lam(all, body)
}

/// `λf x. case x of (i ⇒ case f(λ.i) of (j ⇒ j))`.
pub fn byval_proc() -> Proc {
    let f = Binder::fresh("f", SimpleType::pure(1));
    let x = Binder::fresh("x", SimpleType::base());
    let fname = f.name.clone();
    let fam = Family::generator("byval", move |i| Expr::case_app(fname.clone(), vec![Proc::num(i)], Family::identity()));
    Proc::lam(vec![f, x.clone()], Expr::case_app(x.name, vec![], fam))
}

pub fn suc_proc() -> Proc {
    let x = Binder::fresh("x", SimpleType::base());
    Proc::lam(vec![x.clone()], Expr::case_app(x.name, vec![], Family::affine(1)))
}

pub fn pre_proc() -> Proc {
    let x = Binder::fresh("x", SimpleType::base());
    Proc::lam(vec![x.clone()], Expr::case_app(x.name, vec![], Family::affine(-1).with(0, Expr::Num(0))))
}

/// `λxyz. case x of (0 ⇒ case y of (i ⇒ i) | i+1 ⇒ case z of (j ⇒ j))`.
pub fn ifzero_proc() -> Proc {
    let [x, y, z] = ["x", "y", "z"].map(|h| Binder::fresh(h, SimpleType::base()));
    let fam = Family::new(
        [(0, Expr::case_app(y.name.clone(), vec![], Family::identity()))].into_iter().collect(),
        Default::Const(Expr::case_app(z.name.clone(), vec![], Family::identity())),
    );
    Proc::lam(vec![x.clone(), y, z], Expr::case_app(x.name, vec![], fam))
}

/// `λx. case x of (i ⇒ f(i))`, with `f(i) = ⊥` off the table.
pub fn oracle_proc(o: &pcf_lang::Oracle) -> Proc {
    let x = Binder::fresh("x", SimpleType::base());
    Proc::lam(vec![x.clone()], Expr::case_app(x.name, vec![], Family::table(o.table.iter().map(|(i, v)| (*i, Expr::Num(*v))))))
}

/// A fixed point is a λ in disguise; this exposes the λ.
pub fn as_lambda(p: &Proc) -> (Vec<Binder>, Expr) {
    match p {
        Proc::Lam(l) => (l.params.clone(), l.body.clone()),
        Proc::Fix(f) => {
            let l = unfold(f);
            (l.params, l.body)
        }
    }
}

/// The unevaluated application `(λx₀x⃗.E)·q = λx⃗.E[x₀ ↦ q]`.
pub fn apply_meta(p: &Proc, q: &Proc) -> Result<Proc, DenoteError> {
    let (params, body) = as_lambda(p);
    let Some((x0, rest)) = params.split_first() else {
        return Err(DenoteError::Type(format!("applying a procedure of type {}", p.ty())));
    };
    if x0.ty != q.ty() {
        return Err(DenoteError::Type(format!("argument of type {} where {} expected", q.ty(), x0.ty)));
    }
    let binding: Binding = [(x0.name.clone(), q.clone())].into_iter().collect();
    Ok(substitute_proc(&Proc::lam(rest.to_vec(), body), &binding))
}

/// `p·q`, evaluated.
pub fn apply(p: &Proc, q: &Proc, b: &Bounds) -> Result<Denoted, DenoteError> {
    let r = eval_proc(&apply_meta(p, q)?, b);
    Ok(Denoted { proc: r.term, fuel_exhausted: r.fuel_exhausted })
}

/// `p·q₀·…·q_{n−1}`, evaluated once at the end.
pub fn apply_all(p: &Proc, qs: &[Proc], b: &Bounds) -> Result<Denoted, DenoteError> {
    let mut m = p.clone();
    for q in qs {
        m = apply_meta(&m, q)?;
    }
    let r = eval_proc(&m, b);
    Ok(Denoted { proc: r.term, fuel_exhausted: r.fuel_exhausted })
}

/// `Y (λx.x)`, which would otherwise spend the whole fuel budget to reach ⊥.
fn is_trivial_loop(f: &Term, a: &Term) -> bool {
    matches!(f.kind(), Kind::Y(_))
        && matches!(a.kind(), Kind::Lam(x, _, body) if matches!(body.kind(), Kind::Var(y) if y == x))
}

struct Scope {
    names: HashMap<String, Name>,
}

fn build(t: &Term, env: &DenotationEnv, scope: &mut Scope) -> Result<Proc, DenoteError> {
    Ok(match t.kind() {
        Kind::Var(x) => {
            let name = match scope.names.get(x) {
                Some(n) => n.clone(),
                None => {
                    let n = Name::new(x);
                    if env.lookup(&n).is_none() {
                        return Err(DenoteError::Unbound(x.clone()));
                    }
                    n
                }
            };
            eta_expand(&name, t.ty())
        }
        Kind::Lam(x, ty, body) => {
            let stem = x.split('%').next().unwrap_or(x);
            let b = Binder::fresh(stem, ty.clone());
            let old = scope.names.insert(x.clone(), b.name.clone());
            let inner = build(body, env, scope);
            match old {
                Some(o) => scope.names.insert(x.clone(), o),
                None => scope.names.remove(x),
            };
            let (mut params, e) = as_lambda(&inner?);
            params.insert(0, b);
            Proc::lam(params, e)
        }
        Kind::App(f, a) if is_trivial_loop(f, a) => Proc::bot(t.ty()),
        Kind::App(f, a) => {
            let fp = build(f, env, scope)?;
            let ap = build(a, env, scope)?;
            apply_meta(&fp, &ap)?
        }
        Kind::Num(n) => Proc::num(*n),
        Kind::Suc => suc_proc(),
        Kind::Pre => pre_proc(),
        Kind::Ifzero => ifzero_proc(),
        Kind::Y(sigma) => y_proc(sigma),
        Kind::Oracle(o) => oracle_proc(o),
        Kind::Byval => byval_proc(),
    })
}

/// `⟦M⟧_Γ` as an unevaluated meta-procedure.
pub fn denote_meta(m: &Term, env: &DenotationEnv) -> Result<Proc, DenoteError> {
    build(m, env, &mut Scope { names: HashMap::new() })
}

/// `⟦M⟧_Γ`, evaluated to bounds.
pub fn denote(m: &Term, env: &DenotationEnv, b: &Bounds) -> Result<Denoted, DenoteError> {
    let p = denote_meta(m, env)?;
    let r = eval_proc(&p, b);
    Ok(Denoted { proc: r.term, fuel_exhausted: r.fuel_exhausted })
}
