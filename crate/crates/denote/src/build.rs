//! The six generation clauses for denotable procedures-in-environment.

use std::collections::BTreeMap;

use nsp_eval::Bounds;
use nsp_term::{leaf_subst_proc, proc_to_sexpr, Binder, Cap, Default, Expr, Family, Name, Proc};

use crate::plug::{plug, Plugging};
use crate::{DenotationEnv, DenoteError};

/// A procedure-in-environment together with how it was obtained.
#[derive(Clone, Debug)]
pub struct Denotable {
    pub env: DenotationEnv,
    pub proc: Proc,
    pub log: Vec<String>,
}

impl Denotable {
    fn from_parts(env: DenotationEnv, proc: Proc, clause: usize, parts: &[&Denotable]) -> Denotable {
        let mut log = Vec::new();
        for p in parts {
            log.extend(p.log.iter().cloned());
        }
        log.push(format!("clause {clause}: {}", proc_to_sexpr(&proc)));
        Denotable { env, proc, log }
    }
}

pub enum Clause {
    /// `λ. case x q⃗ of (j ⇒ j)` for `x ∈ Γ`.
    Var { x: Name, args: Vec<Denotable> },
    /// `λx.p` from `Γ, x ⊢ p`.
    Lam { x: Binder, body: Denotable },
    /// `λ.n`.
    Num(u64),
    /// `p[i ↦ f(i)]`.
    Leaf { p: Denotable, f: BTreeMap<u64, u64> },
    /// `p[0 ↦ d, i+1 ↦ e]` from `λ.d` and `λ.e`.
    Ifzero { p: Denotable, d: Denotable, e: Denotable },
    /// `λ.⇓Π(e, ξ)` from `λz x⃗.e` and `q⃗`, with `z` within the cap.
    Plug { f: Denotable, args: Vec<Denotable> },
}

fn same_env(a: &DenotationEnv, parts: &[&Denotable]) -> Result<(), DenoteError> {
    if parts.iter().all(|p| p.env == *a) {
        Ok(())
    } else {
        Err(DenoteError::Premise("parts live in different environments".into()))
    }
}

fn ground_body(p: &Denotable) -> Result<Expr, DenoteError> {
    p.proc.ground_body().cloned().ok_or_else(|| DenoteError::Premise(format!("expected λ.e, got {}", proc_to_sexpr(&p.proc))))
}

pub fn denotable_build(env: &DenotationEnv, clause: Clause, cap: Cap, b: &Bounds) -> Result<Denotable, DenoteError> {
    match clause {
        Clause::Var { x, args } => {
            let ty = env.lookup(&x).ok_or_else(|| DenoteError::Unbound(x.to_string()))?.clone();
            let want = ty.args();
            if want.len() != args.len() || want.iter().zip(&args).any(|(t, a)| *t != a.proc.ty()) {
                return Err(DenoteError::Type(format!("arguments do not fit {x} : {ty}")));
            }
            let parts: Vec<&Denotable> = args.iter().collect();
            same_env(env, &parts)?;
            let body = Expr::case_app(x, args.iter().map(|a| a.proc.clone()).collect(), Family::identity());
            Ok(Denotable::from_parts(env.clone(), Proc::lam(vec![], body), 1, &parts))
        }
        Clause::Lam { x, body } => {
            let mut inner_env = env.clone();
            inner_env.push(x.name.clone(), x.ty.clone());
            if body.env != inner_env {
                return Err(DenoteError::Premise(format!("body must live in Γ, {}", x.name)));
            }
            let Proc::Lam(l) = &body.proc else { return Err(DenoteError::Premise("body is not a λ".into())) };
            let mut params = vec![x];
            params.extend(l.params.iter().cloned());
            Ok(Denotable::from_parts(env.clone(), Proc::lam(params, l.body.clone()), 2, &[&body]))
        }
        Clause::Num(n) => Ok(Denotable::from_parts(env.clone(), Proc::num(n), 3, &[])),
        Clause::Leaf { p, f } => {
            same_env(env, &[&p])?;
            let fam = Family::table(f.into_iter().map(|(i, v)| (i, Expr::Num(v))));
            Ok(Denotable::from_parts(env.clone(), leaf_subst_proc(&p.proc, &fam), 4, &[&p]))
        }
        Clause::Ifzero { p, d, e } => {
            same_env(env, &[&p, &d, &e])?;
            let fam = Family::new([(0, ground_body(&d)?)].into_iter().collect(), Default::Const(ground_body(&e)?));
            Ok(Denotable::from_parts(env.clone(), leaf_subst_proc(&p.proc, &fam), 5, &[&p, &d, &e]))
        }
        Clause::Plug { f, args } => {
            let mut parts: Vec<&Denotable> = vec![&f];
            parts.extend(args.iter());
            same_env(env, &parts)?;
            let Proc::Lam(l) = &f.proc else { return Err(DenoteError::Premise("expected λz x⃗.e".into())) };
            let Some((z, xs)) = l.params.split_first() else { return Err(DenoteError::Premise("expected λz x⃗.e".into())) };
            let sigma = &z.ty;
            if !cap.admits(sigma) {
                return Err(DenoteError::Cap(format!("recursion at type {sigma}")));
            }
            if xs.len() != args.len() || xs.iter().zip(&args).any(|(x, a)| x.ty != a.proc.ty()) || sigma.args() != xs.iter().map(|x| x.ty.clone()).collect::<Vec<_>>() {
                return Err(DenoteError::Type("plugging arguments do not fit".into()));
            }
            let mut vars = vec![(z.name.clone(), sigma.clone(), Proc::lam(xs.to_vec(), l.body.clone()))];
            for (x, a) in xs.iter().zip(&args) {
                vars.push((x.name.clone(), x.ty.clone(), a.proc.clone()));
            }
            let pl = Plugging { env: env.clone(), vars, root: l.body.clone(), cap };
            let r = plug(&pl, b, 1 << 12)?;
            let mut d = Denotable::from_parts(env.clone(), r.proc, 6, &parts);
            if !r.stable || r.fuel_exhausted {
                d.log.push(format!("clause 6 unsettled after {} rounds", r.rounds));
            }
            Ok(d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::denote::denote;
    use nsp_term::alpha_eq_proc;
    use pcf_lang::{parse_pcf_in, Context, SimpleType};

    fn b() -> Bounds {
        Bounds::new(6, 4, 100_000)
    }

    #[test]
    fn numeral_clause() {
        let d = denotable_build(&DenotationEnv::new(), Clause::Num(4), Cap::Level(0), &b()).unwrap();
        assert_eq!(d.proc.as_num(), Some(4));
    }

    #[test]
    fn leaf_clause_is_successor() {
        let env = DenotationEnv::new().with("x", SimpleType::base());
        let xv = denotable_build(&env, Clause::Var { x: Name::new("x"), args: vec![] }, Cap::Level(0), &b()).unwrap();
        let f: BTreeMap<u64, u64> = (0..8).map(|i| (i, i + 1)).collect();
        let d = denotable_build(&env, Clause::Leaf { p: xv, f }, Cap::Level(0), &b()).unwrap();
        let ctx = Context::default().with_var("x", SimpleType::base());
        let want = denote(&parse_pcf_in("suc x", &ctx).unwrap(), &env, &b()).unwrap().proc;
        assert!(alpha_eq_proc(&d.proc, &want, 6, 8));
        assert_eq!(d.log.len(), 2);
    }
}
