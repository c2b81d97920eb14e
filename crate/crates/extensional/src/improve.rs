//! Improving a finite element away from something above it, and scanning
//! for procedures that dominate the identity.

use std::rc::Rc;

use nsp_term::{Binder, Expr, Family, Ground, Head, Lam, Name, Proc};
use pcf_lang::SimpleType;

use crate::bounds::{max_numeral_proc, EnumBounds};
use crate::compare::argument_tuples;
use crate::enumerate::enumerate_finite;
use crate::order::{ext_order_finite, table, OrderVerdict};
use crate::semantic::{Interp, Sem};
use crate::ExtError;

#[derive(Clone, Debug)]
pub enum ImprovementCase {
    /// The witness answers `a` without looking at its arguments; the ⊥ leaf
    /// reached along the `a`-branches was replaced by `value`.
    LeafReplacement { a: u64, value: u64, probe: Proc },
    /// The witness is strict; both sides were saturated at `n`. `probe` is the
    /// saturated witness.
    Saturation { n: u64, probe: Proc },
}

#[derive(Clone, Debug)]
pub struct Improvement {
    pub result: Proc,
    pub case: ImprovementCase,
    /// Argument on which `f` is ⊥ and `f′` gives `target`.
    pub witness: Proc,
    pub target: u64,
}

/// Given finite `f` strictly below `f′`, a finite `f″` above `f` and apart from `f′`.
pub fn improve(f: &Proc, g: &Proc, b: &EnumBounds) -> Result<Improvement, ExtError> {
    let v = ext_order_finite(f, g, b)?;
    if !matches!(v, OrderVerdict::Less) {
        return Err(ExtError::Hypothesis(format!("expected f below f′, found {v}")));
    }
    let arg = single_argument(&f.ty())?;
    let cover = b.covering(&[f, g]);
    let tuples = argument_tuples(&f.ty(), &cover)?;
    let tf = table(f, &tuples)?;
    let tg = table(g, &tuples)?;
    for (i, (x, y)) in tf.iter().zip(&tg).enumerate() {
        if let (None, Some(n)) = (x, y) {
            return improve_at(f, &tuples[i][0], *n);
        }
    }
    Err(ExtError::Hypothesis(format!("no enumerated argument of type {arg} separates f from f′")))
}

fn single_argument(sigma: &SimpleType) -> Result<SimpleType, ExtError> {
    let args = sigma.args();
    if args.len() != 1 {
        return Err(ExtError::Hypothesis(format!("type {sigma} is not of the form τ → N")));
    }
    Ok(args[0].clone())
}

/// The construction for a known witness `q` with `f·q = ⊥` and `f′·q = n`.
pub fn improve_at(f: &Proc, q: &Proc, n: u64) -> Result<Improvement, ExtError> {
    single_argument(&f.ty())?;
    let it = Interp::new(1_000_000);
    if it.apply(f, std::slice::from_ref(q)).is_some() {
        return Err(ExtError::Hypothesis("f is defined on the witness".into()));
    }
    let bots: Vec<Proc> = q.ty().args().iter().map(Proc::bot).collect();
    let lam = f.as_lam().ok_or_else(|| ExtError::Hypothesis("f is not a λ".into()))?;
    match it.apply(q, &bots) {
        Some(a) => {
            let value = if n == 0 { 1 } else { 0 };
            let x = &lam.params[0].name;
            let body = replace_on_path(&lam.body, x, a, value)?;
            Ok(Improvement {
                result: Proc::lam(lam.params.clone(), body),
                case: ImprovementCase::LeafReplacement { a, value, probe: Proc::constant(&q.ty(), a) },
                witness: q.clone(),
                target: n,
            })
        }
        None => {
            let big = 1 + n.max(max_numeral_proc(f)).max(max_numeral_proc(q));
            Ok(Improvement {
                result: saturate(f, big),
                case: ImprovementCase::Saturation { n: big, probe: saturate(q, big) },
                witness: q.clone(),
                target: n,
            })
        }
    }
}

fn replace_on_path(e: &Expr, x: &Name, a: u64, value: u64) -> Result<Expr, ExtError> {
    match e {
        Expr::Bot => Ok(Expr::Num(value)),
        Expr::Num(_) => Err(ExtError::Hypothesis("f is defined on the constant witness".into())),
        Expr::Elided => Err(ExtError::Hypothesis("f is not finite".into())),
        Expr::Case(c) => match &c.scrut {
            Ground::App(Head::Var(y), _) if y == x => {
                let inner = replace_on_path(&c.branches.get(a), x, a, value)?;
                Ok(Expr::case(c.scrut.clone(), c.branches.clone().with(a, inner)))
            }
            _ => Err(ExtError::Hypothesis("path leaves the argument's spine".into())),
        },
    }
}

/// Every `λy⃗.⊥` becomes `λy⃗.N` and every branch `j ⇒ ⊥` with `j ≤ N` becomes `j ⇒ N`.
pub fn saturate(p: &Proc, n: u64) -> Proc {
    match p {
        Proc::Lam(l) => {
            let body = if l.body.is_bot() { Expr::Num(n) } else { saturate_expr(&l.body, n) };
            Proc::Lam(Rc::new(Lam { params: l.params.clone(), body }))
        }
        Proc::Fix(_) => p.clone(),
    }
}

fn saturate_expr(e: &Expr, n: u64) -> Expr {
    match e {
        Expr::Case(c) => {
            let scrut = match &c.scrut {
                Ground::App(h, args) => Ground::App(h.clone(), args.iter().map(|a| saturate(a, n)).collect()),
                Ground::Expr(s) => Ground::Expr(saturate_expr(s, n)),
            };
            let mut fam = Family::new(
                c.branches.overrides.iter().map(|(i, b)| (*i, saturate_expr(b, n))).collect(),
                c.branches.default.clone(),
            );
            for j in 0..=n {
                if fam.get(j).is_bot() {
                    fam.overrides.insert(j, Expr::Num(n));
                }
            }
            Expr::case(scrut, fam)
        }
        _ => e.clone(),
    }
}

#[derive(Clone, Debug)]
pub enum ScanVerdict {
    /// `Φ(f) = f` for every enumerated `f`.
    IdentityUpToBounds { domain: usize },
    /// `Φ(f) ⋡ f`.
    NotAboveIdentity(Proc),
    /// `Φ ⪰ id` on the domain but `Φ(f) ≠ f`.
    Improves(Proc),
}

impl ScanVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ScanVerdict::IdentityUpToBounds { .. } => "identity-up-to-bounds",
            ScanVerdict::NotAboveIdentity(_) => "counterexample",
            ScanVerdict::Improves(_) => "improves",
        }
    }
}

/// Precomputed meanings of the bounded domain of pure type `k`.
pub struct ScanDomain {
    it: Rc<Interp>,
    pub elements: Vec<Proc>,
    sems: Vec<Sem>,
    points: Vec<Vec<Sem>>,
    tables: Vec<Vec<Option<u64>>>,
}

impl ScanDomain {
    pub fn new(k: usize, b: &EnumBounds) -> Result<ScanDomain, ExtError> {
        let sigma = SimpleType::pure(k);
        let elements = enumerate_finite(&sigma, b)?;
        let tuples = argument_tuples(&sigma, b)?;
        let it = Interp::new(u64::MAX / 2);
        let sems: Vec<Sem> = elements.iter().map(|f| it.proc(f)).collect();
        let points: Vec<Vec<Sem>> = tuples.iter().map(|t| t.iter().map(|a| it.proc(a)).collect()).collect();
        let tables = sems.iter().map(|s| points.iter().map(|x| s.call(x)).collect()).collect();
        Ok(ScanDomain { it, elements, sems, points, tables })
    }

    pub fn scan(&self, phi: &Proc) -> ScanVerdict {
        let sphi = self.it.proc(phi);
        let mut images = Vec::with_capacity(self.elements.len());
        for (i, s) in self.sems.iter().enumerate() {
            let row: Vec<Option<u64>> = self
                .points
                .iter()
                .map(|x| {
                    let mut args = Vec::with_capacity(x.len() + 1);
                    args.push(s.clone());
                    args.extend(x.iter().cloned());
                    sphi.call(&args)
                })
                .collect();
            if !crate::order::below(&self.tables[i], &row) {
                return ScanVerdict::NotAboveIdentity(self.elements[i].clone());
            }
            images.push(row);
        }
        for (i, row) in images.iter().enumerate() {
            if *row != self.tables[i] {
                return ScanVerdict::Improves(self.elements[i].clone());
            }
        }
        ScanVerdict::IdentityUpToBounds { domain: self.elements.len() }
    }
}

/// Checks `Φ(f) ⪰ f`, then `Φ(f) = f`, for every enumerated finite `f` of pure type `k`.
pub fn super_identity_scan(phi: &Proc, k: usize, b: &EnumBounds) -> Result<ScanVerdict, ExtError> {
    let sigma = SimpleType::pure(k);
    if phi.ty() != SimpleType::arrow(sigma.clone(), sigma.clone()) {
        return Err(ExtError::Type(format!("{} is not {sigma} → {sigma}", phi.ty())));
    }
    if k > 2 {
        return Err(ExtError::Level(sigma.to_string()));
    }
    Ok(ScanDomain::new(k, b)?.scan(phi))
}

/// The identity procedure on pure type `k`, `λf x⃗. case f x⃗^η of (i ⇒ i)`.
pub fn identity_proc(k: usize) -> Proc {
    let sigma = SimpleType::pure(k);
    let f = Binder::fresh("f", sigma.clone());
    let body = nsp_term::eta_expand(&f.name, &sigma);
    let l = body.as_lam().expect("η-expansion is a λ");
    let mut params = vec![f];
    params.extend(l.params.iter().cloned());
    Proc::lam(params, l.body.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsp_term::parse_proc;

    #[test]
    fn bottom_below_constant() {
        let f = Proc::bot(&SimpleType::pure(1));
        let g = parse_proc("(lam (x) 0)").unwrap();
        let r = improve(&f, &g, &EnumBounds::tiny()).unwrap();
        assert_eq!(nsp_term::proc_to_sexpr(&r.result), "(lam (u0) 1)");
    }

    #[test]
    fn identity_scans_clean() {
        let v = super_identity_scan(&identity_proc(1), 1, &EnumBounds::tiny()).unwrap();
        assert!(matches!(v, ScanVerdict::IdentityUpToBounds { domain: 11 }));
    }

    #[test]
    fn constant_zero_fails() {
        let phi = parse_proc("(lam ((f (-> N N)) x) 0)").unwrap();
        match super_identity_scan(&phi, 1, &EnumBounds::tiny()).unwrap() {
            ScanVerdict::NotAboveIdentity(f) => assert_eq!(nsp_term::proc_to_sexpr(&f), "(lam (x0) 1)"),
            v => panic!("{}", v.label()),
        }
    }
}
