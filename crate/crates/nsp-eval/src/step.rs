//! Small-step reduction: the basic rules at a root, head reduction, and the
//! general (non-deterministic) relation used as a test oracle.

use std::fmt;
use std::rc::Rc;

use nsp_term::{Default, Expr, Family, Generator, Ground, Head, Proc};

use crate::eval::{apply_head, unfold};

/// A meta-term of any of the three kinds.
#[derive(Clone, Debug)]
pub enum Meta {
    Proc(Proc),
    Expr(Expr),
    Ground(Ground),
}

/// One step of a position path. `Ground::Expr` and `Head::Proc` are transparent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PathStep {
    Body,
    Step,
    Scrut,
    Branch(u64),
    Head,
    Arg(usize),
}

impl fmt::Display for PathStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathStep::Body => write!(f, "body"),
            PathStep::Step => write!(f, "step"),
            PathStep::Scrut => write!(f, "scrut"),
            PathStep::Branch(i) => write!(f, "b{i}"),
            PathStep::Head => write!(f, "head"),
            PathStep::Arg(j) => write!(f, "a{j}"),
        }
    }
}

pub type Path = Vec<PathStep>;

pub fn path_to_string(p: &[PathStep]) -> String {
    p.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("/")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    B1,
    B2,
    B3,
    B4,
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::B1 => "b1",
            Rule::B2 => "b2",
            Rule::B3 => "b3",
            Rule::B4 => "b4",
        }
    }
}

/// `i ⇒ case F(i) of G`, with `case ⊥ of G` and `case n of G` contracted on the spot.
pub fn family_then(f: &Family, g: &Family) -> Family {
    let then = |e: &Expr| -> Expr {
        match e {
            Expr::Bot | Expr::Elided => e.clone(),
            Expr::Num(n) => g.get(*n),
            _ => Expr::case_of(e.clone(), g.clone()),
        }
    };
    let overrides = f.overrides.iter().map(|(i, e)| (*i, then(e))).collect();
    let default = match &f.default {
        Default::Bot => Default::Bot,
        Default::Elided => Default::Elided,
        Default::Affine(k) => Default::Shift(*k, Rc::new(g.clone())),
        Default::Const(e) => Default::Const(then(e)),
        Default::Shift(k, inner) => Default::Shift(*k, Rc::new(family_then(inner, g))),
        Default::Gen(gen) => {
            let inner = gen.f.clone();
            let g = g.clone();
            Default::Gen(Generator {
                label: gen.label.clone(),
                f: Rc::new(move |i| {
                    let e = inner(i);
                    match e {
                        Expr::Bot | Expr::Elided => e,
                        Expr::Num(n) => g.get(n),
                        _ => Expr::case_of(e, g.clone()),
                    }
                }),
            })
        }
    };
    Family { overrides, default }
}

/// One basic rule at the root of a ground meta-term.
pub fn basic_step(g: &Ground) -> Option<(Rule, Ground)> {
    match g {
        Ground::App(Head::Proc(p), args) => Some((Rule::B1, Ground::Expr(apply_head(p, args)))),
        Ground::App(Head::Var(_), _) => None,
        Ground::Expr(Expr::Case(c)) => match &c.scrut {
            Ground::Expr(Expr::Bot | Expr::Elided) => Some((Rule::B2, Ground::Expr(Expr::Bot))),
            Ground::Expr(Expr::Num(n)) => Some((Rule::B3, Ground::Expr(c.branches.get(*n)))),
            Ground::Expr(Expr::Case(inner)) => {
                Some((Rule::B4, Ground::Expr(Expr::case(inner.scrut.clone(), family_then(&inner.branches, &c.branches)))))
            }
            Ground::App(..) => None,
        },
        Ground::Expr(_) => None,
    }
}

/// Where the unique head redex sits, if any. The path leads to a ground term
/// to which a basic rule applies; `h2`/`h3` steps are the path's context.
pub fn head_redex(m: &Meta) -> Option<Path> {
    let mut path = Vec::new();
    let cur: Expr = match m {
        Meta::Proc(Proc::Lam(l)) => {
            path.push(PathStep::Body);
            l.body.clone()
        }
        Meta::Proc(Proc::Fix(_)) => return None,
        Meta::Expr(e) => e.clone(),
        Meta::Ground(g) => match g {
            Ground::Expr(e) => e.clone(),
            Ground::App(Head::Proc(_), _) => return Some(path),
            Ground::App(Head::Var(_), _) => return None,
        },
    };
    let Expr::Case(c) = &cur else { return None };
    match &c.scrut {
        Ground::Expr(_) => Some(path),
        Ground::App(Head::Proc(_), _) => {
            path.push(PathStep::Scrut);
            Some(path)
        }
        Ground::App(Head::Var(_), _) => None,
    }
}

/// `⇝_h`: the unique head successor.
pub fn head_step(m: &Meta) -> Option<(Rule, Path, Meta)> {
    let path = head_redex(m)?;
    let (rule, next) = step_at(m, &path)?;
    Some((rule, path, next))
}

pub fn is_head_normal(m: &Meta) -> bool {
    head_redex(m).is_none()
}

/// Applies a basic rule to the ground term at `path`.
pub fn step_at(m: &Meta, path: &[PathStep]) -> Option<(Rule, Meta)> {
    let g = match subterm(m, path)? {
        Sub::Ground(g) => g,
        Sub::Expr(e) => Ground::Expr(e),
        _ => return None,
    };
    let (rule, g2) = basic_step(&g)?;
    Some((rule, replace(m, path, Sub::Ground(g2))?))
}

/// A subterm reached by a path.
#[derive(Clone, Debug)]
pub enum Sub {
    Proc(Proc),
    Expr(Expr),
    Ground(Ground),
    Var(nsp_term::Name),
}

fn sub_of_meta(m: &Meta) -> Sub {
    match m {
        Meta::Proc(p) => Sub::Proc(p.clone()),
        Meta::Expr(e) => Sub::Expr(e.clone()),
        Meta::Ground(g) => Sub::Ground(g.clone()),
    }
}

fn descend(s: &Sub, step: PathStep) -> Option<Sub> {
    match (s, step) {
        (Sub::Proc(Proc::Lam(l)), PathStep::Body) => Some(Sub::Expr(l.body.clone())),
        (Sub::Proc(Proc::Fix(f)), PathStep::Step) => Some(head_sub(&f.step)),
        (Sub::Expr(Expr::Case(c)), PathStep::Scrut) => Some(Sub::Ground(c.scrut.clone())),
        (Sub::Expr(Expr::Case(c)), PathStep::Branch(i)) => Some(Sub::Expr(c.branches.get(i))),
        (Sub::Ground(Ground::Expr(e)), st) => descend(&Sub::Expr(e.clone()), st),
        (Sub::Ground(Ground::App(h, _)), PathStep::Head) => Some(head_sub(h)),
        (Sub::Ground(Ground::App(_, args)), PathStep::Arg(j)) => args.get(j).map(|p| Sub::Proc(p.clone())),
        _ => None,
    }
}

fn head_sub(h: &Head) -> Sub {
    match h {
        Head::Var(x) => Sub::Var(x.clone()),
        Head::Proc(p) => Sub::Proc(p.clone()),
    }
}

pub fn subterm(m: &Meta, path: &[PathStep]) -> Option<Sub> {
    let mut cur = sub_of_meta(m);
    for st in path {
        cur = descend(&cur, *st)?;
    }
    Some(cur)
}

fn rebuild(s: &Sub, path: &[PathStep], new: Sub) -> Option<Sub> {
    let Some((first, rest)) = path.split_first() else { return Some(new) };
    match (s, *first) {
        (Sub::Proc(Proc::Lam(l)), PathStep::Body) => {
            let b = to_expr(rebuild(&Sub::Expr(l.body.clone()), rest, new)?)?;
            Some(Sub::Proc(Proc::lam(l.params.clone(), b)))
        }
        (Sub::Proc(Proc::Fix(f)), PathStep::Step) => {
            let h = to_head(rebuild(&head_sub(&f.step), rest, new)?)?;
            Some(Sub::Proc(Proc::fix(f.ty.clone(), h)))
        }
        (Sub::Expr(Expr::Case(c)), PathStep::Scrut) => {
            let g = to_ground(rebuild(&Sub::Ground(c.scrut.clone()), rest, new)?)?;
            Some(Sub::Expr(Expr::case(g, c.branches.clone())))
        }
        (Sub::Expr(Expr::Case(c)), PathStep::Branch(i)) => {
            let e = to_expr(rebuild(&Sub::Expr(c.branches.get(i)), rest, new)?)?;
            Some(Sub::Expr(Expr::case(c.scrut.clone(), c.branches.clone().with(i, e))))
        }
        (Sub::Ground(Ground::Expr(e)), _) => {
            let e2 = to_expr(rebuild(&Sub::Expr(e.clone()), path, new)?)?;
            Some(Sub::Ground(Ground::Expr(e2)))
        }
        (Sub::Ground(Ground::App(h, args)), PathStep::Head) => {
            let h2 = to_head(rebuild(&head_sub(h), rest, new)?)?;
            Some(Sub::Ground(Ground::App(h2, args.clone())))
        }
        (Sub::Ground(Ground::App(h, args)), PathStep::Arg(j)) => {
            let a = args.get(j)?;
            let Sub::Proc(p) = rebuild(&Sub::Proc(a.clone()), rest, new)? else { return None };
            let mut args2 = args.clone();
            args2[j] = p;
            Some(Sub::Ground(Ground::App(h.clone(), args2)))
        }
        _ => None,
    }
}

fn to_expr(s: Sub) -> Option<Expr> {
    match s {
        Sub::Expr(e) => Some(e),
        Sub::Ground(Ground::Expr(e)) => Some(e),
        Sub::Ground(g @ Ground::App(..)) => Some(Expr::case(g, Family::identity())),
        _ => None,
    }
}

fn to_ground(s: Sub) -> Option<Ground> {
    match s {
        Sub::Ground(g) => Some(g),
        Sub::Expr(e) => Some(Ground::Expr(e)),
        _ => None,
    }
}

fn to_head(s: Sub) -> Option<Head> {
    match s {
        Sub::Var(x) => Some(Head::Var(x)),
        Sub::Proc(p) => Some(Head::Proc(p)),
        _ => None,
    }
}

/// Replaces the subterm at `path`.
pub fn replace(m: &Meta, path: &[PathStep], new: Sub) -> Option<Meta> {
    let s = rebuild(&sub_of_meta(m), path, new)?;
    Some(match (m, s) {
        (Meta::Proc(_), Sub::Proc(p)) => Meta::Proc(p),
        (Meta::Expr(_), s) => Meta::Expr(to_expr(s)?),
        (Meta::Ground(_), s) => Meta::Ground(to_ground(s)?),
        _ => return None,
    })
}

/// Positions of every general-reduction redex (g1–g4), exploring branches
/// below `bb`. Fixed points are not unfolded, so their interiors are skipped.
pub fn general_redexes(m: &Meta, bb: u64) -> Vec<Path> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    match m {
        Meta::Proc(p) => proc_redexes(p, bb, &mut path, &mut out),
        Meta::Expr(e) => expr_redexes(e, bb, &mut path, &mut out),
        Meta::Ground(g) => ground_redexes(g, bb, &mut path, &mut out),
    }
    out
}

fn proc_redexes(p: &Proc, bb: u64, path: &mut Path, out: &mut Vec<Path>) {
    if let Proc::Lam(l) = p {
        path.push(PathStep::Body);
        expr_redexes(&l.body, bb, path, out);
        path.pop();
    }
}

fn ground_redexes(g: &Ground, bb: u64, path: &mut Path, out: &mut Vec<Path>) {
    match g {
        Ground::Expr(e) => expr_redexes(e, bb, path, out),
        Ground::App(Head::Proc(_), _) => out.push(path.clone()),
        Ground::App(Head::Var(_), args) => {
            for (j, a) in args.iter().enumerate() {
                path.push(PathStep::Arg(j));
                proc_redexes(a, bb, path, out);
                path.pop();
            }
        }
    }
}

fn expr_redexes(e: &Expr, bb: u64, path: &mut Path, out: &mut Vec<Path>) {
    let Expr::Case(c) = e else { return };
    match &c.scrut {
        Ground::Expr(_) => out.push(path.clone()),
        Ground::App(Head::Proc(_), _) => {
            path.push(PathStep::Scrut);
            out.push(path.clone());
            path.pop();
        }
        Ground::App(Head::Var(_), _) => {
            path.push(PathStep::Scrut);
            ground_redexes(&c.scrut, bb, path, out);
            path.pop();
            for i in branch_indices(&c.branches, bb) {
                path.push(PathStep::Branch(i));
                expr_redexes(&c.branches.get(i), bb, path, out);
                path.pop();
            }
        }
    }
}

fn branch_indices(f: &Family, bb: u64) -> Vec<u64> {
    let mut v: Vec<u64> = if f.has_closed_default() { f.overrides.keys().copied().collect() } else { (0..bb).collect() };
    v.extend(f.overrides.keys().copied().filter(|i| *i >= bb));
    v.sort_unstable();
    v.dedup();
    v
}

/// Every general-reduction successor.
pub fn general_steps(m: &Meta, bb: u64) -> Vec<(Rule, Path, Meta)> {
    general_redexes(m, bb)
        .into_iter()
        .filter_map(|p| step_at(m, &p).map(|(r, t)| (r, p, t)))
        .collect()
}

/// Unfolds the fixed point at `path` in place (a change of representation, not a step).
pub fn unfold_at(m: &Meta, path: &[PathStep]) -> Option<Meta> {
    match subterm(m, path)? {
        Sub::Proc(Proc::Fix(f)) => {
            let l = unfold(&f);
            replace(m, path, Sub::Proc(Proc::lam(l.params, l.body)))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsp_term::{alpha_eq_expr, parse_proc, Name};

    #[test]
    fn b1_empty() {
        let (r, g) = basic_step(&Ground::redex(Proc::num(2), vec![])).unwrap();
        assert_eq!(r, Rule::B1);
        assert!(matches!(g, Ground::Expr(Expr::Num(2))));
    }

    #[test]
    fn b3_selects() {
        let g = Ground::Expr(Expr::case_of(Expr::Num(3), Family::table([(3, Expr::Num(9))])));
        let (r, g) = basic_step(&g).unwrap();
        assert_eq!(r, Rule::B3);
        assert!(matches!(g, Ground::Expr(Expr::Num(9))));
    }

    #[test]
    fn b4_reassociates() {
        let y = Name::new("y");
        let inner = Expr::case_app(y.clone(), vec![], Family::table([(0, Expr::Num(1))]));
        let g = Ground::Expr(Expr::case_of(inner, Family::table([(1, Expr::Num(7))])));
        let (r, g) = basic_step(&g).unwrap();
        assert_eq!(r, Rule::B4);
        let want = Expr::case_app(y, vec![], Family::table([(0, Expr::Num(7))]));
        match g {
            Ground::Expr(e) => assert!(alpha_eq_expr(&e, &want, 4, 4)),
            _ => panic!(),
        }
    }

    #[test]
    fn head_normal_shapes() {
        let p = parse_proc("(lam ((f (-> N N))) (case (app f (lam () (case (app (lam () 3)) (default affine 0)))) (default affine 0)))").unwrap();
        assert!(is_head_normal(&Meta::Proc(p.clone())));
        assert_eq!(general_redexes(&Meta::Proc(p), 4).len(), 1);
    }

    #[test]
    fn head_step_under_lambda() {
        let p = parse_proc("(lam (x) (case (app (lam (y) (case (app y) (default affine 1))) (lam () 2)) (default affine 0)))").unwrap();
        let (r, path, m) = head_step(&Meta::Proc(p)).unwrap();
        assert_eq!(r, Rule::B1);
        assert_eq!(path, vec![PathStep::Body, PathStep::Scrut]);
        assert!(head_step(&m).is_some());
    }
}
