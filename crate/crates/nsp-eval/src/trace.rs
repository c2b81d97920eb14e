//! Reduction traces and the origin of variable occurrences.

use nsp_term::{alpha_eq_expr, alpha_eq_proc, proc_to_sexpr, Expr, Ground, Head, Name, Proc};

use crate::step::{general_redexes, head_redex, path_to_string, step_at, subterm, Meta, Path, PathStep, Rule, Sub};

#[derive(Clone, Debug)]
pub struct TraceStep {
    pub rule: Rule,
    pub path: Path,
    /// The contextual rules (`h2`, `h3`, `g2`, `g3`, `g4`) that lift the basic step to `path`.
    pub context: Vec<&'static str>,
    pub before: Meta,
    pub pre: String,
    pub post: String,
}

#[derive(Clone, Debug)]
pub struct ReductionTrace {
    pub initial: Meta,
    pub steps: Vec<TraceStep>,
    pub last: Meta,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OccurrenceRef {
    pub path: Path,
    pub var: Name,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Origin {
    pub path: Path,
    /// `None` when the occurrence was created by unfolding a fixed point; the
    /// path then leads to that fixed point.
    pub var: Option<Name>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OriginError {
    #[error("no variable occurrence at {0}")]
    InvalidOccurrence(String),
    #[error("occurrence at {0} has no origin")]
    NoOrigin(String),
}

fn summary(s: Option<Sub>) -> String {
    let text = match s {
        Some(Sub::Proc(p)) => proc_to_sexpr(&p),
        Some(Sub::Expr(e)) => nsp_term::expr_to_sexpr(&e),
        Some(Sub::Ground(Ground::Expr(e))) => nsp_term::expr_to_sexpr(&e),
        Some(Sub::Ground(g)) => nsp_term::expr_to_sexpr(&Expr::case(g, nsp_term::Family::identity())),
        Some(Sub::Var(x)) => x.to_string(),
        None => String::new(),
    };
    if text.chars().count() > 96 {
        let cut: String = text.chars().take(93).collect();
        format!("{cut}...")
    } else {
        text
    }
}

fn context_tags(path: &[PathStep], head: bool) -> Vec<&'static str> {
    let mut tags = Vec::new();
    for (k, st) in path.iter().enumerate() {
        match st {
            PathStep::Body => tags.push(if head { "h3" } else { "g2" }),
            PathStep::Scrut => {
                if !matches!(path.get(k + 1), Some(PathStep::Arg(_))) {
                    tags.push("h2")
                }
            }
            PathStep::Arg(_) => tags.push("g3"),
            PathStep::Branch(_) => tags.push("g4"),
            _ => {}
        }
    }
    tags
}

impl ReductionTrace {
    pub fn new(initial: Meta) -> ReductionTrace {
        ReductionTrace { last: initial.clone(), initial, steps: Vec::new() }
    }

    /// Performs the basic step at `path` on the current term.
    pub fn push(&mut self, path: Path) -> Option<Rule> {
        let (rule, next) = step_at(&self.last, &path)?;
        let head = head_redex(&self.last).as_deref() == Some(&path[..]);
        let pre = summary(subterm(&self.last, &path));
        let post = summary(subterm(&next, &path));
        self.steps.push(TraceStep { rule, context: context_tags(&path, head), path, before: self.last.clone(), pre, post });
        self.last = next;
        Some(rule)
    }

    /// Head reduction for at most `max_steps` steps.
    pub fn head(initial: Meta, max_steps: usize) -> ReductionTrace {
        let mut t = ReductionTrace::new(initial);
        for _ in 0..max_steps {
            let Some(p) = head_redex(&t.last) else { break };
            if t.push(p).is_none() {
                break;
            }
        }
        t
    }

    /// General reduction where `choose` picks among the available redexes.
    pub fn general(initial: Meta, bb: u64, max_steps: usize, mut choose: impl FnMut(usize) -> usize) -> ReductionTrace {
        let mut t = ReductionTrace::new(initial);
        for _ in 0..max_steps {
            let rs = general_redexes(&t.last, bb);
            if rs.is_empty() {
                break;
            }
            let k = choose(rs.len()) % rs.len();
            if t.push(rs[k].clone()).is_none() {
                break;
            }
        }
        t
    }

    /// Re-applies every step from the initial term and compares with the recorded result.
    pub fn replay(&self, depth: usize, bb: usize) -> bool {
        let mut cur = self.initial.clone();
        for s in &self.steps {
            match step_at(&cur, &s.path) {
                Some((r, next)) if r == s.rule => cur = next,
                _ => return false,
            }
        }
        meta_alpha_eq(&cur, &self.last, depth, bb)
    }

    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            let v = serde_json::json!({
                "step": k,
                "rule": s.rule.tag(),
                "path": path_to_string(&s.path),
                "context": s.context,
                "pre": s.pre,
                "post": s.post,
            });
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out
    }
}

pub fn meta_alpha_eq(a: &Meta, b: &Meta, depth: usize, bb: usize) -> bool {
    let as_expr = |m: &Meta| match m {
        Meta::Expr(e) => Some(e.clone()),
        Meta::Ground(g) => Some(Expr::case(g.clone(), nsp_term::Family::identity())),
        Meta::Proc(_) => None,
    };
    match (a, b) {
        (Meta::Proc(p), Meta::Proc(q)) => alpha_eq_proc(p, q, depth, bb),
        _ => match (as_expr(a), as_expr(b)) {
            (Some(e), Some(f)) => alpha_eq_expr(&e, &f, depth, bb),
            _ => false,
        },
    }
}

enum Back {
    Path(Path),
    Generated(Path),
}

fn cat(a: &[PathStep], b: &[PathStep]) -> Path {
    let mut v = a.to_vec();
    v.extend_from_slice(b);
    v
}

/// Maps a position after one step to the position it came from.
fn back(step: &TraceStep, q: &[PathStep]) -> Result<Back, OriginError> {
    let p = &step.path;
    let err = || OriginError::NoOrigin(path_to_string(q));
    if q.len() < p.len() || q[..p.len()] != p[..] {
        return Ok(Back::Path(q.to_vec()));
    }
    let r = &q[p.len()..];
    match step.rule {
        Rule::B2 => Err(err()),
        Rule::B3 => {
            let Some(Sub::Expr(Expr::Case(c)) | Sub::Ground(Ground::Expr(Expr::Case(c)))) = subterm(&step.before, p) else { return Err(err()) };
            let Ground::Expr(Expr::Num(n)) = &c.scrut else { return Err(err()) };
            Ok(Back::Path(cat(&cat(p, &[PathStep::Branch(*n)]), r)))
        }
        Rule::B4 => match r.split_first() {
            Some((PathStep::Scrut, rest)) => Ok(Back::Path(cat(&cat(p, &[PathStep::Scrut, PathStep::Scrut]), rest))),
            Some((PathStep::Branch(i), rest)) => {
                let fi = subterm(&step.before, &cat(p, &[PathStep::Scrut, PathStep::Branch(*i)])).ok_or_else(err)?;
                match fi {
                    Sub::Expr(Expr::Num(n)) => Ok(Back::Path(cat(&cat(p, &[PathStep::Branch(n)]), rest))),
                    Sub::Expr(Expr::Case(_)) => match rest.split_first() {
                        Some((PathStep::Scrut, rest2)) => Ok(Back::Path(cat(&cat(p, &[PathStep::Scrut, PathStep::Branch(*i)]), rest2))),
                        Some((PathStep::Branch(j), rest2)) => Ok(Back::Path(cat(&cat(p, &[PathStep::Branch(*j)]), rest2))),
                        _ => Err(err()),
                    },
                    _ => Err(err()),
                }
            }
            _ => Err(err()),
        },
        Rule::B1 => {
            let g = match subterm(&step.before, p) {
                Some(Sub::Ground(g)) => g,
                _ => return Err(err()),
            };
            let Ground::App(Head::Proc(head), _) = g else { return Err(err()) };
            match head {
                Proc::Lam(l) => back_beta(p, &l.params.iter().map(|b| b.name.clone()).collect::<Vec<_>>(), &l.body, r).ok_or_else(err),
                Proc::Fix(f) => back_unfold(p, &f.step, r).ok_or_else(err),
            }
        }
    }
}

/// Walks `r` through the body of the β-redex at `p`.
fn back_beta(p: &[PathStep], params: &[Name], body: &Expr, r: &[PathStep]) -> Option<Back> {
    let mut cur = Sub::Expr(body.clone());
    for (k, st) in r.iter().enumerate() {
        if let (Sub::Ground(Ground::App(Head::Var(x), _)), PathStep::Head) = (&cur, st) {
            if let Some(j) = params.iter().position(|y| y == x) {
                let rest = &r[k + 1..];
                if rest.is_empty() {
                    return None;
                }
                return Some(Back::Path(cat(&cat(p, &[PathStep::Arg(j)]), rest)));
            }
        }
        cur = descend_sub(&cur, *st)?;
    }
    Some(Back::Path(cat(&cat(p, &[PathStep::Head, PathStep::Body]), r)))
}

fn descend_sub(s: &Sub, st: PathStep) -> Option<Sub> {
    let m = match s {
        Sub::Proc(p) => Meta::Proc(p.clone()),
        Sub::Expr(e) => Meta::Expr(e.clone()),
        Sub::Ground(g) => Meta::Ground(g.clone()),
        Sub::Var(_) => return None,
    };
    subterm(&m, &[st])
}

/// The redex head was `F_σ[h]`: the body is `case h (F_σ[h]) x⃗^η of (i ⇒ i)`.
fn back_unfold(p: &[PathStep], step: &Head, r: &[PathStep]) -> Option<Back> {
    let fix_at = cat(p, &[PathStep::Head]);
    let (PathStep::Scrut, rest) = r.split_first()? else { return None };
    match rest.split_first()? {
        (PathStep::Head, r2) => match step {
            Head::Var(_) if r2.is_empty() => Some(Back::Path(cat(&fix_at, &[PathStep::Step]))),
            Head::Proc(_) if !r2.is_empty() => Some(Back::Path(cat(&cat(&fix_at, &[PathStep::Step]), r2))),
            _ => None,
        },
        (PathStep::Arg(0), r2) => Some(Back::Path(cat(&fix_at, r2))),
        (PathStep::Arg(j), r2) => {
            if r2.len() > 3 && r2[..3] == [PathStep::Body, PathStep::Scrut, PathStep::Head] {
                Some(Back::Path(cat(&cat(p, &[PathStep::Arg(j - 1)]), &r2[3..])))
            } else {
                Some(Back::Generated(fix_at))
            }
        }
        _ => None,
    }
}

/// The occurrence in the initial term from which `occ` (in the final term) descends.
pub fn origin_of(trace: &ReductionTrace, occ: &OccurrenceRef) -> Result<Origin, OriginError> {
    match subterm(&trace.last, &occ.path) {
        Some(Sub::Var(x)) if x == occ.var => {}
        _ => return Err(OriginError::InvalidOccurrence(path_to_string(&occ.path))),
    }
    let mut path = occ.path.clone();
    let mut generated = false;
    for s in trace.steps.iter().rev() {
        match back(s, &path)? {
            Back::Path(q) => path = q,
            Back::Generated(q) => {
                path = q;
                generated = true;
            }
        }
    }
    if generated {
        return Ok(Origin { path, var: None });
    }
    match subterm(&trace.initial, &path) {
        Some(Sub::Var(x)) => Ok(Origin { path, var: Some(x) }),
        _ => Err(OriginError::NoOrigin(path_to_string(&occ.path))),
    }
}

/// Every variable occurrence (head position) in a finite meta-term, exploring
/// branches below `bb`.
pub fn occurrences(m: &Meta, bb: u64) -> Vec<OccurrenceRef> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    let s = match m {
        Meta::Proc(p) => Sub::Proc(p.clone()),
        Meta::Expr(e) => Sub::Expr(e.clone()),
        Meta::Ground(g) => Sub::Ground(g.clone()),
    };
    walk(&s, bb, &mut path, &mut out);
    out
}

fn walk(s: &Sub, bb: u64, path: &mut Path, out: &mut Vec<OccurrenceRef>) {
    match s {
        Sub::Var(x) => out.push(OccurrenceRef { path: path.clone(), var: x.clone() }),
        Sub::Proc(Proc::Lam(l)) => {
            path.push(PathStep::Body);
            walk(&Sub::Expr(l.body.clone()), bb, path, out);
            path.pop();
        }
        Sub::Proc(Proc::Fix(f)) => {
            path.push(PathStep::Step);
            let h = match &f.step {
                Head::Var(x) => Sub::Var(x.clone()),
                Head::Proc(p) => Sub::Proc(p.clone()),
            };
            walk(&h, bb, path, out);
            path.pop();
        }
        Sub::Expr(Expr::Case(c)) => {
            path.push(PathStep::Scrut);
            walk(&Sub::Ground(c.scrut.clone()), bb, path, out);
            path.pop();
            let idx: Vec<u64> = if c.branches.has_closed_default() { c.branches.overrides.keys().copied().collect() } else { (0..bb).collect() };
            for i in idx {
                path.push(PathStep::Branch(i));
                walk(&Sub::Expr(c.branches.get(i)), bb, path, out);
                path.pop();
            }
        }
        Sub::Expr(_) => {}
        Sub::Ground(Ground::Expr(e)) => walk(&Sub::Expr(e.clone()), bb, path, out),
        Sub::Ground(Ground::App(h, args)) => {
            path.push(PathStep::Head);
            let hs = match h {
                Head::Var(x) => Sub::Var(x.clone()),
                Head::Proc(p) => Sub::Proc(p.clone()),
            };
            walk(&hs, bb, path, out);
            path.pop();
            for (j, a) in args.iter().enumerate() {
                path.push(PathStep::Arg(j));
                walk(&Sub::Proc(a.clone()), bb, path, out);
                path.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsp_term::{parse_proc, parse_proc_in_env};

    #[test]
    fn occurrence_inside_argument() {
        let (_, p) = parse_proc_in_env("(in ((w (-> N N))) (lam () (case (app (lam ((f (-> N N))) (case (app f (lam () 1)) (default affine 0))) (lam (u) (case (app w (lam () (case (app u) (default affine 0)))) (default affine 0)))) (default affine 0))))").unwrap();
        let t = ReductionTrace::head(Meta::Proc(p), 10);
        assert!(!t.steps.is_empty());
        let occ = occurrences(&t.last, 4).into_iter().find(|o| o.var == Name::new("w")).unwrap();
        let o = origin_of(&t, &occ).unwrap();
        assert_eq!(o.var, Some(Name::new("w")));
        assert_eq!(path_to_string(&o.path), "body/scrut/a0/body/scrut/head");
    }

    #[test]
    fn replay_head_trace() {
        let p = parse_proc("(lam () (case (case (app (lam (y) (case (app y) (default affine 1))) (lam () 2)) (default affine 0)) (3 7) (default bot)))").unwrap();
        let t = ReductionTrace::head(Meta::Proc(p), 20);
        assert!(t.replay(5, 4));
        match &t.last {
            Meta::Proc(q) => assert_eq!(q.as_num(), Some(7)),
            _ => panic!(),
        }
        assert_eq!(t.to_json_lines().lines().count(), t.steps.len());
    }
}
