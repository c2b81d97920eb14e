//! S-expression syntax.
//!
//! ```text
//! P ::= (lam (B ...) E) | (fix T H)
//! B ::= x | (x T)                      a bare name has type N
//! T ::= N | (-> T ... T N)
//! E ::= bot | (elided) | n | (case G BR ... (default D))
//! G ::= (app H P ...) | E
//! H ::= x | P
//! BR ::= (i E)
//! D ::= bot | elided | affine K | const E | shift K (family BR ... (default D)) | gen
//! ```
//! Bound variables are printed with canonical names in order of appearance.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::rc::Rc;

use pcf_lang::SimpleType;

use crate::subst::freshen_proc;
use crate::term::{Binder, Default, Expr, Family, Ground, Head, Name, Proc};

pub fn type_to_sexpr(t: &SimpleType) -> String {
    if t.is_base() {
        return "N".into();
    }
    let mut s = String::from("(->");
    for a in t.args() {
        s.push(' ');
        s.push_str(&type_to_sexpr(&a));
    }
    s.push_str(" N)");
    s
}

pub(crate) struct Printer {
    canonical: bool,
    names: HashMap<Name, String>,
    counters: HashMap<String, usize>,
    taken: BTreeSet<String>,
}

impl Printer {
    fn new(canonical: bool, taken: BTreeSet<String>) -> Printer {
        Printer { canonical, names: HashMap::new(), counters: HashMap::new(), taken }
    }

    pub(crate) fn bind(&mut self, n: &Name) -> String {
        if !self.canonical {
            return n.to_string();
        }
        let hint = n.hint().trim_end_matches(|c: char| c.is_ascii_digit() || c == '_').to_string();
        let hint = if hint.is_empty() { "v".to_string() } else { hint };
        loop {
            let c = self.counters.entry(hint.clone()).or_insert(0);
            let cand = format!("{hint}{c}");
            *c += 1;
            if !self.taken.contains(&cand) {
                self.taken.insert(cand.clone());
                self.names.insert(n.clone(), cand.clone());
                return cand;
            }
        }
    }

    pub(crate) fn var(&self, n: &Name) -> String {
        self.names.get(n).cloned().unwrap_or_else(|| n.to_string())
    }

    fn proc(&mut self, p: &Proc, out: &mut String) {
        match p {
            Proc::Lam(l) => {
                out.push_str("(lam (");
                for (i, b) in l.params.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    let nm = self.bind(&b.name);
                    if b.ty.is_base() {
                        out.push_str(&nm);
                    } else {
                        let _ = write!(out, "({nm} {})", type_to_sexpr(&b.ty));
                    }
                }
                out.push_str(") ");
                self.expr(&l.body, out);
                out.push(')');
            }
            Proc::Fix(f) => {
                let _ = write!(out, "(fix {} ", type_to_sexpr(&f.ty));
                self.head(&f.step, out);
                out.push(')');
            }
        }
    }

    fn head(&mut self, h: &Head, out: &mut String) {
        match h {
            Head::Var(x) => out.push_str(&self.var(x)),
            Head::Proc(p) => self.proc(p, out),
        }
    }

    fn expr(&mut self, e: &Expr, out: &mut String) {
        match e {
            Expr::Bot => out.push_str("bot"),
            Expr::Elided => out.push_str("(elided)"),
            Expr::Num(n) => {
                let _ = write!(out, "{n}");
            }
            Expr::Case(c) => {
                out.push_str("(case ");
                match &c.scrut {
                    Ground::Expr(e) => self.expr(e, out),
                    Ground::App(h, args) => {
                        out.push_str("(app ");
                        self.head(h, out);
                        for a in args {
                            out.push(' ');
                            self.proc(a, out);
                        }
                        out.push(')');
                    }
                }
                self.branches(&c.branches, out);
                out.push(')');
            }
        }
    }

    fn branches(&mut self, f: &Family, out: &mut String) {
        for (i, e) in &f.overrides {
            let _ = write!(out, " ({i} ");
            self.expr(e, out);
            out.push(')');
        }
        out.push_str(" (default ");
        match &f.default {
            Default::Bot => out.push_str("bot"),
            Default::Elided => out.push_str("elided"),
            Default::Affine(k) => {
                let _ = write!(out, "affine {k}");
            }
            Default::Const(e) => {
                out.push_str("const ");
                self.expr(e, out);
            }
            Default::Shift(k, g) => {
                let _ = write!(out, "shift {k} (family");
                self.branches(g, out);
                out.push(')');
            }
            Default::Gen(_) => out.push_str("gen"),
        }
        out.push(')');
    }
}

fn free_names_proc(p: &Proc, out: &mut BTreeSet<String>) {
    fn walk_e(e: &Expr, out: &mut BTreeSet<String>) {
        if let Expr::Case(c) = e {
            match &c.scrut {
                Ground::Expr(e) => walk_e(e, out),
                Ground::App(h, args) => {
                    match h {
                        Head::Var(x) => {
                            out.insert(x.to_string());
                        }
                        Head::Proc(p) => free_names_proc(p, out),
                    }
                    for a in args {
                        free_names_proc(a, out);
                    }
                }
            }
            for e in c.branches.overrides.values() {
                walk_e(e, out);
            }
            if let Default::Const(e) = &c.branches.default {
                walk_e(e, out);
            }
        }
    }
    match p {
        Proc::Lam(l) => walk_e(&l.body, out),
        Proc::Fix(f) => match &f.step {
            Head::Var(x) => {
                out.insert(x.to_string());
            }
            Head::Proc(p) => free_names_proc(p, out),
        },
    }
}

pub(crate) fn canonical_printer(p: &Proc) -> Printer {
    let mut taken = BTreeSet::new();
    free_names_proc(p, &mut taken);
    Printer::new(true, taken)
}

/// Canonical rendering: bound variables renamed in order of appearance.
pub fn proc_to_sexpr(p: &Proc) -> String {
    let mut out = String::new();
    canonical_printer(p).proc(p, &mut out);
    out
}

pub fn expr_to_sexpr(e: &Expr) -> String {
    let p = Proc::lam(vec![], e.clone());
    let s = proc_to_sexpr(&p);
    s["(lam () ".len()..s.len() - 1].to_string()
}

/// Rendering with internal names, for debugging.
pub fn proc_to_sexpr_raw(p: &Proc) -> String {
    let mut out = String::new();
    Printer::new(false, BTreeSet::new()).proc(p, &mut out);
    out
}

pub fn expr_to_sexpr_raw(e: &Expr) -> String {
    let mut out = String::new();
    Printer::new(false, BTreeSet::new()).expr(e, &mut out);
    out
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("s-expression error at byte {pos}: {msg}")]
pub struct SexprError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Sx {
    Atom(String, usize),
    List(Vec<Sx>, usize),
}

impl Sx {
    fn pos(&self) -> usize {
        match self {
            Sx::Atom(_, p) | Sx::List(_, p) => *p,
        }
    }

    fn atom(&self) -> Option<&str> {
        match self {
            Sx::Atom(s, _) => Some(s),
            _ => None,
        }
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, SexprError> {
    Err(SexprError { pos, msg: msg.into() })
}

/// Reads one s-expression; `;` starts a comment.
pub fn read_sx(text: &str) -> Result<Sx, SexprError> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    let v = read_one(&bytes, &mut i, text.len())?;
    skip_ws(&bytes, &mut i);
    if i < bytes.len() {
        return err(bytes[i].0, "trailing input");
    }
    Ok(v)
}

fn skip_ws(b: &[(usize, char)], i: &mut usize) {
    while *i < b.len() {
        if b[*i].1.is_whitespace() {
            *i += 1;
        } else if b[*i].1 == ';' {
            while *i < b.len() && b[*i].1 != '\n' {
                *i += 1;
            }
        } else {
            break;
        }
    }
}

fn read_one(b: &[(usize, char)], i: &mut usize, end: usize) -> Result<Sx, SexprError> {
    skip_ws(b, i);
    if *i >= b.len() {
        return err(end, "unexpected end of input");
    }
    let (pos, c) = b[*i];
    if c == '(' {
        *i += 1;
        let mut items = Vec::new();
        loop {
            skip_ws(b, i);
            if *i >= b.len() {
                return err(end, "unclosed list");
            }
            if b[*i].1 == ')' {
                *i += 1;
                return Ok(Sx::List(items, pos));
            }
            items.push(read_one(b, i, end)?);
        }
    }
    if c == ')' {
        return err(pos, "unexpected ')'");
    }
    let mut s = String::new();
    while *i < b.len() && !b[*i].1.is_whitespace() && b[*i].1 != '(' && b[*i].1 != ')' && b[*i].1 != ';' {
        s.push(b[*i].1);
        *i += 1;
    }
    Ok(Sx::Atom(s, pos))
}

pub fn sx_to_type(s: &Sx) -> Result<SimpleType, SexprError> {
    match s {
        Sx::Atom(a, p) => {
            if a == "N" {
                Ok(SimpleType::base())
            } else {
                err(*p, format!("unknown type {a}"))
            }
        }
        Sx::List(items, p) => {
            if items.first().and_then(Sx::atom) != Some("->") || items.len() < 2 {
                return err(*p, "expected (-> ... N)");
            }
            if items.last().and_then(Sx::atom) != Some("N") {
                return err(*p, "arrow type must end in N");
            }
            let args = items[1..items.len() - 1].iter().map(sx_to_type).collect::<Result<Vec<_>, _>>()?;
            Ok(SimpleType::from_args(args))
        }
    }
}

fn list<'a>(s: &'a Sx, head: &str) -> Option<&'a [Sx]> {
    match s {
        Sx::List(items, _) if items.first().and_then(Sx::atom) == Some(head) => Some(&items[1..]),
        _ => None,
    }
}

pub fn sx_to_proc(s: &Sx) -> Result<Proc, SexprError> {
    if let Some(rest) = list(s, "lam") {
        if rest.len() != 2 {
            return err(s.pos(), "lam takes a binder list and a body");
        }
        let Sx::List(bs, _) = &rest[0] else { return err(rest[0].pos(), "expected binder list") };
        let mut params = Vec::new();
        for b in bs {
            match b {
                Sx::Atom(x, _) => params.push(Binder::new(Name::new(x), SimpleType::base())),
                Sx::List(xs, p) if xs.len() == 2 => {
                    let x = xs[0].atom().ok_or_else(|| SexprError { pos: *p, msg: "expected name".into() })?;
                    params.push(Binder::new(Name::new(x), sx_to_type(&xs[1])?));
                }
                other => return err(other.pos(), "bad binder"),
            }
        }
        return Ok(Proc::lam(params, sx_to_expr(&rest[1])?));
    }
    if let Some(rest) = list(s, "fix") {
        if rest.len() != 2 {
            return err(s.pos(), "fix takes a type and a head");
        }
        return Ok(Proc::fix(sx_to_type(&rest[0])?, sx_to_head(&rest[1])?));
    }
    err(s.pos(), "expected a procedure")
}

fn sx_to_head(s: &Sx) -> Result<Head, SexprError> {
    match s {
        Sx::Atom(x, _) => Ok(Head::Var(Name::new(x))),
        _ => Ok(Head::Proc(sx_to_proc(s)?)),
    }
}

pub fn sx_to_expr(s: &Sx) -> Result<Expr, SexprError> {
    match s {
        Sx::Atom(a, p) => {
            if a == "bot" {
                Ok(Expr::Bot)
            } else {
                a.parse::<u64>().map(Expr::Num).or_else(|_| err(*p, format!("bad expression {a}")))
            }
        }
        Sx::List(items, p) => {
            if items.len() == 1 && items[0].atom() == Some("elided") {
                return Ok(Expr::Elided);
            }
            let Some(rest) = list(s, "case") else { return err(*p, "expected case") };
            if rest.is_empty() {
                return err(*p, "case needs a scrutinee");
            }
            let scrut = if let Some(app) = list(&rest[0], "app") {
                if app.is_empty() {
                    return err(rest[0].pos(), "app needs a head");
                }
                let args = app[1..].iter().map(sx_to_proc).collect::<Result<Vec<_>, _>>()?;
                Ground::App(sx_to_head(&app[0])?, args)
            } else {
                Ground::Expr(sx_to_expr(&rest[0])?)
            };
            Ok(Expr::case(scrut, sx_to_family(&rest[1..], *p)?))
        }
    }
}

fn sx_to_family(items: &[Sx], pos: usize) -> Result<Family, SexprError> {
    let mut fam = Family::bot();
    let mut seen_default = false;
    for it in items {
        if let Some(d) = list(it, "default") {
            seen_default = true;
            fam.default = sx_to_default(d, it.pos())?;
            continue;
        }
        match it {
            Sx::List(kv, p) if kv.len() == 2 => {
                let i = kv[0].atom().and_then(|a| a.parse::<u64>().ok()).ok_or_else(|| SexprError { pos: *p, msg: "bad branch index".into() })?;
                fam.overrides.insert(i, sx_to_expr(&kv[1])?);
            }
            other => return err(other.pos(), "expected (i E) or (default D)"),
        }
    }
    if !seen_default {
        return err(pos, "missing (default ...)");
    }
    Ok(fam)
}

fn sx_to_default(d: &[Sx], pos: usize) -> Result<Default, SexprError> {
    // accept both `(default affine 1)` and `(default (affine 1))`
    if d.len() == 1 {
        if let Sx::List(inner, _) = &d[0] {
            return sx_to_default(inner, pos);
        }
    }
    match d.first().and_then(Sx::atom) {
        Some("bot") if d.len() == 1 => Ok(Default::Bot),
        Some("elided") if d.len() == 1 => Ok(Default::Elided),
        Some("affine") if d.len() == 2 => {
            let k = d[1].atom().and_then(|a| a.parse::<i64>().ok()).ok_or_else(|| SexprError { pos, msg: "bad offset".into() })?;
            Ok(Default::Affine(k))
        }
        Some("const") if d.len() == 2 => Ok(Default::Const(sx_to_expr(&d[1])?)),
        Some("shift") if d.len() == 3 => {
            let k = d[1].atom().and_then(|a| a.parse::<i64>().ok()).ok_or_else(|| SexprError { pos, msg: "bad offset".into() })?;
            let Some(items) = list(&d[2], "family") else { return err(pos, "expected (family ...)") };
            Ok(Default::Shift(k, Rc::new(sx_to_family(items, pos)?)))
        }
        _ => err(pos, "unsupported default"),
    }
}

/// Parses a procedure; binders are renamed fresh so no binder repeats along a path.
pub fn parse_proc(text: &str) -> Result<Proc, SexprError> {
    Ok(freshen_proc(&sx_to_proc(&read_sx(text)?)?))
}

/// Parses `(in ((g T) ...) P)` or a bare procedure (empty environment).
pub fn parse_proc_in_env(text: &str) -> Result<(Vec<(Name, SimpleType)>, Proc), SexprError> {
    let sx = read_sx(text)?;
    if let Some(rest) = list(&sx, "in") {
        if rest.len() != 2 {
            return err(sx.pos(), "in takes an environment and a procedure");
        }
        let Sx::List(vs, _) = &rest[0] else { return err(rest[0].pos(), "expected environment") };
        let mut env = Vec::new();
        for v in vs {
            match v {
                Sx::List(xs, p) if xs.len() == 2 => {
                    let x = xs[0].atom().ok_or_else(|| SexprError { pos: *p, msg: "expected name".into() })?;
                    env.push((Name::new(x), sx_to_type(&xs[1])?));
                }
                other => return err(other.pos(), "expected (name type)"),
            }
        }
        return Ok((env, freshen_proc(&sx_to_proc(&rest[1])?)));
    }
    Ok((Vec::new(), freshen_proc(&sx_to_proc(&sx)?)))
}

pub fn env_to_sexpr(env: &[(Name, SimpleType)], p: &Proc) -> String {
    let mut s = String::from("(in (");
    for (i, (n, t)) in env.iter().enumerate() {
        if i > 0 {
            s.push(' ');
        }
        let _ = write!(s, "({n} {})", type_to_sexpr(t));
    }
    s.push_str(") ");
    s.push_str(&proc_to_sexpr(p));
    s.push(')');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compare::alpha_eq_proc;
    use crate::eta::eta_expand;

    #[test]
    fn suc_shape() {
        let p = parse_proc("(lam (x) (case (app x) (default affine 1)))").unwrap();
        assert_eq!(proc_to_sexpr(&p), "(lam (x0) (case (app x0) (default affine 1)))");
        let q = parse_proc("(lam (y) (case (app y) (default (affine 1))))").unwrap();
        assert!(alpha_eq_proc(&p, &q, 3, 3));
    }

    #[test]
    fn round_trip_eta() {
        let f = Name::new("f");
        let p = eta_expand(&f, &SimpleType::pure(3));
        let s = proc_to_sexpr(&p);
        let q = parse_proc(&s).unwrap();
        assert!(alpha_eq_proc(&p, &q, 8, 3));
        assert_eq!(proc_to_sexpr(&q), s);
    }

    #[test]
    fn environment_wrapper() {
        let (env, p) = parse_proc_in_env("(in ((g (-> (-> N N) N))) (lam () (case (app g (lam (x) 3)) (default affine 0))))").unwrap();
        assert_eq!(env.len(), 1);
        assert_eq!(env[0].1, SimpleType::pure(2));
        assert!(p.ty().is_base());
        let back = env_to_sexpr(&env, &p);
        let (_, p2) = parse_proc_in_env(&back).unwrap();
        assert!(alpha_eq_proc(&p, &p2, 5, 5));
    }

    #[test]
    fn errors() {
        assert!(parse_proc("(lam (x) (case (app x)))").is_err());
        assert!(parse_proc("(lam (x) foo)").is_err());
        assert!(parse_proc("(lam (x) 3").is_err());
    }
}
