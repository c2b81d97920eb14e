//! Surface syntax.
//!
//! ```text
//! term  ::= \x:T. term | let x:T = term in term | app
//! app   ::= atom atom*
//! atom  ::= x | n | suc | pre | ifzero | byval | Y[T] | oracle NAME | ( term )
//! T     ::= N | T -> T | ( T )        (-> associates to the right)
//! ```
//! `#` starts a comment running to the end of the line.

use std::collections::BTreeMap;

use crate::term::{fresh_name, Oracle, Term};
use crate::types::SimpleType;
use crate::{PcfError, Span};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Backslash,
    Ident(String),
    Num(u64),
    Colon,
    Dot,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Arrow,
    Eq,
}

fn span_at(src: &str, start: usize, end: usize) -> Span {
    let before = &src[..start];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map(|s| s.chars().count()).unwrap_or(0) + 1;
    Span { start, end, line, col }
}

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, PcfError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let next_pos = |j: usize| chars.get(j).map(|p| p.0).unwrap_or(src.len());
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let single = match c {
            '\\' | 'λ' => Some(Tok::Backslash),
            ':' => Some(Tok::Colon),
            '.' => Some(Tok::Dot),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, span_at(src, pos, next_pos(i + 1))));
            i += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1).map(|p| p.1) == Some('>') {
            out.push((Tok::Arrow, span_at(src, pos, next_pos(i + 2))));
            i += 2;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let text = &src[pos..next_pos(j)];
            let n = text.parse::<u64>().map_err(|_| PcfError::Parse {
                span: span_at(src, pos, next_pos(j)),
                msg: format!("numeral {text} out of range"),
            })?;
            out.push((Tok::Num(n), span_at(src, pos, next_pos(j))));
            i = j;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_' || chars[j].1 == '\'') {
                j += 1;
            }
            out.push((Tok::Ident(src[pos..next_pos(j)].to_string()), span_at(src, pos, next_pos(j))));
            i = j;
            continue;
        }
        return Err(PcfError::Parse { span: span_at(src, pos, next_pos(i + 1)), msg: format!("unexpected character {c:?}") });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Raw {
    Var(String, Span),
    Lam(String, SimpleType, Box<Raw>),
    App(Box<Raw>, Box<Raw>, Span),
    Num(u64),
    Suc,
    Pre,
    Ifzero,
    Byval,
    Y(SimpleType),
    Oracle(String, Span),
}

const KEYWORDS: &[&str] = &["suc", "pre", "ifzero", "byval", "Y", "oracle", "let", "in", "N"];

struct Parser<'a> {
    src: &'a str,
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn span(&self) -> Span {
        match self.toks.get(self.pos) {
            Some(t) => t.1,
            None => span_at(self.src, self.src.len(), self.src.len()),
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PcfError> {
        Err(PcfError::Parse { span: self.span(), msg: msg.into() })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), PcfError> {
        if self.peek() == Some(&t) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn ident(&mut self) -> Result<String, PcfError> {
        match self.peek() {
            Some(Tok::Ident(s)) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn ty(&mut self) -> Result<SimpleType, PcfError> {
        let a = match self.peek() {
            Some(Tok::Ident(s)) if s == "N" => {
                self.pos += 1;
                SimpleType::base()
            }
            Some(Tok::Num(0)) => {
                self.pos += 1;
                SimpleType::base()
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.ty()?;
                self.expect(Tok::RParen, "')'")?;
                t
            }
            _ => return self.err("expected type"),
        };
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            let r = self.ty()?;
            Ok(SimpleType::arrow(a, r))
        } else {
            Ok(a)
        }
    }

    fn term(&mut self) -> Result<Raw, PcfError> {
        match self.peek() {
            Some(Tok::Backslash) => {
                self.pos += 1;
                let x = self.ident()?;
                self.expect(Tok::Colon, "':'")?;
                let t = self.ty()?;
                self.expect(Tok::Dot, "'.'")?;
                let b = self.term()?;
                Ok(Raw::Lam(x, t, Box::new(b)))
            }
            Some(Tok::Ident(s)) if s == "let" => {
                let sp = self.span();
                self.pos += 1;
                let x = self.ident()?;
                self.expect(Tok::Colon, "':'")?;
                let t = self.ty()?;
                self.expect(Tok::Eq, "'='")?;
                let m = self.term()?;
                match self.peek() {
                    Some(Tok::Ident(s)) if s == "in" => self.pos += 1,
                    _ => return self.err("expected 'in'"),
                }
                let b = self.term()?;
                Ok(Raw::App(Box::new(Raw::Lam(x, t, Box::new(b))), Box::new(m), sp))
            }
            _ => self.app(),
        }
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::Ident(s)) => !matches!(s.as_str(), "in" | "let"),
            Some(Tok::Num(_)) | Some(Tok::LParen) | Some(Tok::Backslash) => true,
            _ => false,
        }
    }

    fn app(&mut self) -> Result<Raw, PcfError> {
        let sp = self.span();
        let mut f = self.atom()?;
        while self.starts_atom() {
            if self.peek() == Some(&Tok::Backslash) {
                let a = self.term()?;
                f = Raw::App(Box::new(f), Box::new(a), sp);
                break;
            }
            let a = self.atom()?;
            f = Raw::App(Box::new(f), Box::new(a), sp);
        }
        Ok(f)
    }

    fn atom(&mut self) -> Result<Raw, PcfError> {
        let sp = self.span();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Raw::Num(n))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                match s.as_str() {
                    "suc" => Ok(Raw::Suc),
                    "pre" => Ok(Raw::Pre),
                    "ifzero" => Ok(Raw::Ifzero),
                    "byval" => Ok(Raw::Byval),
                    "Y" => {
                        self.expect(Tok::LBracket, "'['")?;
                        let t = self.ty()?;
                        self.expect(Tok::RBracket, "']'")?;
                        Ok(Raw::Y(t))
                    }
                    "oracle" => {
                        let sp = self.span();
                        let name = self.ident()?;
                        Ok(Raw::Oracle(name, sp))
                    }
                    "N" | "in" | "let" => {
                        self.pos -= 1;
                        self.err(format!("unexpected keyword {s}"))
                    }
                    _ => Ok(Raw::Var(s, sp)),
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

/// Typing context: free variables and oracle tables.
#[derive(Clone, Debug, Default)]
pub struct Context {
    pub vars: Vec<(String, SimpleType)>,
    pub oracles: BTreeMap<String, Oracle>,
}

impl Context {
    pub fn with_oracle(mut self, o: Oracle) -> Context {
        self.oracles.insert(o.name.clone(), o);
        self
    }

    pub fn with_var(mut self, name: impl Into<String>, ty: SimpleType) -> Context {
        self.vars.push((name.into(), ty));
        self
    }
}

fn check(raw: &Raw, scope: &mut Vec<(String, String, SimpleType)>, ctx: &Context) -> Result<Term, PcfError> {
    match raw {
        Raw::Var(x, sp) => {
            if let Some((_, inner, ty)) = scope.iter().rev().find(|(s, _, _)| s == x) {
                return Ok(Term::var(inner.clone(), ty.clone()));
            }
            if let Some((_, ty)) = ctx.vars.iter().rev().find(|(s, _)| s == x) {
                return Ok(Term::var(x.clone(), ty.clone()));
            }
            Err(PcfError::Type { span: Some(*sp), msg: format!("unbound variable {x}") })
        }
        Raw::Lam(x, ty, b) => {
            let clash = scope.iter().any(|(_, inner, _)| inner == x) || ctx.vars.iter().any(|(s, _)| s == x);
            let inner = if clash { fresh_name(x) } else { x.clone() };
            scope.push((x.clone(), inner.clone(), ty.clone()));
            let body = check(b, scope, ctx);
            scope.pop();
            Ok(Term::lam(inner, ty.clone(), body?))
        }
        Raw::App(f, a, sp) => {
            let f = check(f, scope, ctx)?;
            let a = check(a, scope, ctx)?;
            Term::app(f, a).map_err(|e| match e {
                PcfError::Type { msg, .. } => PcfError::Type { span: Some(*sp), msg },
                other => other,
            })
        }
        Raw::Num(n) => Ok(Term::num(*n)),
        Raw::Suc => Ok(Term::suc()),
        Raw::Pre => Ok(Term::pre()),
        Raw::Ifzero => Ok(Term::ifzero()),
        Raw::Byval => Ok(Term::byval()),
        Raw::Y(t) => Ok(Term::y(t.clone())),
        Raw::Oracle(name, sp) => match ctx.oracles.get(name) {
            Some(o) => Ok(Term::oracle(o.clone())),
            None => Err(PcfError::UnknownOracle { span: Some(*sp), name: name.clone() }),
        },
    }
}

/// Parses and typechecks a closed, oracle-free program.
pub fn parse_pcf(text: &str) -> Result<Term, PcfError> {
    parse_pcf_in(text, &Context::default())
}

/// Parses and typechecks relative to a context of free variables and oracles.
pub fn parse_pcf_in(text: &str, ctx: &Context) -> Result<Term, PcfError> {
    let toks = lex(text)?;
    let mut p = Parser { src: text, toks, pos: 0 };
    let raw = p.term()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    check(&raw, &mut Vec::new(), ctx)
}

/// Parses a type such as `(N->N)->N`.
pub fn parse_type(text: &str) -> Result<SimpleType, PcfError> {
    let toks = lex(text)?;
    let mut p = Parser { src: text, toks, pos: 0 };
    let t = p.ty()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(t)
}

/// Reads an oracle table from TSV lines `n<TAB>m`. Blank lines and `#` comments are skipped.
pub fn parse_oracle_tsv(name: &str, text: &str) -> Result<Oracle, PcfError> {
    let mut table = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split('\t');
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a.trim(), b.trim()),
            _ => return Err(PcfError::Oracle { line: i + 1, msg: "expected two tab-separated fields".into() }),
        };
        let n: u64 = a.parse().map_err(|_| PcfError::Oracle { line: i + 1, msg: format!("bad argument {a:?}") })?;
        let m: u64 = b.parse().map_err(|_| PcfError::Oracle { line: i + 1, msg: format!("bad value {b:?}") })?;
        if table.insert(n, m).is_some() {
            return Err(PcfError::Oracle { line: i + 1, msg: format!("duplicate entry for {n}") });
        }
    }
    Ok(Oracle::new(name, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Kind;

    #[test]
    fn suc_three() {
        let t = parse_pcf("suc 3").unwrap();
        assert!(t.ty().is_base());
        match t.kind() {
            Kind::App(f, a) => {
                assert!(matches!(f.kind(), Kind::Suc));
                assert_eq!(a.as_num(), Some(3));
            }
            _ => panic!(),
        }
    }

    #[test]
    fn identity() {
        let t = parse_pcf("\\x:N. x").unwrap();
        assert_eq!(t.ty().to_string(), "N->N");
    }

    #[test]
    fn y_bottom() {
        let t = parse_pcf("Y[N] (\\x:N. x)").unwrap();
        assert!(t.ty().is_base());
    }

    #[test]
    fn arrow_right_assoc() {
        assert_eq!(parse_type("N->N->N").unwrap().arity(), 2);
        assert_eq!(parse_type("(N->N)->N").unwrap().level(), 2);
    }

    #[test]
    fn errors_carry_spans() {
        match parse_pcf("suc y") {
            Err(PcfError::Type { span: Some(s), .. }) => assert_eq!(s.col, 5),
            other => panic!("{other:?}"),
        }
        match parse_pcf("3 3") {
            Err(PcfError::Type { .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pcf("\\x N. x"), Err(PcfError::Parse { .. })));
    }

    #[test]
    fn shadowing_is_renamed() {
        let t = parse_pcf("\\x:N. \\x:N. x").unwrap();
        assert!(t.no_hiding());
    }

    #[test]
    fn let_sugar() {
        let t = parse_pcf("let f:N->N = \\x:N. suc x in f 2").unwrap();
        assert!(t.ty().is_base());
    }

    #[test]
    fn oracle_tsv() {
        let o = parse_oracle_tsv("f", "0\t1\n2\t7\n").unwrap();
        assert_eq!(o.get(2), Some(7));
        assert_eq!(o.get(1), None);
        assert!(parse_oracle_tsv("f", "0 1").is_err());
    }
}
