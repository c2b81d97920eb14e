//! Graphviz rendering of finite terms.
//!
//! Procedure nodes show their binder list, application nodes show the head
//! variable, and branch edges carry their index. A case with identity branches
//! is drawn as the bare application, and `λ.case z of (i ⇒ i)` is drawn as `λ.z`.

use std::fmt::Write as _;

use crate::sexpr::{canonical_printer, Printer};
use crate::term::{Default, Expr, Family, Ground, Head, Proc};

struct Dot {
    names: Printer,
    out: String,
    next: usize,
    bb: u64,
}

impl Dot {
    fn node(&mut self, label: &str, shape: &str) -> usize {
        let id = self.next;
        self.next += 1;
        let label = label.replace('"', "\\\"");
        let _ = writeln!(self.out, "  n{id} [label=\"{label}\", shape={shape}];");
        id
    }

    fn edge(&mut self, from: usize, to: usize, label: &str, style: &str) {
        let _ = write!(self.out, "  n{from} -> n{to}");
        let mut attrs = Vec::new();
        if !label.is_empty() {
            attrs.push(format!("label=\"{label}\""));
        }
        if !style.is_empty() {
            attrs.push(format!("style={style}"));
        }
        if !attrs.is_empty() {
            let _ = write!(self.out, " [{}]", attrs.join(", "));
        }
        self.out.push_str(";\n");
    }

    fn proc(&mut self, p: &Proc) -> usize {
        match p {
            Proc::Fix(_) => self.node("fix", "box"),
            Proc::Lam(l) => {
                if l.params.is_empty() {
                    if let Expr::Case(c) = &l.body {
                        if let Ground::App(Head::Var(z), args) = &c.scrut {
                            if args.is_empty() && c.branches.is_identity() {
                                let label = format!("λ.{}", self.names.var(z));
                                return self.node(&label, "plaintext");
                            }
                        }
                    }
                }
                let mut label = String::from("λ");
                for (i, b) in l.params.iter().enumerate() {
                    if i > 0 {
                        label.push(' ');
                    }
                    label.push_str(&self.names.bind(&b.name));
                }
                label.push('.');
                let id = self.node(&label, "plaintext");
                let body = self.expr(&l.body);
                self.edge(id, body, "", "");
                id
            }
        }
    }

    fn expr(&mut self, e: &Expr) -> usize {
        match e {
            Expr::Bot => self.node("⊥", "plaintext"),
            Expr::Elided => self.node("…", "plaintext"),
            Expr::Num(n) => self.node(&n.to_string(), "plaintext"),
            Expr::Case(c) => {
                let head_label = match &c.scrut {
                    Ground::App(Head::Var(x), _) => self.names.var(x),
                    Ground::App(Head::Proc(_), _) => "redex".to_string(),
                    Ground::Expr(_) => "case".to_string(),
                };
                let identity = c.branches.is_identity();
                let label = if identity { head_label } else { format!("case {head_label}") };
                let id = self.node(&label, if identity { "ellipse" } else { "box" });
                match &c.scrut {
                    Ground::App(h, args) => {
                        if let Head::Proc(p) = h {
                            let hp = self.proc(p);
                            self.edge(id, hp, "head", "dotted");
                        }
                        for (i, a) in args.iter().enumerate() {
                            let a = self.proc(a);
                            self.edge(id, a, &format!("{i}"), "dashed");
                        }
                    }
                    Ground::Expr(s) => {
                        let s = self.expr(s);
                        self.edge(id, s, "of", "dotted");
                    }
                }
                if !identity {
                    self.family(id, &c.branches);
                }
                id
            }
        }
    }

    fn family(&mut self, id: usize, f: &Family) {
        let closed = matches!(f.default, Default::Bot | Default::Affine(_) | Default::Elided);
        for i in 0..self.bb {
            let e = f.get(i);
            if closed && f.overrides.get(&i).is_none() {
                continue;
            }
            if matches!(e, Expr::Bot) {
                continue;
            }
            let t = self.expr(&e);
            self.edge(id, t, &format!("{i}"), "");
        }
        let rest = match &f.default {
            Default::Bot => None,
            Default::Elided => Some("…".to_string()),
            Default::Affine(0) => Some("i⇒i".to_string()),
            Default::Affine(k) if *k > 0 => Some(format!("i⇒i+{k}")),
            Default::Affine(k) => Some(format!("i⇒i{k}")),
            _ => Some("…".to_string()),
        };
        if let Some(r) = rest {
            let t = self.node(&r, "plaintext");
            self.edge(id, t, "else", "");
        }
    }
}

/// DOT source for `p`, exploring at most `branch_bound` branches per case.
pub fn proc_to_dot(p: &Proc, name: &str, branch_bound: usize) -> String {
    let mut d = Dot { names: canonical_printer(p), out: String::new(), next: 0, bb: branch_bound as u64 };
    let _ = writeln!(d.out, "digraph \"{name}\" {{");
    d.out.push_str("  node [fontname=\"serif\"];\n");
    d.proc(p);
    d.out.push_str("}\n");
    d.out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::eta_expand;
    use crate::term::Name;
    use pcf_lang::SimpleType;

    #[test]
    fn base_eta_abbreviated() {
        let p = eta_expand(&Name::new("z"), &SimpleType::base());
        let s = proc_to_dot(&p, "t", 2);
        assert!(s.contains("label=\"λ.z\""));
        assert_eq!(s.matches("->").count(), 0);
    }

    #[test]
    fn stable_output() {
        let p = eta_expand(&Name::new("g"), &SimpleType::pure(2));
        assert_eq!(proc_to_dot(&p, "t", 2), proc_to_dot(&p, "t", 2));
        assert!(proc_to_dot(&p, "t", 2).contains("label=\"g\""));
    }
}
