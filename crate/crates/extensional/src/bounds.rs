use std::fmt;

use nsp_term::{Expr, Proc};

/// Bounds on the finite procedure grammar.
///
/// `max_fanout` caps how many branches of a single `case` may be non-⊥.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumBounds {
    pub max_value: u64,
    pub max_depth: usize,
    pub max_branch: u64,
    pub max_fanout: usize,
    pub ceiling: u128,
}

impl EnumBounds {
    pub fn new(max_value: u64, max_depth: usize, max_branch: u64, max_fanout: usize) -> EnumBounds {
        EnumBounds { max_value, max_depth, max_branch, max_fanout, ceiling: 2_000_000 }
    }

    /// Values and branch indices at most 1, depth 1, no fanout cap.
    pub fn tiny() -> EnumBounds {
        EnumBounds::new(1, 1, 1, 2)
    }

    pub fn with_depth(mut self, d: usize) -> EnumBounds {
        self.max_depth = d;
        self
    }

    pub fn with_ceiling(mut self, c: u128) -> EnumBounds {
        self.ceiling = c;
        self
    }

    pub fn branches(&self) -> u64 {
        self.max_branch + 1
    }

    /// Widened so that every numeral and branch index mentioned by `ps` is in range.
    pub fn covering(&self, ps: &[&Proc]) -> EnumBounds {
        let mut out = *self;
        for p in ps {
            let m = max_numeral_proc(p);
            out.max_value = out.max_value.max(m);
            out.max_branch = out.max_branch.max(m);
        }
        if out.max_branch > self.max_branch {
            out.max_fanout = out.branches() as usize;
        }
        out
    }

    /// Parses `value,depth,branch,fanout`.
    pub fn parse(s: &str) -> Option<EnumBounds> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return None;
        }
        let v = parts[0].parse().ok()?;
        let d = parts[1].parse().ok()?;
        let b = parts[2].parse().ok()?;
        let f = parts[3].parse().ok()?;
        if d == 0 || f == 0 {
            return None;
        }
        Some(EnumBounds::new(v, d, b, f))
    }
}

impl fmt::Display for EnumBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.max_value, self.max_depth, self.max_branch, self.max_fanout)
    }
}

/// Largest numeral or explicit branch index in a finite procedure.
pub fn max_numeral_proc(p: &Proc) -> u64 {
    match p.as_lam() {
        Some(l) => max_numeral_expr(&l.body),
        None => 0,
    }
}

fn max_numeral_expr(e: &Expr) -> u64 {
    match e {
        Expr::Num(n) => *n,
        Expr::Case(c) => {
            let mut m = 0;
            if let nsp_term::Ground::App(_, args) = &c.scrut {
                for a in args {
                    m = m.max(max_numeral_proc(a));
                }
            }
            for (i, b) in &c.branches.overrides {
                if !b.is_bot() {
                    m = m.max(*i);
                }
                m = m.max(max_numeral_expr(b));
            }
            m
        }
        _ => 0,
    }
}
