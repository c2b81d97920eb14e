//! The extensional order on finite procedures, decided pointwise over
//! enumerated arguments.

use std::fmt;

use nsp_term::Proc;

use crate::bounds::EnumBounds;
use crate::compare::argument_tuples;
use crate::enumerate::enumerate_finite;
use crate::semantic::Interp;
use crate::ExtError;

#[derive(Clone, Debug)]
pub enum OrderVerdict {
    Equal,
    Less,
    Greater,
    /// Neither below the other. `join` is a common upper bound, if one was found.
    IncomparableWithBound { join: Option<Proc> },
    /// No common upper bound. `witness` is an argument tuple on which the two
    /// give different numerals; without one, apartness is relative to the
    /// enumerated universe.
    Apart { witness: Option<Vec<Proc>> },
}

impl OrderVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            OrderVerdict::Equal => "equal",
            OrderVerdict::Less => "less",
            OrderVerdict::Greater => "greater",
            OrderVerdict::IncomparableWithBound { .. } => "incomparable-with-bound",
            OrderVerdict::Apart { .. } => "apart",
        }
    }

    pub fn is_apart(&self) -> bool {
        matches!(self, OrderVerdict::Apart { .. })
    }
}

impl fmt::Display for OrderVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

const FUEL: u64 = 1_000_000;

/// Results of `p` on every tuple, ⊥ as `None`.
pub(crate) fn table(p: &Proc, tuples: &[Vec<Proc>]) -> Result<Vec<Option<u64>>, ExtError> {
    let it = Interp::new(FUEL);
    let sem = it.proc(p);
    let args: Vec<Vec<_>> = tuples.iter().map(|t| t.iter().map(|a| it.proc(a)).collect()).collect();
    let out = args.iter().map(|a| sem.call(a)).collect();
    if it.exhausted() {
        return Err(ExtError::Hypothesis("evaluation of a finite procedure ran out of fuel".into()));
    }
    Ok(out)
}

pub(crate) fn below(a: &[Option<u64>], b: &[Option<u64>]) -> bool {
    a.iter().zip(b).all(|(x, y)| x.is_none() || x == y)
}

/// Compares finite `f` and `f′` of the same type (level at most 2).
pub fn ext_order_finite(f: &Proc, g: &Proc, b: &EnumBounds) -> Result<OrderVerdict, ExtError> {
    let sigma = f.ty();
    if sigma != g.ty() {
        return Err(ExtError::Type(format!("{sigma} vs {}", g.ty())));
    }
    if sigma.level() > 2 {
        return Err(ExtError::Level(sigma.to_string()));
    }
    let cover = b.covering(&[f, g]);
    let tuples = argument_tuples(&sigma, &cover)?;
    let tf = table(f, &tuples)?;
    let tg = table(g, &tuples)?;
    let le = below(&tf, &tg);
    let ge = below(&tg, &tf);
    match (le, ge) {
        (true, true) => return Ok(OrderVerdict::Equal),
        (true, false) => return Ok(OrderVerdict::Less),
        (false, true) => return Ok(OrderVerdict::Greater),
        _ => {}
    }
    for (i, (x, y)) in tf.iter().zip(&tg).enumerate() {
        if let (Some(m), Some(n)) = (x, y) {
            if m != n {
                return Ok(OrderVerdict::Apart { witness: Some(tuples[i].clone()) });
            }
        }
    }
    let universe = match enumerate_finite(&sigma, &cover) {
        Ok(u) => u,
        Err(ExtError::Infeasible { .. }) => return Ok(OrderVerdict::IncomparableWithBound { join: None }),
        Err(e) => return Err(e),
    };
    for h in universe {
        let th = table(&h, &tuples)?;
        if below(&tf, &th) && below(&tg, &th) {
            return Ok(OrderVerdict::IncomparableWithBound { join: Some(h) });
        }
    }
    Ok(OrderVerdict::Apart { witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use nsp_term::parse_proc;
    use pcf_lang::SimpleType;

    fn p(s: &str) -> Proc {
        parse_proc(s).unwrap()
    }

    #[test]
    fn basic_cases() {
        let b = EnumBounds::tiny();
        assert_eq!(ext_order_finite(&Proc::num(0), &Proc::num(1), &b).unwrap().label(), "apart");
        let bot1 = Proc::bot(&SimpleType::pure(1));
        assert_eq!(ext_order_finite(&bot1, &p("(lam (x) 0)"), &b).unwrap().label(), "less");
        let f = p("(lam (x) (case (app x) (0 0) (default bot)))");
        let g = p("(lam (x) (case (app x) (0 0) (1 1) (default bot)))");
        assert_eq!(ext_order_finite(&f, &g, &b).unwrap().label(), "less");
        assert_eq!(ext_order_finite(&g, &f, &b).unwrap().label(), "greater");
        assert_eq!(ext_order_finite(&g, &g, &b).unwrap().label(), "equal");
    }

    #[test]
    fn compatible_tables() {
        let f = p("(lam (x) (case (app x) (0 0) (default bot)))");
        let g = p("(lam (x) (case (app x) (1 1) (default bot)))");
        match ext_order_finite(&f, &g, &EnumBounds::tiny()).unwrap() {
            OrderVerdict::IncomparableWithBound { join: Some(_) } => {}
            v => panic!("{v}"),
        }
    }
}
