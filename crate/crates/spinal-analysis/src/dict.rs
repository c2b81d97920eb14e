//! Finite candidate sets for the substitution `°` of the spinal condition.

use std::fmt;

use nsp_term::{Binder, Expr, Family, Proc};
use pcf_lang::SimpleType;

/// Candidate substituends per type. The defaults are `λw⃗.⊥`, `λw⃗.0` (which
/// is also `λizx.0` at the type of `g`), and, for variables allowed to
/// mention the distinguished `x⃗`, the probes `λw⃗. case x_j (λ⃗.0) of (i ⇒ i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstDictionary {
    pub constants: Vec<u64>,
    pub probes: bool,
    /// Offer candidates in reverse order.
    pub reversed: bool,
    /// Upper limit on the number of combined substitutions tried per argument.
    pub max_combinations: usize,
}

impl std::default::Default for SubstDictionary {
    fn default() -> SubstDictionary {
        SubstDictionary { constants: vec![0], probes: true, reversed: false, max_combinations: 4096 }
    }
}

impl fmt::Display for SubstDictionary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.constants.iter().map(|c| c.to_string()).collect();
        write!(f, "bot,const[{}]", cs.join(" "))?;
        if self.probes {
            write!(f, ",probes")?;
        }
        if self.reversed {
            write!(f, ",reversed")?;
        }
        write!(f, ",max{}", self.max_combinations)
    }
}

/// A substituend with a short description.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub label: String,
    pub proc: Proc,
}

impl SubstDictionary {
    /// Candidates for a variable of type `ty`. `mention` lists the variables
    /// the candidates may mention.
    pub fn candidates(&self, ty: &SimpleType, mention: &[Binder]) -> Vec<Candidate> {
        let mut out = vec![Candidate { label: "bot".into(), proc: Proc::bot(ty) }];
        for &c in &self.constants {
            out.push(Candidate { label: format!("const{c}"), proc: Proc::constant(ty, c) });
        }
        if self.probes {
            for x in mention {
                let args = x.ty.args().iter().map(|t| Proc::constant(t, 0)).collect();
                let body = Expr::case_app(x.name.clone(), args, Family::identity());
                let params = ty.args().into_iter().map(|t| Binder::fresh("u", t)).collect();
                out.push(Candidate { label: format!("probe({})", x.name.hint()), proc: Proc::lam(params, body) });
            }
        }
        if self.reversed {
            out.reverse();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_closed_without_mentions() {
        let d = SubstDictionary::default();
        let c = d.candidates(&SimpleType::pure(2), &[]);
        assert_eq!(c.len(), 2);
        for cand in &c {
            assert!(nsp_term::free_vars_proc(&cand.proc, 4).is_empty());
        }
        let x = Binder::fresh("x", SimpleType::pure(1));
        let c = d.candidates(&SimpleType::base(), std::slice::from_ref(&x));
        assert_eq!(c.len(), 3);
        assert!(nsp_term::free_vars_proc(&c[2].proc, 4).contains(&x.name));
    }
}
