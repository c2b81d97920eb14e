//! Random well-typed terms `λg x. M` with `g : (k+1) -> (k+1)` in which every
//! `Y` sits at a type of level at most `k`.

use pcf_lang::term::fresh_name;
use pcf_lang::{SimpleType, Term};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

struct Gen {
    rng: StdRng,
    k: usize,
    vars: Vec<(String, SimpleType)>,
}

impl Gen {
    fn nat(&mut self, size: usize) -> Term {
        if size <= 1 {
            return self.leaf();
        }
        match self.rng.gen_range(0..10) {
            0 => Term::app(Term::suc(), self.nat(size - 1)).unwrap(),
            1 => Term::app(Term::pre(), self.nat(size - 1)).unwrap(),
            2 => {
                let s = (size - 1) / 3;
                Term::apps(Term::ifzero(), [self.nat(s.max(1)), self.nat(s.max(1)), self.nat(s.max(1))]).unwrap()
            }
            3 => self.recursion(size - 1),
            _ => self.apply_var(size - 1),
        }
    }

    fn leaf(&mut self) -> Term {
        let bases: Vec<String> = self.vars.iter().filter(|(_, t)| t.is_base()).map(|(n, _)| n.clone()).collect();
        if !bases.is_empty() && self.rng.gen_bool(0.5) {
            let i = self.rng.gen_range(0..bases.len());
            return Term::var(bases[i].clone(), SimpleType::base());
        }
        Term::num(self.rng.gen_range(0..3))
    }

    /// `v N⃗` for a variable in scope, `g` preferred.
    fn apply_var(&mut self, size: usize) -> Term {
        let fns: Vec<(String, SimpleType)> = self.vars.iter().filter(|(_, t)| !t.is_base()).cloned().collect();
        if fns.is_empty() {
            return self.leaf();
        }
        let i = if self.rng.gen_bool(0.4) { 0 } else { self.rng.gen_range(0..fns.len()) };
        let (v, ty) = fns[i].clone();
        let args = ty.args();
        let each = (size / args.len().max(1)).max(1);
        let terms: Vec<Term> = args.iter().map(|t| self.at(t, each)).collect();
        Term::apps(Term::var(v, ty), terms).unwrap()
    }

    /// `Y_σ (λf y⃗. M) N⃗` with `σ` of level at most `k`.
    fn recursion(&mut self, size: usize) -> Term {
        let level = self.rng.gen_range(1..=self.k);
        let sigma = SimpleType::pure(level);
        let f = fresh_name("r");
        self.vars.push((f.clone(), sigma.clone()));
        let step = self.at(&sigma, (size / 2).max(1));
        self.vars.pop();
        let fix = Term::app(Term::y(sigma.clone()), Term::lam(f, sigma.clone(), step)).unwrap();
        let args: Vec<Term> = sigma.args().iter().map(|t| self.at(t, (size / 2).max(1))).collect();
        Term::apps(fix, args).unwrap()
    }

    /// A term of type `t`: `λy⃗. M` with `M : N`.
    fn at(&mut self, t: &SimpleType, size: usize) -> Term {
        let params: Vec<(String, SimpleType)> = t.args().into_iter().map(|a| (fresh_name(if a.is_base() { "n" } else { "h" }), a)).collect();
        let n = self.vars.len();
        self.vars.extend(params.iter().cloned());
        let mut body = self.nat(size);
        self.vars.truncate(n);
        for (p, ty) in params.into_iter().rev() {
            body = Term::lam(p, ty, body);
        }
        body
    }
}

/// `count` terms from `seed`, each of size budget `size`.
pub fn random_pcf_k(k: usize, count: usize, size: usize, seed: u64) -> Vec<Term> {
    let gty = SimpleType::arrow(SimpleType::pure(k + 1), SimpleType::pure(k + 1));
    let mut gen = Gen { rng: StdRng::seed_from_u64(seed), k, vars: Vec::new() };
    (0..count)
        .map(|_| {
            let g = fresh_name("g");
            gen.vars = vec![(g.clone(), gty.clone())];
            let body = gen.at(&SimpleType::pure(k + 1), size);
            Term::lam(g, gty.clone(), body)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_terms_are_typed_and_capped() {
        for t in random_pcf_k(1, 30, 10, 7) {
            assert!(t.well_typed());
            assert!(t.is_closed());
            assert!(pcf_lang::classify(&t).in_pcf_k(1));
            let g = SimpleType::arrow(SimpleType::pure(2), SimpleType::pure(2));
            assert_eq!(*t.ty(), SimpleType::arrow(g, SimpleType::pure(2)));
        }
    }

    #[test]
    fn seeded() {
        let a: Vec<usize> = random_pcf_k(1, 5, 8, 3).iter().map(|t| t.size()).collect();
        let b: Vec<usize> = random_pcf_k(1, 5, 8, 3).iter().map(|t| t.size()).collect();
        assert_eq!(a, b);
    }
}
