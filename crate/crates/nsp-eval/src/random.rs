//! Seeded random meta-terms and one-hole contexts over a small typed environment.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use nsp_term::{Binder, Expr, Family, Ground, Name, Proc};
use pcf_lang::SimpleType;

use crate::stages::{MetaContext, Plug};
use crate::step::Meta;

/// A context together with a term for its hole.
#[derive(Clone, Debug)]
pub struct Instance {
    pub env: Vec<Binder>,
    pub ctx: MetaContext,
    pub plugs: Vec<Plug>,
}

/// Generator of well-typed meta-terms with β-redexes, case-of-case and
/// case-of-numeral, but no fixed points or generator families.
pub struct MetaGen {
    rng: StdRng,
}

const MAX_NUM: u64 = 3;

impl MetaGen {
    pub fn new(seed: u64) -> MetaGen {
        MetaGen { rng: StdRng::seed_from_u64(seed) }
    }

    /// Free variables `x : N`, `f : 1`, `h : 2`.
    pub fn default_env() -> Vec<Binder> {
        vec![
            Binder::fresh("x", SimpleType::base()),
            Binder::fresh("f", SimpleType::pure(1)),
            Binder::fresh("h", SimpleType::pure(2)),
        ]
    }

    fn small_type(&mut self) -> SimpleType {
        if self.rng.gen_bool(0.6) {
            SimpleType::base()
        } else {
            SimpleType::pure(1)
        }
    }

    fn leaf(&mut self) -> Expr {
        if self.rng.gen_ratio(1, 8) {
            Expr::Bot
        } else {
            Expr::Num(self.rng.gen_range(0..MAX_NUM))
        }
    }

    fn family(&mut self, env: &[Binder], size: usize) -> Family {
        match self.rng.gen_range(0..5) {
            0 => Family::identity(),
            1 => Family::affine(self.rng.gen_range(-1..=1)),
            2 => Family::bot().with(self.rng.gen_range(0..MAX_NUM), self.expr(env, size)),
            3 => Family::constant(self.expr(env, size)),
            _ => Family::identity().with(self.rng.gen_range(0..MAX_NUM), self.expr(env, size)),
        }
    }

    /// `λy⃗. E` at `ty`.
    pub fn proc(&mut self, ty: &SimpleType, env: &[Binder], size: usize) -> Proc {
        let params: Vec<Binder> = ty.args().into_iter().map(|t| Binder::fresh("y", t)).collect();
        let mut inner = env.to_vec();
        inner.extend(params.iter().cloned());
        let body = self.expr(&inner, size);
        Proc::lam(params, body)
    }

    fn args(&mut self, ty: &SimpleType, env: &[Binder], size: usize) -> Vec<Proc> {
        let ts = ty.args();
        let each = (size / ts.len().max(1)).max(1);
        ts.iter().map(|t| self.proc(t, env, each)).collect()
    }

    /// A random scrutinee: a variable application, a β-redex, a nested case
    /// or a numeral.
    fn ground(&mut self, env: &[Binder], size: usize) -> Ground {
        let s = size.saturating_sub(1).max(1);
        match self.rng.gen_range(0..4) {
            0 if !env.is_empty() => {
                let v = env[self.rng.gen_range(0..env.len())].clone();
                let args = self.args(&v.ty, env, s);
                Ground::app(v.name, args)
            }
            1 => {
                let ty = SimpleType::from_args(vec![self.small_type()]);
                let ty = if self.rng.gen_bool(0.3) { SimpleType::base() } else { ty };
                let f = self.proc(&ty, env, s / 2 + 1);
                let args = self.args(&ty, env, s / 2 + 1);
                Ground::redex(f, args)
            }
            2 => Ground::Expr(self.expr(env, s)),
            _ => Ground::Expr(Expr::Num(self.rng.gen_range(0..MAX_NUM))),
        }
    }

    /// A meta-expression of roughly `size` nodes over `env`.
    pub fn expr(&mut self, env: &[Binder], size: usize) -> Expr {
        if size <= 1 || self.rng.gen_ratio(1, 6) {
            return self.leaf();
        }
        let half = size / 2;
        let scrut = self.ground(env, half.max(1));
        let fam = self.family(env, (size - half).max(1) / 2);
        Expr::case(scrut, fam)
    }

    /// A context of about `size` nodes with one expression hole, and a plug of
    /// about `plug_size` nodes drawn over the variables in scope at the hole.
    pub fn instance(&mut self, size: usize, plug_size: usize) -> Instance {
        let env = MetaGen::default_env();
        let hole = Name::fresh("hole");
        let (ctx, scope) = self.context(&env, &hole, size);
        let plug = self.expr(&scope, plug_size);
        Instance { env, ctx: MetaContext::new(Meta::Expr(ctx), vec![hole]), plugs: vec![Plug::Expr(plug)] }
    }

    fn context(&mut self, env: &[Binder], hole: &Name, size: usize) -> (Expr, Vec<Binder>) {
        if size <= 2 || self.rng.gen_ratio(1, 4) {
            return (Expr::case_app(hole.clone(), vec![], Family::identity()), env.to_vec());
        }
        let s = size - 1;
        match self.rng.gen_range(0..4) {
            // Hole in the body of a redex's function part.
            0 => {
                let ty = SimpleType::from_args(vec![self.small_type()]);
                let params: Vec<Binder> = ty.args().into_iter().map(|t| Binder::fresh("y", t)).collect();
                let mut inner = env.to_vec();
                inner.extend(params.iter().cloned());
                let (body, scope) = self.context(&inner, hole, s / 2);
                let args = self.args(&ty, env, s / 2 + 1);
                let fam = self.family(env, 2);
                (Expr::case(Ground::redex(Proc::lam(params, body), args), fam), scope)
            }
            // Hole in an argument of a variable application.
            1 => {
                let v = env.iter().find(|b| !b.ty.is_base()).cloned().expect("environment has a function variable");
                let tys = v.ty.args();
                let at = self.rng.gen_range(0..tys.len());
                let mut args = Vec::new();
                let mut scope = env.to_vec();
                for (i, t) in tys.iter().enumerate() {
                    if i == at {
                        let params: Vec<Binder> = t.args().into_iter().map(|t| Binder::fresh("y", t)).collect();
                        let mut inner = env.to_vec();
                        inner.extend(params.iter().cloned());
                        let (body, sc) = self.context(&inner, hole, s / 2);
                        scope = sc;
                        args.push(Proc::lam(params, body));
                    } else {
                        args.push(self.proc(t, env, 2));
                    }
                }
                let fam = self.family(env, 2);
                (Expr::case(Ground::app(v.name, args), fam), scope)
            }
            // Hole in a branch.
            2 => {
                let scrut = self.ground(env, s / 2);
                let (branch, scope) = self.context(env, hole, s / 2);
                let i = self.rng.gen_range(0..MAX_NUM);
                let fam = if self.rng.gen_bool(0.5) { Family::identity().with(i, branch) } else { Family::constant(branch) };
                (Expr::case(scrut, fam), scope)
            }
            // Hole in a scrutinee.
            _ => {
                let (inner, scope) = self.context(env, hole, s / 2);
                let fam = self.family(env, s / 2);
                (Expr::case_of(inner, fam), scope)
            }
        }
    }
}

/// Number of constructors in a meta-term.
pub fn meta_size(m: &Meta) -> usize {
    match m {
        Meta::Proc(p) => p.size(),
        Meta::Expr(e) => e.size(),
        Meta::Ground(g) => g.size(),
    }
}
