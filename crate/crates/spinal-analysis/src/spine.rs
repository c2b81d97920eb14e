//! Bounded search for spinal structure.
//!
//! An expression is head-spinal to depth `d` when it is `case g (λx⃗′.E[e′]) o⃗ of …`
//! (with an extra leading argument in extended mode), some substitution `°`
//! from the dictionary makes `o⃗° ⪰ x⃗^η`, and `e′` is head-spinal to depth
//! `d − 1` with respect to `x⃗′` and the binders of `E`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use denote::as_lambda;
use extensional::{obs_leq, ComparisonVerdict, EnumBounds};
use nsp_eval::{eval_proc, Bounds};
use nsp_term::{
    alpha_eq_proc, check_regular, eta_expand, free_vars_proc, proc_to_sexpr, rename_proc, substitute_proc, type_to_sexpr, Binder, Binding, Cap, Expr,
    Ground, Head, Name, Proc,
};
use pcf_lang::SimpleType;
use serde_json::{json, Value};

use crate::dict::SubstDictionary;
use crate::SpinalError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `g : σ -> σ`; variables of lower level than `x` may mention it.
    Plain,
    /// `g : 0 -> σ -> σ`; the numeral argument is recorded and otherwise ignored.
    Extended,
    /// `g : ρ -> ρ` with homogeneous `ρ`; variables of lower sublevel than `x⃗` may mention it.
    Homogeneous,
    /// As homogeneous, with closed substitutions and no `g`-application around the hole.
    Strong,
}

impl Mode {
    pub fn as_str(&self) -> &'static str {
        match self {
            Mode::Plain => "plain",
            Mode::Extended => "extended",
            Mode::Homogeneous => "homogeneous",
            Mode::Strong => "strong",
        }
    }

    fn prefix(&self) -> usize {
        usize::from(*self == Mode::Extended)
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = SpinalError;

    fn from_str(s: &str) -> Result<Mode, SpinalError> {
        [Mode::Plain, Mode::Extended, Mode::Homogeneous, Mode::Strong]
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| SpinalError::Input(format!("unknown mode {s}")))
    }
}

/// One step of a position: into argument `i` (and under its binders), into
/// branch `i`, or into an expression scrutinee.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Arg(usize),
    Branch(u64),
    Scrut,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Arg(i) => write!(f, "a{i}"),
            Step::Branch(i) => write!(f, "b{i}"),
            Step::Scrut => write!(f, "s"),
        }
    }
}

pub fn path_string(p: &[Step]) -> String {
    if p.is_empty() {
        return "root".into();
    }
    p.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(".")
}

/// How `o⃗° ⪰ x⃗^η` was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// `⇓o°` is α-equal to `x^η`.
    Syntactic,
    /// No enumerated argument tuple separates them; relative to the bounds.
    Semantic(EnumBounds),
}

#[derive(Clone, Debug)]
pub struct Substituend {
    pub var: Binder,
    pub label: String,
    pub proc: Proc,
}

#[derive(Clone, Debug)]
pub struct SpineRecord {
    pub path: Vec<Step>,
    pub binders: Vec<Binder>,
    pub env: Vec<Binder>,
    pub extra: Option<Proc>,
    pub args: Vec<Proc>,
    pub subst: Vec<Substituend>,
    pub evidence: Evidence,
    /// The hole leading here lies inside an argument of a `g`-application.
    pub under_g: bool,
}

#[derive(Clone, Debug)]
pub struct SpinalConfig {
    pub mode: Mode,
    pub depth: usize,
    pub eval: Bounds,
    pub enum_bounds: EnumBounds,
    pub dict: SubstDictionary,
    /// How many binders deep `e′` may sit inside `λx⃗′.E[e′]`.
    pub context_depth: usize,
}

impl std::default::Default for SpinalConfig {
    fn default() -> SpinalConfig {
        SpinalConfig {
            mode: Mode::Plain,
            depth: 5,
            eval: Bounds::new(8, 4, 100_000),
            enum_bounds: EnumBounds::tiny(),
            dict: SubstDictionary::default(),
            context_depth: 6,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpinalCertificate {
    pub mode: Mode,
    pub g: Binder,
    pub dict: String,
    pub records: Vec<SpineRecord>,
}

impl SpinalCertificate {
    pub fn depth(&self) -> usize {
        self.records.len()
    }

    /// The first `d` records.
    pub fn restrict(&self, d: usize) -> SpinalCertificate {
        SpinalCertificate { records: self.records[..d.min(self.records.len())].to_vec(), ..self.clone() }
    }

    pub fn is_bound_relative(&self) -> bool {
        self.records.iter().any(|r| matches!(r.evidence, Evidence::Semantic(_)))
    }

    /// Re-checks every record from its stored data: the substitution is of the
    /// permitted kind, its result passes the recorded check, records are
    /// nested, and in strong mode no hole sits under a `g`-application.
    pub fn replay(&self, cfg: &SpinalConfig) -> bool {
        let Ok(layout) = Layout::new(self.mode, &self.g.ty) else { return false };
        for (i, r) in self.records.iter().enumerate() {
            if i > 0 {
                let prev = &self.records[i - 1];
                let mut want = prev.path.clone();
                want.push(Step::Arg(layout.prefix));
                if !r.path.starts_with(&want) {
                    return false;
                }
                if self.mode == Mode::Strong && r.under_g {
                    return false;
                }
            }
            for s in &r.subst {
                let fv = free_vars_proc(&s.proc, cfg.eval.branch_bound);
                let allowed: BTreeSet<Name> = if r.env.iter().any(|v| v.name == s.var.name) && may_mention(self.mode, &s.var.ty, &r.binders) {
                    r.binders.iter().map(|b| b.name.clone()).collect()
                } else {
                    BTreeSet::new()
                };
                if !fv.is_subset(&allowed) {
                    return false;
                }
            }
            let binding: Binding = r.subst.iter().map(|s| (s.var.name.clone(), s.proc.clone())).collect();
            let ok = match r.evidence {
                Evidence::Syntactic => syntactic(&r.args, &r.binders, &binding, cfg).unwrap_or(false),
                Evidence::Semantic(eb) => semantic(&r.args, &r.binders, &binding, &eb, cfg).unwrap_or(false),
            };
            if !ok {
                return false;
            }
        }
        true
    }

    pub fn to_json(&self) -> Value {
        let mut namer = Namer::default();
        let gname = namer.name(&self.g.name);
        let spine: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let binders: Vec<String> = r.binders.iter().map(|b| format!("{} : {}", namer.name(&b.name), type_to_sexpr(&b.ty))).collect();
                let env: Vec<String> = r.env.iter().map(|b| format!("{} : {}", namer.name(&b.name), type_to_sexpr(&b.ty))).collect();
                let extra = r.extra.as_ref().map(|p| namer.render(p));
                let args: Vec<String> = r.args.iter().map(|p| namer.render(p)).collect();
                let subst: Vec<Value> = r
                    .subst
                    .iter()
                    .map(|s| json!({"var": namer.name(&s.var.name), "candidate": s.label, "value": namer.render(&s.proc)}))
                    .collect();
                let evidence = match r.evidence {
                    Evidence::Syntactic => json!({"kind": "syntactic"}),
                    Evidence::Semantic(eb) => json!({"kind": "semantic", "bounds": eb.to_string()}),
                };
                json!({
                    "path": path_string(&r.path),
                    "binders": binders,
                    "env": env,
                    "extra": extra,
                    "args": args,
                    "subst": subst,
                    "evidence": evidence,
                })
            })
            .collect();
        json!({
            "mode": self.mode.as_str(),
            "g": format!("{gname} : {}", type_to_sexpr(&self.g.ty)),
            "depth": self.depth(),
            "dict": self.dict,
            "bound_relative": self.is_bound_relative(),
            "spine": spine,
        })
    }
}

/// Stable display names for the variables a certificate mentions.
#[derive(Default)]
struct Namer {
    names: HashMap<Name, String>,
    counters: HashMap<String, usize>,
}

impl Namer {
    fn name(&mut self, n: &Name) -> String {
        if let Some(s) = self.names.get(n) {
            return s.clone();
        }
        let s = if n.is_user() {
            n.hint().to_string()
        } else {
            let stem = n.hint().trim_end_matches(|c: char| c.is_ascii_digit() || c == '_');
            let stem = if stem.is_empty() { "v" } else { stem };
            let c = self.counters.entry(stem.to_string()).or_insert(0);
            *c += 1;
            format!("{stem}#{c}")
        };
        self.names.insert(n.clone(), s.clone());
        s
    }

    fn render(&mut self, p: &Proc) -> String {
        let map: HashMap<Name, Name> = free_vars_proc(p, 8).into_iter().map(|n| (n.clone(), Name::new(&self.name(&n)))).collect();
        proc_to_sexpr(&rename_proc(p, &map))
    }
}

/// The argument positions of `g` in a given mode.
struct Layout {
    prefix: usize,
    o_tys: Vec<SimpleType>,
}

impl Layout {
    fn new(mode: Mode, g_ty: &SimpleType) -> Result<Layout, SpinalError> {
        let args = g_ty.args();
        let prefix = mode.prefix();
        let bad = || SpinalError::Type(format!("{g_ty} does not fit {mode} mode"));
        if args.len() < prefix + 2 || (prefix == 1 && !args[0].is_base()) {
            return Err(bad());
        }
        let r_ty = &args[prefix];
        let o_tys = args[prefix + 1..].to_vec();
        if r_ty.args() != o_tys || r_ty.level() == 0 {
            return Err(bad());
        }
        if matches!(mode, Mode::Homogeneous | Mode::Strong) && o_tys.iter().any(|t| *t != o_tys[0]) {
            return Err(bad());
        }
        if mode == Mode::Strong && r_ty.level() != 1 {
            return Err(bad());
        }
        Ok(Layout { prefix, o_tys })
    }

    fn arity(&self) -> usize {
        self.prefix + 1 + self.o_tys.len()
    }
}

/// True if a variable of type `ty` in `V` may be replaced by a term mentioning `xs`.
fn may_mention(mode: Mode, ty: &SimpleType, xs: &[Binder]) -> bool {
    match mode {
        Mode::Plain | Mode::Extended => xs.iter().all(|x| ty.level() < x.ty.level()),
        Mode::Homogeneous => xs.iter().all(|x| ty.sublevel() < x.ty.sublevel()),
        Mode::Strong => false,
    }
}

fn contains_elided(p: &Proc, bb: usize) -> bool {
    fn expr(e: &Expr, bb: usize) -> bool {
        match e {
            Expr::Elided => true,
            Expr::Case(c) => {
                let scrut = match &c.scrut {
                    Ground::Expr(e) => expr(e, bb),
                    Ground::App(_, args) => args.iter().any(|a| contains_elided(a, bb)),
                };
                scrut || (0..bb as u64).any(|i| expr(&c.branches.get(i), bb))
            }
            _ => false,
        }
    }
    match p {
        Proc::Lam(l) => expr(&l.body, bb),
        Proc::Fix(_) => true,
    }
}

fn instantiate(os: &[Proc], binding: &Binding, cfg: &SpinalConfig) -> Option<Vec<Proc>> {
    let mut out = Vec::with_capacity(os.len());
    for o in os {
        let r = eval_proc(&substitute_proc(o, binding), &cfg.eval);
        if r.fuel_exhausted {
            return None;
        }
        out.push(r.term);
    }
    Some(out)
}

fn syntactic(os: &[Proc], xs: &[Binder], binding: &Binding, cfg: &SpinalConfig) -> Option<bool> {
    let inst = instantiate(os, binding, cfg)?;
    Some(inst.iter().zip(xs).all(|(o, x)| alpha_eq_proc(o, &eta_expand(&x.name, &x.ty), cfg.eval.depth, cfg.eval.branch_bound)))
}

/// `λx⃗. o°_j ⪰ λx⃗. x_j^η` on every enumerated argument tuple, for each `j`.
fn semantic(os: &[Proc], xs: &[Binder], binding: &Binding, eb: &EnumBounds, cfg: &SpinalConfig) -> Option<bool> {
    let inst = instantiate(os, binding, cfg)?;
    for (o, x) in inst.iter().zip(xs) {
        if contains_elided(o, cfg.eval.branch_bound) {
            return None;
        }
        let (oparams, obody) = as_lambda(o);
        let eta = eta_expand(&x.name, &x.ty);
        let (eparams, ebody) = as_lambda(&eta);
        let close = |params: Vec<Binder>, body: Expr| {
            let mut all = xs.to_vec();
            all.extend(params);
            Proc::lam(all, body)
        };
        match obs_leq(&close(eparams, ebody), &close(oparams, obody), eb, &cfg.eval) {
            Ok(ComparisonVerdict::LeqUpTo(_)) => {}
            Ok(_) => return Some(false),
            Err(_) => return None,
        }
    }
    Some(true)
}

/// A candidate hole: a `g`-headed case inside some context.
struct Pos {
    expr: Expr,
    scope: Vec<Binder>,
    steps: Vec<Step>,
    under_g: bool,
}

struct Checker<'a> {
    cfg: &'a SpinalConfig,
    g: Binder,
    layout: Layout,
    types: HashMap<Name, SimpleType>,
}

impl<'a> Checker<'a> {
    fn new(cfg: &'a SpinalConfig, g: Binder, env: &[(Name, SimpleType)]) -> Result<Checker<'a>, SpinalError> {
        if cfg.depth == 0 {
            return Err(SpinalError::Input("depth 0".into()));
        }
        let layout = Layout::new(cfg.mode, &g.ty)?;
        let mut types: HashMap<Name, SimpleType> = env.iter().cloned().collect();
        types.insert(g.name.clone(), g.ty.clone());
        Ok(Checker { cfg, g, layout, types })
    }

    fn g_args<'e>(&self, e: &'e Expr) -> Option<&'e [Proc]> {
        let c = e.as_case()?;
        match &c.scrut {
            Ground::App(Head::Var(h), args) if *h == self.g.name && args.len() == self.layout.arity() => Some(args),
            _ => None,
        }
    }

    fn positions(&mut self, e: &Expr, scope: &mut Vec<Binder>, steps: &mut Vec<Step>, under_g: bool, budget: usize, out: &mut Vec<Pos>) {
        let Expr::Case(c) = e else { return };
        if self.g_args(e).is_some() {
            out.push(Pos { expr: e.clone(), scope: scope.clone(), steps: steps.clone(), under_g });
        }
        match &c.scrut {
            Ground::Expr(s) => {
                steps.push(Step::Scrut);
                self.positions(s, scope, steps, under_g, budget, out);
                steps.pop();
            }
            Ground::App(h, args) => {
                let is_g = matches!(h, Head::Var(v) if *v == self.g.name);
                if budget > 0 {
                    for (i, a) in args.iter().enumerate() {
                        let (params, body) = as_lambda(a);
                        for p in &params {
                            self.types.insert(p.name.clone(), p.ty.clone());
                        }
                        let n = scope.len();
                        scope.extend(params);
                        steps.push(Step::Arg(i));
                        self.positions(&body, scope, steps, under_g || is_g, budget - 1, out);
                        steps.pop();
                        scope.truncate(n);
                    }
                }
            }
        }
        for i in 0..self.cfg.eval.branch_bound as u64 {
            let b = c.branches.get(i);
            if matches!(b, Expr::Case(_)) {
                steps.push(Step::Branch(i));
                self.positions(&b, scope, steps, under_g, budget, out);
                steps.pop();
            }
        }
    }

    fn condition1(&self, os: &[Proc], xs: &[Binder], v: &[Binder]) -> Option<(Vec<Substituend>, Evidence)> {
        let bb = self.cfg.eval.branch_bound;
        let xnames: BTreeSet<Name> = xs.iter().map(|x| x.name.clone()).collect();
        let mut vars: BTreeSet<Name> = BTreeSet::new();
        for o in os {
            vars.extend(free_vars_proc(o, bb));
        }
        let vars: Vec<Binder> = vars
            .into_iter()
            .filter(|n| !xnames.contains(n))
            .map(|n| {
                let ty = self.types.get(&n).cloned();
                ty.map(|t| Binder::new(n, t))
            })
            .collect::<Option<Vec<_>>>()?;
        let cands: Vec<Vec<crate::dict::Candidate>> = vars
            .iter()
            .map(|w| {
                let mention = if v.iter().any(|b| b.name == w.name) && may_mention(self.cfg.mode, &w.ty, xs) { xs } else { &[][..] };
                self.cfg.dict.candidates(&w.ty, mention)
            })
            .collect();
        let combos = combinations(&cands, self.cfg.dict.max_combinations);
        let build = |combo: &[usize]| -> (Binding, Vec<Substituend>) {
            let mut binding = Binding::new();
            let mut subs = Vec::new();
            for ((w, c), &i) in vars.iter().zip(&cands).zip(combo) {
                binding.insert(w.name.clone(), c[i].proc.clone());
                subs.push(Substituend { var: w.clone(), label: c[i].label.clone(), proc: c[i].proc.clone() });
            }
            (binding, subs)
        };
        for combo in &combos {
            let (binding, subs) = build(combo);
            if syntactic(os, xs, &binding, self.cfg) == Some(true) {
                return Some((subs, Evidence::Syntactic));
            }
        }
        let eb = self.cfg.enum_bounds;
        for combo in &combos {
            let (binding, subs) = build(combo);
            if semantic(os, xs, &binding, &eb, self.cfg) == Some(true) {
                return Some((subs, Evidence::Semantic(eb)));
            }
        }
        None
    }

    fn head(&mut self, e: &Expr, xs: &[Binder], v: &[Binder], path: &[Step], under_g: bool, remaining: usize, recs: &mut Vec<SpineRecord>) -> bool {
        if remaining == 0 {
            return true;
        }
        let Some(args) = self.g_args(e).map(|a| a.to_vec()) else { return false };
        let p = self.layout.prefix;
        let (r, os) = (&args[p], &args[p + 1..]);
        let Some((subst, evidence)) = self.condition1(os, xs, v) else { return false };
        recs.push(SpineRecord {
            path: path.to_vec(),
            binders: xs.to_vec(),
            env: v.to_vec(),
            extra: (p == 1).then(|| args[0].clone()),
            args: os.to_vec(),
            subst,
            evidence,
            under_g,
        });
        if remaining > 1 {
            let (params, body) = as_lambda(r);
            for b in &params {
                self.types.insert(b.name.clone(), b.ty.clone());
            }
            let mut found = Vec::new();
            self.positions(&body, &mut Vec::new(), &mut Vec::new(), false, self.cfg.context_depth, &mut found);
            for pos in found {
                if self.cfg.mode == Mode::Strong && pos.under_g {
                    continue;
                }
                let mut sub = path.to_vec();
                sub.push(Step::Arg(p));
                sub.extend(pos.steps.iter().copied());
                if self.head(&pos.expr, &params, &pos.scope, &sub, pos.under_g, remaining - 1, recs) {
                    return true;
                }
            }
            recs.pop();
            return false;
        }
        true
    }

    fn certificate(&self, records: Vec<SpineRecord>) -> SpinalCertificate {
        SpinalCertificate { mode: self.cfg.mode, g: self.g.clone(), dict: self.cfg.dict.to_string(), records }
    }
}

/// Index tuples into `cands`, first variable outermost, at most `limit` of them.
fn combinations(cands: &[Vec<crate::dict::Candidate>], limit: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in cands {
        let mut next = Vec::new();
        'outer: for prefix in &out {
            for i in 0..c.len() {
                if next.len() >= limit {
                    break 'outer;
                }
                let mut v: Vec<usize> = prefix.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Head-spinality of `e` with respect to `x⃗, V` to depth `cfg.depth`, where
/// `env` gives the types of all free variables (including `g`).
pub fn head_spinal_check(
    e: &Expr,
    g: &Binder,
    xs: &[Binder],
    v: &[Binder],
    env: &[(Name, SimpleType)],
    cfg: &SpinalConfig,
) -> Result<Option<SpinalCertificate>, SpinalError> {
    let mut ch = Checker::new(cfg, g.clone(), env)?;
    for b in xs.iter().chain(v) {
        ch.types.insert(b.name.clone(), b.ty.clone());
    }
    if xs.iter().map(|b| &b.ty).ne(ch.layout.o_tys.iter()) {
        return Err(SpinalError::Type("binders do not match the argument types of g".into()));
    }
    let mut recs = Vec::new();
    Ok(ch.head(e, xs, v, &[], false, cfg.depth, &mut recs).then(|| ch.certificate(recs)))
}

/// The designated variable: `g` if given, else the first free variable and
/// then the first binder whose type fits the mode.
fn pick_g(p: &Proc, env: &[(Name, SimpleType)], g: Option<&Name>, mode: Mode) -> Option<(Binder, Proc)> {
    if let Some(g) = g {
        if let Some((_, t)) = env.iter().find(|(n, _)| n == g) {
            return Some((Binder::new(g.clone(), t.clone()), p.clone()));
        }
        let l = p.as_lam()?;
        let first = l.params.first().filter(|b| b.name == *g)?;
        return Some((first.clone(), Proc::lam(l.params[1..].to_vec(), l.body.clone())));
    }
    if let Some((n, t)) = env.iter().find(|(_, t)| Layout::new(mode, t).is_ok()) {
        return Some((Binder::new(n.clone(), t.clone()), p.clone()));
    }
    let l = p.as_lam()?;
    let first = l.params.first().filter(|b| Layout::new(mode, &b.ty).is_ok())?;
    Some((first.clone(), Proc::lam(l.params[1..].to_vec(), l.body.clone())))
}

/// Injective choices of variables from `scope` with the given types, in scope order.
fn choices(scope: &[Binder], tys: &[SimpleType]) -> Vec<Vec<Binder>> {
    let mut out = vec![Vec::new()];
    for t in tys {
        let mut next = Vec::new();
        for prefix in &out {
            for b in scope.iter().filter(|b| b.ty == *t && !prefix.iter().any(|p: &Binder| p.name == b.name)) {
                let mut v = prefix.clone();
                v.push(b.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// First certificate, in preorder over positions and scope order over `x⃗`,
/// for a subexpression of `p`. `None` when no variable fits the mode or no
/// subexpression passes under the dictionary and bounds.
pub fn spinal_check(p: &Proc, env: &[(Name, SimpleType)], g: Option<&Name>, cfg: &SpinalConfig) -> Result<Option<SpinalCertificate>, SpinalError> {
    let Some((gb, body)) = pick_g(p, env, g, cfg.mode) else {
        if g.is_some() {
            return Err(SpinalError::Input("the designated variable is neither free nor the first binder".into()));
        }
        return Ok(None);
    };
    let k = Layout::new(cfg.mode, &gb.ty)?.o_tys.iter().map(|t| t.level()).max().unwrap_or(0) + 1;
    let cap = match cfg.mode {
        Mode::Plain | Mode::Extended => Cap::Level(k),
        Mode::Homogeneous | Mode::Strong => {
            let r = gb.ty.args()[cfg.mode.prefix()].clone();
            Cap::Sublevel(r.level(), r.width())
        }
    };
    let mut full_env: Vec<(Name, SimpleType)> = env.iter().filter(|(n, _)| *n != gb.name).cloned().collect();
    full_env.push((gb.name.clone(), gb.ty.clone()));
    if !check_regular(&body, &full_env, &gb.name, cap, cfg.eval.branch_bound) {
        return Err(SpinalError::Input(format!("not regular for {} : {}", gb.name, gb.ty)));
    }
    let mut ch = Checker::new(cfg, gb.clone(), &full_env)?;
    let (params, e) = as_lambda(&body);
    for b in &params {
        ch.types.insert(b.name.clone(), b.ty.clone());
    }
    let outer: Vec<Binder> = env.iter().filter(|(n, _)| *n != gb.name).map(|(n, t)| Binder::new(n.clone(), t.clone())).collect();
    let mut scope: Vec<Binder> = outer;
    scope.extend(params);
    let mut found = Vec::new();
    let mut steps = Vec::new();
    ch.positions(&e, &mut scope, &mut steps, false, cfg.eval.depth, &mut found);
    let o_tys = ch.layout.o_tys.clone();
    for pos in found {
        for xs in choices(&pos.scope, &o_tys) {
            let v: Vec<Binder> = if cfg.mode == Mode::Strong {
                Vec::new()
            } else {
                pos.scope.iter().filter(|b| !xs.iter().any(|x| x.name == b.name)).cloned().collect()
            };
            let mut recs = Vec::new();
            if ch.head(&pos.expr, &xs, &v, &pos.steps, pos.under_g, cfg.depth, &mut recs) {
                return Ok(Some(ch.certificate(recs)));
            }
        }
    }
    Ok(None)
}
