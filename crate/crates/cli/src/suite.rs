//! The acceptance criteria, each a self-contained check with a one-line verdict.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use denote::{byval_proc, denote, y_proc, DenotationEnv};
use extensional::{
    distinguish, enumerate_finite, ext_order_finite, improve, improve_at, EnumBounds, ImprovementCase, Interp, ScanDomain, ScanVerdict,
};
use nsp_eval::{eval_expr, eval_in_stages, eval_proc, meta_alpha_eq, meta_size, Bounds, MetaGen};
use nsp_term::{alpha_eq_expr, alpha_eq_proc, eta_expand, parse_proc, parse_proc_in_env, proc_to_dot, proc_to_sexpr, syn_leq_proc};
use nsp_term::{Binder, Expr, Family, Ground, Name, Proc};
use pcf_lang::approx::y_approximant;
use pcf_lang::{RunResult, SimpleType, Term};
use spinal_analysis::{
    eta_spine_levels, funnel_report, gallery, mask, p_n, qn_chain, qn_decompose, random_pcf_k, rho, spinal_check, strict_samples, trivial_at, x_samples,
    DecomposeConfig, GalleryName, SpinalConfig,
};

use crate::commands::{read_witness, witness_file};
use crate::config::{Format, RunConfig};
use crate::load::{expectation, load_pcf};

#[derive(Clone, Debug)]
pub struct SuiteOptions {
    pub corpus: PathBuf,
    pub seed: u64,
    /// Criterion numbers to run; all when `None`.
    pub only: Option<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} {:<22} {v}  {}", self.id, self.name, self.detail)
    }
}

type Check = fn(&SuiteOptions) -> Result<String, String>;

pub const CRITERIA: [(usize, &str, Check); 10] = [
    (1, "adequacy", adequacy),
    (2, "staged-evaluation", staged_evaluation),
    (3, "eta-identities", eta_identities),
    (4, "y-approximants", y_approximants),
    (5, "figure", figure),
    (6, "spinal-census", spinal_census),
    (7, "decomposition-chain", decomposition_chain),
    (8, "masking", masking),
    (9, "improvement", improvement),
    (10, "witness", witness),
];

/// Wall-clock ceilings.
pub const ADEQUACY_LIMIT: Duration = Duration::from_secs(30);
pub const CENSUS_LIMIT: Duration = Duration::from_secs(300);

/// Bounds at which the golden renderings are made.
pub const FIGURE_DEPTH: usize = 5;
pub const FIGURE_BB: usize = 2;

pub fn run(opts: &SuiteOptions) -> Vec<CriterionResult> {
    CRITERIA
        .iter()
        .filter(|(id, _, _)| opts.only.as_ref().map_or(true, |o| o.contains(id)))
        .map(|&(id, name, check)| {
            let t = Instant::now();
            let r = check(opts);
            let elapsed = t.elapsed();
            let (passed, detail) = match r {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CriterionResult { id, name, passed, detail, elapsed }
        })
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pcf(opts: &SuiteOptions, file: &str) -> Result<Term, String> {
    load_pcf(&opts.corpus.join(file), &[]).map_err(|e| e.to_string())
}

fn den(t: &Term, b: &Bounds) -> Result<Proc, String> {
    let d = denote(t, &DenotationEnv::new(), b).map_err(|e| e.to_string())?;
    ensure(!d.fuel_exhausted, || format!("fuel exhausted denoting {t}"))?;
    Ok(d.proc)
}

fn nsp(opts: &SuiteOptions, file: &str) -> Result<(Vec<(Name, SimpleType)>, Proc), String> {
    let path = opts.corpus.join(file);
    let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_proc_in_env(&text).map_err(|e| format!("{file}: {e}"))
}

fn adequacy(opts: &SuiteOptions) -> Result<String, String> {
    let start = Instant::now();
    let mut files: Vec<PathBuf> = fs::read_dir(&opts.corpus)
        .map_err(|e| format!("{}: {e}", opts.corpus.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "pcf"))
        .collect();
    files.sort();
    let b = Bounds::new(4, 4, 1_000_000);
    let (mut numeric, mut other) = (0, 0);
    for path in &files {
        let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
        let Some(expect) = expectation(&text) else { continue };
        let name = path.file_name().unwrap().to_string_lossy();
        let t = load_pcf(path, &[]).map_err(|e| e.to_string())?;
        let op = pcf_lang::run(&t, 1_000_000).map_err(|e| format!("{name}: {e}"))?;
        let d = denote(&t, &DenotationEnv::new(), &b).map_err(|e| format!("{name}: {e}"))?;
        let leaf = d.proc.ground_body().cloned();
        match expect.as_str() {
            "diverge" | "stuck" => {
                let op_ok = if expect == "diverge" { matches!(op, RunResult::Diverged(_)) } else { matches!(op, RunResult::StuckOracle(..)) };
                ensure(op_ok, || format!("{name}: expected {expect}, ran to {op}"))?;
                ensure(!d.fuel_exhausted && leaf.as_ref().is_some_and(Expr::is_bot), || format!("{name}: denotation is not ⊥"))?;
                other += 1;
            }
            n => {
                let n: u64 = n.parse().map_err(|_| format!("{name}: bad expectation {n}"))?;
                ensure(op == RunResult::Value(n), || format!("{name}: expected {n}, ran to {op}"))?;
                ensure(!d.fuel_exhausted && d.proc.as_num() == Some(n), || format!("{name}: denotation leaf {:?} vs {n}", leaf.map(|e| e.as_num())))?;
                numeric += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(numeric >= 20, || format!("only {numeric} numeric programs"))?;
    ensure(elapsed < ADEQUACY_LIMIT, || format!("took {elapsed:.1?}"))?;
    Ok(format!("{numeric} values and {other} ⊥ programs agree"))
}

fn staged_evaluation(opts: &SuiteOptions) -> Result<String, String> {
    let outer = Bounds::new(8, 4, 200_000);
    let inner = Bounds::new(40, 16, 2_000_000);
    let mut gen = MetaGen::new(opts.seed);
    let mut size = 0;
    for i in 0..200 {
        let inst = gen.instance(14, 8);
        size += meta_size(&inst.ctx.fill(&inst.plugs));
        let (a, s) = eval_in_stages(&inst.ctx, &inst.plugs, &outer, &inner);
        ensure(!a.fuel_exhausted && !s.fuel_exhausted, || format!("instance {i} ran out of fuel"))?;
        ensure(meta_alpha_eq(&a.term, &s.term, outer.depth, outer.branch_bound), || format!("instance {i} disagrees"))?;
    }
    Ok(format!("200 contexts (seed {}, {size} nodes) agree at depth 8", opts.seed))
}

/// Types of level at most `level` whose every arrow chain has at most `width` arguments.
pub fn small_types(level: usize, width: usize) -> Vec<SimpleType> {
    if level == 0 {
        return vec![SimpleType::base()];
    }
    let lower = small_types(level - 1, width);
    let mut out = vec![SimpleType::base()];
    let mut tuples: Vec<Vec<SimpleType>> = vec![vec![]];
    for _ in 0..width {
        tuples = tuples.iter().flat_map(|t| lower.iter().map(move |a| [t.clone(), vec![a.clone()]].concat())).collect();
        out.extend(tuples.iter().map(|t| SimpleType::from_args(t.clone())));
    }
    out
}

fn eta_identities(_: &SuiteOptions) -> Result<String, String> {
    let (depth, bb) = (24, 2);
    let b = Bounds::new(depth, bb, 1_000_000);
    let types = small_types(3, 2);
    for ty in &types {
        let x = Name::fresh("x");
        let ys: Vec<Binder> = ty.args().into_iter().map(|t| Binder::fresh("y", t)).collect();
        let ys_eta: Vec<Proc> = ys.iter().map(|y| eta_expand(&y.name, &y.ty)).collect();
        let consts: Vec<Proc> = ys.iter().map(|y| Proc::constant(&y.ty, 1)).collect();
        for qs in [&ys_eta, &consts] {
            let lhs = eval_expr(&Expr::case(Ground::redex(eta_expand(&x, ty), qs.clone()), Family::identity()), &b);
            let rhs = Expr::case_app(x.clone(), qs.clone(), Family::identity());
            ensure(!lhs.fuel_exhausted && alpha_eq_expr(&lhs.term, &rhs, depth, bb), || format!("x^η q⃗ at {ty}"))?;
        }
        for p in [eta_expand(&x, ty), Proc::constant(ty, 2), Proc::bot(ty)] {
            let lhs = eval_proc(&Proc::lam(ys.clone(), Expr::case(Ground::redex(p.clone(), ys_eta.clone()), Family::identity())), &b);
            ensure(!lhs.fuel_exhausted && alpha_eq_proc(&lhs.term, &p, depth, bb), || format!("λy⃗. p y⃗^η at {ty}: {}", proc_to_sexpr(&p)))?;
        }
    }
    Ok(format!("both identities on {} types", types.len()))
}

fn y_approximants(_: &SuiteOptions) -> Result<String, String> {
    let b = Bounds::new(6, 4, 1_000_000);
    for sigma in [SimpleType::base(), SimpleType::pure(1), SimpleType::pure(2)] {
        let y = eval_proc(&y_proc(&sigma), &b).term;
        let approx: Vec<Proc> = (0..=7).map(|j| den(&y_approximant(&sigma, j), &b)).collect::<Result<_, _>>()?;
        for j in 0..=6 {
            ensure(syn_leq_proc(&approx[j], &approx[j + 1], 6, 4), || format!("σ={sigma}: Y^({j}) ⋢ Y^({})", j + 1))?;
            ensure(syn_leq_proc(&approx[j + 1], &y, 6, 4), || format!("σ={sigma}: Y^({}) ⋢ Y", j + 1))?;
        }
        for c in 1..=4 {
            for (j, a) in approx.iter().enumerate().take(7).skip(c) {
                ensure(alpha_eq_proc(a, &y, c, 4), || format!("σ={sigma}: Y^({j}) and Y differ at depth {c}"))?;
            }
        }
    }
    Ok("chains and truncations hold for σ ∈ {N, 1, 2}, j ≤ 6".into())
}

/// Render configuration for the golden DOT files.
pub fn figure_config(input: &str) -> RunConfig {
    let mut c = RunConfig::new("render");
    c.depth = FIGURE_DEPTH;
    c.branch_bound = FIGURE_BB;
    c.format = Format::Dot;
    c.inputs = vec![input.to_string()];
    c
}

fn figure(opts: &SuiteOptions) -> Result<String, String> {
    let b = figure_config("").eval_bounds();
    let y3 = den(&pcf(opts, "Y3.pcf")?, &b)?;
    let z3 = den(&pcf(opts, "Z3.pcf")?, &b)?;
    let lib = den(&pcf_lang::library::z_updown(2), &b)?;
    ensure(alpha_eq_proc(&z3, &lib, FIGURE_DEPTH, FIGURE_BB), || "Z3.pcf differs from the library Z".into())?;
    let levels = eta_spine_levels(&y3, 4, FIGURE_BB);
    ensure(levels >= 2, || format!("Y3 passes x^η to g on only {levels} levels"))?;
    ensure(eta_spine_levels(&z3, 4, FIGURE_BB) == 0, || "Z3 passes x^η to g".into())?;
    let fy = funnel_report(&y3, 2, FIGURE_BB);
    let fz = funnel_report(&z3, 2, FIGURE_BB);
    ensure(fy.using_parameters > 0, || "Y3 has no level-2 argument using its parameters".into())?;
    ensure(fz.applications > 0 && fz.using_parameters == 0, || format!("Z3 funnel {fz:?}"))?;
    for (file, p) in [("Y3", &y3), ("Z3", &z3)] {
        let path = opts.corpus.join("golden").join(format!("{file}.dot"));
        let golden = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(golden == proc_to_dot(p, file, FIGURE_BB), || format!("{file}.dot differs from the golden file"))?;
    }
    Ok(format!("Y3 η-spine {levels} levels, level-2 arguments using parameters Y3 {}/{} Z3 0/{}; goldens match", fy.using_parameters, fy.arguments, fz.arguments))
}

fn spinal_census(opts: &SuiteOptions) -> Result<String, String> {
    let start = Instant::now();
    let b = Bounds::new(8, 4, 100_000);
    let at = |d| SpinalConfig { depth: d, eval: b, ..SpinalConfig::default() };
    let (pos, neg) = (at(4), at(5));
    let mut positives: Vec<(String, Vec<(Name, SimpleType)>, Proc, Option<Name>)> = Vec::new();
    for file in ["F2.nsp", "F3.nsp"] {
        let (env, p) = nsp(opts, file)?;
        let g = env.first().map(|(n, _)| n.clone());
        positives.push((file.into(), env, eval_proc(&p, &b).term, g));
    }
    for name in [GalleryName::Z0, GalleryName::Z1] {
        for k in [1, 2] {
            let it = gallery(name, k, 0, &b).map_err(|e| e.to_string())?;
            positives.push((format!("{name} k={k}"), it.env, it.proc, it.g));
        }
    }
    for (name, env, p, g) in &positives {
        let c = spinal_check(p, env, g.as_ref(), &pos).map_err(|e| format!("{name}: {e}"))?.ok_or_else(|| format!("{name}: no certificate at d=4"))?;
        ensure(c.depth() == 4 && c.replay(&pos), || format!("{name}: certificate does not replay"))?;
    }
    let mut negatives: Vec<(String, Proc)> = Vec::new();
    for file in ["Z2.pcf", "Z3.pcf"] {
        negatives.push((file.into(), den(&pcf(opts, file)?, &b)?));
    }
    negatives.push(("byval".into(), byval_proc()));
    for (i, t) in random_pcf_k(1, 50, 10, opts.seed).iter().enumerate() {
        let d = denote(t, &DenotationEnv::new(), &Bounds::new(12, 4, 20_000)).map_err(|e| e.to_string())?;
        negatives.push((format!("generated #{i}"), d.proc));
    }
    for (name, p) in &negatives {
        let c = spinal_check(p, &[], None, &neg).map_err(|e| format!("{name}: {e}"))?;
        ensure(c.is_none(), || format!("{name}: unexpected certificate at d=5"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CENSUS_LIMIT, || format!("took {elapsed:.1?}"))?;
    Ok(format!("{} certified at d=4, {} without certificate at d=5", positives.len(), negatives.len()))
}

fn decomposition_chain(_: &SuiteOptions) -> Result<String, String> {
    let cfg = DecomposeConfig::new(1);
    let g = Name::new("g");
    ensure(strict_samples(1, 50).map_err(|e| e.to_string())?.len() >= 50, || "too few strict samples".into())?;
    ensure(x_samples(1, 50).map_err(|e| e.to_string())?.len() >= 50, || "too few X samples".into())?;
    for n in 0..=3 {
        let d = qn_decompose(&p_n(&g, 1, n, 8), &g, n, &cfg).map_err(|e| e.to_string())?;
        for c in &d.checks {
            ensure(c.passed, || format!("p_{n}: {c}"))?;
            ensure(c.samples >= 50 || c.name == "a = λ.n", || format!("p_{n}: {} used {} samples", c.name, c.samples))?;
        }
    }
    let chain = qn_chain(&p_n(&g, 1, 0, 8), &g, 0, 3, &cfg).map_err(|e| e.to_string())?;
    ensure(chain.len() == 3 && chain.iter().all(|d| d.passed()), || "masked chain stops early".into())?;
    Ok("p_0..p_3 pass all three checks; chain of 3".into())
}

fn masking(_: &SuiteOptions) -> Result<String, String> {
    let b = Bounds::new(8, 4, 100_000);
    let eb = EnumBounds::tiny();
    let err = |e: spinal_analysis::SpinalError| e.to_string();
    let m = mask(&Proc::bot(&rho(1)), 2, 4).map_err(err)?;
    let table: Vec<bool> = (0..6).map(|n| trivial_at(&m, n, &b)).collect();
    ensure(table == [false, false, true, true, false, false], || format!("μ_2,4(⊥) trivial at {table:?}"))?;
    let samples = strict_samples(1, 50).map_err(err)?;
    let mut checks = 0;
    for sg in &samples {
        let m = mask(sg, 2, 4).map_err(err)?;
        for n in 0..6 {
            ensure(trivial_at(&m, n, &b) == ((2..4).contains(&n) || trivial_at(sg, n, &b)), || format!("μ_2,4 table at {n} for {}", proc_to_sexpr(sg)))?;
        }
        for n in 0..5 {
            let same = mask(sg, n, n).map_err(err)?;
            ensure(distinguish(&same, sg, &eb, &b).map_err(|e| e.to_string())?.is_positive(), || format!("μ_{n},{n} changes {}", proc_to_sexpr(sg)))?;
        }
        for n in 0..4 {
            let two = mask(&mask(sg, n + 1, n + 2).map_err(err)?, n, n + 1).map_err(err)?;
            let one = mask(sg, n, n + 2).map_err(err)?;
            ensure(distinguish(&two, &one, &eb, &b).map_err(|e| e.to_string())?.is_positive(), || format!("composition at {n} for {}", proc_to_sexpr(sg)))?;
        }
        checks += 15;
    }
    Ok(format!("table, identity and composition on {} samples ({checks} checks)", samples.len()))
}

fn parsed(s: &str) -> Result<Proc, String> {
    parse_proc(s).map_err(|e| format!("{s}: {e}"))
}

fn order_label(f: &Proc, g: &Proc, b: &EnumBounds) -> Result<&'static str, String> {
    Ok(ext_order_finite(f, g, b).map_err(|e| e.to_string())?.label())
}

fn apart(f: &Proc, g: &Proc, b: &EnumBounds) -> Result<bool, String> {
    Ok(ext_order_finite(f, g, b).map_err(|e| e.to_string())?.is_apart())
}

/// `λg. case g(λ.c) of (…)` at level 2 with the given branches.
fn level_two(arg: &str, branches: &[(u64, u64)]) -> Result<Proc, String> {
    let bs: String = branches.iter().map(|(i, v)| format!(" ({i} {v})")).collect();
    parsed(&format!("(lam ((g (-> N N))) (case (app g (lam () {arg})){bs} (default bot)))"))
}

fn improvement(_: &SuiteOptions) -> Result<String, String> {
    let err = |e: extensional::ExtError| e.to_string();
    let tiny = EnumBounds::tiny();

    // Every strictly ordered first-order pair.
    let u = enumerate_finite(&SimpleType::pure(1), &tiny).map_err(err)?;
    let mut pairs = 0;
    for f in &u {
        for g in &u {
            if order_label(f, g, &tiny)? != "less" {
                continue;
            }
            pairs += 1;
            let r = improve(f, g, &tiny).map_err(err)?;
            ensure(order_label(f, &r.result, &tiny)? == "less" && apart(&r.result, g, &tiny)?, || format!("{} ≺ {}", proc_to_sexpr(f), proc_to_sexpr(g)))?;
        }
    }

    // No enumerated Φ above the identity other than the identity itself.
    let phis = enumerate_finite(&SimpleType::arrow(SimpleType::pure(1), SimpleType::pure(1)), &tiny.with_depth(2)).map_err(err)?;
    let dom = ScanDomain::new(1, &tiny).map_err(err)?;
    let mut identity = 0;
    for phi in &phis {
        match dom.scan(phi) {
            ScanVerdict::Improves(f) => return Err(format!("{} improves {}", proc_to_sexpr(phi), proc_to_sexpr(&f))),
            ScanVerdict::IdentityUpToBounds { .. } => identity += 1,
            ScanVerdict::NotAboveIdentity(_) => {}
        }
    }
    ensure(identity >= 1, || "the identity itself was not found".into())?;

    // Leaf replacement: f′ adds a branch that f leaves at ⊥.
    let leaf_cases: [(&[(u64, u64)], (u64, u64)); 5] =
        [(&[(1, 0)], (0, 5)), (&[(1, 0)], (0, 1)), (&[(1, 1)], (0, 0)), (&[(0, 0)], (1, 2)), (&[(1, 0), (2, 1)], (0, 3))];
    for (base, (a, v)) in leaf_cases {
        let f = level_two("bot", base)?;
        let mut more = base.to_vec();
        more.push((a, v));
        let f2 = level_two("bot", &more)?;
        let b = tiny;
        let r = improve(&f, &f2, &b).map_err(err)?;
        ensure(matches!(r.case, ImprovementCase::LeafReplacement { .. }), || format!("{} is not a leaf replacement", proc_to_sexpr(&f2)))?;
        ensure(order_label(&f, &r.result, &b)? == "less" && apart(&r.result, &f2, &b)?, || format!("leaf replacement on {}", proc_to_sexpr(&f2)))?;
    }

    // Saturation: the witness is strict, so f″ must look past its answer.
    let sat_cases: [(u64, u64, u64, u64); 5] = [(1, 2, 3, 1), (0, 2, 3, 1), (1, 3, 1, 1), (0, 2, 0, 1), (1, 2, 2, 0)];
    for (c, q_out, target, f_branch) in sat_cases {
        let f = level_two(&c.to_string(), &[(f_branch, 0)])?;
        let f2 = level_two(&c.to_string(), &[(f_branch, 0), (q_out, target)])?;
        let q = parsed(&format!("(lam (x) (case (app x) ({c} {q_out}) (default bot)))"))?;
        let r = improve_at(&f, &q, target).map_err(err)?;
        let ImprovementCase::Saturation { n, probe } = &r.case else { return Err(format!("{} is not a saturation", proc_to_sexpr(&f2))) };
        ensure(Interp::new(100_000).apply(&r.result, std::slice::from_ref(probe)) == Some(*n), || format!("saturated probe on {}", proc_to_sexpr(&f2)))?;
        ensure(order_label(&f, &r.result, &tiny)? == "less" && apart(&r.result, &f2, &tiny)?, || format!("saturation on {}", proc_to_sexpr(&f2)))?;
    }
    Ok(format!("{pairs} first-order pairs, {} Φ scanned, 5 + 5 level-2 instances", phis.len()))
}

/// Bounds for the `Y₂`/`Z₂` comparison.
pub fn witness_config() -> RunConfig {
    let mut c = RunConfig::new("compare");
    c.depth = 4;
    c.branch_bound = 4;
    c.fuel = 5_000;
    c.inputs = vec!["Y2.pcf".into(), "Z2.pcf".into()];
    c
}

fn witness(opts: &SuiteOptions) -> Result<String, String> {
    let cfg = witness_config();
    let b = cfg.eval_bounds();
    let y2 = den(&pcf(opts, "Y2.pcf")?, &b)?;
    let z2 = den(&pcf(opts, "Z2.pcf")?, &b)?;
    let v = distinguish(&y2, &z2, &cfg.bounds, &b).map_err(|e| e.to_string())?;
    let w = v.witness().ok_or_else(|| format!("no witness: {v}"))?;
    ensure(w.replay(&y2, &z2, &b), || "witness does not replay".into())?;
    let path = opts.corpus.join("golden").join("Y2_Z2.witness");
    let golden = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    ensure(golden == witness_file(&cfg, w), || "witness differs from the golden file".into())?;
    let frozen = read_witness(&golden).map_err(|e| e.to_string())?;
    ensure(frozen.replay(&y2, &z2, &b), || "golden witness does not replay".into())?;
    Ok(format!("Y2·g = {} but Z2·g = {}; golden replays", w.left, w.right))
}

/// Location of the corpus shipped with the workspace.
pub fn default_corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn type_census() {
        assert_eq!(small_types(0, 2).len(), 1);
        assert_eq!(small_types(1, 2).len(), 3);
        assert_eq!(small_types(2, 2).len(), 13);
        assert_eq!(small_types(3, 2).len(), 183);
        assert!(small_types(3, 2).iter().all(|t| t.level() <= 3));
    }
}
