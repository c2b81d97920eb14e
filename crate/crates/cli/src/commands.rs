//! Verb implementations. Each returns its full output instead of printing, so
//! that the binary and the tests share one code path.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use denote::DenotationEnv;
use extensional::{distinguish, enumerate_finite, obs_leq, report, ComparisonVerdict, EnumBounds, ExtError, Outcome, Witness};
use nsp_eval::{Bounds, ReductionTrace};
use nsp_term::sexpr::env_to_sexpr;
use nsp_term::{parse_proc, proc_to_dot, proc_to_sexpr, Name};
use pcf_lang::{parse_type, run, RunResult};
use serde_json::json;
use spinal_analysis::{qn_chain, qn_decompose, spinal_check, DecomposeConfig, Mode, SpinalConfig, SpinalError};

use crate::config::{Format, RunConfig};
use crate::load::{load, load_pcf, Loaded};
use crate::suite::{self, SuiteOptions};
use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "nsp", version, about = "Nested sequential procedures: evaluation, comparison and spinal analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Tree depth for evaluation; for `spinal`, the certificate depth.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true)]
    pub branch_bound: Option<usize>,
    #[arg(long, global = true)]
    pub fuel: Option<u64>,
    /// Enumeration bounds `value,depth,branch,fanout`.
    #[arg(long, global = true)]
    pub bounds: Option<String>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// `NAME=PATH` oracle table, overriding the program's own directive.
    #[arg(long, global = true)]
    pub oracle: Vec<String>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the head-reduction trace as JSON lines to stderr.
    #[arg(long, global = true)]
    pub trace: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a closed PCF program of type N.
    Run { file: String },
    /// Print the denotation of a program or procedure.
    Denote { input: String },
    /// As `denote`, defaulting to DOT.
    Render { input: String },
    /// Search for arguments on which two procedures differ.
    Compare {
        left: String,
        right: String,
        /// Archive the witness here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Check `left ≼ right` on enumerated arguments.
    Leq { left: String, right: String },
    /// Look for a spinal certificate.
    Spinal {
        input: String,
        #[arg(long, default_value = "plain")]
        mode: String,
        /// Name of the spine variable, when it is free.
        #[arg(long)]
        g: Option<String>,
    },
    /// Check the top-level shape of a procedure above `p_n`.
    Decompose {
        input: String,
        #[arg(long, default_value_t = 0)]
        n: u64,
        /// Follow the masked iteration for this many steps.
        #[arg(long)]
        chain: Option<usize>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long)]
        g: Option<String>,
    },
    /// List the finite procedures of a type within the bounds.
    Enumerate { ty: String },
    /// Run the acceptance criteria.
    Suite {
        /// Comma-separated criterion numbers.
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value = "corpus")]
        corpus: PathBuf,
    },
}

/// Output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Report {
    fn new(cfg: &RunConfig, body: String, code: i32) -> Report {
        Report { stdout: format!("{}\n{body}", cfg.header()), stderr: String::new(), code }
    }

    fn error(e: CliError) -> Report {
        Report { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.code() }
    }
}

/// Parses `args` (including the program name) and runs the verb.
pub fn execute<I, T>(args: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { Report { stdout: text, stderr: String::new(), code } } else { Report { stdout: String::new(), stderr: text, code } };
        }
    };
    match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => Report::error(e),
    }
}

fn config(cli: &Cli, verb: &str, inputs: &[&str], default_format: Format) -> Result<RunConfig, CliError> {
    let mut c = RunConfig::new(verb);
    c.inputs = inputs.iter().map(|s| s.to_string()).collect();
    if let Some(d) = cli.depth {
        c.depth = d;
    }
    if let Some(b) = cli.branch_bound {
        c.branch_bound = b;
    }
    if let Some(f) = cli.fuel {
        c.fuel = f;
    }
    if let Some(b) = &cli.bounds {
        c.bounds = EnumBounds::parse(b).ok_or_else(|| CliError::Usage(format!("bad --bounds {b}; expected value,depth,branch,fanout")))?;
    }
    c.format = cli.format.unwrap_or(default_format);
    c.oracles = cli.oracle.clone();
    if let Some(s) = cli.seed {
        c.seed = s;
    }
    c.validate().map_err(CliError::Usage)?;
    Ok(c)
}

fn dispatch(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Run { file } => cmd_run(&config(cli, "run", &[file], Format::Text)?, file),
        Command::Denote { input } => cmd_denote(&config(cli, "denote", &[input], Format::Sexpr)?, input, cli.trace),
        Command::Render { input } => cmd_denote(&config(cli, "render", &[input], Format::Dot)?, input, cli.trace),
        Command::Compare { left, right, witness } => cmd_compare(&config(cli, "compare", &[left, right], Format::Text)?, left, right, witness.as_deref()),
        Command::Leq { left, right } => cmd_leq(&config(cli, "leq", &[left, right], Format::Text)?, left, right),
        Command::Spinal { input, mode, g } => {
            let mut c = config(cli, "spinal", &[input], Format::Json)?;
            if cli.depth.is_none() {
                c.depth = 5;
            }
            cmd_spinal(&c, input, mode, g.as_deref())
        }
        Command::Decompose { input, n, chain, k, g } => cmd_decompose(&config(cli, "decompose", &[input], Format::Text)?, input, *n, *chain, *k, g.as_deref()),
        Command::Enumerate { ty } => cmd_enumerate(&config(cli, "enumerate", &[ty], Format::Sexpr)?, ty),
        Command::Suite { only, corpus } => {
            let c = config(cli, "suite", &[], Format::Text)?;
            let only = match only {
                None => None,
                Some(s) => Some(s.split(',').map(|x| x.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad --only {s}")))).collect::<Result<Vec<_>, _>>()?),
            };
            cmd_suite(&c, &SuiteOptions { corpus: corpus.clone(), seed: c.seed, only })
        }
    }
}

pub fn cmd_run(cfg: &RunConfig, file: &str) -> Result<Report, CliError> {
    let t = load_pcf(Path::new(file), &cfg.oracles)?;
    if !t.is_closed() || !t.ty().is_base() {
        return Err(CliError::Usage(format!("{file}: expected a closed program of type N, got type {}", t.ty())));
    }
    let r = run(&t, cfg.fuel).map_err(|e| CliError::Usage(e.to_string()))?;
    let code = match r {
        RunResult::Value(_) => 0,
        RunResult::Diverged(_) => 3,
        RunResult::StuckOracle(..) => 1,
    };
    Ok(Report::new(cfg, format!("{r}\n"), code))
}

/// The body of a `denote`/`render` output, without header.
pub fn render(l: &Loaded, format: Format, bb: usize) -> Result<String, CliError> {
    let sexpr = || if l.env.is_empty() { proc_to_sexpr(&l.proc) } else { env_to_sexpr(&l.env, &l.proc) };
    Ok(match format {
        Format::Text | Format::Sexpr => format!("{}\n", sexpr()),
        Format::Dot => proc_to_dot(&l.proc, &l.name, bb),
        Format::Json => {
            let v = json!({ "name": l.name, "proc": sexpr(), "size": l.proc.size(), "fuel_exhausted": l.fuel_exhausted });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        Format::Csv => return Err(CliError::Usage("csv is only available for comparisons".into())),
    })
}

pub fn cmd_denote(cfg: &RunConfig, input: &str, trace: bool) -> Result<Report, CliError> {
    let b = cfg.eval_bounds();
    let l = load(input, &cfg.oracles, &b)?;
    let body = render(&l, cfg.format, cfg.branch_bound)?;
    let mut r = Report::new(cfg, body, if l.fuel_exhausted { 3 } else { 0 });
    if l.fuel_exhausted {
        r.stderr.push_str("fuel exhausted; elided subtrees are not ⊥\n");
    }
    if trace {
        let steps = usize::try_from(cfg.fuel).unwrap_or(usize::MAX).min(10_000);
        r.stderr.push_str(&ReductionTrace::head(l.meta_term(), steps).to_json_lines());
    }
    Ok(r)
}

fn ext_err(e: ExtError) -> CliError {
    match e {
        ExtError::Infeasible { .. } => CliError::Resource(e.to_string()),
        e => CliError::Usage(e.to_string()),
    }
}

fn load_pair(cfg: &RunConfig, left: &str, right: &str) -> Result<(Loaded, Loaded), CliError> {
    let b = cfg.eval_bounds();
    Ok((load(left, &cfg.oracles, &b)?, load(right, &cfg.oracles, &b)?))
}

fn verdict_body(cfg: &RunConfig, name: &str, v: &ComparisonVerdict) -> Result<String, CliError> {
    Ok(match cfg.format {
        Format::Csv => {
            let mut buf = Vec::new();
            report::write_verdicts(&mut buf, &[(name.to_string(), v.clone())]).map_err(|e| CliError::Usage(e.to_string()))?;
            String::from_utf8(buf).expect("csv is utf-8")
        }
        Format::Json => {
            let w = v.witness().map(|w| json!({ "left": w.left.to_string(), "right": w.right.to_string(), "args": w.args.iter().map(proc_to_sexpr).collect::<Vec<_>>() }));
            format!("{}\n", serde_json::to_string_pretty(&json!({ "pair": name, "verdict": v.label(), "witness": w })).expect("json"))
        }
        _ => {
            let mut s = format!("{v}\n");
            if let Some(w) = v.witness() {
                s.push_str(&w.to_sexpr_lines());
            }
            s
        }
    })
}

pub fn cmd_compare(cfg: &RunConfig, left: &str, right: &str, witness: Option<&Path>) -> Result<Report, CliError> {
    let (l, r) = load_pair(cfg, left, right)?;
    let v = distinguish(&l.proc, &r.proc, &cfg.bounds, &cfg.eval_bounds()).map_err(ext_err)?;
    let name = format!("{}/{}", l.name, r.name);
    let mut rep = Report::new(cfg, verdict_body(cfg, &name, &v)?, if v.is_positive() { 1 } else { 0 });
    if let (Some(path), Some(w)) = (witness, v.witness()) {
        fs::write(path, witness_file(cfg, w)).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        rep.stderr.push_str(&format!("witness written to {}\n", path.display()));
    }
    Ok(rep)
}

pub fn cmd_leq(cfg: &RunConfig, left: &str, right: &str) -> Result<Report, CliError> {
    let (l, r) = load_pair(cfg, left, right)?;
    let v = obs_leq(&l.proc, &r.proc, &cfg.bounds, &cfg.eval_bounds()).map_err(ext_err)?;
    let name = format!("{}/{}", l.name, r.name);
    Ok(Report::new(cfg, verdict_body(cfg, &name, &v)?, if v.is_positive() { 0 } else { 1 }))
}

/// A witness as an s-expression file: header, recorded outcomes, then one
/// argument per line.
pub fn witness_file(cfg: &RunConfig, w: &Witness) -> String {
    let mut c = cfg.clone();
    c.format = Format::Sexpr;
    format!("{}\n; left={} right={}\n{}", c.header(), w.left, w.right, w.to_sexpr_lines())
}

fn parse_outcome(s: &str) -> Option<Outcome> {
    match s {
        "bot" => Some(Outcome::Bot),
        "unknown" => Some(Outcome::Unknown),
        n => n.parse().ok().map(Outcome::Num),
    }
}

/// Reads a file written by [`witness_file`].
pub fn read_witness(text: &str) -> Result<Witness, CliError> {
    let bad = |m: &str| CliError::Usage(format!("witness file: {m}"));
    let mut outcomes = None;
    let mut args = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
        if let Some(rest) = line.strip_prefix(';') {
            let rest = rest.trim();
            if let Some(rest) = rest.strip_prefix("left=") {
                let (l, r) = rest.split_once(" right=").ok_or_else(|| bad("malformed outcome line"))?;
                outcomes = Some((parse_outcome(l).ok_or_else(|| bad(l))?, parse_outcome(r).ok_or_else(|| bad(r))?));
            }
            continue;
        }
        args.push(parse_proc(line).map_err(|e| bad(&e.to_string()))?);
    }
    let (left, right) = outcomes.ok_or_else(|| bad("missing outcome line"))?;
    Ok(Witness { args, left, right })
}

fn spinal_err(e: SpinalError) -> CliError {
    match e {
        SpinalError::Ext(x) => ext_err(x),
        SpinalError::Infeasible(_) => CliError::Resource(e.to_string()),
        e => CliError::Usage(e.to_string()),
    }
}

/// Evaluation depth used under a certificate of depth `d`.
pub fn spinal_eval_depth(d: usize) -> usize {
    8.max(d + 3)
}

pub fn cmd_spinal(cfg: &RunConfig, input: &str, mode: &str, g: Option<&str>) -> Result<Report, CliError> {
    let mode: Mode = mode.parse().map_err(spinal_err)?;
    let eval = Bounds::new(spinal_eval_depth(cfg.depth), cfg.branch_bound, cfg.fuel);
    let l = load(input, &cfg.oracles, &eval)?.with_g(g)?;
    let sc = SpinalConfig { mode, depth: cfg.depth, eval, enum_bounds: cfg.bounds, ..SpinalConfig::default() };
    match spinal_check(&l.proc, &l.env, l.g.as_ref(), &sc).map_err(spinal_err)? {
        Some(c) => Ok(Report::new(cfg, format!("{}\n", serde_json::to_string_pretty(&c.to_json()).expect("json")), 0)),
        None => Ok(Report::new(cfg, format!("no certificate (dict, d={})\n", cfg.depth), 1)),
    }
}

pub fn cmd_decompose(cfg: &RunConfig, input: &str, n: u64, chain: Option<usize>, k: usize, g: Option<&str>) -> Result<Report, CliError> {
    let b = cfg.eval_bounds();
    let l = load(input, &cfg.oracles, &b)?.with_g(g)?;
    let g = l.g.clone().unwrap_or_else(|| Name::new("g"));
    let mut dc = DecomposeConfig::new(k);
    dc.eval = b;
    dc.enum_bounds = cfg.bounds;
    let steps = match chain {
        Some(s) => qn_chain(&l.proc, &g, n, s, &dc).map_err(spinal_err)?,
        None => vec![qn_decompose(&l.proc, &g, n, &dc).map_err(spinal_err)?],
    };
    let mut body = String::new();
    let mut ok = true;
    for (i, d) in steps.iter().enumerate() {
        body.push_str(&format!("step {} (n={}): a = {}\n", i, n + i as u64, proc_to_sexpr(&d.a)));
        for c in &d.checks {
            body.push_str(&format!("  {c}\n"));
        }
        ok &= d.passed();
    }
    Ok(Report::new(cfg, body, if ok { 0 } else { 1 }))
}

pub fn cmd_enumerate(cfg: &RunConfig, ty: &str) -> Result<Report, CliError> {
    let t = parse_type(ty).map_err(|e| CliError::Usage(e.to_string()))?;
    let ps = enumerate_finite(&t, &cfg.bounds).map_err(ext_err)?;
    let body = match cfg.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&ps.iter().map(proc_to_sexpr).collect::<Vec<_>>()).expect("json")),
        _ => {
            let mut s = format!("{} count={}\n", cfg.format.comment(), ps.len());
            for p in &ps {
                s.push_str(&proc_to_sexpr(p));
                s.push('\n');
            }
            s
        }
    };
    Ok(Report::new(cfg, body, 0))
}

pub fn cmd_suite(cfg: &RunConfig, opts: &SuiteOptions) -> Result<Report, CliError> {
    let results = suite::run(opts);
    let mut body = String::new();
    let mut stderr = String::new();
    for r in &results {
        body.push_str(&format!("{r}\n"));
        stderr.push_str(&format!("criterion {} took {:.2?}\n", r.id, r.elapsed));
    }
    let all = results.iter().all(|r| r.passed);
    body.push_str(&format!("{}\n", if all { "all criteria pass" } else { "some criteria FAIL" }));
    let mut rep = Report::new(cfg, body, if all { 0 } else { 1 });
    rep.stderr = stderr;
    Ok(rep)
}

/// `⟦M⟧` for a closed PCF program at `b`, without the CLI wrapper.
pub fn denote_file(path: &Path, b: &Bounds) -> Result<denote::Denoted, CliError> {
    let t = load_pcf(path, &[])?;
    denote::denote(&t, &DenotationEnv::new(), b).map_err(|e| CliError::Usage(e.to_string()))
}
