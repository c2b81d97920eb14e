//! Reading inputs: PCF programs with oracle directives, s-expression
//! procedures, and gallery entries.

use std::fs;
use std::path::{Path, PathBuf};

use denote::{denote, denote_meta, DenotationEnv};
use nsp_eval::{eval_proc, Bounds, Meta};
use nsp_term::{parse_proc_in_env, Name, Proc};
use pcf_lang::{parse_oracle_tsv, parse_pcf_in, Context, SimpleType, Term};
use spinal_analysis::{gallery, GalleryName};

use crate::CliError;

/// A procedure with its free variables, ready for the analyses.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub name: String,
    pub env: Vec<(Name, SimpleType)>,
    /// Unevaluated meta-term, for tracing.
    pub meta: Proc,
    /// Evaluated to the configured bounds.
    pub proc: Proc,
    pub g: Option<Name>,
    pub fuel_exhausted: bool,
}

/// `# oracle: NAME = PATH` lines, with paths relative to the program.
pub fn oracle_directives(text: &str, base: &Path) -> Vec<(String, PathBuf)> {
    text.lines()
        .filter_map(|l| l.trim().strip_prefix('#')?.trim().strip_prefix("oracle:"))
        .filter_map(|rest| {
            let (name, path) = rest.split_once('=')?;
            Some((name.trim().to_string(), base.join(path.trim())))
        })
        .collect()
}

/// The value after `# expect:`, if any.
pub fn expectation(text: &str) -> Option<String> {
    text.lines().find_map(|l| Some(l.trim().strip_prefix('#')?.trim().strip_prefix("expect:")?.trim().to_string()))
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Parses a PCF program. `overrides` are `NAME=PATH` bindings that take
/// precedence over the file's own directives.
pub fn load_pcf(path: &Path, overrides: &[String]) -> Result<Term, CliError> {
    let text = read(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    let mut bindings = oracle_directives(&text, base);
    for o in overrides {
        let (name, p) = o.split_once('=').ok_or_else(|| CliError::Usage(format!("--oracle expects NAME=PATH, got {o}")))?;
        bindings.retain(|(n, _)| n != name);
        bindings.push((name.to_string(), PathBuf::from(p)));
    }
    let mut ctx = Context::default();
    for (name, p) in bindings {
        let table = read(&p)?;
        let o = parse_oracle_tsv(&name, &table).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        ctx = ctx.with_oracle(o);
    }
    parse_pcf_in(&text, &ctx).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn gallery_spec(spec: &str, b: &Bounds) -> Result<Loaded, CliError> {
    let mut parts = spec.split(':');
    let name: GalleryName = parts.next().unwrap_or_default().parse().map_err(|e: spinal_analysis::SpinalError| CliError::Usage(e.to_string()))?;
    let num = |s: Option<&str>, d: u64| -> Result<u64, CliError> {
        s.map_or(Ok(d), |s| s.parse().map_err(|_| CliError::Usage(format!("bad number {s} in gallery:{spec}"))))
    };
    let k = num(parts.next(), 1)? as usize;
    let n = num(parts.next(), 0)?;
    let it = gallery(name, k, n, b).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Loaded { name: it.name, env: it.env, meta: it.proc.clone(), proc: it.proc, g: it.g, fuel_exhausted: false })
}

/// Loads `gallery:NAME[:k[:n]]`, a `.pcf` program or a `.nsp` procedure and
/// evaluates it to `b`.
pub fn load(spec: &str, overrides: &[String], b: &Bounds) -> Result<Loaded, CliError> {
    if let Some(rest) = spec.strip_prefix("gallery:") {
        return gallery_spec(rest, b);
    }
    let path = Path::new(spec);
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("input").to_string();
    match path.extension().and_then(|e| e.to_str()) {
        Some("pcf") => {
            let t = load_pcf(path, overrides)?;
            let env = DenotationEnv::new();
            let meta = denote_meta(&t, &env).map_err(|e| CliError::Usage(e.to_string()))?;
            let d = denote(&t, &env, b).map_err(|e| CliError::Usage(e.to_string()))?;
            Ok(Loaded { name, env: Vec::new(), meta, proc: d.proc, g: None, fuel_exhausted: d.fuel_exhausted })
        }
        Some("nsp") => {
            let text = read(path)?;
            let (env, p) = parse_proc_in_env(&text).map_err(|e| CliError::Usage(format!("{spec}: {e}")))?;
            let ev = eval_proc(&p, b);
            let g = if env.len() == 1 { Some(env[0].0.clone()) } else { None };
            Ok(Loaded { name, env, meta: p, proc: ev.term, g, fuel_exhausted: ev.fuel_exhausted })
        }
        _ => Err(CliError::Usage(format!("{spec}: expected a .pcf or .nsp file or gallery:NAME"))),
    }
}

impl Loaded {
    pub fn meta_term(&self) -> Meta {
        Meta::Proc(self.meta.clone())
    }

    /// Looks up `g` by its printed name among the free variables.
    pub fn with_g(mut self, g: Option<&str>) -> Result<Loaded, CliError> {
        if let Some(g) = g {
            let found = self.env.iter().find(|(n, _)| n.to_string() == g || n.hint() == g).map(|(n, _)| n.clone());
            self.g = Some(found.ok_or_else(|| CliError::Usage(format!("{g} is not a free variable of {}", self.name)))?);
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directives() {
        let text = "# oracle: sq = oracles/sq.tsv\n# expect: 9\noracle sq 3\n";
        assert_eq!(oracle_directives(text, Path::new("c")), vec![("sq".to_string(), PathBuf::from("c/oracles/sq.tsv"))]);
        assert_eq!(expectation(text).as_deref(), Some("9"));
        assert_eq!(expectation("1"), None);
    }
}
