//! Run configuration and the header line that opens every output.

use std::fmt;

use clap::ValueEnum;
use extensional::EnumBounds;
use nsp_eval::Bounds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Sexpr,
    Dot,
    Json,
    Csv,
}

impl Format {
    pub fn as_str(&self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Sexpr => "sexpr",
            Format::Dot => "dot",
            Format::Json => "json",
            Format::Csv => "csv",
        }
    }

    /// Line-comment marker understood by readers of this format.
    pub fn comment(&self) -> &'static str {
        match self {
            Format::Sexpr => ";",
            Format::Dot => "//",
            _ => "#",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub verb: String,
    pub inputs: Vec<String>,
    pub depth: usize,
    pub branch_bound: usize,
    pub fuel: u64,
    pub bounds: EnumBounds,
    pub format: Format,
    pub oracles: Vec<String>,
    pub seed: u64,
}

impl RunConfig {
    pub fn new(verb: &str) -> RunConfig {
        let b = Bounds::default();
        RunConfig {
            verb: verb.to_string(),
            inputs: Vec::new(),
            depth: b.depth,
            branch_bound: b.branch_bound,
            fuel: b.fuel,
            bounds: EnumBounds::tiny(),
            format: Format::Text,
            oracles: Vec::new(),
            seed: 0,
        }
    }

    pub fn eval_bounds(&self) -> Bounds {
        Bounds::new(self.depth, self.branch_bound, self.fuel)
    }

    /// Everything that determines the output, on one line. No timings.
    pub fn header(&self) -> String {
        let mut s = format!(
            "{} nsp verb={} depth={} branch_bound={} fuel={} bounds={} format={} seed={}",
            self.format.comment(),
            self.verb,
            self.depth,
            self.branch_bound,
            self.fuel,
            self.bounds,
            self.format,
            self.seed
        );
        for o in &self.oracles {
            s.push_str(&format!(" oracle={o}"));
        }
        for i in &self.inputs {
            s.push_str(&format!(" input={i}"));
        }
        s
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.depth == 0 || self.branch_bound == 0 || self.fuel == 0 {
            return Err("depth, branch bound and fuel must be positive".into());
        }
        Ok(())
    }
}
