//! Flags, the flat `key = value` config file, and their merge.
//!
//! Precedence is flag, then config file, then built-in default.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use aversion_core::equilibrium::{Axis, DEFAULT_TOL};
use aversion_core::ModelParams;
use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::format::Record;

#[derive(Debug, Parser)]
#[command(name = "aversion", version, about = "Solve and check the algorithm-aversion cheap-talk model")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the informative equilibrium at one point.
    Solve(Flags),
    /// Solve along one parameter axis.
    Sweep(Flags),
    /// Play the equilibrium by Monte Carlo.
    Simulate(Flags),
    /// Check every model claim and print a pass/fail ledger.
    Verify(Flags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve(_) => "solve",
            Command::Sweep(_) => "sweep",
            Command::Simulate(_) => "simulate",
            Command::Verify(_) => "verify",
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Command::Solve(f) | Command::Sweep(f) | Command::Simulate(f) | Command::Verify(f) => f,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Low type's signal precision.
    #[arg(long)]
    pub ul: Option<f64>,
    /// High type's signal precision.
    #[arg(long)]
    pub uh: Option<f64>,
    /// Algorithm's signal precision.
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Bisection bracket width.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Monte Carlo draws.
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Mixing weight to simulate instead of the solved one.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Sweep axis: alpha, upsilon_L or upsilon_H.
    #[arg(long)]
    pub axis: Option<String>,
    #[arg(long)]
    pub from: Option<f64>,
    #[arg(long)]
    pub to: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Verification grid: coarse or dense.
    #[arg(long)]
    pub grid: Option<String>,
    /// Output format: csv or json.
    #[arg(long)]
    pub format: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Flat `key = value` file with any of the flags above.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Harness self-test: deliberately corrupt one computation.
    #[arg(long, hide = true)]
    pub inject_fault: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("format must be csv or json, got '{s}'")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridChoice {
    Coarse,
    Dense,
}

impl FromStr for GridChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "coarse" => Ok(GridChoice::Coarse),
            "dense" => Ok(GridChoice::Dense),
            _ => Err(format!("grid must be coarse or dense, got '{s}'")),
        }
    }
}

impl GridChoice {
    pub fn name(self) -> &'static str {
        match self {
            GridChoice::Coarse => "coarse",
            GridChoice::Dense => "dense",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negate `G` wherever the verifier evaluates it.
    GSign,
}

impl FromStr for Fault {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "g-sign" => Ok(Fault::GSign),
            _ => Err(format!("unknown fault '{s}'")),
        }
    }
}

pub fn parse_axis(s: &str) -> Result<Axis, String> {
    match s {
        "alpha" => Ok(Axis::Alpha),
        "upsilon_L" | "ul" => Ok(Axis::UpsilonLow),
        "upsilon_H" | "uh" => Ok(Axis::UpsilonHigh),
        _ => Err(format!("axis must be alpha, upsilon_L or upsilon_H, got '{s}'")),
    }
}

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_POINTS: usize = 50;
pub const DEFAULT_SIMULATE_DRAWS: u64 = 1_000_000;
pub const DEFAULT_VERIFY_DRAWS: u64 = 200_000;

/// Effective settings after merging flags, file and defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub ul: Option<f64>,
    pub uh: Option<f64>,
    pub alpha: Option<f64>,
    pub tol: f64,
    pub n: u64,
    pub seed: u64,
    pub gamma: Option<f64>,
    pub axis: Axis,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub points: usize,
    pub grid: GridChoice,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub config: Option<PathBuf>,
    pub fault: Option<Fault>,
}

const KEYS: [&str; 14] = [
    "ul", "uh", "alpha", "tol", "n", "seed", "gamma", "axis", "from", "to", "points", "grid",
    "format", "out",
];

/// Parse a flat `key = value` file into flags. `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<Flags, CliError> {
    let mut f = Flags::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| CliError::invalid(format!("config line {}: {msg}", lineno + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key = value, got '{line}'")))?;
        let key = key.trim().trim_start_matches("--");
        let value = value.trim().trim_matches('"');
        if !KEYS.contains(&key) {
            return Err(bad(format!("unknown key '{key}'")));
        }
        fn num<T: FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("{key}: cannot parse '{v}'"))
        }
        let r: Result<(), String> = (|| {
            match key {
                "ul" => f.ul = Some(num(key, value)?),
                "uh" => f.uh = Some(num(key, value)?),
                "alpha" => f.alpha = Some(num(key, value)?),
                "tol" => f.tol = Some(num(key, value)?),
                "n" => f.n = Some(num(key, value)?),
                "seed" => f.seed = Some(num(key, value)?),
                "gamma" => f.gamma = Some(num(key, value)?),
                "axis" => f.axis = Some(value.to_string()),
                "from" => f.from = Some(num(key, value)?),
                "to" => f.to = Some(num(key, value)?),
                "points" => f.points = Some(num(key, value)?),
                "grid" => f.grid = Some(value.to_string()),
                "format" => f.format = Some(value.to_string()),
                "out" => f.out = Some(PathBuf::from(value)),
                _ => unreachable!("key checked above"),
            }
            Ok(())
        })();
        r.map_err(bad)?;
    }
    Ok(f)
}

fn read_config(path: &Path) -> Result<Flags, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::invalid(format!("cannot read config {}: {e}", path.display())))?;
    parse_config_text(&text)
}

impl RunConfig {
    pub fn resolve(command: &Command) -> Result<Self, CliError> {
        let flags = command.flags();
        let file = match &flags.config {
            Some(p) => read_config(p)?,
            None => Flags::default(),
        };
        Self::merge(command.name(), flags, &file)
    }

    pub fn merge(command: &'static str, flags: &Flags, file: &Flags) -> Result<Self, CliError> {
        macro_rules! pick {
            ($f:ident) => {
                flags.$f.clone().or_else(|| file.$f.clone())
            };
        }
        fn parse<T>(r: Result<T, String>) -> Result<T, CliError> {
            r.map_err(CliError::invalid)
        }
        let axis = match pick!(axis) {
            Some(s) => parse(parse_axis(&s))?,
            None => Axis::Alpha,
        };
        let grid = match pick!(grid) {
            Some(s) => parse(s.parse())?,
            None => GridChoice::Coarse,
        };
        let format = pick!(format).map(|s| parse(s.parse())).transpose()?;
        let fault = flags.inject_fault.as_deref().map(|s| parse(s.parse())).transpose()?;
        let default_draws = if command == "verify" {
            DEFAULT_VERIFY_DRAWS
        } else {
            DEFAULT_SIMULATE_DRAWS
        };
        let tol = pick!(tol).unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::invalid(format!("tol must be positive, got {tol}")));
        }
        Ok(RunConfig {
            command,
            ul: pick!(ul),
            uh: pick!(uh),
            alpha: pick!(alpha),
            tol,
            n: pick!(n).unwrap_or(default_draws),
            seed: pick!(seed).unwrap_or(DEFAULT_SEED),
            gamma: pick!(gamma),
            axis,
            from: pick!(from),
            to: pick!(to),
            points: pick!(points).unwrap_or(DEFAULT_POINTS),
            grid,
            format,
            out: pick!(out),
            config: flags.config.clone(),
            fault,
        })
    }

    fn require(&self, name: &str, v: Option<f64>) -> Result<f64, CliError> {
        v.ok_or_else(|| CliError::invalid(format!("missing --{name}")))
    }

    /// The three precisions, checked against the ordering assumption.
    pub fn params(&self) -> Result<ModelParams, CliError> {
        let p = ModelParams::open(
            self.require("ul", self.ul)?,
            self.require("uh", self.uh)?,
            self.require("alpha", self.alpha)?,
        )
        .map_err(CliError::from_model)?;
        p.check_assumption().map_err(CliError::from_model)?;
        Ok(p)
    }

    /// Precisions for a sweep; the swept coordinate may be omitted.
    pub fn sweep_base(&self) -> Result<(f64, f64, f64), CliError> {
        let fill = |axis: Axis, v: Option<f64>, name: &str| match v {
            Some(x) => Ok(x),
            None if axis == self.axis => Ok(f64::NAN),
            None => Err(CliError::invalid(format!("missing --{name}"))),
        };
        Ok((
            fill(Axis::UpsilonLow, self.ul, "ul")?,
            fill(Axis::UpsilonHigh, self.uh, "uh")?,
            fill(Axis::Alpha, self.alpha, "alpha")?,
        ))
    }

    /// The effective settings that matter for this command.
    pub fn echo(&self) -> Record {
        let mut r = Record::new().with("command", self.command);
        for (k, v) in [("ul", self.ul), ("uh", self.uh), ("alpha", self.alpha)] {
            r.push(k, v);
        }
        match self.command {
            "solve" => r.push("tol", self.tol),
            "sweep" => {
                r.push("tol", self.tol);
                r.push("axis", self.axis.name());
                r.push("from", self.from);
                r.push("to", self.to);
                r.push("points", self.points as u64);
            }
            "simulate" => {
                r.push("n", self.n);
                r.push("seed", self.seed);
                r.push("gamma", self.gamma.map_or_else(|| "solved".to_string(), crate::format::num));
            }
            _ => {
                r.push("grid", self.grid.name());
                r.push("n", self.n);
                r.push("seed", self.seed);
            }
        }
        if let Some(p) = &self.config {
            r.push("config", p.display().to_string());
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_flat_files() {
        let f = parse_config_text("# golden point\nul = 0.55\nuh=0.62 # trailing\n\nalpha = 0.6\nformat = json\n")
            .unwrap();
        assert_eq!((f.ul, f.uh, f.alpha), (Some(0.55), Some(0.62), Some(0.6)));
        assert_eq!(f.format.as_deref(), Some("json"));
        assert!(parse_config_text("bogus = 1").is_err());
        assert!(parse_config_text("ul 0.5").is_err());
        assert!(parse_config_text("n = -3").is_err());
    }

    #[test]
    fn flags_beat_file_beat_defaults() {
        let file = parse_config_text("ul = 0.51\nuh = 0.9\nseed = 7\n").unwrap();
        let flags = Flags {
            ul: Some(0.55),
            ..Flags::default()
        };
        let c = RunConfig::merge("simulate", &flags, &file).unwrap();
        assert_eq!(c.ul, Some(0.55));
        assert_eq!(c.uh, Some(0.9));
        assert_eq!(c.seed, 7);
        assert_eq!(c.n, DEFAULT_SIMULATE_DRAWS);
        assert_eq!(c.tol, DEFAULT_TOL);
        assert!(c.alpha.is_none());
        assert!(c.params().is_err());
    }

    #[test]
    fn rejects_bad_choices() {
        let flags = Flags {
            format: Some("xml".into()),
            ..Flags::default()
        };
        assert!(RunConfig::merge("solve", &flags, &Flags::default()).is_err());
        let flags = Flags {
            axis: Some("beta".into()),
            ..Flags::default()
        };
        assert!(RunConfig::merge("sweep", &flags, &Flags::default()).is_err());
    }
}
