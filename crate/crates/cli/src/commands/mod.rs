mod simulate;
mod solve;
mod sweep;
mod verify;

use std::path::PathBuf;

use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::format::{comment_block, Record};

pub use simulate::simulate;
pub use solve::solve;
pub use sweep::sweep;
pub use verify::verify;

/// What a command produced: the main output, an optional note for stderr,
/// and whether a checked claim failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub note: Option<String>,
    pub out: Option<PathBuf>,
    pub falsified: Option<String>,
}

impl Outcome {
    /// CSV output echoes the configuration to stderr; JSON embeds it.
    fn new(cfg: &RunConfig, format: Format, body: String) -> Self {
        let note = (format == Format::Csv).then(|| comment_block(&cfg.echo()));
        Outcome {
            body,
            note,
            out: cfg.out.clone(),
            falsified: None,
        }
    }
}

pub fn dispatch(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        "solve" => solve(cfg),
        "sweep" => sweep(cfg),
        "simulate" => simulate(cfg),
        _ => verify(cfg),
    }
}

fn point(r: Record, ul: f64, uh: f64, alpha: f64) -> Record {
    r.with("upsilon_L", ul).with("upsilon_H", uh).with("alpha", alpha)
}
