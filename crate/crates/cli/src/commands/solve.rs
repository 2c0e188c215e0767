use aversion_core::equilibrium::{labor_quantities, solve_gamma};

use super::{point, Outcome};
use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::format::{csv, json, Record};

pub fn solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = cfg.params()?;
    let sol = solve_gamma(&p, cfg.tol).map_err(CliError::from_model)?;
    let lab = labor_quantities(&p, &sol);
    let row = point(Record::new(), p.upsilon_low(), p.upsilon_high(), p.alpha())
        .with("gamma", sol.gamma_star)
        .with("residual", sol.residual)
        .with("accuracy", sol.accuracy)
        .with("accuracy_margin", sol.accuracy_margin)
        .with("adoption_value", sol.adoption_value)
        .with("dgamma_dalpha", lab.dgamma_dalpha)
        .with("margin_slope", lab.margin_slope)
        .with("margin_slope_direct", lab.margin_slope_direct)
        .with("margin_slope_adoption", lab.margin_slope_adoption)
        .with("high_mismatch_prob", lab.high_mismatch_prob)
        .with("iterations", u64::from(sol.iterations));
    let format = cfg.format.unwrap_or(Format::Csv);
    let body = match format {
        Format::Csv => csv(&[row]),
        Format::Json => json(&Record::new().with("config", cfg.echo()).with("solution", row)),
    };
    Ok(Outcome::new(cfg, format, body))
}
