use std::fmt::Write as _;

use aversion_core::equilibrium::g;
use aversion_core::grid::{coarse_grid, dense_grid};
use aversion_core::verify::claims::{brute_force_claims, model_claims, monte_carlo_claims};
use aversion_core::verify::{inequality_checks_grid, default_p_grid, ClaimCheck, Ledger};
use aversion_core::ModelParams;
use rayon::prelude::*;

use super::{point, Outcome};
use crate::config::{Fault, Format, GridChoice, RunConfig};
use crate::error::CliError;
use crate::format::{csv, json, num, Field, Record};

/// Grid step of the exhaustive strategy scan.
pub const BRUTE_FORCE_STEP: f64 = 0.01;

/// The point used by the scan and the simulation when none is given.
pub fn golden_point() -> ModelParams {
    ModelParams::new(0.55, 0.62, 0.60).expect("admissible")
}

fn oracle_point(cfg: &RunConfig) -> Result<ModelParams, CliError> {
    if cfg.ul.is_none() && cfg.uh.is_none() && cfg.alpha.is_none() {
        Ok(golden_point())
    } else {
        cfg.params()
    }
}

/// Every claim over the chosen grid plus the oracle checks at one point.
pub fn run_ledger(cfg: &RunConfig, at: &ModelParams) -> Result<(Ledger, usize), CliError> {
    let grid = match cfg.grid {
        GridChoice::Coarse => coarse_grid(),
        GridChoice::Dense => dense_grid(),
    };
    let fault = cfg.fault;
    let g_under_test = move |x: f64, p: &ModelParams| {
        let v = g(x, p).expect("grid points are admissible");
        match fault {
            Some(Fault::GSign) => -v,
            None => v,
        }
    };
    let parts: Vec<Ledger> = grid
        .par_iter()
        .map(|p| model_claims(p, g_under_test))
        .collect::<Result<_, _>>()
        .map_err(CliError::from_model)?;
    let mut l = Ledger::new();
    for part in parts {
        l.merge(part);
    }
    l.merge(inequality_checks_grid(&grid, &default_p_grid()));
    let (bf, mc) = rayon::join(
        || brute_force_claims(at, BRUTE_FORCE_STEP),
        || monte_carlo_claims(at, cfg.n, cfg.seed),
    );
    l.merge(bf.map_err(CliError::from_model)?);
    l.merge(mc.map_err(CliError::from_model)?);
    Ok((l, grid.len()))
}

fn witness(c: &ClaimCheck) -> String {
    let p = &c.worst_at;
    let mut s = format!(
        "upsilon_L={} upsilon_H={} alpha={}",
        num(p.upsilon_low()),
        num(p.upsilon_high()),
        num(p.alpha())
    );
    if let Some(x) = c.worst_p {
        let _ = write!(s, " p={}", num(x));
    }
    s
}

fn text(l: &Ledger, grid: GridChoice, grid_points: usize, at: &ModelParams) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# grid = {} ({grid_points} points), oracle point = {}",
        grid.name(),
        witness(&ClaimCheck {
            name: "",
            passed: true,
            worst_margin: 0.0,
            worst_at: *at,
            worst_p: None,
            evaluated: 0,
        })
    );
    for c in l.iter() {
        let (tag, what) = if c.passed {
            ("PASS", "tightest margin")
        } else {
            ("FAIL", "first failure, margin")
        };
        let _ = writeln!(
            out,
            "{tag} {} [n={}; {what} {} at {}]",
            c.name,
            c.evaluated,
            num(c.worst_margin),
            witness(c)
        );
    }
    let failed = l.failures().count();
    let _ = writeln!(out, "{} claims, {} passed, {failed} failed", l.len(), l.len() - failed);
    out
}

fn rows(l: &Ledger) -> Vec<Record> {
    l.iter()
        .map(|c| {
            let p = &c.worst_at;
            point(
                Record::new()
                    .with("claim", c.name)
                    .with("status", if c.passed { "PASS" } else { "FAIL" })
                    .with("evaluated", c.evaluated as u64)
                    .with("worst_margin", c.worst_margin),
                p.upsilon_low(),
                p.upsilon_high(),
                p.alpha(),
            )
            .with("p", c.worst_p)
        })
        .collect()
}

pub fn verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let at = oracle_point(cfg)?;
    if cfg.n == 0 {
        return Err(CliError::invalid("n must be at least 1"));
    }
    let (ledger, grid_points) = run_ledger(cfg, &at)?;
    let (body, note) = match cfg.format {
        None => (text(&ledger, cfg.grid, grid_points, &at), None),
        Some(Format::Csv) => (csv(&rows(&ledger)), Some(crate::format::comment_block(&cfg.echo()))),
        Some(Format::Json) => {
            let doc = Record::new()
                .with("config", cfg.echo())
                .with("oracle_point", point(Record::new(), at.upsilon_low(), at.upsilon_high(), at.alpha()))
                .with("grid_points", grid_points as u64)
                .with("all_passed", ledger.all_passed())
                .with("claims", Field::List(rows(&ledger)));
            (json(&doc), None)
        }
    };
    let failed: Vec<String> = ledger
        .failures()
        .map(|c| format!("{} at {}", c.name, witness(c)))
        .collect();
    Ok(Outcome {
        body,
        note,
        out: cfg.out.clone(),
        falsified: (!failed.is_empty()).then(|| failed.join("; ")),
    })
}
