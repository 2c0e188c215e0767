use aversion_core::equilibrium::{forecast_accuracy, solve_gamma};
use aversion_core::model::{
    informative_beliefs, AlgoSignal, Message, PrivateSignal, State, StrategyProfile, WorkerType,
};
use aversion_core::verify::simulate::{batch_count, report_from_counts, simulate_batch, Counts};
use aversion_core::verify::{Estimate, SimulationReport};
use rayon::prelude::*;

use super::{point, Outcome};
use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::format::{csv, json, Field, Record};

/// Batches run in parallel; counts are summed in batch order so the result
/// does not depend on the thread count.
pub fn run_parallel(
    strategy: &StrategyProfile,
    cfg: &RunConfig,
    params: &aversion_core::ModelParams,
) -> SimulationReport {
    let parts: Vec<Counts> = (0..batch_count(cfg.n))
        .into_par_iter()
        .map(|k| simulate_batch(strategy, params, cfg.n, cfg.seed, k))
        .collect();
    let mut total = Counts::default();
    for c in &parts {
        total.add(c);
    }
    report_from_counts(strategy, params, cfg.n, cfg.seed, total)
}

fn estimate(r: Record, e: Option<Estimate>) -> Record {
    match e {
        Some(e) => r
            .with("hits", e.hits)
            .with("trials", e.trials)
            .with("value", e.value)
            .with("se", e.se),
        None => r
            .with("hits", 0u64)
            .with("trials", 0u64)
            .with("value", Field::Missing)
            .with("se", Field::Missing),
    }
}

fn joint_rows(r: &SimulationReport) -> Vec<Record> {
    let mut rows = Vec::with_capacity(32);
    for t in WorkerType::ALL {
        for s in PrivateSignal::ALL {
            for a in AlgoSignal::ALL {
                for w in State::ALL {
                    for m in Message::ALL {
                        let e = r.joint(t, s, a, w, m);
                        rows.push(
                            Record::new()
                                .with("type", t.name())
                                .with("s", s.index() as u64)
                                .with("a", a.index() as u64)
                                .with("state", w.index() as u64)
                                .with("m", m.index() as u64)
                                .with("count", e.hits)
                                .with("frequency", e.value),
                        );
                    }
                }
            }
        }
    }
    rows
}

pub fn simulate(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = cfg.params()?;
    if cfg.n == 0 {
        return Err(CliError::invalid("n must be at least 1"));
    }
    let gamma = match cfg.gamma {
        Some(g) if (0.0..=1.0).contains(&g) => g,
        Some(g) => return Err(CliError::invalid(format!("gamma must lie in [0, 1], got {g}"))),
        None => solve_gamma(&p, cfg.tol).map_err(CliError::from_model)?.gamma_star,
    };
    let strategy = StrategyProfile::informative(gamma).map_err(CliError::from_model)?;
    let r = run_parallel(&strategy, cfg, &p);
    let joint = joint_rows(&r);
    let format = cfg.format.unwrap_or(Format::Json);
    let body = match format {
        Format::Csv => csv(&joint),
        Format::Json => {
            let model = informative_beliefs(gamma, &p);
            let mut beliefs = Vec::with_capacity(8);
            for m in Message::ALL {
                for a in AlgoSignal::ALL {
                    for w in State::ALL {
                        let row = Record::new()
                            .with("m", m.index() as u64)
                            .with("a", a.index() as u64)
                            .with("state", w.index() as u64);
                        beliefs.push(estimate(row, r.belief(m, a, w)).with("model", model.get(m, a, w)));
                    }
                }
            }
            let rates = Record::new()
                .with("low", estimate(Record::new(), Some(r.signal_rate[0])))
                .with("high", estimate(Record::new(), Some(r.signal_rate[1])));
            let doc = Record::new()
                .with("config", cfg.echo())
                .with("params", point(Record::new(), p.upsilon_low(), p.upsilon_high(), p.alpha()))
                .with("n_draws", r.n_draws)
                .with("seed", r.seed)
                .with("gamma", gamma)
                .with(
                    "accuracy",
                    estimate(Record::new(), Some(r.empirical_accuracy))
                        .with("model", forecast_accuracy(&p, gamma)),
                )
                .with("signal_rate", rates)
                .with("low_overrides", r.low_overrides)
                .with("beliefs", Field::List(beliefs))
                .with("joint", Field::List(joint));
            json(&doc)
        }
    };
    Ok(Outcome::new(cfg, format, body))
}
