//! The model's claims as ledger entries, evaluated one parameter point at a
//! time so they can be merged across grids.

use crate::equilibrium::{
    check_benchmark, check_first_best, dgamma_dalpha_at, dgamma_daxis_fd, forecast_accuracy,
    g_at_zero, g_prime, solve_gamma, Axis, DEFAULT_TOL,
};
use crate::model::{
    worker_payoff, AlgoSignal, Message, ModelParams, PrivateSignal, StrategyProfile, WorkerType,
};
use crate::verify::brute_force::{brute_force_search, HighTypeCase};
use crate::verify::deviation::deviation_check;
use crate::verify::ledger::Ledger;
use crate::verify::simulate::monte_carlo;
use crate::Result;

pub const BENCHMARK_LOW: &str = "no-algorithm truth-telling margin, low type > 0";
pub const BENCHMARK_HIGH: &str = "no-algorithm truth-telling margin, high type > 0";
pub const FIRST_BEST_AGREE: &str = "first-best deviation gain when signals agree > 0";
pub const FIRST_BEST_DISAGREE: &str = "first-best deviation gain when signals disagree > 0";
pub const G0_POSITIVE: &str = "G(0) > 0";
pub const G0_FORM: &str = "G(0) equals its closed form";
pub const G1_NEGATIVE: &str = "G(1) < 0";
pub const G_PRIME_NEGATIVE: &str = "G' < 0";
pub const G_PRIME_FD: &str = "G' matches a centred difference of G";
pub const ROOT_INTERIOR: &str = "gamma* lies in (0, 1)";
pub const ROOT_INDIFFERENT: &str = "low type indifferent at gamma* after disagreement";
pub const ROOT_INFORMATIVE: &str = "equilibrium beliefs are informative";
pub const DGDA_POSITIVE: &str = "d gamma*/d alpha > 0";
pub const DGDA_FD: &str = "d gamma*/d alpha matches re-solving";
pub const ACCURACY_IDENTITY: &str = "accuracy - (uL + uH)/2 = (alpha - uL) gamma / 2";
pub const ACCURACY_ORDER: &str = "first-best accuracy > equilibrium accuracy > no-algorithm accuracy";
pub const OUTPERFORMS_WHEN_MEAN_ABOVE: &str = "accuracy > alpha whenever (uL + uH)/2 > alpha";
pub const NO_DEVIATION: &str = "no profitable deviation at gamma*";
pub const HIGH_STRICT: &str = "high type strictly prefers its own signal at gamma*";
pub const LOW_AGREE_STRICT: &str = "low type strictly reports its signal when it agrees with the algorithm";
pub const BF_NONEMPTY: &str = "brute-force scan finds an approximate equilibrium";
pub const BF_NEAR_ROOT: &str = "brute-force survivors lie within one grid step of gamma*";
pub const BF_STRUCTURE: &str = "brute-force survivors: high type and agreeing low type truthful";
pub const MC_ACCURACY: &str = "simulated accuracy within 3 standard errors";
pub const MC_BELIEFS: &str = "simulated beliefs within 4 standard errors (cells with >= 100 hits)";
pub const MC_SIGNAL_RATE: &str = "simulated Pr(s1) within 3 standard errors of 1/2 for each type";
pub const MC_DETERMINISTIC: &str = "simulation is identical when rerun with the same seed";

/// Relative tolerance for `G'` against finite differences.
pub const G_PRIME_REL_TOL: f64 = 1e-6;
/// Relative tolerance for `d gamma*/d alpha` against re-solving.
pub const DGDA_REL_TOL: f64 = 1e-4;
/// Payoff tolerance for deviation checks at the solved root.
pub const DEVIATION_TOL: f64 = 1e-9;
/// Minimum hits for a simulated belief to be compared.
pub const MIN_BELIEF_HITS: u64 = 100;

const GAMMA_PROBES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

fn case_claim(case: HighTypeCase) -> &'static str {
    match case {
        HighTypeCase::OppositeOfSignal => "brute force: no survivor where the high type reports the opposite of its signal",
        HighTypeCase::FollowsAlgorithm => "brute force: no survivor where the high type always follows the algorithm",
        HighTypeCase::OpposesAlgorithm => "brute force: no survivor where the high type always opposes the algorithm",
        HighTypeCase::OwnSignal => "brute force: survivors where the high type reports its own signal",
    }
}

fn centred<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> f64 {
    if x - h < 0.0 {
        (-3.0 * f(x) + 4.0 * f(x + h) - f(x + 2.0 * h)) / (2.0 * h)
    } else if x + h > 1.0 {
        (3.0 * f(x) - 4.0 * f(x - h) + f(x - 2.0 * h)) / (2.0 * h)
    } else {
        (f(x + h) - f(x - h)) / (2.0 * h)
    }
}

/// Benchmark, first-best, `G`, root, comparative-static, accuracy and
/// deviation claims at one point.
///
/// `g` is the indifference function under test; pass
/// [`crate::equilibrium::g`] (unwrapped) for the real model.
pub fn model_claims(params: &ModelParams, g: impl Fn(f64, &ModelParams) -> f64) -> Result<Ledger> {
    let mut l = Ledger::new();
    let at = *params;

    let (lo, hi) = check_benchmark(params);
    l.record(BENCHMARK_LOW, lo, at, None);
    l.record(BENCHMARK_HIGH, hi, at, None);
    let (agree, disagree) = check_first_best(params)?;
    l.record(FIRST_BEST_AGREE, agree, at, None);
    l.record(FIRST_BEST_DISAGREE, disagree, at, None);

    let g0 = g(0.0, params);
    l.record(G0_POSITIVE, g0, at, None);
    l.record(G0_FORM, 1e-12 - (g0 - g_at_zero(params)).abs(), at, None);
    l.record(G1_NEGATIVE, -g(1.0, params), at, None);
    for gamma in GAMMA_PROBES {
        let d = g_prime(gamma, params)?;
        l.record(G_PRIME_NEGATIVE, -d, at, Some(gamma));
        let fd = centred(|x| g(x, params), gamma, 1e-6);
        l.record(G_PRIME_FD, G_PRIME_REL_TOL - ((fd - d) / d).abs(), at, Some(gamma));
    }

    let sol = solve_gamma(params, DEFAULT_TOL)?;
    let gs = sol.gamma_star;
    l.record(ROOT_INTERIOR, gs.min(1.0 - gs), at, None);
    let pay = |m| {
        worker_payoff(PrivateSignal::S1, AlgoSignal::A0, WorkerType::Low, m, &sol.beliefs, params)
    };
    l.record(ROOT_INDIFFERENT, 1e-10 - (pay(Message::M0) - pay(Message::M1)).abs(), at, None);
    let gaps = AlgoSignal::ALL
        .iter()
        .map(|&a| sol.beliefs.gap_state1(a).min(sol.beliefs.gap_state0(a)))
        .fold(f64::INFINITY, f64::min);
    l.record(ROOT_INFORMATIVE, gaps, at, None);

    let implicit = dgamma_dalpha_at(params, gs);
    l.record(DGDA_POSITIVE, implicit, at, None);
    let fd = dgamma_daxis_fd(params, Axis::Alpha, 1e-5, 1e-15)?;
    l.record(DGDA_FD, DGDA_REL_TOL - ((implicit - fd) / fd).abs(), at, None);

    for gamma in [0.0, gs, 0.5, 1.0] {
        let lhs = forecast_accuracy(params, gamma) - params.mean_upsilon();
        let rhs = 0.5 * (params.alpha() - params.upsilon_low()) * gamma;
        l.record(ACCURACY_IDENTITY, 1e-12 - (lhs - rhs).abs(), at, Some(gamma));
    }
    let order = (forecast_accuracy(params, 1.0) - sol.accuracy)
        .min(sol.accuracy - forecast_accuracy(params, 0.0));
    l.record(ACCURACY_ORDER, order, at, None);
    if params.mean_upsilon() > params.alpha() {
        l.record(OUTPERFORMS_WHEN_MEAN_ABOVE, sol.accuracy - params.alpha(), at, None);
    }

    let rep = deviation_check(&sol.strategy(), params, DEVIATION_TOL);
    let worst = rep
        .cells
        .iter()
        .map(|c| {
            let mixed_gap = if c.is_mixed() { (c.payoff_m1 - c.payoff_m0).abs() } else { 0.0 };
            c.gain.max(mixed_gap)
        })
        .fold(0.0, f64::max);
    l.record(NO_DEVIATION, DEVIATION_TOL - worst, at, None);
    let strict = |keep: &dyn Fn(&crate::verify::CellDeviation) -> bool| {
        rep.cells
            .iter()
            .filter(|c| keep(c))
            .map(|c| c.strict_margin().unwrap_or(f64::NEG_INFINITY))
            .fold(f64::INFINITY, f64::min)
    };
    l.record(HIGH_STRICT, strict(&|c| c.cell.worker == WorkerType::High), at, None);
    l.record(
        LOW_AGREE_STRICT,
        strict(&|c| c.cell.worker == WorkerType::Low && c.cell.agrees()),
        at,
        None,
    );
    Ok(l)
}

/// Exhaustive-scan claims at one point.
pub fn brute_force_claims(params: &ModelParams, grid_step: f64) -> Result<Ledger> {
    let mut l = Ledger::new();
    let at = *params;
    let res = brute_force_search(params, grid_step)?;
    let gamma = solve_gamma(params, DEFAULT_TOL)?.gamma_star;
    let n = res.subgame_survivors.len();
    l.record(BF_NONEMPTY, n as f64, at, None);
    let target = StrategyProfile::informative(gamma)?;
    let dist = if n == 0 { f64::INFINITY } else { res.max_distance_to(&target) };
    l.record(BF_NEAR_ROOT, grid_step + 1e-12 - dist, at, Some(dist));
    l.record_bool(BF_STRUCTURE, res.structure_violations() == 0, at, None);
    for case in HighTypeCase::EXCLUDED {
        l.record_bool(case_claim(case), res.survivors_in_case(case) == 0, at, None);
    }
    Ok(l)
}

/// Monte Carlo claims at one point, playing the solved equilibrium.
pub fn monte_carlo_claims(params: &ModelParams, n_draws: u64, seed: u64) -> Result<Ledger> {
    let mut l = Ledger::new();
    let at = *params;
    let sol = solve_gamma(params, DEFAULT_TOL)?;
    let r = monte_carlo(params, sol.gamma_star, n_draws, seed)?;
    l.record(MC_ACCURACY, 3.0 - r.empirical_accuracy.z(sol.accuracy), at, None);
    let mut worst = f64::INFINITY;
    for m in Message::ALL {
        for a in AlgoSignal::ALL {
            for w in crate::model::State::ALL {
                if let Some(e) = r.belief(m, a, w) {
                    if e.trials >= MIN_BELIEF_HITS {
                        worst = worst.min(4.0 - e.z(sol.beliefs.get(m, a, w)));
                    }
                }
            }
        }
    }
    l.record(MC_BELIEFS, worst, at, None);
    let rate = r.signal_rate.iter().map(|e| 3.0 - e.z(0.5)).fold(f64::INFINITY, f64::min);
    l.record(MC_SIGNAL_RATE, rate, at, None);
    let again = monte_carlo(params, sol.gamma_star, n_draws, seed)?;
    l.record_bool(MC_DETERMINISTIC, again == r, at, None);
    Ok(l)
}
