//! Sign and monotonicity checks behind the pure-strategy and truthful
//! agreement results, evaluated numerically.
//!
//! Everything is stated at algorithm signal `a1`; the `a0` statements are
//! the label-flip image. Reduced closed forms are compared against payoffs
//! computed from general Bayes beliefs, then their signs are checked.

use crate::model::{
    manager_beliefs, payoff_difference, worker_posterior, AlgoSignal, Cell, ModelParams,
    PrivateSignal, StrategyProfile, WorkerType,
};
use crate::verify::ledger::Ledger;

/// Agreement between a reduced closed form and the payoff route.
const ROUTE_TOL: f64 = 1e-11;
/// Relative agreement of the `p`-slope with a centred difference.
const SLOPE_REL_TOL: f64 = 1e-5;

pub const LOW_MIX_POSITIVE: &str = "low type mixing after (s1,a1): payoff gap > 0";
pub const LOW_MIX_ROUTE: &str = "low type mixing after (s1,a1): closed form equals payoff route";
pub const LOW_QUIET_POSITIVE: &str = "low type sending m0 after (s1,a1): payoff gap > 0";
pub const LOW_QUIET_ROUTE: &str =
    "low type sending m0 after (s1,a1): closed form equals payoff route";
pub const LOW_QUIET_DECREASING: &str = "low type sending m0 after (s1,a1): gap decreasing in p";
pub const LOW_QUIET_SLOPE: &str =
    "low type sending m0 after (s1,a1): p-slope equals finite difference";
pub const LOW_QUIET_END_FORM: &str = "low type sending m0 after (s1,a1): p = 1 closed form matches";
pub const LOW_QUIET_END_POSITIVE: &str = "low type sending m0 after (s1,a1): p = 1 value > 0";
pub const LOW_INDIFF_S0_ROUTE: &str =
    "low type indifferent after (s1,a1): s0 gap reduces to its closed-form coefficient";
pub const LOW_INDIFF_S0_POSITIVE: &str =
    "low type indifferent after (s1,a1): s0 gap coefficient > 0";
pub const HIGH_MIX_S0_NONZERO: &str = "high type mixing after (s1,a1): s0 gap coefficient nonzero";
pub const HIGH_MIX_S0_ROUTE: &str =
    "high type mixing after (s1,a1): s0 gap matches its closed-form coefficient in magnitude";
pub const HIGH_MIX_LOW_S1_POSITIVE: &str =
    "high type mixing after (s1,a1): low type's s1 gap coefficient > 0";
pub const HIGH_MIX_LOW_S1_ROUTE: &str =
    "high type mixing after (s1,a1): low type's s1 gap reduces to its closed-form coefficient";
pub const HIGH_MIX_LOW_S0_POSITIVE: &str =
    "high type mixing after (s1,a1): low type's s0 gap coefficient > 0";
pub const HIGH_MORE_CONFIDENT: &str = "high type puts more weight on w1 than low type after (s1,a1)";
pub const LOW_LEANS_ON_ALGORITHM: &str =
    "low type puts more weight on w1 than high type after (s0,a1)";
pub const CASE_OPPOSITE_REVERSED: &str =
    "both types reporting the opposite signal: beliefs reward wrong forecasts";
pub const CASE_OPPOSITE_FORM: &str = "both types reporting the opposite signal: closed form matches";
pub const CASE_FOLLOW_UNINFORMATIVE: &str = "both types following the algorithm: not informative";
pub const CASE_OPPOSE_UNINFORMATIVE: &str = "both types opposing the algorithm: not informative";

/// `p` values `0, 0.1, ..., 1`.
pub fn default_p_grid() -> [f64; 11] {
    core::array::from_fn(|k| k as f64 / 10.0)
}

fn parts(params: &ModelParams) -> (f64, f64, f64) {
    (params.upsilon_low(), params.upsilon_high(), params.alpha())
}

/// `1 - alpha + (2 alpha - 1) uL`, proportional to `Pr(s1, a1 | low)`.
fn agree_normaliser(params: &ModelParams) -> f64 {
    let (ul, _, a) = parts(params);
    1.0 - a + (2.0 * a - 1.0) * ul
}

/// Low type's gap after `(s1, a1)` when it reports `m1` there with
/// probability `p` and `m0` after `(s0, a1)`; the high type is truthful.
pub fn low_mix_gap(params: &ModelParams, p: f64) -> f64 {
    let (ul, uh, a) = parts(params);
    let t1 = (1.0 - a) * (1.0 - uh - p * (1.0 - ul)) * (1.0 - ul)
        / ((1.0 - uh + p * (1.0 - ul)) * (1.0 + uh - p * (1.0 - ul)));
    let t2 = a * ul * (uh - p * ul) / ((2.0 - uh - p * ul) * (uh + p * ul));
    (t1 + t2) / agree_normaliser(params)
}

/// Low type's gap after `(s1, a1)` when it reports `m0` there and `m1`
/// after `(s0, a1)` with probability `p`; the high type is truthful.
pub fn low_quiet_gap(params: &ModelParams, p: f64) -> f64 {
    let (ul, uh, a) = parts(params);
    let n = a * uh * ul / (uh + p * (1.0 - ul)) - a * (1.0 - uh) * ul / (2.0 - uh - p * (1.0 - ul))
        + (1.0 - a) * (1.0 - uh) * (1.0 - ul) / (1.0 - uh + p * ul)
        - (1.0 - a) * uh * (1.0 - ul) / (1.0 + uh - p * ul);
    n / agree_normaliser(params)
}

/// `d low_quiet_gap / dp`.
pub fn low_quiet_gap_slope(params: &ModelParams, p: f64) -> f64 {
    let (ul, uh, a) = parts(params);
    let sq = |x: f64| x * x;
    let s = a * uh / sq(uh + p * (1.0 - ul))
        + a * (1.0 - uh) / sq(2.0 - uh - p * (1.0 - ul))
        + (1.0 - a) * uh / sq(1.0 + uh - p * ul)
        + (1.0 - a) * (1.0 - uh) / sq(1.0 - uh + p * ul);
    -(1.0 - ul) * ul * s / agree_normaliser(params)
}

/// `low_quiet_gap` at `p = 1`:
/// `(alpha + uL - 1)(uH + uL - 1) / ((1 - (uH - uL)^2)(1 - alpha + (2 alpha - 1) uL))`.
pub fn low_quiet_gap_at_one(params: &ModelParams) -> f64 {
    let (ul, uh, a) = parts(params);
    (a + ul - 1.0) * (uh + ul - 1.0) / ((1.0 - (uh - ul) * (uh - ul)) * agree_normaliser(params))
}

/// Coefficient on `theta(m1,a1,w0) - theta(m0,a1,w0)` in the low type's
/// `s0` gap once the low type is indifferent after `(s1, a1)`.
pub fn low_indifferent_s0_coefficient(params: &ModelParams) -> f64 {
    let (ul, _, a) = parts(params);
    (1.0 - a) * (2.0 * ul - 1.0) / (ul * (a - (2.0 * a - 1.0) * ul))
}

/// The high type's analogue, signed opposite to the reduced coefficient:
/// `(1 - alpha)(2 uH - 1) / (uH ((2 alpha - 1) uH - alpha))`.
pub fn high_mix_s0_coefficient(params: &ModelParams) -> f64 {
    let (_, uh, a) = parts(params);
    (1.0 - a) * (2.0 * uh - 1.0) / (uh * ((2.0 * a - 1.0) * uh - a))
}

/// Coefficient in the low type's `s1` gap once the high type is indifferent
/// after `(s1, a1)`: `(1 - alpha)(uH - uL) / (uH (1 - alpha + (2 alpha - 1) uL))`.
pub fn high_mix_low_s1_coefficient(params: &ModelParams) -> f64 {
    let (ul, uh, a) = parts(params);
    (1.0 - a) * (uh - ul) / (uh * agree_normaliser(params))
}

/// Same for the low type's `s0` gap:
/// `(1 - alpha)(uH + uL - 1) / (uH (alpha - (2 alpha - 1) uL))`.
pub fn high_mix_low_s0_coefficient(params: &ModelParams) -> f64 {
    let (ul, uh, a) = parts(params);
    (1.0 - a) * (uh + ul - 1.0) / (uh * (a - (2.0 * a - 1.0) * ul))
}

/// Centred difference inside `[0, 1]`, second-order one-sided at the ends.
fn second_order_difference(f: impl Fn(f64) -> f64, p: f64) -> f64 {
    let h = 1e-5;
    if p - h < 0.0 {
        (-3.0 * f(p) + 4.0 * f(p + h) - f(p + 2.0 * h)) / (2.0 * h)
    } else if p + h > 1.0 {
        (3.0 * f(p) - 4.0 * f(p - h) + f(p - 2.0 * h)) / (2.0 * h)
    } else {
        (f(p + h) - f(p - h)) / (2.0 * h)
    }
}

fn at_a1(t: WorkerType, s: PrivateSignal) -> Cell {
    Cell::new(t, s, AlgoSignal::A1)
}

/// Truthful profile with the low type's `a1` behaviour overridden.
fn low_at_a1(s1: f64, s0: f64) -> StrategyProfile {
    StrategyProfile::truthful()
        .with(at_a1(WorkerType::Low, PrivateSignal::S1), s1)
        .and_then(|s| s.with(at_a1(WorkerType::Low, PrivateSignal::S0), s0))
        .expect("probabilities in range")
}

fn low_s1_gap_under(strategy: &StrategyProfile, params: &ModelParams) -> f64 {
    let b = manager_beliefs(strategy, params);
    payoff_difference(at_a1(WorkerType::Low, PrivateSignal::S1), &b, params)
}

/// Coefficient `k` in `gap(s) = k (theta(m1,a1,w0) - theta(m0,a1,w0))` when
/// `theta(m1,a1,w1)` is set to make `solver` indifferent after `(s1, a1)`.
///
/// The other three beliefs are free; any fixed values expose `k`.
fn reduced_coefficient(params: &ModelParams, solver: WorkerType, t: WorkerType, s: PrivateSignal) -> f64 {
    let (b01, b10, b00) = (0.3, 0.45, 0.6);
    let q = worker_posterior(PrivateSignal::S1, AlgoSignal::A1, solver, params);
    let b11 = b01 + (1.0 - q) * (b00 - b10) / q;
    let r = worker_posterior(s, AlgoSignal::A1, t, params);
    let gap = r * (b11 - b01) + (1.0 - r) * (b10 - b00);
    gap / (b10 - b00)
}

fn not_informative(strategy: &StrategyProfile, params: &ModelParams) -> bool {
    let b = manager_beliefs(strategy, params);
    !b.is_informative_at(AlgoSignal::A0) && !b.is_informative_at(AlgoSignal::A1)
}

/// Every check at one parameter point. Margins are positive when the claim
/// holds.
pub fn inequality_checks(params: &ModelParams, p_grid: &[f64]) -> Ledger {
    let mut l = Ledger::new();
    let at = *params;
    for &p in p_grid {
        let mix = low_mix_gap(params, p);
        l.record(LOW_MIX_POSITIVE, mix, at, Some(p));
        let route = low_s1_gap_under(&low_at_a1(p, 0.0), params);
        l.record(LOW_MIX_ROUTE, ROUTE_TOL - (mix - route).abs(), at, Some(p));

        let quiet = low_quiet_gap(params, p);
        l.record(LOW_QUIET_POSITIVE, quiet, at, Some(p));
        let route = low_s1_gap_under(&low_at_a1(0.0, p), params);
        l.record(LOW_QUIET_ROUTE, ROUTE_TOL - (quiet - route).abs(), at, Some(p));

        let slope = low_quiet_gap_slope(params, p);
        l.record(LOW_QUIET_DECREASING, -slope, at, Some(p));
        let fd = second_order_difference(|x| low_quiet_gap(params, x), p);
        l.record(LOW_QUIET_SLOPE, SLOPE_REL_TOL - ((fd - slope) / slope).abs(), at, Some(p));
    }

    let end = low_quiet_gap_at_one(params);
    l.record(LOW_QUIET_END_FORM, ROUTE_TOL - (end - low_quiet_gap(params, 1.0)).abs(), at, None);
    l.record(LOW_QUIET_END_POSITIVE, end, at, None);

    let (low, high) = (WorkerType::Low, WorkerType::High);
    let (s0, s1) = (PrivateSignal::S0, PrivateSignal::S1);

    let k = low_indifferent_s0_coefficient(params);
    let route = reduced_coefficient(params, low, low, s0);
    l.record(LOW_INDIFF_S0_ROUTE, ROUTE_TOL - (k - route).abs(), at, None);
    l.record(LOW_INDIFF_S0_POSITIVE, k, at, None);

    let k = high_mix_s0_coefficient(params);
    let route = reduced_coefficient(params, high, high, s0);
    l.record(HIGH_MIX_S0_NONZERO, k.abs(), at, None);
    l.record(HIGH_MIX_S0_ROUTE, ROUTE_TOL - (k.abs() - route.abs()).abs(), at, None);

    let k = high_mix_low_s1_coefficient(params);
    let route = reduced_coefficient(params, high, low, s1);
    l.record(HIGH_MIX_LOW_S1_POSITIVE, k, at, None);
    l.record(HIGH_MIX_LOW_S1_ROUTE, ROUTE_TOL - (k - route).abs(), at, None);
    let route = reduced_coefficient(params, high, low, s0);
    let k = high_mix_low_s0_coefficient(params);
    l.record(HIGH_MIX_LOW_S0_POSITIVE, k.min(route), at, None);

    let margin = worker_posterior(s1, AlgoSignal::A1, high, params)
        - worker_posterior(s1, AlgoSignal::A1, low, params);
    l.record(HIGH_MORE_CONFIDENT, margin, at, None);
    let margin = worker_posterior(s0, AlgoSignal::A1, low, params)
        - worker_posterior(s0, AlgoSignal::A1, high, params);
    l.record(LOW_LEANS_ON_ALGORITHM, margin, at, None);

    // Both types report the opposite of their signal.
    let opposite = StrategyProfile::truthful();
    let opposite = StrategyProfile::from_fn(|c| 1.0 - opposite.report_m1(c)).expect("pure");
    let b = manager_beliefs(&opposite, params);
    let (ul, uh, _) = parts(params);
    for a in AlgoSignal::ALL {
        use crate::model::{Message, State};
        let wrong = b.get(Message::M1, a, State::Omega1);
        let right = b.get(Message::M0, a, State::Omega1);
        l.record(CASE_OPPOSITE_REVERSED, right - wrong, at, None);
        let form = (1.0 - uh) / (2.0 - uh - ul);
        let form_other = uh / (uh + ul);
        let err = (wrong - form).abs().max((right - form_other).abs());
        l.record(CASE_OPPOSITE_FORM, ROUTE_TOL - err, at, None);
    }

    let follow = StrategyProfile::from_fn(|c| if c.algo.is_one() { 1.0 } else { 0.0 }).expect("pure");
    let oppose = StrategyProfile::from_fn(|c| if c.algo.is_one() { 0.0 } else { 1.0 }).expect("pure");
    l.record_bool(CASE_FOLLOW_UNINFORMATIVE, not_informative(&follow, params), at, None);
    l.record_bool(CASE_OPPOSE_UNINFORMATIVE, not_informative(&oppose, params), at, None);
    l
}

/// [`inequality_checks`] over many points, merged by claim.
pub fn inequality_checks_grid<'a>(
    points: impl IntoIterator<Item = &'a ModelParams>,
    p_grid: &[f64],
) -> Ledger {
    let mut l = Ledger::new();
    for p in points {
        l.merge(inequality_checks(p, p_grid));
    }
    l
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::dense_grid;

    fn golden() -> ModelParams {
        ModelParams::new(0.55, 0.62, 0.60).unwrap()
    }

    #[test]
    fn golden_point_values() {
        let p = golden();
        let end = low_quiet_gap_at_one(&p);
        assert!((end - 0.0255 / (0.9951 * 0.51)).abs() < 1e-15);
        assert!((end - 0.0502462).abs() < 1e-7);
        let l = inequality_checks(&p, &default_p_grid());
        assert!(l.all_passed(), "{:?}", l.failures().collect::<alloc::vec::Vec<_>>());
    }

    #[test]
    fn high_type_coefficient_has_the_opposite_sign() {
        let p = golden();
        let route = reduced_coefficient(&p, WorkerType::High, WorkerType::High, PrivateSignal::S0);
        assert!(route > 0.0);
        assert!((route + high_mix_s0_coefficient(&p)).abs() < 1e-12);
    }

    #[test]
    fn factor_vanishes_at_the_lower_edge() {
        let p = ModelParams::open(0.5 + 1e-9, 0.62, 0.60).unwrap();
        assert!(low_indifferent_s0_coefficient(&p).abs() < 1e-8);
    }

    #[test]
    fn every_claim_holds_on_the_dense_grid() {
        let g = dense_grid();
        let l = inequality_checks_grid(g.iter(), &default_p_grid());
        assert!(l.all_passed(), "{:?}", l.failures().collect::<alloc::vec::Vec<_>>());
        assert_eq!(l.get(LOW_MIX_POSITIVE).unwrap().evaluated, 2300 * 11);
    }
}
