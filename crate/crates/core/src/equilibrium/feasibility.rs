//! Incentive margins for truth-telling without the algorithm and for
//! first-best use of the algorithm.

use crate::error::Result;
use crate::model::{
    benchmark_beliefs, benchmark_payoff, manager_beliefs, worker_payoff, AlgoSignal, Message,
    ModelParams, PrivateSignal, StrategyProfile, WorkerType,
};

/// Benchmark truth-telling margins and first-best deviation gains.
///
/// Positive margins mean truth-telling is strictly incentive compatible;
/// positive violations mean the low type strictly gains by deviating from
/// the first-best profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityReport {
    pub benchmark_ic_low: f64,
    pub benchmark_ic_high: f64,
    pub firstbest_violation_agree: f64,
    pub firstbest_violation_disagree: f64,
}

impl FeasibilityReport {
    pub fn benchmark_holds(&self) -> bool {
        self.benchmark_ic_low > 0.0 && self.benchmark_ic_high > 0.0
    }

    pub fn first_best_fails(&self) -> bool {
        self.firstbest_violation_agree > 0.0 && self.firstbest_violation_disagree > 0.0
    }
}

/// Truth-telling margins without the algorithm, `(low, high)`:
/// `(uH - uL)(2 u - 1) / ((2 - uH - uL)(uH + uL))` with `u` the type's own
/// precision.
///
/// Only `uH > uL > 1/2` is needed; `alpha` is ignored.
pub fn check_benchmark(params: &ModelParams) -> (f64, f64) {
    let (ul, uh) = (params.upsilon_low(), params.upsilon_high());
    let scale = (uh - ul) / ((2.0 - uh - ul) * (uh + ul));
    (scale * (2.0 * ul - 1.0), scale * (2.0 * uh - 1.0))
}

/// Benchmark margin from explicit payoffs: reporting the received signal
/// `s1` minus reporting `s0`.
pub fn benchmark_margin_direct(t: WorkerType, params: &ModelParams) -> f64 {
    let b = benchmark_beliefs(params);
    benchmark_payoff(PrivateSignal::S1, t, Message::M1, &b, params)
        - benchmark_payoff(PrivateSignal::S1, t, Message::M0, &b, params)
}

/// Low-type gains from deviating against first-best beliefs, `(agree,
/// disagree)`.
///
/// Agree: holding `(s1, a1)` and sending `m0`, which the manager reads as a
/// certain high type. Disagree: holding `(s1, a0)` and sending `m1` instead
/// of following the algorithm, again a message only the high type sends.
pub fn check_first_best(params: &ModelParams) -> Result<(f64, f64)> {
    params.check_assumption()?;
    let b = manager_beliefs(&StrategyProfile::first_best(), params);
    let low = WorkerType::Low;
    let pay = |a: AlgoSignal, m: Message| worker_payoff(PrivateSignal::S1, a, low, m, &b, params);
    let agree = pay(AlgoSignal::A1, Message::M0) - pay(AlgoSignal::A1, Message::M1);
    let disagree = pay(AlgoSignal::A0, Message::M1) - pay(AlgoSignal::A0, Message::M0);
    Ok((agree, disagree))
}

pub fn feasibility(params: &ModelParams) -> Result<FeasibilityReport> {
    let (benchmark_ic_low, benchmark_ic_high) = check_benchmark(params);
    let (firstbest_violation_agree, firstbest_violation_disagree) = check_first_best(params)?;
    Ok(FeasibilityReport {
        benchmark_ic_low,
        benchmark_ic_high,
        firstbest_violation_agree,
        firstbest_violation_disagree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::worker_posterior;

    fn golden() -> ModelParams {
        ModelParams::new(0.55, 0.62, 0.60).unwrap()
    }

    #[test]
    fn benchmark_examples() {
        let (lo, hi) = check_benchmark(&golden());
        assert!((lo - 0.007 / (0.83 * 1.17)).abs() < 1e-15);
        assert!((hi - 0.0168 / (0.83 * 1.17)).abs() < 1e-15);
        assert!((lo - 0.0072083).abs() < 1e-7);
        assert!((hi - 0.0173000).abs() < 1e-7);
        let flat = ModelParams::open(0.6, 0.6, 0.6).unwrap();
        assert_eq!(check_benchmark(&flat), (0.0, 0.0));
    }

    #[test]
    fn benchmark_closed_form_is_the_payoff_gap() {
        for p in [golden(), ModelParams::new(0.51, 0.97, 0.7).unwrap()] {
            let (lo, hi) = check_benchmark(&p);
            assert!((benchmark_margin_direct(WorkerType::Low, &p) - lo).abs() < 1e-14);
            assert!((benchmark_margin_direct(WorkerType::High, &p) - hi).abs() < 1e-14);
        }
    }

    #[test]
    fn first_best_gains_match_hand_algebra() {
        let p = golden();
        let (agree, disagree) = check_first_best(&p).unwrap();
        let uh = p.upsilon_high();
        let q = worker_posterior(PrivateSignal::S1, AlgoSignal::A1, WorkerType::Low, &p);
        let expect_agree = q * (1.0 - uh / (1.0 + uh)) + (1.0 - q) * (1.0 - (1.0 - uh) / (2.0 - uh));
        assert!((agree - expect_agree).abs() < 1e-14);
        // the omega1 slice of the agree gap
        assert!((1.0 - uh / (1.0 + uh) - 0.617284).abs() < 1e-6);

        let r = worker_posterior(PrivateSignal::S1, AlgoSignal::A0, WorkerType::Low, &p);
        let stay = r * (1.0 - uh) / (2.0 - uh) + (1.0 - r) * uh / (1.0 + uh);
        assert!((disagree - (1.0 - stay)).abs() < 1e-14);
        assert!(feasibility(&p).unwrap().first_best_fails());
    }
}
