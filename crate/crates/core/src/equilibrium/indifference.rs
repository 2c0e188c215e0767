//! The low type's payoff gap in the disagreement cell `(s1, a0)` as a
//! function of the mixing weight, and its derivatives.

use crate::error::{Error, Result};
use crate::model::{
    informative_beliefs, worker_posterior, AlgoSignal, Message, ModelParams, PrivateSignal,
    State, WorkerType,
};

fn check_gamma(gamma: f64) -> Result<()> {
    if (0.0..=1.0).contains(&gamma) {
        Ok(())
    } else {
        Err(Error::GammaOutOfRange(gamma))
    }
}

/// `Pr(s1, a0)` normaliser of the low type's disagreement posterior:
/// `alpha - (2 alpha - 1) uL`.
#[inline]
pub(crate) fn disagreement_normaliser(params: &ModelParams) -> f64 {
    let (a, ul) = (params.alpha(), params.upsilon_low());
    a - (2.0 * a - 1.0) * ul
}

/// `G(gamma) = payoff(m0) - payoff(m1)` for the low type holding `(s1, a0)`
/// when the manager expects the informative strategy with weight `gamma`.
/// Positive means following the algorithm pays more.
pub fn g(gamma: f64, params: &ModelParams) -> Result<f64> {
    params.check_assumption()?;
    check_gamma(gamma)?;
    Ok(g_unchecked(gamma, params))
}

pub(crate) fn g_unchecked(gamma: f64, params: &ModelParams) -> f64 {
    let b = informative_beliefs(gamma, params);
    let p1 = worker_posterior(PrivateSignal::S1, AlgoSignal::A0, WorkerType::Low, params);
    let gap = |w: State| b.get(Message::M0, AlgoSignal::A0, w) - b.get(Message::M1, AlgoSignal::A0, w);
    p1 * gap(State::Omega1) + (1.0 - p1) * gap(State::Omega0)
}

/// Closed form of `G(0)`:
/// `(alpha - uL)(uH - uL) / ((2 - uH - uL)(uH + uL)(alpha - (2 alpha - 1) uL))`.
pub fn g_at_zero(params: &ModelParams) -> f64 {
    let (a, ul, uh) = (params.alpha(), params.upsilon_low(), params.upsilon_high());
    (a - ul) * (uh - ul) / ((2.0 - uh - ul) * (uh + ul) * disagreement_normaliser(params))
}

/// Closed-form `dG/dgamma`; strictly negative on the admissible box.
pub fn g_prime(gamma: f64, params: &ModelParams) -> Result<f64> {
    params.check_assumption()?;
    check_gamma(gamma)?;
    Ok(g_prime_unchecked(gamma, params))
}

pub(crate) fn g_prime_unchecked(gamma: f64, params: &ModelParams) -> f64 {
    let (a, ul, uh) = (params.alpha(), params.upsilon_low(), params.upsilon_high());
    let sq = |x: f64| x * x;
    let num = (1.0 - a) * uh * sq(ul) / sq(uh + (1.0 - gamma) * ul)
        + a * (1.0 - uh) * sq(1.0 - ul) / sq(2.0 - gamma - uh - (1.0 - gamma) * ul)
        + a * uh * sq(1.0 - ul) / sq(gamma + uh + (1.0 - gamma) * ul)
        + (1.0 - a) * (1.0 - uh) * sq(ul) / sq(2.0 - uh - (1.0 - gamma) * ul);
    -num / disagreement_normaliser(params)
}

/// Partial derivative of `G` in `alpha` at fixed `gamma`.
///
/// The manager's beliefs do not move with `alpha`; only the low type's
/// disagreement posterior does, with
/// `d Pr(w1 | s1, a0, low) / d alpha = -uL (1 - uL) / (alpha - (2 alpha - 1) uL)^2`.
/// The result is that factor's magnitude times the belief-gap sum at `a0`.
pub fn g_alpha_partial(gamma: f64, params: &ModelParams) -> Result<f64> {
    params.check_assumption()?;
    check_gamma(gamma)?;
    Ok(g_alpha_partial_unchecked(gamma, params))
}

pub(crate) fn g_alpha_partial_unchecked(gamma: f64, params: &ModelParams) -> f64 {
    let ul = params.upsilon_low();
    let d = disagreement_normaliser(params);
    let b = informative_beliefs(gamma, params);
    (1.0 - ul) * ul / (d * d) * b.gap_sum(AlgoSignal::A0)
}
