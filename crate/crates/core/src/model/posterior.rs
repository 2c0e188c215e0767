//! Information structure and the worker's Bayesian updating.

use crate::model::labels::{AlgoSignal, PrivateSignal, State, WorkerType};
use crate::model::params::ModelParams;

/// `Pr(s1 | state, type)`.
#[inline]
pub fn signal_likelihood(t: WorkerType, state: State, params: &ModelParams) -> f64 {
    let u = params.upsilon(t);
    match state {
        State::Omega1 => u,
        State::Omega0 => 1.0 - u,
    }
}

/// `Pr(a1 | state)`; the algorithm does not depend on the worker's skill.
#[inline]
pub fn algo_likelihood(state: State, params: &ModelParams) -> f64 {
    match state {
        State::Omega1 => params.alpha(),
        State::Omega0 => 1.0 - params.alpha(),
    }
}

#[inline]
fn signal_prob(t: WorkerType, s: PrivateSignal, state: State, params: &ModelParams) -> f64 {
    let p1 = signal_likelihood(t, state, params);
    if s.is_one() {
        p1
    } else {
        1.0 - p1
    }
}

#[inline]
fn algo_prob(a: AlgoSignal, state: State, params: &ModelParams) -> f64 {
    let p1 = algo_likelihood(state, params);
    if a.is_one() {
        p1
    } else {
        1.0 - p1
    }
}

/// `Pr(s, a, state | type)`. Signals are independent given the state, so this
/// sums to one over `(s, a, state)` for each type.
#[inline]
pub fn joint_prob(
    t: WorkerType,
    s: PrivateSignal,
    a: AlgoSignal,
    state: State,
    params: &ModelParams,
) -> f64 {
    ModelParams::PRIOR_STATE1 * signal_prob(t, s, state, params) * algo_prob(a, state, params)
}

/// `Pr(omega1 | s, a, type)`.
pub fn worker_posterior(
    s: PrivateSignal,
    a: AlgoSignal,
    t: WorkerType,
    params: &ModelParams,
) -> f64 {
    let one = joint_prob(t, s, a, State::Omega1, params);
    let zero = joint_prob(t, s, a, State::Omega0, params);
    one / (one + zero)
}

/// `Pr(state | s, a, type)`.
#[inline]
pub fn worker_posterior_of(
    state: State,
    s: PrivateSignal,
    a: AlgoSignal,
    t: WorkerType,
    params: &ModelParams,
) -> f64 {
    let p1 = worker_posterior(s, a, t, params);
    match state {
        State::Omega1 => p1,
        State::Omega0 => 1.0 - p1,
    }
}

/// `Pr(omega1 | s, type)` when no algorithm is available.
pub fn worker_posterior_no_algo(s: PrivateSignal, t: WorkerType, params: &ModelParams) -> f64 {
    let u = params.upsilon(t);
    if s.is_one() {
        u
    } else {
        1.0 - u
    }
}

/// `Pr(s1 | type)`, marginalised over the state.
pub fn signal_marginal(t: WorkerType, params: &ModelParams) -> f64 {
    State::ALL
        .iter()
        .map(|&w| ModelParams::PRIOR_STATE1 * signal_likelihood(t, w, params))
        .sum()
}
