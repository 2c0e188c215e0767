use crate::equilibrium::indifference::{
    g_alpha_partial_unchecked, g_prime_unchecked, g_unchecked,
};
use crate::error::{Error, Result};
use crate::model::{
    informative_beliefs, message_mass, AlgoSignal, BeliefTable, Message, ModelParams, State,
    StrategyProfile, WorkerType,
};

/// Default bisection bracket width.
pub const DEFAULT_TOL: f64 = 1e-12;

/// The informative equilibrium for one parameter point.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumSolution {
    pub params: ModelParams,
    /// Probability that the low type follows a disagreeing algorithm.
    pub gamma_star: f64,
    /// `|G(gamma_star)|`.
    pub residual: f64,
    pub beliefs: BeliefTable,
    /// `Pr(w1 | m1)`, the worker's forecast accuracy.
    pub accuracy: f64,
    /// Accuracy in excess of the algorithm's own precision.
    pub accuracy_margin: f64,
    /// Accuracy gained by giving the worker the algorithm.
    pub adoption_value: f64,
    pub iterations: u32,
}

impl EquilibriumSolution {
    pub fn strategy(&self) -> StrategyProfile {
        StrategyProfile::informative(self.gamma_star).expect("gamma_star lies in (0, 1)")
    }
}

/// Bisection for the unique root of `G` on `[0, 1]`.
///
/// `G(0) > 0 > G(1)` and `G` is strictly decreasing on the admissible box, so
/// the bracket always holds; a failed bracket is reported as
/// [`Error::BracketFailure`].
pub fn solve_gamma(params: &ModelParams, tol: f64) -> Result<EquilibriumSolution> {
    params.check_assumption()?;
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Error::InvalidTolerance(tol));
    }
    let g0 = g_unchecked(0.0, params);
    let g1 = g_unchecked(1.0, params);
    if !(g0 > 0.0 && g1 < 0.0) {
        return Err(Error::BracketFailure { g0, g1 });
    }
    let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
    let mut iterations = 0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        iterations += 1;
        let v = g_unchecked(mid, params);
        if v > 0.0 {
            lo = mid;
        } else if v < 0.0 {
            hi = mid;
        } else {
            lo = mid;
            hi = mid;
        }
    }
    let gamma_star = 0.5 * (lo + hi);
    let accuracy = forecast_accuracy(params, gamma_star);
    Ok(EquilibriumSolution {
        params: *params,
        gamma_star,
        residual: g_unchecked(gamma_star, params).abs(),
        beliefs: informative_beliefs(gamma_star, params),
        accuracy,
        accuracy_margin: accuracy - params.alpha(),
        adoption_value: adoption_value(params, gamma_star),
        iterations,
    })
}

/// `Pr(w1 | m1) = (alpha g + uH + (1 - g) uL) / 2` under the informative
/// strategy with weight `gamma`.
pub fn forecast_accuracy(params: &ModelParams, gamma: f64) -> f64 {
    0.5 * (params.alpha() * gamma + params.upsilon_high() + (1.0 - gamma) * params.upsilon_low())
}

/// `Pr(w1 | m1)` for an arbitrary strategy, summed cell by cell.
pub fn forecast_accuracy_of(strategy: &StrategyProfile, params: &ModelParams) -> f64 {
    let mut hit = 0.0;
    let mut total = 0.0;
    for t in WorkerType::ALL {
        for a in AlgoSignal::ALL {
            for w in State::ALL {
                let mass = message_mass(strategy, params, t, Message::M1, a, w);
                total += mass;
                if w == State::Omega1 {
                    hit += mass;
                }
            }
        }
    }
    hit / total
}

/// Accuracy gain from the algorithm: `(alpha - uL) gamma / 2`.
pub fn adoption_value(params: &ModelParams, gamma: f64) -> f64 {
    0.5 * (params.alpha() - params.upsilon_low()) * gamma
}

/// `d gamma* / d alpha` by the implicit function theorem,
/// `-(dG/d alpha) / (dG/d gamma)` at the solved root.
pub fn dgamma_dalpha(params: &ModelParams) -> Result<f64> {
    let sol = solve_gamma(params, DEFAULT_TOL)?;
    Ok(dgamma_dalpha_at(params, sol.gamma_star))
}

/// The implicit-function slope evaluated at a given root.
pub fn dgamma_dalpha_at(params: &ModelParams, gamma_star: f64) -> f64 {
    -g_alpha_partial_unchecked(gamma_star, params) / g_prime_unchecked(gamma_star, params)
}

/// Parameter that a sweep or finite difference moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Alpha,
    UpsilonLow,
    UpsilonHigh,
}

impl Axis {
    pub const fn name(self) -> &'static str {
        match self {
            Axis::Alpha => "alpha",
            Axis::UpsilonLow => "upsilon_L",
            Axis::UpsilonHigh => "upsilon_H",
        }
    }

    pub fn value(self, params: &ModelParams) -> f64 {
        match self {
            Axis::Alpha => params.alpha(),
            Axis::UpsilonLow => params.upsilon_low(),
            Axis::UpsilonHigh => params.upsilon_high(),
        }
    }

    /// Moves this coordinate; the result satisfies only the open-interval
    /// constraint.
    pub fn set(self, params: &ModelParams, v: f64) -> Result<ModelParams> {
        match self {
            Axis::Alpha => params.with_alpha(v),
            Axis::UpsilonLow => params.with_upsilon_low(v),
            Axis::UpsilonHigh => params.with_upsilon_high(v),
        }
    }
}

/// `d gamma* / d axis` by re-solving at `axis +- h`. Falls back to a
/// one-sided difference when one neighbour leaves the admissible box.
pub fn dgamma_daxis_fd(params: &ModelParams, axis: Axis, h: f64, tol: f64) -> Result<f64> {
    let x = axis.value(params);
    let solve_at = |v: f64| -> Option<f64> {
        let p = axis.set(params, v).ok()?;
        solve_gamma(&p, tol).ok().map(|s| s.gamma_star)
    };
    let here = solve_gamma(params, tol)?.gamma_star;
    match (solve_at(x + h), solve_at(x - h)) {
        (Some(up), Some(dn)) => Ok((up - dn) / (2.0 * h)),
        (Some(up), None) => Ok((up - here) / h),
        (None, Some(dn)) => Ok((here - dn) / h),
        (None, None) => Err(Error::InvalidTolerance(h)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden() -> ModelParams {
        ModelParams::new(0.55, 0.62, 0.60).unwrap()
    }

    #[test]
    fn golden_root() {
        let sol = solve_gamma(&golden(), DEFAULT_TOL).unwrap();
        assert!((sol.gamma_star - 0.0148).abs() < 5e-4, "{}", sol.gamma_star);
        assert!(sol.residual < 1e-12);
        assert!((sol.accuracy - 0.58537).abs() < 1e-4);
        assert!(sol.accuracy < 0.60);
        assert!(sol.gamma_star > 0.0 && sol.gamma_star < 1.0);
    }

    #[test]
    fn root_vanishes_as_alpha_approaches_upsilon_low() {
        let p = ModelParams::new(0.55, 0.62, 0.55 + 1e-6).unwrap();
        let sol = solve_gamma(&p, DEFAULT_TOL).unwrap();
        assert!(sol.gamma_star > 0.0 && sol.gamma_star < 1e-5);
    }

    #[test]
    fn accuracy_limits() {
        let p = golden();
        assert!((forecast_accuracy(&p, 1.0) - 0.5 * (0.60 + 0.62)).abs() < 1e-15);
        assert!((forecast_accuracy(&p, 0.0) - 0.5 * (0.55 + 0.62)).abs() < 1e-15);
        assert!((forecast_accuracy(&p, 0.0148) - 0.58537).abs() < 1e-12);
        for g in [0.0, 0.3, 1.0] {
            let s = StrategyProfile::informative(g).unwrap();
            assert!((forecast_accuracy_of(&s, &p) - forecast_accuracy(&p, g)).abs() < 1e-14);
        }
    }

    #[test]
    fn adoption_value_example() {
        assert!((adoption_value(&golden(), 0.0148) - 0.00037).abs() < 1e-15);
    }

    #[test]
    fn implicit_slope_matches_re_solving() {
        let p = golden();
        let implicit = dgamma_dalpha(&p).unwrap();
        let fd = dgamma_daxis_fd(&p, Axis::Alpha, 1e-5, 1e-15).unwrap();
        assert!(implicit > 0.0);
        assert!(((implicit - fd) / fd).abs() < 1e-4, "implicit {implicit} fd {fd}");
    }

    #[test]
    fn rejects_bad_tolerance() {
        assert!(matches!(
            solve_gamma(&golden(), 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }
}
