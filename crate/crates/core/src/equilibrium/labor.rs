//! Accuracy and labor-market quantities at the solved equilibrium.

use crate::equilibrium::solve::{dgamma_dalpha_at, EquilibriumSolution};
use crate::model::ModelParams;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaborQuantities {
    /// Worker accuracy minus algorithm precision.
    pub accuracy_margin: f64,
    /// `d accuracy_margin / d alpha`, the sum of the two terms below.
    pub margin_slope: f64,
    /// `gamma / 2 - 1`: the margin's slope holding the worker's behaviour
    /// fixed.
    pub margin_slope_direct: f64,
    /// `(alpha - uL) (d gamma / d alpha) / 2`: the offset from more
    /// frequent adoption.
    pub margin_slope_adoption: f64,
    pub adoption_value: f64,
    /// Probability the high type's signal disagrees with the algorithm.
    pub high_mismatch_prob: f64,
    pub dgamma_dalpha: f64,
}

/// `((1 - alpha) uH + alpha (1 - uH)) / 2`.
pub fn high_mismatch_prob(params: &ModelParams) -> f64 {
    let (a, uh) = (params.alpha(), params.upsilon_high());
    0.5 * ((1.0 - a) * uh + a * (1.0 - uh))
}

pub fn labor_quantities(params: &ModelParams, solution: &EquilibriumSolution) -> LaborQuantities {
    let gamma = solution.gamma_star;
    let dg = dgamma_dalpha_at(params, gamma);
    let margin_slope_direct = 0.5 * gamma - 1.0;
    let margin_slope_adoption = 0.5 * (params.alpha() - params.upsilon_low()) * dg;
    LaborQuantities {
        accuracy_margin: solution.accuracy_margin,
        margin_slope: margin_slope_direct + margin_slope_adoption,
        margin_slope_direct,
        margin_slope_adoption,
        adoption_value: solution.adoption_value,
        high_mismatch_prob: high_mismatch_prob(params),
        dgamma_dalpha: dg,
    }
}
