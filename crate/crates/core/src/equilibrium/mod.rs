//! The informative equilibrium: the low type's indifference condition, its
//! root, comparative statics, and the accuracy quantities built on it.

pub mod feasibility;
pub mod indifference;
pub mod labor;
pub mod solve;

pub use feasibility::{
    benchmark_margin_direct, check_benchmark, check_first_best, feasibility, FeasibilityReport,
};
pub use indifference::{g, g_alpha_partial, g_at_zero, g_prime};
pub use labor::{high_mismatch_prob, labor_quantities, LaborQuantities};
pub use solve::{
    adoption_value, dgamma_dalpha, dgamma_dalpha_at, dgamma_daxis_fd, forecast_accuracy,
    forecast_accuracy_of, solve_gamma, Axis, EquilibriumSolution, DEFAULT_TOL,
};
