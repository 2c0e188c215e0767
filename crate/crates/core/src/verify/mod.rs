//! Independent checks of the analytic results: best-response evaluation,
//! an exhaustive grid scan of strategies, numeric sign checks, and Monte
//! Carlo play.

pub mod inequalities;
pub mod brute_force;
pub mod claims;
pub mod deviation;
pub mod ledger;
pub mod simulate;

pub use inequalities::{inequality_checks, inequality_checks_grid, default_p_grid};
pub use brute_force::{brute_force_search, brute_force_search_with, BruteForceResult, HighTypeCase};
pub use deviation::{deviation_check, deviation_check_with, CellDeviation, DeviationReport};
pub use ledger::{ClaimCheck, Ledger};
pub use simulate::{monte_carlo, monte_carlo_strategy, Estimate, SimulationReport};
