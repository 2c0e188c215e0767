//! Domain types, Bayesian posteriors and reputational payoffs.

pub mod beliefs;
pub mod labels;
pub mod params;
pub mod posterior;
pub mod strategy;

pub use beliefs::{
    benchmark_beliefs, benchmark_payoff, informative_beliefs, manager_beliefs,
    manager_beliefs_with, message_mass, payoff_difference, worker_payoff, BeliefTable,
    BenchmarkBeliefs, OffPathRule,
};
pub use labels::{AlgoSignal, Flip, Label, Message, PrivateSignal, State, WorkerType};
pub use params::ModelParams;
pub use posterior::{
    algo_likelihood, joint_prob, signal_likelihood, signal_marginal, worker_posterior,
    worker_posterior_no_algo, worker_posterior_of,
};
pub use strategy::{Cell, StrategyProfile};
