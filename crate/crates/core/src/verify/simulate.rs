//! Monte Carlo play of the game.
//!
//! Draws are generated in batches of [`BATCH`]; batch `k` uses a ChaCha8
//! generator seeded from `seed` on stream `k`, so any batch can be produced
//! independently and the totals do not depend on evaluation order. Each draw
//! consumes five 53-bit uniforms, in order: skill, state, private signal,
//! algorithm signal, message.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::unit_f64;
use crate::model::{
    algo_likelihood, signal_likelihood, AlgoSignal, Message, ModelParams, PrivateSignal, State,
    StrategyProfile, WorkerType,
};

pub const BATCH: u64 = 1 << 16;

/// Outcome counts indexed `[type][s][a][state][m]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Counts(pub [[[[[u64; 2]; 2]; 2]; 2]; 2]);

impl Counts {
    pub fn add(&mut self, other: &Counts) {
        for (x, y) in self.iter_mut().zip(other.iter()) {
            *x += y;
        }
    }

    pub fn get(&self, t: WorkerType, s: PrivateSignal, a: AlgoSignal, w: State, m: Message) -> u64 {
        self.0[t.index()][s.index()][a.index()][w.index()][m.index()]
    }

    pub fn total(&self) -> u64 {
        self.iter().sum()
    }

    fn iter(&self) -> impl Iterator<Item = &u64> {
        self.0.iter().flatten().flatten().flatten().flatten()
    }

    fn iter_mut(&mut self) -> impl Iterator<Item = &mut u64> {
        self.0.iter_mut().flatten().flatten().flatten().flatten()
    }
}

#[inline]
fn bernoulli(rng: &mut impl RngCore, p: f64) -> bool {
    unit_f64(rng) < p
}

/// Number of batches needed for `n_draws`.
pub fn batch_count(n_draws: u64) -> u64 {
    n_draws.div_ceil(BATCH)
}

/// Counts for batch `k` of an `n_draws` run.
pub fn simulate_batch(
    strategy: &StrategyProfile,
    params: &ModelParams,
    n_draws: u64,
    seed: u64,
    k: u64,
) -> Counts {
    let draws = BATCH.min(n_draws.saturating_sub(k * BATCH));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    let mut c = Counts::default();
    for _ in 0..draws {
        let t = if bernoulli(&mut rng, ModelParams::PRIOR_HIGH) {
            WorkerType::High
        } else {
            WorkerType::Low
        };
        let w = if bernoulli(&mut rng, ModelParams::PRIOR_STATE1) {
            State::Omega1
        } else {
            State::Omega0
        };
        let s = PrivateSignal::from_index(bernoulli(&mut rng, signal_likelihood(t, w, params)) as usize);
        let a = AlgoSignal::from_index(bernoulli(&mut rng, algo_likelihood(w, params)) as usize);
        let m = Message::from_index(bernoulli(&mut rng, strategy.get(t, s, a)) as usize);
        c.0[t.index()][s.index()][a.index()][w.index()][m.index()] += 1;
    }
    c
}

/// A fraction with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub hits: u64,
    pub trials: u64,
    pub value: f64,
    pub se: f64,
}

impl Estimate {
    pub fn new(hits: u64, trials: u64) -> Option<Self> {
        if trials == 0 {
            return None;
        }
        let value = hits as f64 / trials as f64;
        Some(Self {
            hits,
            trials,
            value,
            se: libm::sqrt(value * (1.0 - value) / trials as f64),
        })
    }

    /// `|value - target|` in standard errors. Zero error with an exact hit
    /// gives 0; zero error with a miss gives infinity.
    pub fn z(&self, target: f64) -> f64 {
        let d = (self.value - target).abs();
        if d == 0.0 {
            0.0
        } else {
            d / self.se
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub params: ModelParams,
    pub strategy: StrategyProfile,
    pub n_draws: u64,
    pub seed: u64,
    pub counts: Counts,
    /// Share of high types among draws with `(m, a, state)`, indexed
    /// `[m][a][state]`; `None` when the cell was never reached.
    pub empirical_beliefs: [[[Option<Estimate>; 2]; 2]; 2],
    /// `Pr(state = m)`.
    pub empirical_accuracy: Estimate,
    /// `Pr(s1 | type)`, indexed by type.
    pub signal_rate: [Estimate; 2],
    /// Low-type draws whose message differs from the algorithm's signal.
    pub low_overrides: u64,
}

impl SimulationReport {
    fn from_counts(
        strategy: &StrategyProfile,
        params: &ModelParams,
        n_draws: u64,
        seed: u64,
        counts: Counts,
    ) -> Self {
        let mut empirical_beliefs = [[[None; 2]; 2]; 2];
        let mut correct = 0;
        let mut s1 = [0u64; 2];
        let mut by_type = [0u64; 2];
        let mut low_overrides = 0;
        for t in WorkerType::ALL {
            for s in PrivateSignal::ALL {
                for a in AlgoSignal::ALL {
                    for w in State::ALL {
                        for m in Message::ALL {
                            let k = counts.get(t, s, a, w, m);
                            by_type[t.index()] += k;
                            if s.is_one() {
                                s1[t.index()] += k;
                            }
                            if w.is_one() == m.is_one() {
                                correct += k;
                            }
                            if t == WorkerType::Low && m.is_one() != a.is_one() {
                                low_overrides += k;
                            }
                        }
                    }
                }
            }
        }
        for m in Message::ALL {
            for a in AlgoSignal::ALL {
                for w in State::ALL {
                    let cell = |t: WorkerType| -> u64 {
                        PrivateSignal::ALL.iter().map(|&s| counts.get(t, s, a, w, m)).sum()
                    };
                    let high = cell(WorkerType::High);
                    empirical_beliefs[m.index()][a.index()][w.index()] =
                        Estimate::new(high, high + cell(WorkerType::Low));
                }
            }
        }
        let rate = |t: WorkerType| {
            Estimate::new(s1[t.index()], by_type[t.index()]).unwrap_or(Estimate {
                hits: 0,
                trials: 0,
                value: f64::NAN,
                se: f64::NAN,
            })
        };
        SimulationReport {
            params: *params,
            strategy: *strategy,
            n_draws,
            seed,
            counts,
            empirical_beliefs,
            empirical_accuracy: Estimate::new(correct, n_draws).expect("n_draws > 0"),
            signal_rate: [rate(WorkerType::Low), rate(WorkerType::High)],
            low_overrides,
        }
    }

    pub fn belief(&self, m: Message, a: AlgoSignal, w: State) -> Option<Estimate> {
        self.empirical_beliefs[m.index()][a.index()][w.index()]
    }

    /// Frequency of one `(type, s, a, state, m)` outcome.
    pub fn joint(&self, t: WorkerType, s: PrivateSignal, a: AlgoSignal, w: State, m: Message) -> Estimate {
        Estimate::new(self.counts.get(t, s, a, w, m), self.n_draws).expect("n_draws > 0")
    }
}

/// Play the informative strategy with weight `gamma` `n_draws` times.
pub fn monte_carlo(params: &ModelParams, gamma: f64, n_draws: u64, seed: u64) -> Result<SimulationReport> {
    let strategy = StrategyProfile::informative(gamma)?;
    monte_carlo_strategy(&strategy, params, n_draws, seed)
}

pub fn monte_carlo_strategy(
    strategy: &StrategyProfile,
    params: &ModelParams,
    n_draws: u64,
    seed: u64,
) -> Result<SimulationReport> {
    if n_draws == 0 {
        return Err(Error::EmptySimulation);
    }
    let mut counts = Counts::default();
    for k in 0..batch_count(n_draws) {
        counts.add(&simulate_batch(strategy, params, n_draws, seed, k));
    }
    Ok(report_from_counts(strategy, params, n_draws, seed, counts))
}

/// Build a report from externally accumulated batch counts.
pub fn report_from_counts(
    strategy: &StrategyProfile,
    params: &ModelParams,
    n_draws: u64,
    seed: u64,
    counts: Counts,
) -> SimulationReport {
    SimulationReport::from_counts(strategy, params, n_draws, seed, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::{forecast_accuracy, solve_gamma, DEFAULT_TOL};
    use crate::model::informative_beliefs;

    fn golden() -> ModelParams {
        ModelParams::new(0.55, 0.62, 0.60).unwrap()
    }

    #[test]
    fn counts_cover_every_draw_and_batches_split() {
        let p = golden();
        let r = monte_carlo(&p, 0.3, BATCH + 17, 9).unwrap();
        assert_eq!(r.counts.total(), BATCH + 17);
        assert_eq!(batch_count(BATCH + 17), 2);
        let s = StrategyProfile::informative(0.3).unwrap();
        let mut c = simulate_batch(&s, &p, BATCH + 17, 9, 1);
        assert_eq!(c.total(), 17);
        c.add(&simulate_batch(&s, &p, BATCH + 17, 9, 0));
        assert_eq!(c, r.counts);
    }

    #[test]
    fn deterministic_per_seed() {
        let p = golden();
        let a = monte_carlo(&p, 0.2, 50_000, 42).unwrap();
        let b = monte_carlo(&p, 0.2, 50_000, 42).unwrap();
        let c = monte_carlo(&p, 0.2, 50_000, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.counts, c.counts);
    }

    #[test]
    fn empirical_values_track_the_model() {
        let p = golden();
        let g = solve_gamma(&p, DEFAULT_TOL).unwrap().gamma_star;
        let r = monte_carlo(&p, g, 200_000, 7).unwrap();
        assert!(r.empirical_accuracy.z(forecast_accuracy(&p, g)) < 4.0);
        for est in r.signal_rate {
            assert!(est.z(0.5) < 4.0);
        }
        let b = informative_beliefs(g, &p);
        for m in Message::ALL {
            for a in AlgoSignal::ALL {
                for w in State::ALL {
                    let e = r.belief(m, a, w).unwrap();
                    assert!(e.z(b.get(m, a, w)) < 5.0, "{m:?} {a:?} {w:?}");
                }
            }
        }
    }

    #[test]
    fn first_best_never_overrides_when_low() {
        let r = monte_carlo(&golden(), 1.0, 20_000, 1).unwrap();
        assert_eq!(r.low_overrides, 0);
    }

    #[test]
    fn empty_run_is_an_error() {
        assert!(matches!(monte_carlo(&golden(), 0.1, 0, 1), Err(Error::EmptySimulation)));
    }
}
