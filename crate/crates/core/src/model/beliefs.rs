//! The manager's posterior about the worker's skill and the worker's
//! expected reputational payoff.

use crate::error::{Error, Result};
use crate::model::labels::{AlgoSignal, Flip, Message, PrivateSignal, State, WorkerType};
use crate::model::params::ModelParams;
use crate::model::posterior::{joint_prob, worker_posterior_of};
use crate::model::strategy::{Cell, StrategyProfile};

/// Belief assigned to `(message, algorithm signal)` pairs that the strategy
/// never produces.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum OffPathRule {
    /// Keep the prior probability of high skill.
    #[default]
    Prior,
    Fixed(f64),
}

impl OffPathRule {
    pub fn fixed(v: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&v) {
            Ok(OffPathRule::Fixed(v))
        } else {
            Err(Error::InvalidOffPathBelief(v))
        }
    }

    pub fn value(self) -> f64 {
        match self {
            OffPathRule::Prior => ModelParams::PRIOR_HIGH,
            OffPathRule::Fixed(v) => v,
        }
    }
}

/// `theta_hat(m, a, state)`: the manager's posterior that the worker is high
/// skill after seeing the report, the algorithm signal and the outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeliefTable {
    /// Indexed `[m][a][state]`.
    theta_hat: [[[f64; 2]; 2]; 2],
    /// Indexed `[m][a]`.
    on_path: [[bool; 2]; 2],
    off_path_rule: OffPathRule,
}

impl BeliefTable {
    /// Every cell on path with the same belief.
    pub fn constant(c: f64) -> Self {
        Self {
            theta_hat: [[[c; 2]; 2]; 2],
            on_path: [[true; 2]; 2],
            off_path_rule: OffPathRule::Prior,
        }
    }

    pub fn from_fn(mut f: impl FnMut(Message, AlgoSignal, State) -> f64) -> Self {
        let mut theta_hat = [[[0.0; 2]; 2]; 2];
        for m in Message::ALL {
            for a in AlgoSignal::ALL {
                for w in State::ALL {
                    theta_hat[m.index()][a.index()][w.index()] = f(m, a, w);
                }
            }
        }
        Self {
            theta_hat,
            on_path: [[true; 2]; 2],
            off_path_rule: OffPathRule::Prior,
        }
    }

    #[inline]
    pub fn get(&self, m: Message, a: AlgoSignal, w: State) -> f64 {
        self.theta_hat[m.index()][a.index()][w.index()]
    }

    #[inline]
    pub fn is_on_path(&self, m: Message, a: AlgoSignal) -> bool {
        self.on_path[m.index()][a.index()]
    }

    pub fn off_path_rule(&self) -> OffPathRule {
        self.off_path_rule
    }

    /// `theta_hat(m1, a, w1) - theta_hat(m0, a, w1)`: reward for a correct
    /// `m1` forecast.
    pub fn gap_state1(&self, a: AlgoSignal) -> f64 {
        self.get(Message::M1, a, State::Omega1) - self.get(Message::M0, a, State::Omega1)
    }

    /// `theta_hat(m0, a, w0) - theta_hat(m1, a, w0)`: reward for a correct
    /// `m0` forecast.
    pub fn gap_state0(&self, a: AlgoSignal) -> f64 {
        self.get(Message::M0, a, State::Omega0) - self.get(Message::M1, a, State::Omega0)
    }

    /// Sum of both correct-forecast premia at `a`.
    pub fn gap_sum(&self, a: AlgoSignal) -> f64 {
        self.gap_state1(a) + self.gap_state0(a)
    }

    /// Correct forecasts strictly raise the posterior at algorithm signal `a`.
    pub fn is_informative_at(&self, a: AlgoSignal) -> bool {
        self.gap_state1(a) > 0.0 && self.gap_state0(a) > 0.0
    }

    /// Correct forecasts strictly raise the posterior for both algorithm
    /// signals.
    pub fn is_informative(&self) -> bool {
        AlgoSignal::ALL.iter().all(|&a| self.is_informative_at(a))
    }

    /// The table seen after relabeling messages, signals and states.
    pub fn flipped(&self) -> Self {
        let mut out = *self;
        for m in Message::ALL {
            for a in AlgoSignal::ALL {
                for w in State::ALL {
                    out.theta_hat[m.index()][a.index()][w.index()] =
                        self.get(m.flip(), a.flip(), w.flip());
                }
                out.on_path[m.index()][a.index()] = self.is_on_path(m.flip(), a.flip());
            }
        }
        out
    }

    /// Largest absolute difference over all eight cells.
    pub fn distance(&self, other: &BeliefTable) -> f64 {
        let mut d: f64 = 0.0;
        for m in Message::ALL {
            for a in AlgoSignal::ALL {
                for w in State::ALL {
                    d = d.max((self.get(m, a, w) - other.get(m, a, w)).abs());
                }
            }
        }
        d
    }
}

/// `Pr(type, m, a, state)` under the strategy, with the skill prior included.
pub fn message_mass(
    strategy: &StrategyProfile,
    params: &ModelParams,
    t: WorkerType,
    m: Message,
    a: AlgoSignal,
    w: State,
) -> f64 {
    let weight: f64 = PrivateSignal::ALL
        .iter()
        .map(|&s| joint_prob(t, s, a, w, params) * strategy.prob(Cell::new(t, s, a), m))
        .sum();
    let prior = match t {
        WorkerType::High => ModelParams::PRIOR_HIGH,
        WorkerType::Low => 1.0 - ModelParams::PRIOR_HIGH,
    };
    prior * weight
}

/// Bayes-consistent beliefs for `strategy`, with unreached `(m, a)` pairs set
/// to the prior.
pub fn manager_beliefs(strategy: &StrategyProfile, params: &ModelParams) -> BeliefTable {
    manager_beliefs_with(strategy, params, OffPathRule::Prior)
}

pub fn manager_beliefs_with(
    strategy: &StrategyProfile,
    params: &ModelParams,
    rule: OffPathRule,
) -> BeliefTable {
    let mut theta_hat = [[[0.0; 2]; 2]; 2];
    let mut on_path = [[false; 2]; 2];
    for m in Message::ALL {
        for a in AlgoSignal::ALL {
            let mut high = [0.0; 2];
            let mut total = [0.0; 2];
            for w in State::ALL {
                let h = message_mass(strategy, params, WorkerType::High, m, a, w);
                let l = message_mass(strategy, params, WorkerType::Low, m, a, w);
                high[w.index()] = h;
                total[w.index()] = h + l;
            }
            // Both states have positive probability under any on-path (m, a)
            // because every signal is noisy.
            let reached = total[0] + total[1] > 0.0;
            on_path[m.index()][a.index()] = reached;
            for w in State::ALL {
                theta_hat[m.index()][a.index()][w.index()] = if reached {
                    high[w.index()] / total[w.index()]
                } else {
                    rule.value()
                };
            }
        }
    }
    BeliefTable {
        theta_hat,
        on_path,
        off_path_rule: rule,
    }
}

/// Expected posterior of high skill from sending `m` in cell `(s, a, type)`.
pub fn worker_payoff(
    s: PrivateSignal,
    a: AlgoSignal,
    t: WorkerType,
    m: Message,
    beliefs: &BeliefTable,
    params: &ModelParams,
) -> f64 {
    State::ALL
        .iter()
        .map(|&w| worker_posterior_of(w, s, a, t, params) * beliefs.get(m, a, w))
        .sum()
}

/// `payoff(m1) - payoff(m0)` in the given cell.
pub fn payoff_difference(c: Cell, beliefs: &BeliefTable, params: &ModelParams) -> f64 {
    worker_payoff(c.signal, c.algo, c.worker, Message::M1, beliefs, params)
        - worker_payoff(c.signal, c.algo, c.worker, Message::M0, beliefs, params)
}

/// Closed-form beliefs induced by [`StrategyProfile::informative`].
///
/// At `a0`:
/// ```text
/// theta_hat(m1, a0, w1) = uH / (uH + (1 - g) uL)
/// theta_hat(m1, a0, w0) = (1 - uH) / (1 - uH + (1 - g)(1 - uL))
/// theta_hat(m0, a0, w1) = (1 - uH) / ((1 - uH) + (1 - uL) + g uL)
/// theta_hat(m0, a0, w0) = uH / (uH + uL + g (1 - uL))
/// ```
/// and the `a1` half is the label-flipped image.
pub fn informative_beliefs(gamma: f64, params: &ModelParams) -> BeliefTable {
    let (ul, uh) = (params.upsilon_low(), params.upsilon_high());
    let at_a0 = |m: Message, w: State| match (m, w) {
        (Message::M1, State::Omega1) => uh / (uh + (1.0 - gamma) * ul),
        (Message::M1, State::Omega0) => (1.0 - uh) / (1.0 - uh + (1.0 - gamma) * (1.0 - ul)),
        (Message::M0, State::Omega1) => (1.0 - uh) / ((1.0 - uh) + (1.0 - ul) + gamma * ul),
        (Message::M0, State::Omega0) => uh / (uh + ul + gamma * (1.0 - ul)),
    };
    BeliefTable::from_fn(|m, a, w| match a {
        AlgoSignal::A0 => at_a0(m, w),
        AlgoSignal::A1 => at_a0(m.flip(), w.flip()),
    })
}

/// Manager beliefs without an algorithm when both types report truthfully,
/// indexed by reported signal and outcome.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchmarkBeliefs {
    /// Indexed `[report][state]`.
    theta_hat: [[f64; 2]; 2],
}

impl BenchmarkBeliefs {
    #[inline]
    pub fn get(&self, report: Message, w: State) -> f64 {
        self.theta_hat[report.index()][w.index()]
    }
}

pub fn benchmark_beliefs(params: &ModelParams) -> BenchmarkBeliefs {
    let mut theta_hat = [[0.0; 2]; 2];
    for r in Message::ALL {
        for w in State::ALL {
            // Truth-telling: report r is sent exactly when the signal is r.
            let mass = |t: WorkerType| {
                let p1 = crate::model::posterior::signal_likelihood(t, w, params);
                if r.is_one() {
                    p1
                } else {
                    1.0 - p1
                }
            };
            let h = mass(WorkerType::High);
            theta_hat[r.index()][w.index()] = h / (h + mass(WorkerType::Low));
        }
    }
    BenchmarkBeliefs { theta_hat }
}

/// Expected benchmark payoff from reporting `report` after signal `s`.
pub fn benchmark_payoff(
    s: PrivateSignal,
    t: WorkerType,
    report: Message,
    beliefs: &BenchmarkBeliefs,
    params: &ModelParams,
) -> f64 {
    let p1 = crate::model::posterior::worker_posterior_no_algo(s, t, params);
    p1 * beliefs.get(report, State::Omega1) + (1.0 - p1) * beliefs.get(report, State::Omega0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use AlgoSignal::*;
    use Message::*;
    use PrivateSignal::*;
    use State::*;
    use WorkerType::*;

    fn golden() -> ModelParams {
        ModelParams::new(0.55, 0.62, 0.60).unwrap()
    }

    #[test]
    fn general_bayes_matches_closed_form_family() {
        let p = golden();
        for g in [0.0, 0.0148, 0.3, 0.77, 1.0] {
            let s = StrategyProfile::informative(g).unwrap();
            let general = manager_beliefs(&s, &p);
            let closed = informative_beliefs(g, &p);
            assert!(general.distance(&closed) < 1e-12, "gamma {g}");
        }
    }

    #[test]
    fn first_best_reveals_overrides() {
        let p = golden();
        let b = manager_beliefs(&StrategyProfile::first_best(), &p);
        assert_eq!(b.get(M1, A0, Omega1), 1.0);
        assert_eq!(b.get(M0, A1, Omega1), 1.0);
        assert!((b.get(M1, A1, Omega1) - 0.62 / 1.62).abs() < 1e-12);
        assert!((b.get(M1, A1, Omega0) - 0.38 / 1.38).abs() < 1e-12);
    }

    #[test]
    fn gamma_zero_example() {
        let b = informative_beliefs(0.0, &golden());
        assert!((b.get(M1, A0, Omega1) - 0.62 / 1.17).abs() < 1e-15);
        assert!((b.get(M1, A0, Omega1) - 0.529915).abs() < 1e-6);
    }

    #[test]
    fn babbling_reveals_nothing() {
        let p = golden();
        let b = manager_beliefs(&StrategyProfile::babbling(0.5).unwrap(), &p);
        for m in Message::ALL {
            for a in AlgoSignal::ALL {
                assert!(b.is_on_path(m, a));
                for w in State::ALL {
                    assert!((b.get(m, a, w) - 0.5).abs() < 1e-15);
                }
            }
        }
        assert!(!b.is_informative());
    }

    #[test]
    fn off_path_cells_use_rule() {
        let p = golden();
        // everyone always sends m1: m0 is never observed
        let s = StrategyProfile::babbling(1.0).unwrap();
        let b = manager_beliefs(&s, &p);
        assert!(!b.is_on_path(M0, A0));
        assert_eq!(b.get(M0, A0, Omega1), 0.5);
        let b = manager_beliefs_with(&s, &p, OffPathRule::fixed(0.9).unwrap());
        assert_eq!(b.get(M0, A1, Omega0), 0.9);
        assert!(OffPathRule::fixed(1.1).is_err());
    }

    #[test]
    fn constant_beliefs_give_constant_payoff() {
        let p = golden();
        let b = BeliefTable::constant(0.37);
        for c in Cell::all() {
            for m in Message::ALL {
                let v = worker_payoff(c.signal, c.algo, c.worker, m, &b, &p);
                assert!((v - 0.37).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn first_best_deviation_is_profitable() {
        let p = golden();
        let b = manager_beliefs(&StrategyProfile::first_best(), &p);
        let dev = worker_payoff(S1, A1, Low, M0, &b, &p);
        let stay = worker_payoff(S1, A1, Low, M1, &b, &p);
        assert!((dev - 1.0).abs() < 1e-15);
        assert!(dev > stay);
    }

    #[test]
    fn benchmark_examples() {
        let p = golden();
        let b = benchmark_beliefs(&p);
        assert!((b.get(M1, Omega1) - 0.62 / 1.17).abs() < 1e-15);
        assert!((b.get(M1, Omega0) - 0.38 / 0.83).abs() < 1e-15);
        assert!((b.get(M0, Omega1) - 0.38 / 0.83).abs() < 1e-15);
        assert!((b.get(M0, Omega0) - 0.62 / 1.17).abs() < 1e-15);
        assert!(b.get(M1, Omega1) > 0.5 && 0.5 > b.get(M0, Omega1));

        let close = ModelParams::open(0.6, 0.6 + 1e-9, 0.7).unwrap();
        let b = benchmark_beliefs(&close);
        for r in Message::ALL {
            for w in State::ALL {
                assert!((b.get(r, w) - 0.5).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn informative_family_satisfies_definition_near_zero() {
        let p = golden();
        for g in [0.0, 0.0148, 0.1, 0.15] {
            assert!(informative_beliefs(g, &p).is_informative(), "gamma {g}");
        }
        // Past gamma = 0.07 / 0.45 the m1 sent after a0 is mostly the low
        // type overriding, and a wrong m1 beats a correct m0 in state w0.
        let edge = 0.07 / 0.45;
        assert!(informative_beliefs(edge - 1e-9, &p).is_informative());
        for g in [edge + 1e-9, 0.2, 0.5, 0.99] {
            let b = informative_beliefs(g, &p);
            assert!(b.gap_state1(AlgoSignal::A0) > 0.0);
            assert!(b.gap_state0(AlgoSignal::A0) < 0.0, "gamma {g}");
        }
        assert!(!informative_beliefs(1.0, &p).is_informative());
    }
}
