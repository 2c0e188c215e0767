use crate::model::{
    manager_beliefs, worker_payoff, BeliefTable, Cell, Message, ModelParams, StrategyProfile,
};

/// Both messages' payoffs in one information cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellDeviation {
    pub cell: Cell,
    pub payoff_m1: f64,
    pub payoff_m0: f64,
    /// Prescribed probability of `m1`.
    pub prescribed: f64,
    /// Best payoff minus the prescribed mixture's payoff; never negative.
    pub gain: f64,
}

impl CellDeviation {
    pub fn is_mixed(&self) -> bool {
        self.prescribed > 0.0 && self.prescribed < 1.0
    }

    /// Prescribed pure message's payoff minus the other message's; `None`
    /// for mixed cells.
    pub fn strict_margin(&self) -> Option<f64> {
        if self.prescribed == 1.0 {
            Some(self.payoff_m1 - self.payoff_m0)
        } else if self.prescribed == 0.0 {
            Some(self.payoff_m0 - self.payoff_m1)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport {
    /// In [`Cell::all`] order.
    pub cells: [CellDeviation; 8],
    pub tol: f64,
}

impl DeviationReport {
    pub fn max_gain(&self) -> f64 {
        self.cells.iter().map(|c| c.gain).fold(0.0, f64::max)
    }

    /// Cells with a profitable deviation, or mixed cells that are not
    /// indifferent, at the report's tolerance.
    pub fn violations(&self) -> impl Iterator<Item = &CellDeviation> {
        self.cells.iter().filter(move |c| {
            c.gain > self.tol || (c.is_mixed() && (c.payoff_m1 - c.payoff_m0).abs() > self.tol)
        })
    }

    pub fn is_equilibrium(&self) -> bool {
        self.violations().next().is_none()
    }

    pub fn get(&self, cell: Cell) -> &CellDeviation {
        self.cells
            .iter()
            .find(|c| c.cell == cell)
            .expect("every cell is present")
    }
}

/// Payoffs of both messages in every cell under the beliefs the strategy
/// induces (off-path cells at the prior).
pub fn deviation_check(strategy: &StrategyProfile, params: &ModelParams, tol: f64) -> DeviationReport {
    deviation_check_with(strategy, &manager_beliefs(strategy, params), params, tol)
}

pub fn deviation_check_with(
    strategy: &StrategyProfile,
    beliefs: &BeliefTable,
    params: &ModelParams,
    tol: f64,
) -> DeviationReport {
    let mut all = Cell::all();
    let cells = core::array::from_fn(|_| {
        let c = all.next().expect("eight cells");
        let pay = |m| worker_payoff(c.signal, c.algo, c.worker, m, beliefs, params);
        let (p1, p0) = (pay(Message::M1), pay(Message::M0));
        let r = strategy.report_m1(c);
        let played = r * p1 + (1.0 - r) * p0;
        CellDeviation {
            cell: c,
            payoff_m1: p1,
            payoff_m0: p0,
            prescribed: r,
            gain: (p1.max(p0) - played).max(0.0),
        }
    });
    DeviationReport { cells, tol }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibrium::{solve_gamma, DEFAULT_TOL};
    use crate::model::{AlgoSignal, PrivateSignal, WorkerType};

    fn golden() -> ModelParams {
        ModelParams::new(0.55, 0.62, 0.60).unwrap()
    }

    #[test]
    fn solved_equilibrium_has_no_deviation() {
        let p = golden();
        let sol = solve_gamma(&p, DEFAULT_TOL).unwrap();
        let rep = deviation_check(&sol.strategy(), &p, 1e-9);
        assert!(rep.is_equilibrium(), "{rep:?}");
        assert!(rep.max_gain() <= 1e-9);
        for c in rep.cells.iter() {
            if c.cell.worker == WorkerType::Low && !c.cell.agrees() {
                assert!((c.payoff_m1 - c.payoff_m0).abs() < 1e-10);
            } else {
                assert!(c.strict_margin().unwrap() > 0.0, "{c:?}");
            }
        }
    }

    #[test]
    fn first_best_is_not_an_equilibrium() {
        let p = golden();
        let rep = deviation_check(&StrategyProfile::first_best(), &p, 1e-9);
        assert!(!rep.is_equilibrium());
        let c = rep.get(Cell::new(WorkerType::Low, PrivateSignal::S1, AlgoSignal::A0));
        assert!(c.gain > 0.0);
    }

    #[test]
    fn babbling_has_zero_gains() {
        let rep = deviation_check(&StrategyProfile::babbling(0.5).unwrap(), &golden(), 1e-12);
        assert!(rep.cells.iter().all(|c| c.gain.abs() < 1e-15));
        assert!(rep.is_equilibrium());
    }
}
