use crate::error::{Error, Result};
use crate::model::labels::{AlgoSignal, Flip, Message, PrivateSignal, WorkerType};

/// Probability of reporting `m1` in every `(type, private signal, algorithm
/// signal)` information cell.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyProfile {
    /// Indexed `[type][s][a]`.
    report_m1: [[[f64; 2]; 2]; 2],
}

/// One information cell of the worker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cell {
    pub worker: WorkerType,
    pub signal: PrivateSignal,
    pub algo: AlgoSignal,
}

impl Cell {
    pub const fn new(worker: WorkerType, signal: PrivateSignal, algo: AlgoSignal) -> Self {
        Self {
            worker,
            signal,
            algo,
        }
    }

    /// All eight cells in `(type, s, a)` lexicographic order.
    pub fn all() -> impl Iterator<Item = Cell> {
        WorkerType::ALL.into_iter().flat_map(|t| {
            PrivateSignal::ALL
                .into_iter()
                .flat_map(move |s| AlgoSignal::ALL.into_iter().map(move |a| Cell::new(t, s, a)))
        })
    }

    pub const fn agrees(&self) -> bool {
        self.signal.agrees_with(self.algo)
    }
}

impl StrategyProfile {
    pub fn new(report_m1: [[[f64; 2]; 2]; 2]) -> Result<Self> {
        for v in report_m1.iter().flatten().flatten() {
            check_prob(*v)?;
        }
        Ok(Self { report_m1 })
    }

    pub fn from_fn(mut f: impl FnMut(Cell) -> f64) -> Result<Self> {
        let mut table = [[[0.0; 2]; 2]; 2];
        for c in Cell::all() {
            table[c.worker.index()][c.signal.index()][c.algo.index()] = f(c);
        }
        Self::new(table)
    }

    /// Everyone reports `m1` with the same probability regardless of what
    /// they know.
    pub fn babbling(p: f64) -> Result<Self> {
        Self::from_fn(|_| p)
    }

    /// Both types report their own signal.
    pub fn truthful() -> Self {
        Self::from_fn(|c| if c.signal.is_one() { 1.0 } else { 0.0 }).expect("pure entries")
    }

    /// The high type reports his own signal; the low type reports his own
    /// signal when it agrees with the algorithm and otherwise reports the
    /// algorithm's signal with probability `gamma`.
    pub fn informative(gamma: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&gamma) {
            return Err(Error::GammaOutOfRange(gamma));
        }
        Self::from_fn(|c| {
            let own = if c.signal.is_one() { 1.0 } else { 0.0 };
            match c.worker {
                WorkerType::High => own,
                WorkerType::Low if c.agrees() => own,
                WorkerType::Low => {
                    let algo = if c.algo.is_one() { 1.0 } else { 0.0 };
                    gamma * algo + (1.0 - gamma) * own
                }
            }
        })
    }

    /// Information-efficient use: the low type always follows the algorithm.
    pub fn first_best() -> Self {
        Self::informative(1.0).expect("gamma = 1 is valid")
    }

    #[inline]
    pub fn report_m1(&self, c: Cell) -> f64 {
        self.report_m1[c.worker.index()][c.signal.index()][c.algo.index()]
    }

    #[inline]
    pub fn get(&self, t: WorkerType, s: PrivateSignal, a: AlgoSignal) -> f64 {
        self.report_m1[t.index()][s.index()][a.index()]
    }

    /// Probability of sending message `m` from cell `c`.
    #[inline]
    pub fn prob(&self, c: Cell, m: Message) -> f64 {
        let p1 = self.report_m1(c);
        if m.is_one() {
            p1
        } else {
            1.0 - p1
        }
    }

    pub fn set(&mut self, c: Cell, p: f64) -> Result<()> {
        check_prob(p)?;
        self.report_m1[c.worker.index()][c.signal.index()][c.algo.index()] = p;
        Ok(())
    }

    pub fn with(mut self, c: Cell, p: f64) -> Result<Self> {
        self.set(c, p)?;
        Ok(self)
    }

    /// The profile played after relabeling signals, states and messages.
    pub fn flipped(&self) -> Self {
        let mut out = *self;
        for c in Cell::all() {
            let src = Cell::new(c.worker, c.signal.flip(), c.algo.flip());
            out.report_m1[c.worker.index()][c.signal.index()][c.algo.index()] =
                1.0 - self.report_m1(src);
        }
        out
    }

    /// Largest absolute entry difference.
    pub fn distance(&self, other: &StrategyProfile) -> f64 {
        Cell::all()
            .map(|c| (self.report_m1(c) - other.report_m1(c)).abs())
            .fold(0.0, f64::max)
    }

    pub fn table(&self) -> &[[[f64; 2]; 2]; 2] {
        &self.report_m1
    }
}

fn check_prob(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidStrategy(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use AlgoSignal::*;
    use PrivateSignal::*;
    use WorkerType::*;

    #[test]
    fn informative_family_layout() {
        let s = StrategyProfile::informative(0.3).unwrap();
        assert_eq!(s.get(High, S1, A0), 1.0);
        assert_eq!(s.get(High, S0, A1), 0.0);
        assert_eq!(s.get(Low, S1, A1), 1.0);
        assert_eq!(s.get(Low, S0, A0), 0.0);
        assert!((s.get(Low, S1, A0) - 0.7).abs() < 1e-15);
        assert!((s.get(Low, S0, A1) - 0.3).abs() < 1e-15);
        assert!(StrategyProfile::informative(1.2).is_err());
    }

    #[test]
    fn informative_family_is_flip_invariant() {
        for g in [0.0, 0.25, 0.9, 1.0] {
            let s = StrategyProfile::informative(g).unwrap();
            assert!(s.flipped().distance(&s) < 1e-15);
        }
        let b = StrategyProfile::babbling(0.2).unwrap();
        assert!((b.flipped().get(Low, S0, A0) - 0.8).abs() < 1e-15);
    }

    #[test]
    fn rejects_out_of_range_entries() {
        assert!(StrategyProfile::babbling(-0.1).is_err());
        let mut s = StrategyProfile::truthful();
        assert!(s.set(Cell::new(Low, S1, A0), 1.5).is_err());
        assert_eq!(Cell::all().count(), 8);
    }
}
