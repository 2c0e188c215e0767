//! Exhaustive scan of grid strategy profiles for approximate informative
//! equilibria.
//!
//! Beliefs after algorithm signal `a` depend only on behaviour in the four
//! cells with that signal, and payoffs there depend only on those beliefs,
//! so the game splits into two independent subgames. The `a1` subgame is the
//! label-flip image of the `a0` subgame, so only `a0` is scanned and the full
//! survivor set is the product of the `a0` survivors with their mirrors.
//!
//! Exact indifference cannot land on a grid, so a grid profile is accepted
//! when every cell is either exactly optimal or its payoff difference
//! changes sign against a one-step neighbour along that cell's own axis (the
//! true mixing weight lies between the two). Within a subgame each cell's
//! payoff difference has the sign of `q_c - q_hat`, where `q_c` is the
//! cell's posterior of `w1` and `q_hat` a threshold set by the beliefs. A
//! bracketed or mixed cell pins `q_hat` at its own posterior, so all pinned
//! posteriors must agree and the remaining cells must sit on the correct
//! side of it. The four cell posteriors are distinct, which means at most
//! one cell can be interior.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{
    manager_beliefs_with, payoff_difference, worker_posterior, AlgoSignal, BeliefTable, Cell,
    Flip, ModelParams, OffPathRule, PrivateSignal, StrategyProfile, WorkerType,
};
use crate::verify::deviation::deviation_check_with;

/// Default lattice spacing for strategy entries.
pub const DEFAULT_STEP: f64 = 0.01;

/// Payoff differences this small count as exact indifference.
const EXACT_TOL: f64 = 1e-12;

/// The `a0` cells in scan order.
pub const SUBGAME_CELLS: [Cell; 4] = [
    Cell::new(WorkerType::High, PrivateSignal::S1, AlgoSignal::A0),
    Cell::new(WorkerType::High, PrivateSignal::S0, AlgoSignal::A0),
    Cell::new(WorkerType::Low, PrivateSignal::S1, AlgoSignal::A0),
    Cell::new(WorkerType::Low, PrivateSignal::S0, AlgoSignal::A0),
];

/// An accepted `a0` behaviour, as lattice indices and probabilities of `m1`
/// in [`SUBGAME_CELLS`] order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubgameProfile {
    pub index: [u32; 4],
    pub report_m1: [f64; 4],
}

#[derive(Debug, Clone, PartialEq)]
pub struct BruteForceResult {
    pub params: ModelParams,
    pub grid_step: f64,
    /// Number of `a0` profiles examined.
    pub subgame_scanned: u64,
    pub subgame_survivors: Vec<SubgameProfile>,
}

impl BruteForceResult {
    /// Full profiles: every `a0` survivor paired with the mirror of every
    /// `a0` survivor in the `a1` half.
    pub fn profiles(&self) -> Vec<StrategyProfile> {
        let mut out = Vec::with_capacity(self.subgame_survivors.len().pow(2));
        for lo in &self.subgame_survivors {
            for hi in &self.subgame_survivors {
                out.push(assemble(lo, hi));
            }
        }
        out
    }

    /// Full profiles represented, `subgame_scanned^2`.
    pub fn profiles_scanned(&self) -> u128 {
        (self.subgame_scanned as u128).pow(2)
    }

    /// Largest sup-norm distance from any survivor to the given profile.
    pub fn max_distance_to(&self, target: &StrategyProfile) -> f64 {
        self.profiles()
            .iter()
            .map(|p| p.distance(target))
            .fold(0.0, f64::max)
    }

    /// Survivors whose high type is not truthful, or whose low type is not
    /// truthful when its signal agrees with the algorithm.
    pub fn structure_violations(&self) -> usize {
        let top = lattice_points(self.grid_step).unwrap_or(0);
        self.subgame_survivors
            .iter()
            .filter(|s| !(s.index[0] == top && s.index[1] == 0 && s.index[3] == 0))
            .count()
    }

    /// Survivors whose high type follows one of the excluded pure patterns.
    pub fn survivors_in_case(&self, case: HighTypeCase) -> usize {
        let top = lattice_points(self.grid_step).unwrap_or(0);
        self.subgame_survivors
            .iter()
            .filter(|s| HighTypeCase::classify(s.index[0], s.index[1], top) == Some(case))
            .count()
    }
}

/// Pure behaviours of the high type, seen at `a0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HighTypeCase {
    OppositeOfSignal,
    FollowsAlgorithm,
    OpposesAlgorithm,
    OwnSignal,
}

impl HighTypeCase {
    pub const EXCLUDED: [HighTypeCase; 3] = [
        HighTypeCase::OppositeOfSignal,
        HighTypeCase::FollowsAlgorithm,
        HighTypeCase::OpposesAlgorithm,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            HighTypeCase::OppositeOfSignal => "high type reports the opposite of its signal",
            HighTypeCase::FollowsAlgorithm => "high type always reports the algorithm's signal",
            HighTypeCase::OpposesAlgorithm => "high type always opposes the algorithm",
            HighTypeCase::OwnSignal => "high type reports its own signal",
        }
    }

    /// `s1` and `s0` lattice indices of the high type at `a0`.
    fn classify(s1: u32, s0: u32, top: u32) -> Option<HighTypeCase> {
        match (s1 == top, s1 == 0, s0 == top, s0 == 0) {
            (false, true, true, false) => Some(HighTypeCase::OppositeOfSignal),
            (false, true, false, true) => Some(HighTypeCase::FollowsAlgorithm),
            (true, false, true, false) => Some(HighTypeCase::OpposesAlgorithm),
            (true, false, false, true) => Some(HighTypeCase::OwnSignal),
            _ => None,
        }
    }
}

fn lattice_points(step: f64) -> Result<u32> {
    if !(step > 0.0 && step <= 1.0) {
        return Err(Error::InvalidGridStep(step));
    }
    let n = libm::round(1.0 / step);
    if (n * step - 1.0).abs() > 1e-9 || n > 1000.0 {
        return Err(Error::InvalidGridStep(step));
    }
    Ok(n as u32)
}

fn assemble(at_a0: &SubgameProfile, mirrored: &SubgameProfile) -> StrategyProfile {
    let mut s = StrategyProfile::truthful();
    for (k, c) in SUBGAME_CELLS.iter().enumerate() {
        s.set(*c, at_a0.report_m1[k]).expect("lattice value");
        // the a1 image of cell (t, s, a0) is (t, flip s, a1) with m flipped
        let image = Cell::new(c.worker, c.signal.flip(), AlgoSignal::A1);
        s.set(image, 1.0 - mirrored.report_m1[k]).expect("lattice value");
    }
    s
}

struct Subgame<'a> {
    params: &'a ModelParams,
    rule: OffPathRule,
    n: u32,
    /// `Pr(w1 | s, a0, type)` per subgame cell.
    q: [f64; 4],
}

impl Subgame<'_> {
    fn beliefs(&self, x: [u32; 4]) -> BeliefTable {
        let mut s = StrategyProfile::truthful();
        for (k, c) in SUBGAME_CELLS.iter().enumerate() {
            s.set(*c, x[k] as f64 / self.n as f64).expect("lattice value");
        }
        manager_beliefs_with(&s, self.params, self.rule)
    }

    fn diffs(&self, b: &BeliefTable) -> [f64; 4] {
        SUBGAME_CELLS.map(|c| payoff_difference(c, b, self.params))
    }

    fn accepts(&self, x: [u32; 4]) -> bool {
        let b = self.beliefs(x);
        if !b.is_informative_at(AlgoSignal::A0) {
            return false;
        }
        let d = self.diffs(&b);
        let mut pin: Option<f64> = None;
        for k in 0..4 {
            let interior = x[k] > 0 && x[k] < self.n;
            let consistent = if x[k] == self.n {
                d[k] >= -EXACT_TOL
            } else if x[k] == 0 {
                d[k] <= EXACT_TOL
            } else {
                d[k].abs() <= EXACT_TOL
            };
            if consistent && !interior {
                continue;
            }
            if !consistent && !self.bracketed(x, k, d[k]) {
                return false;
            }
            match pin {
                None => pin = Some(self.q[k]),
                Some(q) if (q - self.q[k]).abs() <= EXACT_TOL => {}
                Some(_) => return false,
            }
        }
        if let Some(q_hat) = pin {
            for k in 0..4 {
                let above = self.q[k] > q_hat + EXACT_TOL;
                let below = self.q[k] < q_hat - EXACT_TOL;
                if (above && x[k] != self.n) || (below && x[k] != 0) {
                    return false;
                }
            }
        }
        true
    }

    /// Does cell `k`'s payoff difference change sign against an informative
    /// one-step neighbour?
    fn bracketed(&self, x: [u32; 4], k: usize, d_here: f64) -> bool {
        let mut neighbours = [None, None];
        if x[k] > 0 {
            neighbours[0] = Some(x[k] - 1);
        }
        if x[k] < self.n {
            neighbours[1] = Some(x[k] + 1);
        }
        neighbours.into_iter().flatten().any(|v| {
            let mut y = x;
            y[k] = v;
            let b = self.beliefs(y);
            b.is_informative_at(AlgoSignal::A0) && self.diffs(&b)[k] * d_here <= 0.0
        })
    }
}

/// Scan every profile whose entries lie on the lattice `{0, step, ..., 1}`.
///
/// `grid_step` must divide one. Assumption 1 is not required.
pub fn brute_force_search(params: &ModelParams, grid_step: f64) -> Result<BruteForceResult> {
    brute_force_search_with(params, grid_step, OffPathRule::Prior)
}

pub fn brute_force_search_with(
    params: &ModelParams,
    grid_step: f64,
    rule: OffPathRule,
) -> Result<BruteForceResult> {
    let n = lattice_points(grid_step)?;
    let sub = Subgame {
        params,
        rule,
        n,
        q: SUBGAME_CELLS.map(|c| worker_posterior(c.signal, c.algo, c.worker, params)),
    };
    let interior = |v: u32| (v > 0 && v < n) as u32;
    let mut scanned = 0u64;
    let mut survivors = Vec::new();
    for x0 in 0..=n {
        for x1 in 0..=n {
            let high_interior = interior(x0) + interior(x1);
            for x2 in 0..=n {
                for x3 in 0..=n {
                    scanned += 1;
                    // Two interior cells pin two distinct thresholds.
                    if high_interior + interior(x2) + interior(x3) > 1 {
                        continue;
                    }
                    let x = [x0, x1, x2, x3];
                    if sub.accepts(x) {
                        survivors.push(SubgameProfile {
                            index: x,
                            report_m1: x.map(|v| v as f64 / n as f64),
                        });
                    }
                }
            }
        }
    }
    Ok(BruteForceResult {
        params: *params,
        grid_step,
        subgame_scanned: scanned,
        subgame_survivors: survivors,
    })
}

/// Largest deviation gain among the survivors, under their own beliefs.
pub fn max_survivor_gain(result: &BruteForceResult, rule: OffPathRule) -> f64 {
    result
        .profiles()
        .iter()
        .map(|s| {
            let b = manager_beliefs_with(s, &result.params, rule);
            deviation_check_with(s, &b, &result.params, 0.0).max_gain()
        })
        .fold(0.0, f64::max)
}
