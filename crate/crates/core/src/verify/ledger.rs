use alloc::vec::Vec;

use crate::model::ModelParams;

/// Outcome of one claim over every point it was evaluated at.
///
/// A claim holds at a point when its margin is strictly positive; `NaN`
/// counts as a failure.
#[derive(Debug, Clone, PartialEq)]
pub struct ClaimCheck {
    pub name: &'static str,
    pub passed: bool,
    /// Smallest margin seen, or the first failing one.
    pub worst_margin: f64,
    pub worst_at: ModelParams,
    /// Secondary coordinate of the worst point, when the claim has one.
    pub worst_p: Option<f64>,
    pub evaluated: usize,
}

/// Named claims in first-recorded order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Ledger {
    checks: Vec<ClaimCheck>,
}

impl Ledger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn record(&mut self, name: &'static str, margin: f64, at: ModelParams, p: Option<f64>) {
        let holds = margin > 0.0;
        match self.checks.iter_mut().find(|c| c.name == name) {
            Some(c) => {
                c.evaluated += 1;
                // keep the first failure as the witness, else the tightest pass
                let replace = if c.passed {
                    !holds || margin < c.worst_margin
                } else {
                    false
                };
                if replace {
                    c.worst_margin = margin;
                    c.worst_at = at;
                    c.worst_p = p;
                }
                c.passed &= holds;
            }
            None => self.checks.push(ClaimCheck {
                name,
                passed: holds,
                worst_margin: margin,
                worst_at: at,
                worst_p: p,
                evaluated: 1,
            }),
        }
    }

    pub fn record_bool(&mut self, name: &'static str, holds: bool, at: ModelParams, p: Option<f64>) {
        self.record(name, if holds { 1.0 } else { -1.0 }, at, p);
    }

    pub fn merge(&mut self, other: Ledger) {
        for c in other.checks {
            match self.checks.iter_mut().find(|d| d.name == c.name) {
                Some(d) => {
                    let replace = if d.passed {
                        !c.passed || c.worst_margin < d.worst_margin
                    } else {
                        false
                    };
                    if replace {
                        d.worst_margin = c.worst_margin;
                        d.worst_at = c.worst_at;
                        d.worst_p = c.worst_p;
                    }
                    d.passed &= c.passed;
                    d.evaluated += c.evaluated;
                }
                None => self.checks.push(c),
            }
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&ClaimCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.checks.iter()
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_failure_is_kept() {
        let a = ModelParams::new(0.55, 0.62, 0.60).unwrap();
        let b = ModelParams::new(0.7, 0.9, 0.8).unwrap();
        let mut l = Ledger::new();
        l.record("x", 0.5, a, None);
        l.record("x", -1.0, b, Some(0.2));
        l.record("x", -5.0, a, None);
        l.record("y", f64::NAN, a, None);
        let x = l.get("x").unwrap();
        assert!(!x.passed);
        assert_eq!((x.worst_at, x.worst_p, x.evaluated), (b, Some(0.2), 3));
        assert!(!l.get("y").unwrap().passed);
        assert_eq!(l.failures().count(), 2);

        let mut m = Ledger::new();
        m.record("x", 0.1, a, None);
        m.merge(l);
        assert_eq!(m.get("x").unwrap().worst_at, b);
        assert_eq!(m.get("x").unwrap().evaluated, 4);
    }
}
