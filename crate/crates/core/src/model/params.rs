use crate::error::{Error, Result, Violation};
use crate::model::labels::WorkerType;

/// Signal precisions of the two worker types and of the algorithm.
///
/// Priors over skill and over the state are both fixed at one half. Every
/// constructor rejects values outside the open unit interval, so all
/// posterior denominators are strictly positive. The ordering
/// `1/2 < upsilon_L < alpha < upsilon_H < 1` is only demanded by
/// [`ModelParams::new`] and by the equilibrium solver; the posterior algebra
/// works on any [`ModelParams::open`] value so boundary regions can be probed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    upsilon_low: f64,
    upsilon_high: f64,
    alpha: f64,
}

impl ModelParams {
    pub const PRIOR_HIGH: f64 = 0.5;
    pub const PRIOR_STATE1: f64 = 0.5;

    /// Parameters satisfying the full ordering assumption.
    pub fn new(upsilon_low: f64, upsilon_high: f64, alpha: f64) -> Result<Self> {
        let p = Self::open(upsilon_low, upsilon_high, alpha)?;
        p.check_assumption()?;
        Ok(p)
    }

    /// Parameters that are only required to be probabilities in (0, 1).
    pub fn open(upsilon_low: f64, upsilon_high: f64, alpha: f64) -> Result<Self> {
        for (name, value) in [
            ("upsilon_L", upsilon_low),
            ("upsilon_H", upsilon_high),
            ("alpha", alpha),
        ] {
            if !(value > 0.0 && value < 1.0) {
                return Err(Error::OutOfUnitInterval { name, value });
            }
        }
        Ok(Self {
            upsilon_low,
            upsilon_high,
            alpha,
        })
    }

    pub fn check_assumption(&self) -> Result<()> {
        let v = if self.upsilon_low <= 0.5 {
            Violation::UpsilonLowNotAboveHalf
        } else if self.alpha <= self.upsilon_low {
            Violation::AlphaNotAboveUpsilonLow
        } else if self.upsilon_high <= self.alpha {
            Violation::UpsilonHighNotAboveAlpha
        } else if self.upsilon_high >= 1.0 {
            Violation::UpsilonHighNotBelowOne
        } else {
            return Ok(());
        };
        Err(Error::Assumption(v))
    }

    pub fn satisfies_assumption(&self) -> bool {
        self.check_assumption().is_ok()
    }

    #[inline]
    pub fn upsilon_low(&self) -> f64 {
        self.upsilon_low
    }

    #[inline]
    pub fn upsilon_high(&self) -> f64 {
        self.upsilon_high
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Signal precision of the given type.
    #[inline]
    pub fn upsilon(&self, t: WorkerType) -> f64 {
        match t {
            WorkerType::Low => self.upsilon_low,
            WorkerType::High => self.upsilon_high,
        }
    }

    /// Same precisions with a different algorithm precision, validated at the
    /// same level as `open`.
    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::open(self.upsilon_low, self.upsilon_high, alpha)
    }

    pub fn with_upsilon_low(&self, upsilon_low: f64) -> Result<Self> {
        Self::open(upsilon_low, self.upsilon_high, self.alpha)
    }

    pub fn with_upsilon_high(&self, upsilon_high: f64) -> Result<Self> {
        Self::open(self.upsilon_low, upsilon_high, self.alpha)
    }

    /// Average precision of the worker's own signal across types.
    pub fn mean_upsilon(&self) -> f64 {
        0.5 * (self.upsilon_low + self.upsilon_high)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accepts_the_ordered_box() {
        let p = ModelParams::new(0.55, 0.62, 0.60).unwrap();
        assert_eq!(p.upsilon(WorkerType::Low), 0.55);
        assert_eq!(p.upsilon(WorkerType::High), 0.62);
        assert_eq!(ModelParams::PRIOR_HIGH, 0.5);
    }

    #[test]
    fn names_the_violated_inequality() {
        let err = ModelParams::new(0.55, 0.62, 0.55).unwrap_err();
        assert_eq!(err, Error::Assumption(Violation::AlphaNotAboveUpsilonLow));
        assert_eq!(err.to_string(), "alpha must exceed upsilon_L");
        assert_eq!(
            ModelParams::new(0.5, 0.62, 0.55).unwrap_err(),
            Error::Assumption(Violation::UpsilonLowNotAboveHalf)
        );
        assert_eq!(
            ModelParams::new(0.55, 0.60, 0.60).unwrap_err(),
            Error::Assumption(Violation::UpsilonHighNotAboveAlpha)
        );
    }

    #[test]
    fn open_only_needs_probabilities() {
        assert!(ModelParams::open(0.3, 0.2, 0.9).is_ok());
        assert!(ModelParams::open(0.0, 0.2, 0.9).is_err());
        assert!(ModelParams::open(0.5, 1.0, 0.9).is_err());
        assert!(ModelParams::open(f64::NAN, 0.6, 0.7).is_err());
    }
}
