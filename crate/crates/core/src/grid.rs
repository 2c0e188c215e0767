//! Deterministic parameter grids and random admissible draws for the
//! universally quantified checks.

use alloc::vec::Vec;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::model::ModelParams;

/// Lattice origin and ceiling in hundredths.
const LATTICE_LO: u32 = 51;
const LATTICE_HI: u32 = 99;
/// Largest admissible `uL` in hundredths.
const UPSILON_LOW_MAX: u32 = 95;

/// All admissible triples `uL < alpha < uH` on the lattice
/// `{0.51, 0.51 + step, ...} ∩ [0.51, 0.99]`, with `uL <= 0.95`.
///
/// `step_hundredths` is the lattice spacing in units of 0.01. Points are
/// produced in lexicographic `(uL, uH, alpha)` order.
pub fn admissible_grid(step_hundredths: u32) -> Result<Vec<ModelParams>> {
    if step_hundredths == 0 || step_hundredths > LATTICE_HI - LATTICE_LO {
        return Err(Error::InvalidGridStep(step_hundredths as f64 / 100.0));
    }
    let lattice: Vec<u32> = (LATTICE_LO..=LATTICE_HI)
        .step_by(step_hundredths as usize)
        .collect();
    let v = |k: u32| k as f64 / 100.0;
    let mut out = Vec::new();
    for (i, &ul) in lattice.iter().enumerate() {
        if ul > UPSILON_LOW_MAX {
            break;
        }
        for (j, &uh) in lattice.iter().enumerate().skip(i + 2) {
            for &a in &lattice[i + 1..j] {
                out.push(ModelParams::new(v(ul), v(uh), v(a))?);
            }
        }
    }
    Ok(out)
}

/// The 2300-point grid with spacing 0.02.
pub fn dense_grid() -> Vec<ModelParams> {
    admissible_grid(2).expect("valid step")
}

/// A 35-point grid with spacing 0.08, for quick runs.
pub fn coarse_grid() -> Vec<ModelParams> {
    admissible_grid(8).expect("valid step")
}

#[inline]
pub fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform draw from the admissible box with every gap between consecutive
/// values in `1/2 < uL < alpha < uH < 1` at least `min_gap`.
pub fn sample_admissible(rng: &mut impl RngCore, min_gap: f64) -> ModelParams {
    loop {
        let mut x = [
            0.5 + 0.5 * unit_f64(rng),
            0.5 + 0.5 * unit_f64(rng),
            0.5 + 0.5 * unit_f64(rng),
        ];
        x.sort_by(f64::total_cmp);
        let gaps = [x[0] - 0.5, x[1] - x[0], x[2] - x[1], 1.0 - x[2]];
        if gaps.iter().all(|&g| g >= min_gap) {
            if let Ok(p) = ModelParams::new(x[0], x[2], x[1]) {
                return p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn dense_grid_size_and_bounds() {
        let g = dense_grid();
        assert_eq!(g.len(), 2300);
        assert!(g.iter().all(|p| p.satisfies_assumption()));
        assert!(g.iter().all(|p| p.upsilon_low() <= 0.95 + 1e-12));
        let first = g[0];
        assert_eq!((first.upsilon_low(), first.upsilon_high(), first.alpha()), (0.51, 0.55, 0.53));
        assert_eq!(coarse_grid().len(), 35);
        assert!(admissible_grid(0).is_err());
    }

    #[test]
    fn samples_respect_gap() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let p = sample_admissible(&mut rng, 0.01);
            assert!(p.alpha() - p.upsilon_low() >= 0.01);
            assert!(p.upsilon_high() - p.alpha() >= 0.01);
            assert!(p.upsilon_low() >= 0.51 && p.upsilon_high() <= 0.99);
        }
    }
}
