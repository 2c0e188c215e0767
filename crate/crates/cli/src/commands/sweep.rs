use aversion_core::equilibrium::{dgamma_daxis_fd, solve_gamma, Axis};
use aversion_core::ModelParams;
use rayon::prelude::*;

use super::Outcome;
use crate::config::{Format, RunConfig};
use crate::error::CliError;
use crate::format::{csv, json, Field, Record};

/// Finite-difference step and bracket width for the slope column.
const FD_STEP: f64 = 1e-5;
const FD_TOL: f64 = 1e-15;

/// `n` evenly spaced values from `a` to `b`, both ends included.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => {
            let step = (b - a) / (n - 1) as f64;
            (0..n).map(|i| if i == n - 1 { b } else { a + step * i as f64 }).collect()
        }
    }
}

fn at(base: (f64, f64, f64), axis: Axis, v: f64) -> Option<ModelParams> {
    let (mut ul, mut uh, mut alpha) = base;
    match axis {
        Axis::UpsilonLow => ul = v,
        Axis::UpsilonHigh => uh = v,
        Axis::Alpha => alpha = v,
    }
    ModelParams::new(ul, uh, alpha).ok()
}

fn row(p: &ModelParams, axis: Axis, tol: f64) -> Option<Record> {
    let sol = solve_gamma(p, tol).ok()?;
    let slope = dgamma_daxis_fd(p, axis, FD_STEP, FD_TOL).ok()?;
    Some(
        Record::new()
            .with(axis.name(), axis.value(p))
            .with("gamma", sol.gamma_star)
            .with("accuracy", sol.accuracy)
            .with("accuracy_margin", sol.accuracy_margin)
            .with("adoption_value", sol.adoption_value)
            .with(format!("dgamma_d{}", axis.name()), slope)
            .with("residual", sol.residual),
    )
}

pub fn sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let base = cfg.sweep_base()?;
    let from = cfg.from.ok_or_else(|| CliError::invalid("missing --from"))?;
    let to = cfg.to.ok_or_else(|| CliError::invalid("missing --to"))?;
    if cfg.points == 0 {
        return Err(CliError::invalid("points must be at least 1"));
    }
    if !(from.is_finite() && to.is_finite()) || from > to || (from == to && cfg.points > 1) {
        return Err(CliError::invalid(format!("empty sweep range [{from}, {to}]")));
    }
    let values = linspace(from, to, cfg.points);
    let rows: Vec<Option<Record>> = values
        .par_iter()
        .map(|&v| at(base, cfg.axis, v).and_then(|p| row(&p, cfg.axis, cfg.tol)))
        .collect();
    let skipped = rows.iter().filter(|r| r.is_none()).count() as u64;
    let rows: Vec<Record> = rows.into_iter().flatten().collect();
    if rows.is_empty() {
        return Err(CliError::invalid(format!(
            "no admissible point in [{from}, {to}] along {}",
            cfg.axis.name()
        )));
    }
    let format = cfg.format.unwrap_or(Format::Csv);
    let mut out = match format {
        Format::Csv => Outcome::new(cfg, format, csv(&rows)),
        Format::Json => {
            let doc = Record::new()
                .with("config", cfg.echo())
                .with("skipped", skipped)
                .with("rows", Field::List(rows));
            Outcome::new(cfg, format, json(&doc))
        }
    };
    if skipped > 0 && format == Format::Csv {
        let note = out.note.get_or_insert_with(String::new);
        note.push_str(&format!("# skipped = {skipped} inadmissible points\n"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::csv_header;

    /// Column names of a sweep along `axis`.
    pub fn columns(axis: Axis) -> String {
        let slope = format!("dgamma_d{}", axis.name());
        csv_header(&[axis.name(), "gamma", "accuracy", "accuracy_margin", "adoption_value", &slope, "residual"])
    }

    #[test]
    fn linspace_hits_both_ends() {
        let v = linspace(0.551, 0.619, 50);
        assert_eq!(v.len(), 50);
        assert_eq!(v[0], 0.551);
        assert_eq!(v[49], 0.619);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
        assert_eq!(linspace(0.3, 0.3, 1), vec![0.3]);
        assert!(linspace(0.0, 1.0, 0).is_empty());
    }

    #[test]
    fn header_matches_rows() {
        let p = ModelParams::new(0.55, 0.62, 0.6).unwrap();
        let r = row(&p, Axis::Alpha, 1e-12).unwrap();
        assert_eq!(csv(&[r]).lines().next().unwrap(), columns(Axis::Alpha).trim_end());
    }
}
