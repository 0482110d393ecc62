//! Sampled Schur-convexity criterion. Finite differences are not rigorous, so every
//! verdict produced here is marked advisory.

use crate::error::{Error, Result};
use crate::numeric::{Outcome, Scalar, Verdict};

/// `D_r(x, y)` in double precision, `r x^(r-1)` on the diagonal.
pub fn divided_difference_f64(x: f64, y: f64, r: f64) -> f64 {
    if x == y {
        r * x.powf(r - 1.0)
    } else {
        (x.powf(r) - y.powf(r)) / (x - y)
    }
}

/// Checks `(x - y)(df/dx - df/dy) >= -tol` at every sample point, with partials from
/// central differences of width `step`.
///
/// The criterion characterizes Schur convexity only for symmetric `f`; symmetry is
/// not checked here and is the caller's responsibility.
pub fn schur_criterion_sample<F>(f: F, points: &[(f64, f64)], step: f64) -> Result<Verdict>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::usage(format!("finite-difference step must be positive, got {step}")));
    }
    if points.is_empty() {
        return Err(Error::usage("no sample points"));
    }
    let eval = |x: f64, y: f64| -> Result<f64> {
        let v = f(x, y).map_err(|e| Error::domain(format!("evaluation failed at ({x}, {y}): {e}")))?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::domain(format!("non-finite value at ({x}, {y})")))
        }
    };
    let mut worst: Option<(f64, f64, f64, f64)> = None;
    for &(x, y) in points {
        if !(x > 0.0 && y > 0.0) {
            return Err(Error::usage(format!("sample point ({x}, {y}) is not positive")));
        }
        let fx = (eval(x + step, y)? - eval(x - step, y)?) / (2.0 * step);
        let fy = (eval(x, y + step)? - eval(x, y - step)?) / (2.0 * step);
        let crit = (x - y) * (fx - fy);
        let tol = 1e-6 * (1.0 + (x - y).abs() * (fx.abs() + fy.abs()));
        let slack = crit + tol;
        if worst.map_or(true, |w| slack < w.2 + w.3) {
            worst = Some((x, y, crit, tol));
        }
    }
    let (x, y, crit, tol) = worst.expect("points is non-empty");
    let outcome = if crit >= -tol { Outcome::Holds } else { Outcome::Fails };
    let v = Verdict::advisory(outcome, Scalar::from_f64(crit)?, Scalar::from_f64(-tol)?);
    Ok(v.with_params(&[("x", x), ("y", y)]))
}
