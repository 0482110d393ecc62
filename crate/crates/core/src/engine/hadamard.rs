//! Two-sided bound on divided differences from convexity of `t^(r-1)`.

use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::numeric::{compare_ge, rat, EvalConfig, Mode, Scalar, Verdict};
use crate::powersum::divided_difference;

/// Verdicts for `r m^(r-1) <= D_r(x, y)` with `m` the midpoint, and for
/// `D_r(x, y) <= r (x^(r-1) + y^(r-1)) / 2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Sandwich {
    pub lower: Verdict,
    pub upper: Verdict,
}

impl Sandwich {
    pub fn verdict(&self) -> Verdict {
        Verdict::all([self.lower.clone(), self.upper.clone()])
    }
}

pub fn hadamard_sandwich(
    r: &BigRational,
    x: &BigRational,
    y: &BigRational,
    cfg: &EvalConfig,
) -> Result<Sandwich> {
    if !(y.is_positive() && y < x) {
        return Err(Error::usage(format!("sandwich needs 0 < y < x, got x = {x}, y = {y}")));
    }
    if r < &rat(2, 1) {
        return Err(Error::usage(format!("sandwich needs r >= 2, got {r}")));
    }
    let r1 = r - BigRational::one();
    let dd = |m: Mode| {
        divided_difference(&Scalar::from_ratio(x, m), &Scalar::from_ratio(y, m), r)
    };
    let mid = |m: Mode| {
        let half = Scalar::from_ratio(&((x + y) / rat(2, 1)), m);
        Scalar::from_ratio(r, m).mul(&half.pow_ratio(&r1)?)
    };
    let ends = |m: Mode| {
        let sx = Scalar::from_ratio(x, m).pow_ratio(&r1)?;
        let sy = Scalar::from_ratio(y, m).pow_ratio(&r1)?;
        Scalar::from_ratio(&(r / rat(2, 1)), m).mul(&sx.add(&sy)?)
    };
    let params = [("r", r.to_string()), ("x", x.to_string()), ("y", y.to_string())];
    let lower = compare_ge(dd, mid, false, cfg)?.with_params(&params);
    let upper = compare_ge(ends, dd, false, cfg)?.with_params(&params);
    Ok(Sandwich { lower, upper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::Outcome;

    fn run(r: (i64, i64), x: (i64, i64), y: (i64, i64)) -> Sandwich {
        hadamard_sandwich(&rat(r.0, r.1), &rat(x.0, x.1), &rat(y.0, y.1), &EvalConfig::exact()).unwrap()
    }

    #[test]
    fn quadratic_case_is_tight_on_both_sides() {
        let s = run((2, 1), (3, 1), (1, 1));
        assert_eq!(s.verdict().outcome, Outcome::Holds);
        assert!(s.lower.equality && s.upper.equality);
    }

    #[test]
    fn cubic_case() {
        let s = run((3, 1), (2, 1), (1, 1));
        let (dd, mid) = s.lower.sides.clone().unwrap();
        assert_eq!(dd.to_string(), "7");
        assert_eq!(mid.to_string(), "27/4");
        assert_eq!(s.upper.sides.clone().unwrap().0.to_string(), "15/2");
        assert_eq!(s.verdict().outcome, Outcome::Holds);
    }

    #[test]
    fn quartic_case() {
        let s = run((4, 1), (2, 1), (1, 1));
        assert_eq!(s.lower.sides.clone().unwrap().1.to_string(), "27/2");
        assert_eq!(s.lower.sides.clone().unwrap().0.to_string(), "15");
        assert_eq!(s.upper.sides.clone().unwrap().0.to_string(), "18");
        assert!(s.verdict().holds());
    }

    #[test]
    fn fractional_exponent_in_interval_mode() {
        let s = hadamard_sandwich(&rat(5, 2), &rat(7, 3), &rat(1, 5), &EvalConfig::interval()).unwrap();
        assert!(s.verdict().holds());
        assert!(!s.lower.equality);
    }

    #[test]
    fn preconditions() {
        let cfg = EvalConfig::exact();
        assert!(hadamard_sandwich(&rat(2, 1), &rat(1, 1), &rat(3, 1), &cfg).is_err());
        assert!(hadamard_sandwich(&rat(3, 2), &rat(3, 1), &rat(1, 1), &cfg).is_err());
        assert!(hadamard_sandwich(&rat(2, 1), &rat(3, 1), &rat(0, 1), &cfg).is_err());
    }
}
