//! `D_r(a, b) >= D_r(c, d)` whenever `a >= max(b, c, d)` and `a + b >= c + d`, `r >= 2`.

use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::numeric::{compare_ge, rat, EvalConfig, Mode, Outcome, Scalar, Verdict};
use crate::powersum::divided_difference;

/// What a dominance check found. A violated hypothesis is not a counterexample, so it
/// is reported separately from the conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominanceStatus {
    HypothesesNotMet,
    HypothesesUndecided,
    Conclusion(Outcome),
}

#[derive(Clone, Debug, PartialEq)]
pub struct DominanceReport {
    /// Conjunction of `a >= b`, `a >= c`, `a >= d` and `a + b >= c + d`.
    pub hypotheses: Verdict,
    /// `D_r(a, b) >= D_r(c, d)`; absent when a hypothesis certainly fails.
    pub conclusion: Option<Verdict>,
}

impl DominanceReport {
    pub fn status(&self) -> DominanceStatus {
        match (self.hypotheses.outcome, &self.conclusion) {
            (Outcome::Fails, _) | (_, None) => DominanceStatus::HypothesesNotMet,
            (Outcome::Indeterminate, Some(_)) => DominanceStatus::HypothesesUndecided,
            (Outcome::Holds, Some(c)) => DominanceStatus::Conclusion(c.outcome),
        }
    }
}

/// Runs the check on a quadruple `[a, b, c, d]` produced on demand in each mode.
pub fn dd_dominance_check<Q>(quad: Q, r: &BigRational, cfg: &EvalConfig) -> Result<DominanceReport>
where
    Q: Fn(Mode) -> Result<[Scalar; 4]>,
{
    if r < &rat(2, 1) {
        return Err(Error::usage(format!("dominance check needs r >= 2, got {r}")));
    }
    let part = |i: usize| {
        let q = &quad;
        move |m: Mode| Ok(q(m)?[i].clone())
    };
    let pair = |i: usize, j: usize| {
        let q = &quad;
        move |m: Mode| {
            let v = q(m)?;
            v[i].add(&v[j])
        }
    };
    let hyps = [
        compare_ge(part(0), part(1), false, cfg)?.with_params(&[("hypothesis", "a >= b")]),
        compare_ge(part(0), part(2), false, cfg)?.with_params(&[("hypothesis", "a >= c")]),
        compare_ge(part(0), part(3), false, cfg)?.with_params(&[("hypothesis", "a >= d")]),
        compare_ge(pair(0, 1), pair(2, 3), false, cfg)?
            .with_params(&[("hypothesis", "a + b >= c + d")]),
    ];
    let hypotheses = Verdict::all(hyps);
    if hypotheses.fails() {
        return Ok(DominanceReport { hypotheses, conclusion: None });
    }
    let dd = |i: usize, j: usize| {
        let q = &quad;
        move |m: Mode| {
            let v = q(m)?;
            divided_difference(&v[i], &v[j], r)
        }
    };
    let conclusion = compare_ge(dd(0, 1), dd(2, 3), false, cfg)?.with_params(&[("r", r)]);
    Ok(DominanceReport { hypotheses, conclusion: Some(conclusion) })
}

/// [`dd_dominance_check`] on rational inputs.
pub fn dd_dominance_check_exact(
    quad: [&BigRational; 4],
    r: &BigRational,
    cfg: &EvalConfig,
) -> Result<DominanceReport> {
    if let Some(bad) = quad.iter().find(|v| !v.is_positive()) {
        return Err(Error::usage(format!("dominance check needs positive arguments, got {bad}")));
    }
    let vals: Vec<BigRational> = quad.iter().map(|v| (*v).clone()).collect();
    dd_dominance_check(
        |m| {
            Ok([
                Scalar::from_ratio(&vals[0], m),
                Scalar::from_ratio(&vals[1], m),
                Scalar::from_ratio(&vals[2], m),
                Scalar::from_ratio(&vals[3], m),
            ])
        },
        r,
        cfg,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(q: [(i64, i64); 4], r: i64) -> DominanceReport {
        let v: Vec<BigRational> = q.iter().map(|&(n, d)| rat(n, d)).collect();
        dd_dominance_check_exact([&v[0], &v[1], &v[2], &v[3]], &rat(r, 1), &EvalConfig::exact()).unwrap()
    }

    #[test]
    fn smallest_quadruple_is_an_equality() {
        let rep = run([(3, 4), (1, 4), (2, 3), (1, 3)], 2);
        assert_eq!(rep.status(), DominanceStatus::Conclusion(Outcome::Holds));
        let c = rep.conclusion.unwrap();
        assert!(c.equality);
        assert_eq!(c.sides.unwrap().0.to_string(), "1");
    }

    #[test]
    fn cubic_example() {
        let rep = run([(5, 1), (1, 1), (2, 1), (2, 1)], 3);
        let c = rep.conclusion.clone().unwrap();
        let (l, r) = c.sides.unwrap();
        assert_eq!((l.to_string(), r.to_string()), ("31".to_string(), "12".to_string()));
        assert_eq!(rep.status(), DominanceStatus::Conclusion(Outcome::Holds));
    }

    #[test]
    fn unmet_hypothesis_is_not_a_failure() {
        let rep = run([(1, 1), (1, 1), (2, 1), (2, 1)], 2);
        assert_eq!(rep.status(), DominanceStatus::HypothesesNotMet);
        assert!(rep.conclusion.is_none());
    }

    #[test]
    fn fractional_exponent_in_interval_mode() {
        let v = [rat(9, 10), rat(1, 3), rat(3, 5), rat(1, 2)];
        let rep = dd_dominance_check_exact([&v[0], &v[1], &v[2], &v[3]], &rat(7, 3), &EvalConfig::interval()).unwrap();
        assert_eq!(rep.status(), DominanceStatus::Conclusion(Outcome::Holds));
    }

    #[test]
    fn small_exponent_rejected() {
        let v = rat(1, 1);
        assert!(dd_dominance_check_exact([&v, &v, &v, &v], &rat(3, 2), &EvalConfig::exact()).is_err());
    }
}
