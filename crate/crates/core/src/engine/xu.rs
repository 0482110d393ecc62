//! Ratio monotonicity of two increasing sequences via a difference-ratio hypothesis.

use crate::error::{Error, Result};
use crate::numeric::{compare_ge, EvalConfig, Mode, Outcome, Scalar, Verdict};

/// Outcome of [`xu_reduce`].
///
/// `base` is `B_1/B_2 <= C_1/C_2`, `hypothesis` the conjunction of
/// `(B_{n+1}-B_n)/(B_{n+2}-B_{n+1}) <= (C_{n+1}-C_n)/(C_{n+2}-C_{n+1})` over
/// `n <= n_max`, and `conclusion` the directly checked `B_n/B_{n+1} <= C_n/C_{n+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct XuReport {
    pub base: Verdict,
    pub hypothesis: Verdict,
    pub conclusion: Verdict,
}

impl XuReport {
    pub fn verdict(&self) -> Verdict {
        Verdict::all([self.base.clone(), self.hypothesis.clone()])
    }

    /// False when the reduction holds but the directly checked conclusion fails.
    pub fn consistent(&self) -> bool {
        !(self.verdict().holds() && self.conclusion.fails())
    }
}

fn check_increasing<S>(name: &str, seq: &S, last: u64, cfg: &EvalConfig) -> Result<()>
where
    S: Fn(u64, Mode) -> Result<Scalar>,
{
    let pos = compare_ge(|m| seq(1, m), |m| Ok(Scalar::from_int(0, m)), true, cfg)?;
    if !pos.holds() {
        return Err(Error::usage(format!("{name}_1 is not provably positive")));
    }
    for k in 1..last {
        let v = compare_ge(|m| seq(k + 1, m), |m| seq(k, m), true, cfg)?;
        if !v.holds() {
            return Err(Error::usage(format!(
                "{name} is not strictly increasing at index {k} ({})",
                v.outcome
            )));
        }
    }
    Ok(())
}

pub fn xu_reduce<B, C>(b: B, c: C, n_max: u64, cfg: &EvalConfig) -> Result<XuReport>
where
    B: Fn(u64, Mode) -> Result<Scalar>,
    C: Fn(u64, Mode) -> Result<Scalar>,
{
    if n_max == 0 {
        return Err(Error::usage("n_max must be at least 1"));
    }
    check_increasing("B", &b, n_max + 2, cfg)?;
    check_increasing("C", &c, n_max + 2, cfg)?;

    let ratio = |s: &dyn Fn(u64, Mode) -> Result<Scalar>, n: u64, m: Mode| s(n, m)?.div(&s(n + 1, m)?);
    let diff_ratio = |s: &dyn Fn(u64, Mode) -> Result<Scalar>, n: u64, m: Mode| {
        let (s0, s1, s2) = (s(n, m)?, s(n + 1, m)?, s(n + 2, m)?);
        s1.sub(&s0)?.div(&s2.sub(&s1)?)
    };

    let base = compare_ge(|m| ratio(&c, 1, m), |m| ratio(&b, 1, m), false, cfg)?
        .with_params(&[("n", 1)]);
    let mut hyps = Vec::new();
    let mut concl = Vec::new();
    for n in 1..=n_max {
        let h = compare_ge(|m| diff_ratio(&c, n, m), |m| diff_ratio(&b, n, m), false, cfg)?
            .with_params(&[("n", n)]);
        let stop = h.outcome == Outcome::Fails;
        hyps.push(h);
        concl.push(
            compare_ge(|m| ratio(&c, n, m), |m| ratio(&b, n, m), false, cfg)?
                .with_params(&[("n", n)]),
        );
        if stop {
            break;
        }
    }
    Ok(XuReport {
        base,
        hypothesis: Verdict::all(hyps),
        conclusion: Verdict::all(concl),
    })
}
