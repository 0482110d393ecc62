//! Named inequality checks with their parameter ranges and strictness.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{compare_ge, rat, ArithMode, EvalConfig, Mode, Scalar, Verdict};
use crate::powersum::base_gap;

use super::eval::Evaluator;
use super::proof::scaled_pair_sum_check;

/// Every check compares two sides; the names follow the usual attributions.
///
/// | name | inequality | range |
/// |---|---|---|
/// | `alzer` | `n/(n+1) < P_n(r)` | `r > 0` |
/// | `martins` | `P_n(r) < P_n(0)` | `r > 0` |
/// | `alzer_neg_lower` | `P_n(0) <= P_n(r)` | `r < 0` |
/// | `alzer_neg_upper` | `P_n(r) <= 1` | `r < 0` |
/// | `bennett_r1_upper` | `P_n(r) <= P_n(1)` | `r >= 1` |
/// | `bennett_r1_reversed` | `P_n(r) >= P_n(1)` | `0 < r <= 1` |
/// | `corollary1` | `P_n(r) >= P_n(r')` | `r >= 1`, `r' >= 2r + 1` |
/// | `lemma23_grid` | `g_r(alpha) >= 0` | `r >= 1`, `alpha >= 2` |
/// | `theorem1` | `T_n >= T_{n+1}`, `T_n = S_n(r)^alpha / S_n(alpha(r+1)-1)` | `r >= 1`, `alpha >= 2` |
/// | `ineq311` | `(S_{n+1}+S_n)/(n+1)^(r+1) >= (S_{n+2}+S_{n+1})/(n+2)^(r+1)` | `r >= 1` |
/// | `problem1` | `P_n(r) >= P_n(r')` | `1 <= r < r'` |
///
/// Only `alzer` and `martins` are strict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    Alzer,
    Martins,
    AlzerNegLower,
    AlzerNegUpper,
    BennettR1Upper,
    BennettR1Reversed,
    Corollary1,
    Lemma23Grid,
    Theorem1,
    Ineq311,
    Problem1,
}

impl CheckName {
    pub const ALL: [CheckName; 11] = [
        CheckName::Alzer,
        CheckName::Martins,
        CheckName::AlzerNegLower,
        CheckName::AlzerNegUpper,
        CheckName::BennettR1Upper,
        CheckName::BennettR1Reversed,
        CheckName::Corollary1,
        CheckName::Lemma23Grid,
        CheckName::Theorem1,
        CheckName::Ineq311,
        CheckName::Problem1,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::Alzer => "alzer",
            CheckName::Martins => "martins",
            CheckName::AlzerNegLower => "alzer_neg_lower",
            CheckName::AlzerNegUpper => "alzer_neg_upper",
            CheckName::BennettR1Upper => "bennett_r1_upper",
            CheckName::BennettR1Reversed => "bennett_r1_reversed",
            CheckName::Corollary1 => "corollary1",
            CheckName::Lemma23Grid => "lemma23_grid",
            CheckName::Theorem1 => "theorem1",
            CheckName::Ineq311 => "ineq311",
            CheckName::Problem1 => "problem1",
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, CheckName::Alzer | CheckName::Martins)
    }

    pub fn uses_n(self) -> bool {
        self != CheckName::Lemma23Grid
    }

    pub fn uses_alpha(self) -> bool {
        matches!(self, CheckName::Lemma23Grid | CheckName::Theorem1)
    }

    pub fn uses_rprime(self) -> bool {
        matches!(self, CheckName::Corollary1 | CheckName::Problem1)
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = CheckName::ALL.iter().map(|c| c.as_str()).collect();
                Error::usage(format!("unknown check '{s}' (known: {})", known.join(", ")))
            })
    }
}

/// A check at one parameter point. Parameters a check does not use are `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckSpec {
    pub name: CheckName,
    pub n: Option<u64>,
    pub r: BigRational,
    pub alpha: Option<BigRational>,
    pub rprime: Option<BigRational>,
    pub mode: ArithMode,
}

fn range_err(name: CheckName, what: &str) -> Error {
    Error::usage(format!("{name}: parameters out of range, need {what}"))
}

impl CheckSpec {
    pub fn new(
        name: CheckName,
        n: Option<u64>,
        r: BigRational,
        alpha: Option<BigRational>,
        rprime: Option<BigRational>,
        mode: ArithMode,
    ) -> Result<Self> {
        let n = if name.uses_n() {
            match n {
                Some(k) if k >= 1 => Some(k),
                _ => return Err(Error::usage(format!("{name}: needs n >= 1"))),
            }
        } else {
            None
        };
        let alpha = if name.uses_alpha() {
            Some(alpha.ok_or_else(|| Error::usage(format!("{name}: needs alpha")))?)
        } else {
            None
        };
        let rprime = if name.uses_rprime() {
            Some(rprime.ok_or_else(|| Error::usage(format!("{name}: needs rprime")))?)
        } else {
            None
        };
        let one = BigRational::one();
        let two = rat(2, 1);
        let ok = match name {
            CheckName::Alzer | CheckName::Martins => r.is_positive(),
            CheckName::AlzerNegLower | CheckName::AlzerNegUpper => r.is_negative(),
            CheckName::BennettR1Upper => r >= one,
            CheckName::BennettR1Reversed => r.is_positive() && r <= one,
            CheckName::Corollary1 => {
                r >= one && rprime.as_ref().is_some_and(|rp| rp >= &(&two * &r + &one))
            }
            CheckName::Lemma23Grid | CheckName::Theorem1 => {
                r >= one && alpha.as_ref().is_some_and(|a| a >= &two)
            }
            CheckName::Ineq311 => r >= one,
            CheckName::Problem1 => r >= one && rprime.as_ref().is_some_and(|rp| rp > &r),
        };
        if !ok {
            let need = match name {
                CheckName::Alzer | CheckName::Martins => "r > 0",
                CheckName::AlzerNegLower | CheckName::AlzerNegUpper => "r < 0",
                CheckName::BennettR1Upper => "r >= 1",
                CheckName::BennettR1Reversed => "0 < r <= 1",
                CheckName::Corollary1 => "r >= 1 and rprime >= 2r + 1",
                CheckName::Lemma23Grid | CheckName::Theorem1 => "r >= 1 and alpha >= 2",
                CheckName::Ineq311 => "r >= 1",
                CheckName::Problem1 => "r >= 1 and rprime > r",
            };
            return Err(range_err(name, need));
        }
        let spec = CheckSpec { name, n, r, alpha, rprime, mode };
        if mode == ArithMode::Exact && !spec.exact_supported() {
            return Err(Error::usage(format!(
                "{name}: exact mode cannot evaluate these parameters (irrational values involved)"
            )));
        }
        Ok(spec)
    }

    pub fn is_strict(&self) -> bool {
        self.name.is_strict()
    }

    /// Whether both sides are rational, so the check can run in exact mode.
    ///
    /// `P_n(r)` is rational only for `r = 1` and `r = -1`; `P_n(0)` never is.
    pub fn exact_supported(&self) -> bool {
        let unit = |q: &BigRational| q.is_integer() && q.abs().is_one();
        let int = |q: &Option<BigRational>| q.as_ref().map_or(true, |v| v.is_integer());
        match self.name {
            CheckName::Alzer | CheckName::AlzerNegUpper => unit(&self.r),
            CheckName::BennettR1Upper | CheckName::BennettR1Reversed => unit(&self.r),
            CheckName::Martins | CheckName::AlzerNegLower => false,
            CheckName::Corollary1 | CheckName::Problem1 => {
                unit(&self.r) && self.rprime.as_ref().is_some_and(unit)
            }
            CheckName::Lemma23Grid | CheckName::Theorem1 => self.r.is_integer() && int(&self.alpha),
            CheckName::Ineq311 => self.r.is_integer(),
        }
    }

    pub fn params(&self) -> Vec<(&'static str, String)> {
        let mut p = Vec::new();
        if let Some(n) = self.n {
            p.push(("n", n.to_string()));
        }
        p.push(("r", self.r.to_string()));
        if let Some(a) = &self.alpha {
            p.push(("alpha", a.to_string()));
        }
        if let Some(rp) = &self.rprime {
            p.push(("rprime", rp.to_string()));
        }
        p
    }
}

fn p_of<'a>(ev: &'a Evaluator, n: u64, e: &'a BigRational) -> impl Fn(Mode) -> Result<Scalar> + 'a {
    move |m| ev.p_ratio(n, e, m)
}

pub fn check_named(spec: &CheckSpec, cfg: &EvalConfig) -> Result<Verdict> {
    check_named_with(&Evaluator::new(), spec, cfg)
}

/// [`check_named`] reusing the power-sum caches of `ev`.
pub fn check_named_with(ev: &Evaluator, spec: &CheckSpec, cfg: &EvalConfig) -> Result<Verdict> {
    let cfg = EvalConfig { mode: spec.mode, ..*cfg };
    let n = spec.n.unwrap_or(1);
    let r = &spec.r;
    let strict = spec.is_strict();
    let p = |e| p_of(ev, n, e);
    let konst = |q: BigRational| move |m: Mode| Ok(Scalar::from_ratio(&q, m));
    let zero = BigRational::zero();
    let one = BigRational::one();
    let v = match spec.name {
        CheckName::Alzer => {
            let lim = BigRational::new(n.into(), (n + 1).into());
            compare_ge(p(r), konst(lim), strict, &cfg)?
        }
        CheckName::Martins => compare_ge(p(&zero), p(r), strict, &cfg)?,
        CheckName::AlzerNegLower => compare_ge(p(r), p(&zero), strict, &cfg)?,
        CheckName::AlzerNegUpper => compare_ge(konst(one), p(r), strict, &cfg)?,
        CheckName::BennettR1Upper => compare_ge(p(&one), p(r), strict, &cfg)?,
        CheckName::BennettR1Reversed => compare_ge(p(r), p(&one), strict, &cfg)?,
        CheckName::Corollary1 | CheckName::Problem1 => {
            let rp = spec.rprime.as_ref().expect("validated");
            compare_ge(p(r), p(rp), strict, &cfg)?
        }
        CheckName::Lemma23Grid => {
            let alpha = spec.alpha.as_ref().expect("validated");
            compare_ge(|m| base_gap(r, alpha, m), konst(zero), strict, &cfg)?
        }
        CheckName::Theorem1 => {
            let alpha = spec.alpha.as_ref().expect("validated");
            compare_ge(
                |m| ev.power_ratio_term(n, r, alpha, m),
                |m| ev.power_ratio_term(n + 1, r, alpha, m),
                strict,
                &cfg,
            )?
        }
        CheckName::Ineq311 => scaled_pair_sum_check(ev, n, r, &cfg)?,
    };
    Ok(v.with_params(&spec.params()))
}
