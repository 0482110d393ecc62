//! Three-valued rigorous comparison.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::scalar::{Mode, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Holds,
    Fails,
    Indeterminate,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Indeterminate => "indeterminate",
        })
    }
}

/// Evidence attached to a failed comparison: the parameters it was evaluated at and
/// the values of both sides.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub params: Vec<(String, String)>,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

/// Result of checking one inequality `lhs >= rhs` (or `lhs > rhs`).
///
/// A witness is present exactly when the outcome is `Fails`. `precision_used` is 0 for
/// exact decisions and the interval precision in bits otherwise.
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub outcome: Outcome,
    /// Both sides are certainly equal.
    pub equality: bool,
    pub sides: Option<(Scalar, Scalar)>,
    pub witness: Option<Witness>,
    pub precision_used: u32,
    /// Produced by non-rigorous (sampled or floating point) evaluation.
    pub advisory: bool,
}

impl Verdict {
    fn decided(outcome: Outcome, equality: bool, lhs: Scalar, rhs: Scalar, precision: u32) -> Self {
        let witness = (outcome == Outcome::Fails).then(|| Witness {
            params: Vec::new(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        });
        Verdict {
            outcome,
            equality,
            sides: Some((lhs, rhs)),
            witness,
            precision_used: precision,
            advisory: false,
        }
    }

    pub fn holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }

    /// Attach the evaluation parameters to the witness of a failed verdict.
    pub fn with_params<K: ToString, V: ToString>(mut self, params: &[(K, V)]) -> Self {
        if let Some(w) = self.witness.as_mut() {
            w.params = params
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect();
        }
        self
    }

    /// Conjunction of several verdicts: fails if any fails, indeterminate if any is
    /// undecided, holds otherwise. Sides and witness come from the first deciding step.
    pub fn all(steps: impl IntoIterator<Item = Verdict>) -> Verdict {
        let steps: Vec<Verdict> = steps.into_iter().collect();
        let precision = steps.iter().map(|s| s.precision_used).max().unwrap_or(0);
        let advisory = steps.iter().any(|s| s.advisory);
        let pick = steps
            .iter()
            .position(|s| s.fails())
            .or_else(|| steps.iter().position(|s| s.outcome == Outcome::Indeterminate));
        let mut result = match pick {
            Some(i) => steps[i].clone(),
            None => {
                let equality = !steps.is_empty() && steps.iter().all(|s| s.equality);
                let mut last = steps.last().cloned().unwrap_or(Verdict {
                    outcome: Outcome::Holds,
                    equality: false,
                    sides: None,
                    witness: None,
                    precision_used: 0,
                    advisory: false,
                });
                last.equality = equality;
                last
            }
        };
        result.precision_used = precision;
        result.advisory = advisory;
        result
    }

    /// An advisory verdict from a non-rigorous procedure.
    pub fn advisory(outcome: Outcome, lhs: Scalar, rhs: Scalar) -> Verdict {
        let mut v = Verdict::decided(outcome, false, lhs, rhs, 0);
        v.advisory = true;
        v
    }
}

/// Bounds on interval precision and how fast it grows when a comparison is undecided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionPolicy {
    pub start_bits: u32,
    pub max_bits: u32,
    pub escalation_factor: u32,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            start_bits: 128,
            max_bits: 4096,
            escalation_factor: 2,
        }
    }
}

pub const ENV_PRECISION_START: &str = "POWSUM_PRECISION_START";
pub const ENV_PRECISION_MAX: &str = "POWSUM_PRECISION_MAX";

impl PrecisionPolicy {
    pub fn new(start_bits: u32, max_bits: u32, escalation_factor: u32) -> Result<Self> {
        if start_bits < 16 {
            return Err(Error::usage(format!("start precision {start_bits} must be at least 16 bits")));
        }
        if start_bits > max_bits {
            return Err(Error::usage(format!(
                "start precision {start_bits} exceeds maximum {max_bits}"
            )));
        }
        if escalation_factor < 2 {
            return Err(Error::usage("escalation factor must be at least 2"));
        }
        Ok(PrecisionPolicy {
            start_bits,
            max_bits,
            escalation_factor,
        })
    }

    /// Defaults overridden by `POWSUM_PRECISION_START` / `POWSUM_PRECISION_MAX`.
    pub fn from_env() -> Result<Self> {
        let d = PrecisionPolicy::default();
        let read = |key: &str, default: u32| -> Result<u32> {
            match std::env::var(key) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| Error::usage(format!("{key}={v} is not a bit count"))),
                Err(_) => Ok(default),
            }
        };
        PrecisionPolicy::new(
            read(ENV_PRECISION_START, d.start_bits)?,
            read(ENV_PRECISION_MAX, d.max_bits)?,
            d.escalation_factor,
        )
    }

    /// Precisions tried in order, ending at `max_bits`.
    pub fn schedule(&self) -> Vec<u32> {
        let mut out = vec![self.start_bits];
        let mut p = self.start_bits;
        while p < self.max_bits {
            p = p.saturating_mul(self.escalation_factor).min(self.max_bits);
            out.push(p);
        }
        out
    }
}

/// Which arithmetic a check is allowed to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ArithMode {
    /// Exact rationals only; checks needing transcendental values are rejected.
    Exact,
    /// Intervals with escalating precision, plus an exact pass when the interval
    /// pass cannot separate the sides and the values happen to be rational.
    Interval,
}

/// Arithmetic mode and precision policy for a check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub mode: ArithMode,
    pub policy: PrecisionPolicy,
}

impl EvalConfig {
    pub fn exact() -> Self {
        EvalConfig {
            mode: ArithMode::Exact,
            policy: PrecisionPolicy::default(),
        }
    }

    pub fn interval() -> Self {
        EvalConfig {
            mode: ArithMode::Interval,
            policy: PrecisionPolicy::default(),
        }
    }

    pub fn with_policy(mut self, policy: PrecisionPolicy) -> Self {
        self.policy = policy;
        self
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig::interval()
    }
}

fn precision_of(a: &Scalar, b: &Scalar) -> u32 {
    a.mode()
        .precision()
        .unwrap_or(0)
        .max(b.mode().precision().unwrap_or(0))
}

/// Decide `a >= b` (or `a > b` when `strict`) from the values alone.
///
/// Exact operands always decide. Interval operands (exact ones are promoted) hold when
/// `lo(a) >= hi(b)` (strict: `>`), fail when the opposite is certain and are
/// indeterminate otherwise. Float operands are advisory and rejected.
pub fn compare_values(a: &Scalar, b: &Scalar, strict: bool) -> Result<Verdict> {
    if matches!(a, Scalar::Float { .. }) || matches!(b, Scalar::Float { .. }) {
        return Err(Error::usage(
            "float values are advisory estimates and cannot produce verdicts",
        ));
    }
    if let (Scalar::Exact(x), Scalar::Exact(y)) = (a, b) {
        let outcome = if (strict && x > y) || (!strict && x >= y) {
            Outcome::Holds
        } else {
            Outcome::Fails
        };
        return Ok(Verdict::decided(outcome, x == y, a.clone(), b.clone(), 0));
    }
    let prec = precision_of(a, b);
    let x = a.enclosure(prec + 64);
    let y = b.enclosure(prec + 64);
    let equality = x.is_point() && y.is_point() && x.lo() == y.lo();
    let outcome = if strict {
        if x.lo() > y.hi() {
            Outcome::Holds
        } else if x.hi() <= y.lo() {
            Outcome::Fails
        } else {
            Outcome::Indeterminate
        }
    } else if x.lo() >= y.hi() {
        Outcome::Holds
    } else if x.hi() < y.lo() {
        Outcome::Fails
    } else {
        Outcome::Indeterminate
    };
    let mut v = Verdict::decided(outcome, equality, a.clone(), b.clone(), prec);
    if outcome == Outcome::Indeterminate {
        v.witness = None;
    }
    Ok(v)
}

/// Decide `lhs >= rhs` (or `>` when `strict`) for two expressions evaluated on demand.
///
/// In interval mode the expressions are evaluated at each precision of the policy's
/// schedule until the enclosures separate. When the first interval pass is undecided
/// the exact evaluation is tried once, which is what distinguishes true equality from
/// near-equality whenever both sides are rational. Domain errors below the maximum
/// precision are treated as precision-induced and retried.
pub fn compare_ge<L, R>(lhs: L, rhs: R, strict: bool, cfg: &EvalConfig) -> Result<Verdict>
where
    L: Fn(Mode) -> Result<Scalar>,
    R: Fn(Mode) -> Result<Scalar>,
{
    match cfg.mode {
        ArithMode::Exact => {
            let a = lhs(Mode::Exact).map_err(inexact_to_usage)?;
            let b = rhs(Mode::Exact).map_err(inexact_to_usage)?;
            compare_values(&a, &b, strict)
        }
        ArithMode::Interval => {
            let schedule = cfg.policy.schedule();
            let mut tried_exact = false;
            let mut last = None;
            for (i, &prec) in schedule.iter().enumerate() {
                let at_max = i + 1 == schedule.len();
                let mode = Mode::Interval(prec);
                let pair = lhs(mode).and_then(|a| Ok((a, rhs(mode)?)));
                let (a, b) = match pair {
                    Ok(p) => p,
                    Err(Error::Domain(_)) if !at_max => continue,
                    Err(e) => return Err(e),
                };
                let v = compare_values(&a, &b, strict)?;
                if v.outcome != Outcome::Indeterminate {
                    return Ok(v);
                }
                if !tried_exact {
                    tried_exact = true;
                    match (lhs(Mode::Exact), rhs(Mode::Exact)) {
                        (Ok(a), Ok(b)) => return compare_values(&a, &b, strict),
                        (Err(Error::Inexact(_)), _) | (_, Err(Error::Inexact(_))) => {}
                        (Err(e), _) | (_, Err(e)) => return Err(e),
                    }
                }
                last = Some(v);
            }
            let mut v = last.ok_or_else(|| Error::usage("empty precision schedule"))?;
            v.precision_used = cfg.policy.max_bits;
            Ok(v)
        }
    }
}

fn inexact_to_usage(e: Error) -> Error {
    match e {
        Error::Inexact(msg) => Error::usage(format!("exact mode cannot evaluate this check: {msg}")),
        other => other,
    }
}
