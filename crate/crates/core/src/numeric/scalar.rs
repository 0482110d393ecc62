use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use super::dyadic::{Dyadic, Rounding};
use super::interval::Interval;
use super::transcendental;
use crate::error::{Error, Result};

/// Extra bits carried when an advisory float value is computed through an interval.
const FLOAT_GUARD: u32 = 16;

/// How a quantity is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// Exact rational arithmetic. Fails with [`Error::Inexact`] on irrational results.
    Exact,
    /// Rounded-to-nearest binary floating point with the given mantissa width.
    /// Advisory only: comparisons refuse to turn these values into verdicts.
    Float(u32),
    /// Outward-rounded intervals with the given endpoint precision.
    Interval(u32),
}

impl Mode {
    pub fn precision(self) -> Option<u32> {
        match self {
            Mode::Exact => None,
            Mode::Float(p) | Mode::Interval(p) => Some(p),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A real number in one of the three arithmetic modes.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float { value: Dyadic, prec: u32 },
    Interval { value: Interval, prec: u32 },
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn rational_to_i64(q: &BigRational) -> Option<i64> {
    if q.is_integer() {
        q.to_integer().to_i64()
    } else {
        None
    }
}

impl Scalar {
    pub fn from_ratio(q: &BigRational, mode: Mode) -> Scalar {
        match mode {
            Mode::Exact => Scalar::Exact(q.clone()),
            Mode::Float(prec) => Scalar::Float {
                value: Dyadic::from_ratio(q, prec, Rounding::Nearest),
                prec,
            },
            Mode::Interval(prec) => Scalar::Interval {
                value: Interval::from_ratio(q, prec),
                prec,
            },
        }
    }

    pub fn from_int(v: impl Into<BigInt>, mode: Mode) -> Scalar {
        Scalar::from_ratio(&BigRational::from_integer(v.into()), mode)
    }

    /// Advisory float holding an `f64` exactly.
    pub fn from_f64(v: f64) -> Result<Scalar> {
        let q = BigRational::from_float(v)
            .ok_or_else(|| Error::domain(format!("non-finite value {v}")))?;
        Ok(Scalar::Float {
            value: Dyadic::from_ratio(&q, 53, Rounding::Nearest),
            prec: 53,
        })
    }

    pub fn exact(q: BigRational) -> Scalar {
        Scalar::Exact(q)
    }

    pub fn interval(value: Interval, prec: u32) -> Scalar {
        Scalar::Interval { value, prec }
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float { prec, .. } => Mode::Float(*prec),
            Scalar::Interval { prec, .. } => Mode::Interval(*prec),
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_interval(&self) -> Option<&Interval> {
        match self {
            Scalar::Interval { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Converts an exact value into another mode; other modes only convert to themselves.
    pub fn promote(&self, mode: Mode) -> Result<Scalar> {
        if self.mode() == mode {
            return Ok(self.clone());
        }
        match (self, mode) {
            (Scalar::Exact(q), m) => Ok(Scalar::from_ratio(q, m)),
            (Scalar::Interval { value, .. }, Mode::Interval(p)) => Ok(Scalar::Interval {
                value: value.round(p),
                prec: p,
            }),
            (s, m) => Err(Error::usage(format!("cannot convert {:?} value to {m:?}", s.mode()))),
        }
    }

    /// An interval certainly containing the value. Float values are treated as points.
    pub fn enclosure(&self, prec: u32) -> Interval {
        match self {
            Scalar::Exact(q) => Interval::from_ratio(q, prec),
            Scalar::Float { value, .. } => Interval::point(value.clone()),
            Scalar::Interval { value, .. } => value.clone(),
        }
    }

    /// Sign when it is certain: `Some(Greater)` for provably positive values.
    pub fn certain_sign(&self) -> Option<Ordering> {
        match self {
            Scalar::Exact(q) => Some(q.cmp(&BigRational::zero())),
            Scalar::Float { value, .. } => Some(value.cmp(&Dyadic::zero())),
            Scalar::Interval { value, .. } => {
                if value.lo().is_positive() {
                    Some(Ordering::Greater)
                } else if value.hi().is_negative() {
                    Some(Ordering::Less)
                } else if value.is_point() {
                    Some(Ordering::Equal)
                } else {
                    None
                }
            }
        }
    }

    pub fn is_provably_positive(&self) -> bool {
        self.certain_sign() == Some(Ordering::Greater)
    }

    /// Integer value, when the scalar is certainly that integer.
    pub fn as_integer(&self) -> Option<i64> {
        match self {
            Scalar::Exact(q) => rational_to_i64(q),
            Scalar::Float { value, .. } => rational_to_i64(&value.to_ratio()),
            Scalar::Interval { value, .. } if value.is_point() => {
                rational_to_i64(&value.lo().to_ratio())
            }
            Scalar::Interval { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => q.to_f64().unwrap_or(f64::NAN),
            Scalar::Float { value, .. } => value.to_f64(),
            Scalar::Interval { value, .. } => value.midpoint().to_f64(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(q) => Scalar::Exact(-q),
            Scalar::Float { value, prec } => Scalar::Float {
                value: value.neg(),
                prec: *prec,
            },
            Scalar::Interval { value, prec } => Scalar::Interval {
                value: value.neg(),
                prec: *prec,
            },
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        arith(ArithOp::Add, self, other)
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        arith(ArithOp::Sub, self, other)
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        arith(ArithOp::Mul, self, other)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        arith(ArithOp::Div, self, other)
    }

    /// `self^r` for an exact rational exponent.
    pub fn pow_ratio(&self, r: &BigRational) -> Result<Scalar> {
        power(self, &Scalar::Exact(r.clone()))
    }

    pub fn powi(&self, k: i64) -> Result<Scalar> {
        self.pow_ratio(&BigRational::from_integer(BigInt::from(k)))
    }
}

fn float_via_interval(
    prec: u32,
    f: impl FnOnce(u32) -> Result<Interval>,
) -> Result<Scalar> {
    let v = f(prec + FLOAT_GUARD)?;
    Ok(Scalar::Float {
        value: v.midpoint().round(prec, Rounding::Nearest),
        prec,
    })
}

/// Binary arithmetic. Both operands must share a mode; the result keeps the larger
/// precision.
pub fn arith(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
    match (a, b) {
        (Scalar::Exact(x), Scalar::Exact(y)) => Ok(Scalar::Exact(match op {
            ArithOp::Add => x + y,
            ArithOp::Sub => x - y,
            ArithOp::Mul => x * y,
            ArithOp::Div => {
                if y.is_zero() {
                    return Err(Error::domain("division by exact zero"));
                }
                x / y
            }
        })),
        (Scalar::Interval { value: x, prec: p }, Scalar::Interval { value: y, prec: q }) => {
            let prec = (*p).max(*q);
            let value = match op {
                ArithOp::Add => x.add(y, prec),
                ArithOp::Sub => x.sub(y, prec),
                ArithOp::Mul => x.mul(y, prec),
                ArithOp::Div => x.div(y, prec)?,
            };
            Ok(Scalar::Interval { value, prec })
        }
        (Scalar::Float { value: x, prec: p }, Scalar::Float { value: y, prec: q }) => {
            let prec = (*p).max(*q);
            let value = match op {
                ArithOp::Add => x.add(y).round(prec, Rounding::Nearest),
                ArithOp::Sub => x.sub(y).round(prec, Rounding::Nearest),
                ArithOp::Mul => x.mul(y).round(prec, Rounding::Nearest),
                ArithOp::Div => {
                    if y.is_zero() {
                        return Err(Error::domain("division by float zero"));
                    }
                    x.div(y, prec, Rounding::Nearest)
                }
            };
            Ok(Scalar::Float { value, prec })
        }
        _ => Err(Error::usage(format!(
            "mode mismatch: {:?} {op:?} {:?}",
            a.mode(),
            b.mode()
        ))),
    }
}

fn exact_integer_power(x: &BigRational, k: i64) -> Result<BigRational> {
    if x.is_zero() {
        return if k > 0 {
            Ok(BigRational::zero())
        } else {
            Err(Error::domain(format!("0^{k} is undefined")))
        };
    }
    let e = i32::try_from(k).map_err(|_| Error::usage(format!("exponent {k} too large")))?;
    Ok(Pow::pow(x, e))
}

/// `x^r`.
///
/// Integer exponents stay exact on exact bases and use directed-rounded repeated
/// squaring on intervals. Other exponents go through `exp(r ln x)` and need `x > 0`.
pub fn power(x: &Scalar, r: &Scalar) -> Result<Scalar> {
    let integer = r.as_integer();
    match x {
        Scalar::Exact(q) => match (integer, r) {
            (Some(k), _) => Ok(Scalar::Exact(exact_integer_power(q, k)?)),
            (None, Scalar::Exact(_)) => {
                if !q.is_positive() {
                    return Err(Error::domain(format!(
                        "non-positive base {q} with non-integer exponent"
                    )));
                }
                if q.is_one() {
                    return Ok(Scalar::Exact(BigRational::one()));
                }
                Err(Error::inexact(format!("{q}^{} is not rational in general", display_exp(r))))
            }
            (None, other) => power(&x.promote(other.mode())?, r),
        },
        Scalar::Interval { value, prec } => {
            let prec = match r.mode() {
                Mode::Interval(p) | Mode::Float(p) => p.max(*prec),
                Mode::Exact => *prec,
            };
            if let Some(k) = integer {
                return Ok(Scalar::Interval {
                    value: value.powi(k, prec)?,
                    prec,
                });
            }
            if !value.is_positive() {
                return Err(Error::domain(format!(
                    "base {value} not provably positive with non-integer exponent"
                )));
            }
            let re = r.enclosure(prec + 32);
            Ok(Scalar::Interval {
                value: transcendental::pow(value, &re, prec)?,
                prec,
            })
        }
        Scalar::Float { value, prec } => {
            let base = Interval::point(value.clone());
            if let Some(k) = integer {
                return float_via_interval(*prec, |w| base.powi(k, w));
            }
            if !value.is_positive() {
                return Err(Error::domain(format!("non-positive base {value} with non-integer exponent")));
            }
            let re = r.enclosure(prec + 64);
            float_via_interval(*prec, |w| transcendental::pow(&base, &re, w))
        }
    }
}

fn display_exp(r: &Scalar) -> String {
    r.to_string()
}

/// Natural logarithm. Exact only for `ln 1 = 0`.
pub fn ln(x: &Scalar) -> Result<Scalar> {
    match x {
        Scalar::Exact(q) => {
            if !q.is_positive() {
                Err(Error::domain(format!("ln of non-positive value {q}")))
            } else if q.is_one() {
                Ok(Scalar::Exact(BigRational::zero()))
            } else {
                Err(Error::inexact(format!("ln({q}) is irrational")))
            }
        }
        Scalar::Interval { value, prec } => Ok(Scalar::Interval {
            value: transcendental::ln(value, *prec)?,
            prec: *prec,
        }),
        Scalar::Float { value, prec } => {
            let v = Interval::point(value.clone());
            float_via_interval(*prec, |w| transcendental::ln(&v, w))
        }
    }
}

/// Exponential. Exact only for `exp 0 = 1`.
pub fn exp(x: &Scalar) -> Result<Scalar> {
    match x {
        Scalar::Exact(q) => {
            if q.is_zero() {
                Ok(Scalar::Exact(BigRational::one()))
            } else {
                Err(Error::inexact(format!("exp({q}) is irrational")))
            }
        }
        Scalar::Interval { value, prec } => Ok(Scalar::Interval {
            value: transcendental::exp(value, *prec),
            prec: *prec,
        }),
        Scalar::Float { value, prec } => {
            let v = Interval::point(value.clone());
            float_via_interval(*prec, |w| Ok(transcendental::exp(&v, w)))
        }
    }
}

impl fmt::Display for Scalar {
    /// Exact values print as `p/q`, intervals as `[lo,hi]` with exact rational
    /// endpoints, floats as an approximate decimal.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(q) => write!(f, "{q}"),
            Scalar::Float { value, .. } => write!(f, "{:e}", value.to_f64()),
            Scalar::Interval { value, .. } => write!(f, "{value}"),
        }
    }
}
