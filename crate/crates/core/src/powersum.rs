//! Power sums `S_n(r) = 1^r + ... + n^r` and the functions built from them.
//!
//! Exponents are always exact rationals. Whether a value comes out exact or as an
//! enclosure is decided by the [`Mode`] it is evaluated in: exact evaluation accepts
//! only integer exponents and refuses anything irrational with [`Error::Inexact`].

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::numeric::{exp, ln, rat, Mode, Scalar};

/// Memoized prefix sums `S_1(r), S_2(r), ...` per exponent, all in one mode.
///
/// Caches are cheap to create; concurrent evaluators each keep their own.
#[derive(Debug)]
pub struct PowerSumCache {
    mode: Mode,
    sums: HashMap<BigRational, Vec<Scalar>>,
    log_sums: Vec<Scalar>,
}

impl PowerSumCache {
    pub fn new(mode: Mode) -> Self {
        PowerSumCache {
            mode,
            sums: HashMap::new(),
            log_sums: Vec::new(),
        }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// `S_n(r)`, extending the cached prefix sums as needed.
    pub fn power_sum(&mut self, n: u64, r: &BigRational) -> Result<Scalar> {
        if n == 0 {
            return Ok(Scalar::from_int(0, self.mode));
        }
        let mode = self.mode;
        if mode == Mode::Exact && !r.is_integer() {
            return Err(Error::inexact(format!("S_n({r}) with non-integer exponent")));
        }
        let sums = self.sums.entry(r.clone()).or_default();
        while (sums.len() as u64) < n {
            let i = sums.len() as u64 + 1;
            let term = Scalar::from_int(i, mode).pow_ratio(r)?;
            let next = match sums.last() {
                Some(prev) => prev.add(&term)?,
                None => term,
            };
            sums.push(next);
        }
        Ok(sums[(n - 1) as usize].clone())
    }

    /// `ln(n!) = ln 1 + ... + ln n` as an enclosure.
    pub fn log_factorial(&mut self, n: u64) -> Result<Scalar> {
        if self.mode == Mode::Exact {
            if n <= 1 {
                return Ok(Scalar::exact(BigRational::zero()));
            }
            return Err(Error::inexact(format!("ln({n}!) is irrational")));
        }
        if n == 0 {
            return Ok(Scalar::from_int(0, self.mode));
        }
        while (self.log_sums.len() as u64) < n {
            let i = self.log_sums.len() as u64 + 1;
            let term = ln(&Scalar::from_int(i, self.mode))?;
            let next = match self.log_sums.last() {
                Some(prev) => prev.add(&term)?,
                None => term,
            };
            self.log_sums.push(next);
        }
        Ok(self.log_sums[(n - 1) as usize].clone())
    }
}

/// One term of a parameterized sequence.
#[derive(Clone, Debug, PartialEq)]
pub struct SequenceTerm {
    pub n: u64,
    pub value: Scalar,
    pub r: BigRational,
    pub alpha: BigRational,
}

fn require_n(n: u64) -> Result<()> {
    if n == 0 {
        Err(Error::usage("index n must be at least 1"))
    } else {
        Ok(())
    }
}

fn c(cache: &PowerSumCache, q: BigRational) -> Scalar {
    Scalar::from_ratio(&q, cache.mode())
}

fn int(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `S_n(r)`.
pub fn power_sum(cache: &mut PowerSumCache, n: u64, r: &BigRational) -> Result<Scalar> {
    require_n(n)?;
    cache.power_sum(n, r)
}

/// `P_n(r) = ((S_n(r)/n) / (S_{n+1}(r)/(n+1)))^(1/r)`, and for `r = 0` the ratio of
/// geometric means `(n!)^(1/n) / ((n+1)!)^(1/(n+1))`, evaluated through logarithms.
pub fn p_ratio(cache: &mut PowerSumCache, n: u64, r: &BigRational) -> Result<Scalar> {
    require_n(n)?;
    if r.is_zero() {
        let a = cache.log_factorial(n)?;
        let b = cache.log_factorial(n + 1)?;
        let diff = a
            .div(&c(cache, int(n)))?
            .sub(&b.div(&c(cache, int(n + 1)))?)?;
        return exp(&diff);
    }
    let lower = cache.power_sum(n, r)?.div(&c(cache, int(n)))?;
    let upper = cache.power_sum(n + 1, r)?.div(&c(cache, int(n + 1)))?;
    lower.div(&upper)?.pow_ratio(&r.recip())
}

/// Direction of a limit in the exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    PlusInfinity,
    MinusInfinity,
}

/// Limits of `P_n(r)`: `n/(n+1)` as `r -> +inf` and `1` as `r -> -inf`.
pub fn p_limit(n: u64, direction: Limit) -> Result<BigRational> {
    require_n(n)?;
    Ok(match direction {
        Limit::PlusInfinity => BigRational::new(BigInt::from(n), BigInt::from(n + 1)),
        Limit::MinusInfinity => BigRational::one(),
    })
}

/// Exponent `alpha (r + 1) - 1` of the denominator sum.
pub fn denominator_exponent(r: &BigRational, alpha: &BigRational) -> BigRational {
    alpha * (r + BigRational::one()) - BigRational::one()
}

/// `S_n(r)^alpha / S_n(alpha (r+1) - 1)`.
pub fn power_ratio_term(
    cache: &mut PowerSumCache,
    n: u64,
    r: &BigRational,
    alpha: &BigRational,
) -> Result<Scalar> {
    require_n(n)?;
    let num = cache.power_sum(n, r)?.pow_ratio(alpha)?;
    let den = cache.power_sum(n, &denominator_exponent(r, alpha))?;
    num.div(&den)
}

/// [`power_ratio_term`] packaged with its parameters.
pub fn power_ratio_sequence_term(
    cache: &mut PowerSumCache,
    n: u64,
    r: &BigRational,
    alpha: &BigRational,
) -> Result<SequenceTerm> {
    Ok(SequenceTerm {
        n,
        value: power_ratio_term(cache, n, r, alpha)?,
        r: r.clone(),
        alpha: alpha.clone(),
    })
}

/// Divided difference `D_r(x, y) = (x^r - y^r)/(x - y)`, with `D_r(x, x) = r x^(r-1)`.
///
/// For interval arguments that overlap, the quotient is replaced by the mean-value
/// enclosure `r * [t^(r-1) : t in hull(x, y)]`; for disjoint ones both enclosures are
/// intersected.
pub fn divided_difference(x: &Scalar, y: &Scalar, r: &BigRational) -> Result<Scalar> {
    if !x.is_provably_positive() || !y.is_provably_positive() {
        return Err(Error::domain(format!("D_r needs positive arguments, got {x} and {y}")));
    }
    let mode = x.mode();
    let rs = Scalar::from_ratio(r, mode);
    let r1 = r - BigRational::one();
    match (x, y) {
        (Scalar::Exact(a), Scalar::Exact(b)) => {
            if a == b {
                rs.mul(&x.pow_ratio(&r1)?)
            } else {
                x.pow_ratio(r)?
                    .sub(&y.pow_ratio(r)?)?
                    .div(&x.sub(y)?)
            }
        }
        (Scalar::Interval { value: a, prec: p }, Scalar::Interval { value: b, prec: q }) => {
            let prec = (*p).max(*q);
            let hull = Scalar::interval(a.hull(b), prec);
            let mean = rs.mul(&hull.pow_ratio(&r1)?)?;
            if a.overlaps(b) {
                return Ok(mean);
            }
            let quotient = x.pow_ratio(r)?.sub(&y.pow_ratio(r)?)?.div(&x.sub(y)?)?;
            let (Some(qi), Some(mi)) = (quotient.as_interval(), mean.as_interval()) else {
                return Ok(quotient);
            };
            Ok(match qi.intersect(mi) {
                Some(tight) => Scalar::interval(tight, prec),
                None => quotient,
            })
        }
        (Scalar::Float { value: a, .. }, Scalar::Float { value: b, .. }) => {
            if a == b {
                rs.mul(&x.pow_ratio(&r1)?)
            } else {
                x.pow_ratio(r)?.sub(&y.pow_ratio(r)?)?.div(&x.sub(y)?)
            }
        }
        _ => Err(Error::usage(format!(
            "mode mismatch in D_r: {:?} vs {:?}",
            x.mode(),
            y.mode()
        ))),
    }
}

/// `g_r(alpha) = 1 + 2^(alpha(r+1)-1) - (1 + 2^r)^alpha`, the gap of the first step of
/// the power-ratio sequence.
pub fn base_gap(r: &BigRational, alpha: &BigRational, mode: Mode) -> Result<Scalar> {
    let one = Scalar::from_int(1, mode);
    let two = Scalar::from_int(2, mode);
    let big = two.pow_ratio(&denominator_exponent(r, alpha))?;
    let small = one.add(&two.pow_ratio(r)?)?.pow_ratio(alpha)?;
    one.add(&big)?.sub(&small)
}

/// Derivative of [`base_gap`] in `alpha`:
/// `ln(2^(r+1)) 2^(alpha(r+1)-1) - ln(1+2^r) (1+2^r)^alpha`.
pub fn base_gap_slope(r: &BigRational, alpha: &BigRational, mode: Mode) -> Result<Scalar> {
    let one = Scalar::from_int(1, mode);
    let two = Scalar::from_int(2, mode);
    let a = ln(&two.pow_ratio(&(r + BigRational::one()))?)?
        .mul(&two.pow_ratio(&denominator_exponent(r, alpha))?)?;
    let s = one.add(&two.pow_ratio(r)?)?;
    let b = ln(&s)?.mul(&s.pow_ratio(alpha)?)?;
    a.sub(&b)
}

fn strictly_inside_unit(x: &Scalar) -> bool {
    let one = Scalar::from_int(1, x.mode());
    x.is_provably_positive()
        && one
            .sub(x)
            .map(|d| d.is_provably_positive())
            .unwrap_or(false)
}

/// `f(x) = (1 - x)(1 + x^r) / (1 - x^(r+1))` on `0 < x < 1`; identically 1 for `r = 1`.
pub fn ratio_fn(x: &Scalar, r: &BigRational) -> Result<Scalar> {
    if !strictly_inside_unit(x) {
        return Err(Error::domain(format!("ratio function needs 0 < x < 1, got {x}")));
    }
    let mode = x.mode();
    if r.is_one() {
        return Ok(Scalar::from_int(1, mode));
    }
    let one = Scalar::from_int(1, mode);
    let num = one.sub(x)?.mul(&one.add(&x.pow_ratio(r)?)?)?;
    let den = one.sub(&x.pow_ratio(&(r + BigRational::one()))?)?;
    num.div(&den)
}

/// Numerator of `f'(x)`: `x^(2r) - r x^(r+1) + r x^(r-1) - 1`, for `0 < x <= 1`.
pub fn ratio_fn_deriv_numerator(x: &Scalar, r: &BigRational) -> Result<Scalar> {
    let mode = x.mode();
    let one_q = BigRational::one();
    let one = Scalar::from_int(1, mode);
    if !x.is_provably_positive() || one.sub(x)?.certain_sign() == Some(std::cmp::Ordering::Less) {
        return Err(Error::domain(format!("derivative numerator needs 0 < x <= 1, got {x}")));
    }
    let rs = Scalar::from_ratio(r, mode);
    let two_r = r * rat(2, 1);
    x.pow_ratio(&two_r)?
        .sub(&rs.mul(&x.pow_ratio(&(r + &one_q))?)?)?
        .add(&rs.mul(&x.pow_ratio(&(r - &one_q))?)?)?
        .sub(&one)
}

/// Auxiliary function `h(x) = 2x^2 ln(2x) - (1+x)^2 ln(1+x)` with `g_r'(2) = h(2^r)`,
/// and its first two derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlopeAux {
    /// `h(x)`
    Value,
    /// `h'(x) = 4x ln(2x) - 2(1+x) ln(1+x) + x - 1`
    FirstDerivative,
    /// `h''(x) = 3 + 4 ln 2 + 2 (ln x^2 - ln(1+x))`
    SecondDerivative,
}

pub fn slope_aux(x: &Scalar, which: SlopeAux) -> Result<Scalar> {
    if !x.is_provably_positive() {
        return Err(Error::domain(format!("auxiliary function needs x > 0, got {x}")));
    }
    let mode = x.mode();
    let k = |v: i64| Scalar::from_int(v, mode);
    let two_x = k(2).mul(x)?;
    let one_x = k(1).add(x)?;
    match which {
        SlopeAux::Value => ln(&two_x)?
            .mul(&two_x.mul(x)?)?
            .sub(&ln(&one_x)?.mul(&one_x.mul(&one_x)?)?),
        SlopeAux::FirstDerivative => k(4)
            .mul(x)?
            .mul(&ln(&two_x)?)?
            .sub(&k(2).mul(&one_x)?.mul(&ln(&one_x)?)?)?
            .add(x)?
            .sub(&k(1)),
        SlopeAux::SecondDerivative => k(3)
            .add(&k(4).mul(&ln(&k(2))?)?)?
            .add(&k(2).mul(&ln(&x.mul(x)?)?.sub(&ln(&one_x)?)?)?),
    }
}
