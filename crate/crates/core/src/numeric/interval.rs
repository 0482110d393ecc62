//! Closed intervals with dyadic endpoints and outward rounding.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::{Dyadic, Rounding};
use crate::error::{Error, Result};

/// A closed interval `[lo, hi]` with `lo <= hi`.
///
/// Every operation takes a precision in bits and rounds the lower endpoint down and
/// the upper endpoint up, so the result encloses every real value the operation can
/// produce from points of its operands.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Dyadic,
    hi: Dyadic,
}

impl Interval {
    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<Self> {
        if lo > hi {
            return Err(Error::usage(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub(crate) fn from_sorted(lo: Dyadic, hi: Dyadic) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Dyadic) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn from_int(v: impl Into<BigInt>, prec: u32) -> Self {
        let d = Dyadic::from_int(v.into());
        Interval {
            lo: d.round(prec, Rounding::Down),
            hi: d.round(prec, Rounding::Up),
        }
    }

    pub fn from_ratio(q: &BigRational, prec: u32) -> Self {
        Interval {
            lo: Dyadic::from_ratio(q, prec, Rounding::Down),
            hi: Dyadic::from_ratio(q, prec, Rounding::Up),
        }
    }

    pub fn lo(&self) -> &Dyadic {
        &self.lo
    }

    pub fn hi(&self) -> &Dyadic {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn contains_ratio(&self, q: &BigRational) -> bool {
        &self.lo.to_ratio() <= q && q <= &self.hi.to_ratio()
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Width `hi - lo`, exact.
    pub fn width(&self) -> Dyadic {
        self.hi.sub(&self.lo)
    }

    pub fn midpoint(&self) -> Dyadic {
        self.lo.add(&self.hi).mul_pow2(-1)
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: Dyadic::min(&self.lo, &other.lo),
            hi: Dyadic::max(&self.hi, &other.hi),
        }
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = Dyadic::max(&self.lo, &other.lo);
        let hi = Dyadic::min(&self.hi, &other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    fn outward(lo: Dyadic, hi: Dyadic, prec: u32) -> Self {
        Interval {
            lo: lo.round(prec, Rounding::Down),
            hi: hi.round(prec, Rounding::Up),
        }
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    pub fn add(&self, other: &Interval, prec: u32) -> Self {
        Self::outward(self.lo.add(&other.lo), self.hi.add(&other.hi), prec)
    }

    pub fn sub(&self, other: &Interval, prec: u32) -> Self {
        Self::outward(self.lo.sub(&other.hi), self.hi.sub(&other.lo), prec)
    }

    pub fn mul(&self, other: &Interval, prec: u32) -> Self {
        let products = [
            self.lo.mul(&other.lo),
            self.lo.mul(&other.hi),
            self.hi.mul(&other.lo),
            self.hi.mul(&other.hi),
        ];
        let lo = products.iter().min().cloned().unwrap_or_else(Dyadic::zero);
        let hi = products.iter().max().cloned().unwrap_or_else(Dyadic::zero);
        Self::outward(lo, hi, prec)
    }

    pub fn square(&self, prec: u32) -> Self {
        let a = self.lo.mul(&self.lo);
        let b = self.hi.mul(&self.hi);
        if self.contains_zero() {
            Self::outward(Dyadic::zero(), Dyadic::max(&a, &b), prec)
        } else {
            Self::outward(Dyadic::min(&a, &b), Dyadic::max(&a, &b), prec)
        }
    }

    pub fn div(&self, other: &Interval, prec: u32) -> Result<Self> {
        if other.contains_zero() {
            return Err(Error::domain(format!("division by interval {other} containing zero")));
        }
        let mut lows = Vec::with_capacity(4);
        let mut highs = Vec::with_capacity(4);
        for a in [&self.lo, &self.hi] {
            for b in [&other.lo, &other.hi] {
                lows.push(a.div(b, prec, Rounding::Down));
                highs.push(a.div(b, prec, Rounding::Up));
            }
        }
        let lo = lows.into_iter().min().unwrap_or_else(Dyadic::zero);
        let hi = highs.into_iter().max().unwrap_or_else(Dyadic::zero);
        Ok(Interval { lo, hi })
    }

    /// Product with `2^k`; exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        Interval {
            lo: self.lo.mul_pow2(k),
            hi: self.hi.mul_pow2(k),
        }
    }

    /// Integer power. Negative exponents require an interval excluding zero.
    pub fn powi(&self, k: i64, prec: u32) -> Result<Self> {
        if k == 0 {
            return Ok(Interval::point(Dyadic::one()));
        }
        if k < 0 {
            if self.contains_zero() {
                return Err(Error::domain(format!("negative power of interval {self} containing zero")));
            }
            let p = self.powi(-k, prec + 8)?;
            return Interval::point(Dyadic::one()).div(&p, prec);
        }
        let k = k as u64;
        if self.lo.is_negative() {
            if k % 2 == 1 {
                // odd powers are monotone
                return Ok(Interval {
                    lo: pow_dir(&self.lo, k, prec, Rounding::Down),
                    hi: pow_dir(&self.hi, k, prec, Rounding::Up),
                });
            }
            let m = Dyadic::max(&self.lo.abs(), &self.hi.abs());
            let lo = if self.contains_zero() {
                Dyadic::zero()
            } else {
                pow_dir(&self.hi.abs(), k, prec, Rounding::Down)
            };
            return Ok(Interval {
                lo,
                hi: pow_dir(&m, k, prec, Rounding::Up),
            });
        }
        Ok(Interval {
            lo: pow_dir(&self.lo, k, prec, Rounding::Down),
            hi: pow_dir(&self.hi, k, prec, Rounding::Up),
        })
    }

    /// Round both endpoints outward to `prec` bits.
    pub fn round(&self, prec: u32) -> Self {
        Self::outward(self.lo.clone(), self.hi.clone(), prec)
    }

    pub fn to_f64_bounds(&self) -> (f64, f64) {
        (self.lo.to_f64(), self.hi.to_f64())
    }
}

/// `x^k` for `x` of fixed sign (non-negative, or negative with odd `k`), rounded in
/// direction `rnd`. Repeated squaring with every partial product rounded the same way
/// stays on one side of the exact power because all factors share one sign.
fn pow_dir(x: &Dyadic, k: u64, prec: u32, rnd: Rounding) -> Dyadic {
    if x.is_negative() {
        let flipped = match rnd {
            Rounding::Down => Rounding::Up,
            Rounding::Up => Rounding::Down,
            Rounding::Nearest => Rounding::Nearest,
        };
        return pow_dir(&x.neg(), k, prec, flipped).neg();
    }
    let work = prec + 2 * (64 - k.leading_zeros());
    let mut result = Dyadic::one();
    let mut base = x.clone();
    let mut e = k;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base).round(work, rnd);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base).round(work, rnd);
        }
    }
    result.round(prec, rnd)
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn iv(a: (i64, i64), b: (i64, i64)) -> Interval {
        Interval::new(
            Dyadic::from_ratio(&rat(a.0, a.1), 128, Rounding::Down),
            Dyadic::from_ratio(&rat(b.0, b.1), 128, Rounding::Up),
        )
        .unwrap()
    }

    #[test]
    fn mul_encloses_product_bounds() {
        let x = iv((1, 1), (2, 1));
        let p = x.mul(&x, 64);
        assert!(p.contains_ratio(&rat(1, 1)) && p.contains_ratio(&rat(4, 1)));
        let m = iv((-1, 1), (2, 1)).mul(&iv((-3, 1), (1, 1)), 64);
        assert!(m.contains_ratio(&rat(-6, 1)) && m.contains_ratio(&rat(3, 1)));
    }

    #[test]
    fn div_by_zero_interval_is_domain_error() {
        let x = iv((1, 1), (2, 1));
        let z = iv((-1, 1), (1, 1));
        assert!(matches!(x.div(&z, 64), Err(Error::Domain(_))));
    }

    #[test]
    fn one_third_enclosed() {
        let t = Interval::from_int(1, 64).div(&Interval::from_int(3, 64), 64).unwrap();
        assert!(t.contains_ratio(&rat(1, 3)));
        assert!(!t.is_point());
    }

    #[test]
    fn powers_of_mixed_sign_intervals() {
        let x = iv((-2, 1), (1, 1));
        let sq = x.powi(2, 64).unwrap();
        assert_eq!(sq.lo().to_ratio(), rat(0, 1));
        assert_eq!(sq.hi().to_ratio(), rat(4, 1));
        let cube = x.powi(3, 64).unwrap();
        assert_eq!(cube.lo().to_ratio(), rat(-8, 1));
        assert_eq!(cube.hi().to_ratio(), rat(1, 1));
        let inv = iv((2, 1), (4, 1)).powi(-1, 64).unwrap();
        assert!(inv.contains_ratio(&rat(1, 4)) && inv.contains_ratio(&rat(1, 2)));
    }

    #[test]
    fn large_power_is_rounded_outward() {
        let x = Interval::from_int(3, 32);
        let p = x.powi(100, 32).unwrap();
        let exact = BigRational::from_integer(num_traits::pow(BigInt::from(3), 100));
        assert!(p.contains_ratio(&exact));
        assert!(!p.is_point());
        assert!(p.lo().bits() <= 32);
    }
}
