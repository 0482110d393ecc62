//! Arbitrary-precision binary floating point numbers `mant * 2^exp`.
//!
//! Addition, subtraction and multiplication are exact; [`Dyadic::round`] and
//! [`Dyadic::div`] truncate to a mantissa width in a chosen direction. Interval
//! endpoints are built on these two primitives.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rounding direction for inexact operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Toward negative infinity.
    Down,
    /// Toward positive infinity.
    Up,
    /// To nearest, halves rounded up. Only used for advisory float values.
    Nearest,
}

/// A number `mant * 2^exp`, kept normalized (odd mantissa, or zero with `exp == 0`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mant: BigInt,
    exp: i64,
}

fn shr_floor(m: &BigInt, s: u64) -> BigInt {
    if m.sign() != Sign::Minus {
        m >> s
    } else {
        let one = BigInt::one();
        let bias = (&one << s) - &one;
        -((-m + bias) >> s)
    }
}

fn shr_ceil(m: &BigInt, s: u64) -> BigInt {
    -shr_floor(&-m, s)
}

fn shr_nearest(m: &BigInt, s: u64) -> BigInt {
    if s == 0 {
        return m.clone();
    }
    shr_floor(&(m + (BigInt::one() << (s - 1))), s)
}

fn div_rounded(n: &BigInt, d: &BigInt, rnd: Rounding) -> BigInt {
    match rnd {
        Rounding::Down => n.div_floor(d),
        Rounding::Up => -((-n).div_floor(d)),
        Rounding::Nearest => {
            let (q, r) = n.div_mod_floor(d);
            // r has the sign of d
            if (&r + &r).abs() >= d.abs() {
                q + 1
            } else {
                q
            }
        }
    }
}

impl Dyadic {
    pub fn new(mant: BigInt, exp: i64) -> Self {
        if mant.is_zero() {
            return Self::zero();
        }
        let tz = mant.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Dyadic { mant, exp }
        } else {
            Dyadic {
                mant: mant >> tz,
                exp: exp + tz as i64,
            }
        }
    }

    pub fn zero() -> Self {
        Dyadic {
            mant: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Self::from_int(BigInt::one())
    }

    pub fn from_int(v: BigInt) -> Self {
        Self::new(v, 0)
    }

    pub fn from_i64(v: i64) -> Self {
        Self::new(BigInt::from(v), 0)
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.mant.is_positive()
    }

    /// Number of significant bits of the mantissa.
    pub fn bits(&self) -> u64 {
        self.mant.bits()
    }

    /// `floor(log2(|self|))`; `None` for zero.
    pub fn floor_log2(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.mant.bits() as i64 - 1 + self.exp)
        }
    }

    pub fn neg(&self) -> Self {
        Dyadic {
            mant: -&self.mant,
            exp: self.exp,
        }
    }

    pub fn abs(&self) -> Self {
        Dyadic {
            mant: self.mant.abs(),
            exp: self.exp,
        }
    }

    /// Exact product with `2^k`.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Dyadic {
            mant: self.mant.clone(),
            exp: self.exp + k,
        }
    }

    pub fn add(&self, other: &Dyadic) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.mant << (self.exp - e) as u64;
        let b = &other.mant << (other.exp - e) as u64;
        Self::new(a + b, e)
    }

    pub fn sub(&self, other: &Dyadic) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Dyadic) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // product of odd mantissas stays odd
        Dyadic {
            mant: &self.mant * &other.mant,
            exp: self.exp + other.exp,
        }
    }

    /// Round to at most `prec` significant bits.
    pub fn round(&self, prec: u32, rnd: Rounding) -> Self {
        let bits = self.mant.bits();
        let prec = u64::from(prec.max(2));
        if bits <= prec {
            return self.clone();
        }
        let s = bits - prec;
        let m = match rnd {
            Rounding::Down => shr_floor(&self.mant, s),
            Rounding::Up => shr_ceil(&self.mant, s),
            Rounding::Nearest => shr_nearest(&self.mant, s),
        };
        Self::new(m, self.exp + s as i64)
    }

    /// Quotient rounded to `prec` bits in direction `rnd`. Panics on a zero divisor;
    /// callers check for containment of zero first.
    pub fn div(&self, other: &Dyadic, prec: u32, rnd: Rounding) -> Self {
        assert!(!other.is_zero(), "division by zero dyadic");
        if self.is_zero() {
            return Self::zero();
        }
        let want = i64::from(prec.max(2)) + 2;
        let shift = want + other.mant.bits() as i64 - self.mant.bits() as i64;
        let (n, d) = if shift >= 0 {
            (&self.mant << shift as u64, other.mant.clone())
        } else {
            (self.mant.clone(), &other.mant << (-shift) as u64)
        };
        let q = div_rounded(&n, &d, rnd);
        Self::new(q, self.exp - other.exp - shift).round(prec, rnd)
    }

    /// Nearest representable value of a rational in direction `rnd`.
    pub fn from_ratio(q: &BigRational, prec: u32, rnd: Rounding) -> Self {
        let n = Dyadic::from_int(q.numer().clone());
        let d = Dyadic::from_int(q.denom().clone());
        n.div(&d, prec, rnd)
    }

    pub fn to_ratio(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant << self.exp as u64)
        } else {
            BigRational::new(self.mant.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    /// Approximate conversion for display and advisory estimates.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.mant.bits() as i64;
        let keep = bits.min(60);
        let top = shr_floor(&self.mant, (bits - keep) as u64)
            .to_f64()
            .unwrap_or(0.0);
        let e = self.exp + bits - keep;
        top * 2f64.powi(e.clamp(-2000, 2000) as i32)
    }

    pub fn min(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max(a: &Dyadic, b: &Dyadic) -> Dyadic {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        let sa = self.mant.sign();
        let sb = other.mant.sign();
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == Sign::NoSign {
            return Ordering::Equal;
        }
        // same sign: compare magnitudes first by bit position
        let la = self.floor_log2().unwrap_or(0);
        let lb = other.floor_log2().unwrap_or(0);
        let mag = if la != lb {
            la.cmp(&lb)
        } else {
            let e = self.exp.min(other.exp);
            let a = self.mant.abs() << (self.exp - e) as u64;
            let b = other.mant.abs() << (other.exp - e) as u64;
            a.cmp(&b)
        };
        if sa == Sign::Minus {
            mag.reverse()
        } else {
            mag
        }
    }
}

impl fmt::Display for Dyadic {
    /// Exact rational form `p/q` (or an integer).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratio())
    }
}
