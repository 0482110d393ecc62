//! Rigorous enclosures of `exp` and `ln`.
//!
//! `exp(x)` reduces the argument by a power of two, sums the Taylor series with an
//! explicit tail bound and squares back up. `ln(x)` scales `x` into `(2/3, 4/3]`,
//! sums the `2 atanh(z)` series with `z = (y-1)/(y+1)` and adds `k ln 2`.
//! Each result is the interval image of its argument, rounded outward.

use std::cell::RefCell;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dyadic::Dyadic;
use super::interval::Interval;
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 24;

thread_local! {
    static LN2_CACHE: RefCell<HashMap<u32, Interval>> = RefCell::new(HashMap::new());
}

/// Tail term `[-m, m]` for a series whose neglected part is bounded by `m`.
fn symmetric(m: &Dyadic) -> Interval {
    let m = m.abs();
    Interval::from_sorted(m.neg(), m)
}

fn magnitude(x: &Interval) -> Dyadic {
    Dyadic::max(&x.lo().abs(), &x.hi().abs())
}

/// `2 atanh(z) = 2 Σ z^(2k+1)/(2k+1)` for `|z| <= 1/3`.
fn two_atanh(z: &Interval, prec: u32) -> Interval {
    let eps = Dyadic::one().mul_pow2(-(i64::from(prec) + 4));
    let z2 = z.square(prec);
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut k: i64 = 1;
    loop {
        power = power.mul(&z2, prec);
        let term = power
            .div(&Interval::from_int(2 * k + 1, prec), prec)
            .expect("odd denominator is nonzero");
        sum = sum.add(&term, prec);
        k += 1;
        if magnitude(&power) < eps {
            break;
        }
    }
    // the tail past the last term is at most |z|^(2k+1) / (1 - z^2) <= 2 |z|^(2k+1)
    let tail = magnitude(&power.mul(&z2, prec)).mul_pow2(1);
    sum.add(&symmetric(&tail), prec).mul_pow2(1)
}

/// Enclosure of `ln 2` at `prec` bits.
pub fn ln2(prec: u32) -> Interval {
    if let Some(v) = LN2_CACHE.with(|c| c.borrow().get(&prec).cloned()) {
        return v;
    }
    let w = prec + GUARD_BITS;
    let third = Interval::from_ratio(&BigRational::new(BigInt::from(1), BigInt::from(3)), w);
    let v = two_atanh(&third, w).round(prec);
    LN2_CACHE.with(|c| c.borrow_mut().insert(prec, v.clone()));
    v
}

/// Enclosure of `ln x` for a positive dyadic point.
pub fn ln_point(x: &Dyadic, prec: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::domain(format!("ln of non-positive value {x}")));
    }
    if *x == Dyadic::one() {
        return Ok(Interval::point(Dyadic::zero()));
    }
    let mut k = x.floor_log2().unwrap_or(0);
    let mut y = x.mul_pow2(-k);
    // y in [1, 2); move it into (2/3, 4/3] so that |z| <= 1/5
    if y.mul(&Dyadic::from_i64(3)) > Dyadic::from_i64(4) {
        k += 1;
        y = y.mul_pow2(-1);
    }
    let kbits = 64 - k.unsigned_abs().leading_zeros();
    let w = prec + GUARD_BITS + kbits;
    let yi = Interval::point(y);
    let one = Interval::point(Dyadic::one());
    let z = yi.sub(&one, w).div(&yi.add(&one, w), w)?;
    let mut result = two_atanh(&z, w);
    if k != 0 {
        let scaled = ln2(w).mul(&Interval::from_int(k, w), w);
        result = result.add(&scaled, w);
    }
    Ok(result.round(prec))
}

/// Enclosure of `exp x` for a dyadic point.
pub fn exp_point(x: &Dyadic, prec: u32) -> Interval {
    if x.is_zero() {
        return Interval::point(Dyadic::one());
    }
    // scale so that |t| <= 2^-10, then square back up `m` times
    let m = (x.floor_log2().unwrap_or(0) + 11).max(0);
    let w = prec + GUARD_BITS + m as u32;
    let t = Interval::point(x.mul_pow2(-m));
    let eps = Dyadic::one().mul_pow2(-(i64::from(w) + 2));
    let mut term = Interval::point(Dyadic::one());
    let mut sum = term.clone();
    let mut k: i64 = 1;
    loop {
        term = term
            .mul(&t, w)
            .div(&Interval::from_int(k, w), w)
            .expect("factorial denominator is nonzero");
        sum = sum.add(&term, w);
        k += 1;
        if magnitude(&term) < eps {
            break;
        }
    }
    // remaining tail is below |term| * |t| / (1 - |t|) <= |term|
    sum = sum.add(&symmetric(&magnitude(&term)), w);
    for _ in 0..m {
        sum = sum.square(w);
    }
    sum.round(prec)
}

/// Interval image of `ln` on `[lo, hi]`; requires `lo > 0`.
pub fn ln(x: &Interval, prec: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::domain(format!("ln of interval {x} not bounded away from zero")));
    }
    if x.is_point() {
        return ln_point(x.lo(), prec);
    }
    let lo = ln_point(x.lo(), prec)?;
    let hi = ln_point(x.hi(), prec)?;
    Ok(Interval::from_sorted(lo.lo().clone(), hi.hi().clone()))
}

/// Interval image of `exp` on `[lo, hi]`.
pub fn exp(x: &Interval, prec: u32) -> Interval {
    if x.is_point() {
        return exp_point(x.lo(), prec);
    }
    let lo = exp_point(x.lo(), prec);
    let hi = exp_point(x.hi(), prec);
    Interval::from_sorted(lo.lo().clone(), hi.hi().clone())
}

/// `x^r = exp(r ln x)` for `x > 0` and an arbitrary interval exponent.
pub fn pow(x: &Interval, r: &Interval, prec: u32) -> Result<Interval> {
    let w = prec + GUARD_BITS;
    let l = ln(x, w + 16)?;
    let e = r.mul(&l, w + 16);
    // the exponent's magnitude costs that many bits of relative accuracy
    let extra = magnitude(&e).floor_log2().unwrap_or(0).max(0) as u32;
    if extra > 0 {
        let l = ln(x, w + 16 + extra)?;
        let e = r.mul(&l, w + 16 + extra);
        return Ok(exp(&e, w).round(prec));
    }
    Ok(exp(&e, w).round(prec))
}
