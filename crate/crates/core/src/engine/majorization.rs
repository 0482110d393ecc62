//! Majorization by prefix sums.

use crate::error::{Error, Result};
use crate::numeric::{compare_values, Dyadic, Interval, Mode, Scalar, Verdict};

/// Two equal-length sequences of positive numbers, compared after sorting each into
/// decreasing order.
#[derive(Clone, Debug)]
pub struct MajorizationPair {
    x: Vec<Scalar>,
    y: Vec<Scalar>,
    mode: Mode,
}

impl MajorizationPair {
    pub fn new(x: Vec<Scalar>, y: Vec<Scalar>) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::usage(format!(
                "majorization needs equal lengths, got {} and {}",
                x.len(),
                y.len()
            )));
        }
        if x.is_empty() {
            return Err(Error::usage("majorization needs non-empty sequences"));
        }
        if let Some(bad) = x.iter().chain(&y).find(|v| !v.is_provably_positive()) {
            return Err(Error::usage(format!("entry {bad} is not provably positive")));
        }
        // common mode: exact unless some entry is an interval
        let mut mode = Mode::Exact;
        for v in x.iter().chain(&y) {
            match v.mode() {
                Mode::Exact => {}
                Mode::Interval(p) => {
                    let q = match mode {
                        Mode::Interval(q) => q.max(p),
                        _ => p,
                    };
                    mode = Mode::Interval(q);
                }
                Mode::Float(_) => {
                    return Err(Error::usage("majorization works on exact or interval entries"))
                }
            }
        }
        let x = x.iter().map(|v| v.promote(mode)).collect::<Result<_>>()?;
        let y = y.iter().map(|v| v.promote(mode)).collect::<Result<_>>()?;
        Ok(MajorizationPair { x, y, mode })
    }

    pub fn x(&self) -> &[Scalar] {
        &self.x
    }

    pub fn y(&self) -> &[Scalar] {
        &self.y
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

/// Sums of the `k` largest entries, `k = 1..=len`.
///
/// For intervals the sum of the `k` largest values is monotone in every entry, so it
/// lies between the same sum over lower endpoints and over upper endpoints; this stays
/// valid even when overlapping entries leave the sort order ambiguous.
pub fn top_sums(values: &[Scalar], mode: Mode) -> Result<Vec<Scalar>> {
    match mode {
        Mode::Exact => {
            let mut v: Vec<_> = values
                .iter()
                .map(|s| s.as_exact().cloned().ok_or_else(|| Error::usage("expected exact entry")))
                .collect::<Result<_>>()?;
            v.sort_by(|a, b| b.cmp(a));
            let mut acc = num_rational::BigRational::from_integer(0.into());
            Ok(v
                .into_iter()
                .map(|q| {
                    acc = &acc + q;
                    Scalar::exact(acc.clone())
                })
                .collect())
        }
        Mode::Interval(prec) => {
            let mut lows: Vec<Dyadic> = Vec::with_capacity(values.len());
            let mut highs: Vec<Dyadic> = Vec::with_capacity(values.len());
            for v in values {
                let iv = v.enclosure(prec);
                lows.push(iv.lo().clone());
                highs.push(iv.hi().clone());
            }
            lows.sort_by(|a, b| b.cmp(a));
            highs.sort_by(|a, b| b.cmp(a));
            let mut lo = Dyadic::zero();
            let mut hi = Dyadic::zero();
            let mut out = Vec::with_capacity(values.len());
            for (l, h) in lows.iter().zip(&highs) {
                // sums of dyadics are exact; no rounding needed
                lo = lo.add(l);
                hi = hi.add(h);
                out.push(Scalar::interval(Interval::new(lo.clone(), hi.clone())?, prec));
            }
            Ok(out)
        }
        Mode::Float(_) => Err(Error::usage("majorization works on exact or interval entries")),
    }
}

/// Whether `x` is majorized by `y`: every proper prefix sum of the decreasing
/// rearrangement of `x` is at most that of `y`, and the totals are equal.
pub fn is_majorized(pair: &MajorizationPair) -> Result<Verdict> {
    let xs = top_sums(&pair.x, pair.mode)?;
    let ys = top_sums(&pair.y, pair.mode)?;
    let n = pair.len();
    let mut steps = Vec::with_capacity(n + 1);
    for j in 0..n - 1 {
        let v = compare_values(&ys[j], &xs[j], false)?.with_params(&[("prefix", j + 1)]);
        steps.push(v);
    }
    // equal totals: both orders must hold
    let ge = compare_values(&xs[n - 1], &ys[n - 1], false)?.with_params(&[("total", n)]);
    let le = compare_values(&ys[n - 1], &xs[n - 1], false)?.with_params(&[("total", n)]);
    steps.push(ge);
    steps.push(le);
    Ok(Verdict::all(steps))
}
