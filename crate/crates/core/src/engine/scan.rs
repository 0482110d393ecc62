//! Grid scan of `P_n(r) >= P_n(r')` for `1 <= r < r'`.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numeric::{compare_ge, rat, EvalConfig, Outcome, Verdict};

use super::eval::Evaluator;

/// All pairs `(r, r')` with `r < r'` from the two grids, sorted.
pub fn problem1_pairs(
    r_grid: &[BigRational],
    rprime_grid: &[BigRational],
) -> Result<Vec<(BigRational, BigRational)>> {
    if let Some(bad) = r_grid.iter().find(|r| *r < &BigRational::one()) {
        return Err(Error::usage(format!("scan needs r >= 1, got {bad}")));
    }
    let mut pairs: Vec<_> = r_grid
        .iter()
        .flat_map(|r| {
            rprime_grid
                .iter()
                .filter(move |rp| *rp > r)
                .map(move |rp| (r.clone(), rp.clone()))
        })
        .collect();
    pairs.sort();
    pairs.dedup();
    if pairs.is_empty() {
        return Err(Error::usage("scan grid has no pair with r < rprime"));
    }
    Ok(pairs)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRecord {
    pub n: u64,
    pub r: BigRational,
    pub rprime: BigRational,
    pub verdict: Verdict,
    /// `r' >= 2r + 1`, where the comparison is already known to hold.
    pub covered_by_corollary1: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    /// Sorted by `(r, r', n)`.
    pub records: Vec<ScanRecord>,
    pub holds: usize,
    pub fails: usize,
    pub indeterminate: usize,
}

impl ScanReport {
    /// Every failed comparison, with its witness.
    pub fn findings(&self) -> impl Iterator<Item = &ScanRecord> {
        self.records.iter().filter(|r| r.verdict.fails())
    }
}

pub fn scan_problem1(
    n_range: RangeInclusive<u64>,
    pairs: &[(BigRational, BigRational)],
    cfg: &EvalConfig,
) -> Result<ScanReport> {
    if *n_range.start() == 0 || n_range.is_empty() {
        return Err(Error::usage("scan needs a non-empty range of n >= 1"));
    }
    if let Some((r, rp)) = pairs.iter().find(|(r, rp)| rp <= r || r < &BigRational::one()) {
        return Err(Error::usage(format!("scan needs 1 <= r < rprime, got r = {r}, rprime = {rp}")));
    }
    // one worker per r so the cache for P_n(r) is shared by all of its r'
    let mut by_r: BTreeMap<&BigRational, Vec<&BigRational>> = BTreeMap::new();
    for (r, rp) in pairs {
        by_r.entry(r).or_default().push(rp);
    }
    let groups: Vec<_> = by_r.into_iter().collect();
    let chunks: Vec<Result<Vec<ScanRecord>>> = groups
        .par_iter()
        .map(|(r, rps)| {
            let ev = Evaluator::new();
            let mut out = Vec::new();
            for rp in rps {
                let covered = *rp >= &(rat(2, 1) * *r + BigRational::one());
                for n in n_range.clone() {
                    let v = compare_ge(|m| ev.p_ratio(n, r, m), |m| ev.p_ratio(n, rp, m), false, cfg)?
                        .with_params(&[("n", n.to_string()), ("r", r.to_string()), ("rprime", rp.to_string())]);
                    out.push(ScanRecord {
                        n,
                        r: (*r).clone(),
                        rprime: (*rp).clone(),
                        verdict: v,
                        covered_by_corollary1: covered,
                    });
                }
            }
            Ok(out)
        })
        .collect();
    let mut records = Vec::new();
    for c in chunks {
        records.extend(c?);
    }
    records.sort_by(|a, b| (&a.r, &a.rprime, a.n).cmp(&(&b.r, &b.rprime, b.n)));
    let count = |o: Outcome| records.iter().filter(|r| r.verdict.outcome == o).count();
    Ok(ScanReport {
        holds: count(Outcome::Holds),
        fails: count(Outcome::Fails),
        indeterminate: count(Outcome::Indeterminate),
        records,
    })
}
