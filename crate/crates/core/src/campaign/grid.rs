use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::engine::{problem1_pairs, CheckName, CheckSpec};
use crate::error::{Error, Result};
use crate::numeric::{ArithMode, EvalConfig, PrecisionPolicy};

/// A campaign: one check over the product of its parameter lists and `n_min..=n_max`.
///
/// Lists a check does not use are ignored. For `problem1`, pairs with `rprime <= r`
/// are skipped rather than rejected, so one list can serve as both grids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub check: CheckName,
    pub n_min: u64,
    pub n_max: u64,
    pub r: Vec<BigRational>,
    pub alpha: Vec<BigRational>,
    pub rprime: Vec<BigRational>,
    pub mode: ArithMode,
    pub policy: PrecisionPolicy,
}

/// Exponent part of one grid point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) struct Combo {
    pub r: BigRational,
    pub alpha: Option<BigRational>,
    pub rprime: Option<BigRational>,
}

/// Grid as written into reports: rationals as exact strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridEcho {
    pub check: String,
    pub n_min: u64,
    pub n_max: u64,
    pub r: Vec<String>,
    pub alpha: Vec<String>,
    pub rprime: Vec<String>,
    pub mode: ArithMode,
    pub precision_start: u32,
    pub precision_max: u32,
}

impl GridSpec {
    pub fn new(check: CheckName, n_min: u64, n_max: u64, r: Vec<BigRational>) -> Self {
        GridSpec {
            check,
            n_min,
            n_max,
            r,
            alpha: Vec::new(),
            rprime: Vec::new(),
            mode: ArithMode::Interval,
            policy: PrecisionPolicy::default(),
        }
    }

    pub fn alpha(mut self, alpha: Vec<BigRational>) -> Self {
        self.alpha = alpha;
        self
    }

    pub fn rprime(mut self, rprime: Vec<BigRational>) -> Self {
        self.rprime = rprime;
        self
    }

    pub fn mode(mut self, mode: ArithMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn policy(mut self, policy: PrecisionPolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn config(&self) -> EvalConfig {
        EvalConfig { mode: self.mode, policy: self.policy }
    }

    fn n_for_check(&self) -> Option<u64> {
        self.check.uses_n().then_some(self.n_min)
    }

    /// Parameter combinations in sorted order, without duplicates.
    pub(crate) fn combos(&self) -> Result<Vec<Combo>> {
        let name = self.check;
        let empty = |what: &str| Error::usage(format!("{name}: empty {what} list"));
        if self.r.is_empty() {
            return Err(empty("r"));
        }
        if name.uses_alpha() && self.alpha.is_empty() {
            return Err(empty("alpha"));
        }
        if name.uses_rprime() && self.rprime.is_empty() {
            return Err(empty("rprime"));
        }
        let mut out = Vec::new();
        if name == CheckName::Problem1 {
            for (r, rp) in problem1_pairs(&self.r, &self.rprime)? {
                out.push(Combo { r, alpha: None, rprime: Some(rp) });
            }
        } else {
            let alphas: Vec<Option<BigRational>> = if name.uses_alpha() {
                self.alpha.iter().cloned().map(Some).collect()
            } else {
                vec![None]
            };
            let rprimes: Vec<Option<BigRational>> = if name.uses_rprime() {
                self.rprime.iter().cloned().map(Some).collect()
            } else {
                vec![None]
            };
            for r in &self.r {
                for a in &alphas {
                    for rp in &rprimes {
                        out.push(Combo { r: r.clone(), alpha: a.clone(), rprime: rp.clone() });
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Check specs for every grid point, failing on the first out-of-range one.
    pub(crate) fn specs_for(&self, combo: &Combo) -> Result<Vec<CheckSpec>> {
        let ns: Vec<Option<u64>> = if self.check.uses_n() {
            (self.n_min..=self.n_max).map(Some).collect()
        } else {
            vec![None]
        };
        ns.into_iter()
            .map(|n| {
                CheckSpec::new(
                    self.check,
                    n,
                    combo.r.clone(),
                    combo.alpha.clone(),
                    combo.rprime.clone(),
                    self.mode,
                )
            })
            .collect()
    }

    /// All checks the grid describes, validated up front.
    pub fn validate(&self) -> Result<()> {
        if self.n_min == 0 || self.n_min > self.n_max {
            return Err(Error::usage(format!(
                "need 1 <= n_min <= n_max, got {}..{}",
                self.n_min, self.n_max
            )));
        }
        for c in self.combos()? {
            // range and mode checks depend on the exponents only
            CheckSpec::new(self.check, self.n_for_check(), c.r, c.alpha, c.rprime, self.mode)?;
        }
        Ok(())
    }

    pub fn echo(&self) -> GridEcho {
        let s = |v: &[BigRational]| v.iter().map(|q| q.to_string()).collect();
        GridEcho {
            check: self.check.to_string(),
            n_min: self.n_min,
            n_max: self.n_max,
            r: s(&self.r),
            alpha: if self.check.uses_alpha() { s(&self.alpha) } else { Vec::new() },
            rprime: if self.check.uses_rprime() { s(&self.rprime) } else { Vec::new() },
            mode: self.mode,
            precision_start: self.policy.start_bits,
            precision_max: self.policy.max_bits,
        }
    }
}

/// Parses `p/q` or an integer. Decimals are rejected because grids must be exact.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.contains(['.', 'e', 'E']) {
        return Err(Error::usage(format!("'{s}' is not exact; write it as p/q")));
    }
    if let Some((_, den)) = t.split_once('/') {
        if den.trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(Error::usage(format!("'{s}' has a zero denominator")));
        }
    }
    t.parse::<BigRational>()
        .map_err(|_| Error::usage(format!("'{s}' is not a rational of the form p/q")))
}

/// Comma-separated list of [`parse_rational`] values.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse_rational).collect()
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    #[test]
    fn empty_lists_are_rejected() {
        let g = GridSpec::new(CheckName::Alzer, 1, 5, vec![]);
        assert!(matches!(g.validate(), Err(Error::Usage(_))));
        let g = GridSpec::new(CheckName::Theorem1, 1, 5, vec![rat(1, 1)]);
        assert!(g.validate().is_err());
    }

    #[test]
    fn n_bounds() {
        assert!(GridSpec::new(CheckName::Alzer, 0, 5, vec![rat(1, 1)]).validate().is_err());
        assert!(GridSpec::new(CheckName::Alzer, 6, 5, vec![rat(1, 1)]).validate().is_err());
    }

    #[test]
    fn exact_mode_needs_rational_values() {
        let g = GridSpec::new(CheckName::Theorem1, 1, 5, vec![rat(3, 2)])
            .alpha(vec![rat(2, 1)])
            .mode(ArithMode::Exact);
        assert!(g.validate().is_err());
        assert!(g.mode(ArithMode::Interval).validate().is_ok());
    }

    #[test]
    fn problem1_skips_reversed_pairs() {
        let g = GridSpec::new(CheckName::Problem1, 1, 2, vec![rat(1, 1), rat(2, 1)])
            .rprime(vec![rat(3, 2), rat(3, 1)]);
        let c = g.combos().unwrap();
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn combos_are_sorted_and_unique() {
        let g = GridSpec::new(CheckName::Alzer, 1, 2, vec![rat(2, 1), rat(1, 2), rat(2, 1)]);
        let c = g.combos().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].r, rat(1, 2));
    }
}
