use std::cell::RefCell;
use std::collections::HashMap;

use num_rational::BigRational;

use crate::error::Result;
use crate::numeric::{Mode, Scalar};
use crate::powersum::{self, PowerSumCache};

/// Lazily evaluated power-sum quantities, memoized per arithmetic mode.
///
/// Comparisons re-evaluate their sides at increasing precision, so every mode gets
/// its own [`PowerSumCache`]. An evaluator is single-threaded; parallel campaigns give
/// each worker its own.
#[derive(Debug, Default)]
pub struct Evaluator {
    caches: RefCell<HashMap<Mode, PowerSumCache>>,
    p_values: RefCell<HashMap<(u64, BigRational, Mode), Scalar>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cache<T>(
        &self,
        mode: Mode,
        f: impl FnOnce(&mut PowerSumCache) -> Result<T>,
    ) -> Result<T> {
        let mut caches = self.caches.borrow_mut();
        let cache = caches
            .entry(mode)
            .or_insert_with(|| PowerSumCache::new(mode));
        f(cache)
    }

    pub fn power_sum(&self, n: u64, r: &BigRational, mode: Mode) -> Result<Scalar> {
        self.with_cache(mode, |c| c.power_sum(n, r))
    }

    pub fn p_ratio(&self, n: u64, r: &BigRational, mode: Mode) -> Result<Scalar> {
        let key = (n, r.clone(), mode);
        if let Some(v) = self.p_values.borrow().get(&key) {
            return Ok(v.clone());
        }
        let v = self.with_cache(mode, |c| powersum::p_ratio(c, n, r))?;
        self.p_values.borrow_mut().insert(key, v.clone());
        Ok(v)
    }

    pub fn power_ratio_term(
        &self,
        n: u64,
        r: &BigRational,
        alpha: &BigRational,
        mode: Mode,
    ) -> Result<Scalar> {
        self.with_cache(mode, |c| powersum::power_ratio_term(c, n, r, alpha))
    }
}
