//! Campaigns: a check evaluated over a parameter grid, collected into a report.

mod grid;
mod report;

use std::time::Instant;

use num_rational::BigRational;
use rayon::prelude::*;
use sha2::{Digest, Sha256};

use crate::engine::{check_named_with, scan_problem1, CheckName, Evaluator};
use crate::error::{Error, Result};

pub use grid::{parse_rational, parse_rational_list, GridEcho, GridSpec};
pub use report::{
    emit_report, CampaignInfo, Format, Record, Report, Summary, WitnessRecord, CSV_HEADER,
    EXIT_ALL_HOLD, EXIT_FINDINGS, EXIT_INDETERMINATE, EXIT_IO, EXIT_USAGE,
};

type SortKey = (Option<u64>, BigRational, Option<BigRational>, Option<BigRational>);

fn campaign_id(echo: &GridEcho) -> Result<String> {
    let canonical = serde_json::to_string(echo).map_err(|e| Error::Serialize(e.to_string()))?;
    let digest = Sha256::digest(canonical.as_bytes());
    Ok(digest[..8].iter().map(|b| format!("{b:02x}")).collect())
}

/// Evaluates every point of the grid once. Combinations of exponents run in parallel;
/// the records come back sorted by `(n, r, alpha, rprime)` regardless of scheduling.
pub fn run_campaign(grid: &GridSpec) -> Result<Report> {
    let start = Instant::now();
    grid.validate()?;
    let cfg = grid.config();
    let check = grid.check.to_string();
    let mut keyed: Vec<(SortKey, Record)> = if grid.check == CheckName::Problem1 {
        let pairs: Vec<_> = grid
            .combos()?
            .into_iter()
            .map(|c| (c.r, c.rprime.expect("problem1 has rprime")))
            .collect();
        let scan = scan_problem1(grid.n_min..=grid.n_max, &pairs, &cfg)?;
        scan.records
            .into_iter()
            .map(|s| {
                let mut rec = Record::from_verdict(
                    check.clone(),
                    Some(s.n),
                    (s.r.to_string(), None, Some(s.rprime.to_string())),
                    &s.verdict,
                );
                rec.covered_by_corollary1 = Some(s.covered_by_corollary1);
                ((Some(s.n), s.r, None, Some(s.rprime)), rec)
            })
            .collect()
    } else {
        let combos = grid.combos()?;
        let chunks: Vec<Result<Vec<(SortKey, Record)>>> = combos
            .par_iter()
            .map(|combo| {
                let ev = Evaluator::new();
                let mut out = Vec::new();
                for spec in grid.specs_for(combo)? {
                    let v = check_named_with(&ev, &spec, &cfg)?;
                    let params = (
                        spec.r.to_string(),
                        spec.alpha.as_ref().map(|a| a.to_string()),
                        spec.rprime.as_ref().map(|a| a.to_string()),
                    );
                    let rec = Record::from_verdict(check.clone(), spec.n, params, &v);
                    out.push(((spec.n, spec.r, spec.alpha, spec.rprime), rec));
                }
                Ok(out)
            })
            .collect();
        let mut all = Vec::new();
        for c in chunks {
            all.extend(c?);
        }
        all
    };
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let records: Vec<Record> = keyed.into_iter().map(|(_, r)| r).collect();
    let echo = grid.echo();
    Ok(Report {
        campaign: CampaignInfo {
            id: campaign_id(&echo)?,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            check,
        },
        grid: echo,
        summary: Summary::tally(&records),
        records,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}
