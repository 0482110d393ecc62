use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::grid::GridEcho;
use crate::error::{Error, Result};
use crate::numeric::{Outcome, Verdict};

pub const EXIT_ALL_HOLD: i32 = 0;
pub const EXIT_FINDINGS: i32 = 1;
pub const EXIT_INDETERMINATE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_IO: i32 = 74;

pub const CSV_HEADER: [&str; 10] = [
    "check",
    "n",
    "r",
    "alpha",
    "rprime",
    "outcome",
    "lhs",
    "rhs",
    "precision_bits",
    "advisory",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignInfo {
    /// Hash of the canonical grid; equal grids get equal ids.
    pub id: String,
    pub tool_version: String,
    pub check: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

/// One evaluated grid point. All values are exact strings: `p/q` for rationals and
/// `[lo,hi]` with exact dyadic endpoints for enclosures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub check: String,
    pub n: Option<u64>,
    pub r: String,
    pub alpha: Option<String>,
    pub rprime: Option<String>,
    pub outcome: Outcome,
    pub equality: bool,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub witness: Option<WitnessRecord>,
    pub precision_bits: u32,
    pub advisory: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covered_by_corollary1: Option<bool>,
}

impl Record {
    pub(crate) fn from_verdict(
        check: String,
        n: Option<u64>,
        params: (String, Option<String>, Option<String>),
        v: &Verdict,
    ) -> Self {
        let (lhs, rhs) = match &v.sides {
            Some((l, r)) => (Some(l.to_string()), Some(r.to_string())),
            None => (None, None),
        };
        Record {
            check,
            n,
            r: params.0,
            alpha: params.1,
            rprime: params.2,
            outcome: v.outcome,
            equality: v.equality,
            lhs,
            rhs,
            witness: v.witness.as_ref().map(|w| WitnessRecord {
                params: w.params.iter().cloned().collect(),
                lhs: w.lhs.to_string(),
                rhs: w.rhs.to_string(),
            }),
            precision_bits: v.precision_used,
            advisory: v.advisory,
            covered_by_corollary1: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub indeterminate: usize,
}

impl Summary {
    pub fn tally<'a>(records: impl IntoIterator<Item = &'a Record>) -> Self {
        let mut s = Summary::default();
        for r in records {
            match r.outcome {
                Outcome::Holds => s.holds += 1,
                Outcome::Fails => s.fails += 1,
                Outcome::Indeterminate => s.indeterminate += 1,
            }
        }
        s
    }

    /// 0 when everything holds, 1 when anything fails, 2 when only undecided points
    /// remain.
    pub fn exit_code(&self) -> i32 {
        if self.fails > 0 {
            EXIT_FINDINGS
        } else if self.indeterminate > 0 {
            EXIT_INDETERMINATE
        } else {
            EXIT_ALL_HOLD
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub campaign: CampaignInfo,
    pub grid: GridEcho,
    pub records: Vec<Record>,
    pub summary: Summary,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code()
    }

    pub fn findings(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.outcome == Outcome::Fails)
    }

    pub fn from_json(text: &str) -> Result<Report> {
        let report: Report =
            serde_json::from_str(text).map_err(|e| Error::Serialize(e.to_string()))?;
        if Summary::tally(&report.records) != report.summary {
            return Err(Error::usage("report summary does not match its records"));
        }
        Ok(report)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self).map_err(|e| Error::Serialize(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let ser = |e: csv::Error| Error::Serialize(e.to_string());
        w.write_record(CSV_HEADER).map_err(ser)?;
        for r in &self.records {
            let opt = |v: &Option<String>| v.clone().unwrap_or_default();
            w.write_record([
                r.check.clone(),
                r.n.map(|n| n.to_string()).unwrap_or_default(),
                r.r.clone(),
                opt(&r.alpha),
                opt(&r.rprime),
                r.outcome.to_string(),
                opt(&r.lhs),
                opt(&r.rhs),
                r.precision_bits.to_string(),
                r.advisory.to_string(),
            ])
            .map_err(ser)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Serialize(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Serialize(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(Error::usage(format!("unknown format '{other}' (json or csv)"))),
        }
    }
}

/// Writes the report to `dest`, or to standard output when `dest` is `None`.
pub fn emit_report(report: &Report, format: Format, dest: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Json => report.to_json()?,
        Format::Csv => report.to_csv()?,
    };
    match dest {
        Some(path) => {
            let mut f = File::create(path)?;
            f.write_all(text.as_bytes())?;
            f.flush()?;
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(())
}
