//! Grid evaluation over `(n, m)`: formula, construction, paper-literal
//! violation count and, for small instances, the exact optimum.

use std::ops::RangeInclusive;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::{check_theorem_range, closed_form_rn, construct_best_on, Parity, DEFAULT_SEEDS};
use crate::error::{Error, Result};
use crate::graphs::{all_pairs_distances, star_cycle_product};
use crate::solver::exact::{branch_and_bound, ExactStatus};

pub const SWEEP_CSV_HEADER: &str =
    "n,m,parity,formula_rn,constructed_span,paper_literal_violations,exact_rn,exact_status,elapsed_ms";

#[derive(Debug, Clone)]
pub struct SweepOptions {
    pub jobs: usize,
    /// Exact search runs only when `(n + 1) * m` is at most this.
    pub exact_vertex_cap: usize,
    pub budget: Duration,
    pub seeds: Vec<u64>,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self {
            jobs: 1,
            exact_vertex_cap: 15,
            budget: Duration::from_secs(60),
            seeds: DEFAULT_SEEDS.to_vec(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowStatus {
    Proven,
    BudgetExceeded,
    Skipped,
}

impl From<ExactStatus> for RowStatus {
    fn from(status: ExactStatus) -> Self {
        match status {
            ExactStatus::Proven => RowStatus::Proven,
            ExactStatus::BudgetExceededUpperBound => RowStatus::BudgetExceeded,
        }
    }
}

/// One CSV row. Field order is the column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub n: usize,
    pub m: usize,
    pub parity: Parity,
    pub formula_rn: u64,
    pub constructed_span: u64,
    pub paper_literal_violations: usize,
    pub exact_rn: Option<u64>,
    pub exact_status: RowStatus,
    pub elapsed_ms: Option<u64>,
}

impl SweepRecord {
    /// `formula_rn − exact_rn` when the optimum is proven.
    pub fn formula_delta(&self) -> Option<i64> {
        match (self.exact_status, self.exact_rn) {
            (RowStatus::Proven, Some(exact)) => Some(self.formula_rn as i64 - exact as i64),
            _ => None,
        }
    }
}

/// In-range `(n, m)` pairs in ascending order.
pub fn grid(n_range: RangeInclusive<usize>, m_range: RangeInclusive<usize>) -> Vec<(usize, usize)> {
    n_range
        .flat_map(|n| m_range.clone().map(move |m| (n, m)))
        .filter(|&(n, m)| check_theorem_range(n, m).is_ok())
        .collect()
}

pub fn sweep(
    n_range: RangeInclusive<usize>,
    m_range: RangeInclusive<usize>,
    options: &SweepOptions,
) -> Result<Vec<SweepRecord>> {
    let cells = grid(n_range.clone(), m_range.clone());
    if cells.is_empty() {
        return Err(Error::Usage(format!(
            "grid n in {}..{}, m in {}..{} has no pair with n >= 2 and m >= 4",
            n_range.start(),
            n_range.end(),
            m_range.start(),
            m_range.end()
        )));
    }
    if options.jobs == 0 {
        return Err(Error::Usage("jobs must be at least 1".into()));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .map_err(|e| Error::Usage(format!("cannot start worker pool: {e}")))?;

    pool.install(|| cells.par_iter().map(|&(n, m)| evaluate(n, m, options)).collect())
}

fn evaluate(n: usize, m: usize, options: &SweepOptions) -> Result<SweepRecord> {
    let start = Instant::now();
    let formula = closed_form_rn(n, m)?;
    let graph = star_cycle_product(n, m)?;
    let dm = all_pairs_distances(&graph)?;
    let report = construct_best_on(&dm, n, m, &options.seeds)?;

    let (exact_rn, exact_status) = if graph.vertex_count() <= options.exact_vertex_cap {
        let result = branch_and_bound(&dm, report.labeling.clone(), options.budget);
        (Some(result.optimum), result.status.into())
    } else {
        (None, RowStatus::Skipped)
    };

    Ok(SweepRecord {
        n,
        m,
        parity: formula.parity,
        formula_rn: formula.value,
        constructed_span: report.achieved_span,
        paper_literal_violations: report.paper_literal_violations,
        exact_rn,
        exact_status,
        elapsed_ms: Some(start.elapsed().as_millis() as u64),
    })
}

/// Renders records as CSV. With `timings` off the `elapsed_ms` column is
/// left empty so identical runs produce identical bytes.
pub fn sweep_csv(records: &[SweepRecord], timings: bool) -> Result<String> {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    for record in records {
        let mut row = record.clone();
        if !timings {
            row.elapsed_ms = None;
        }
        writer.serialize(row).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let body = writer.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    let body = String::from_utf8(body).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(format!("{SWEEP_CSV_HEADER}\n{body}"))
}

pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRecord>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| Error::Parse(format!("sweep CSV: {e}")))?;
    let header: Vec<&str> = header.iter().collect();
    if header.join(",") != SWEEP_CSV_HEADER {
        return Err(Error::Parse(format!(
            "sweep CSV: header must be '{SWEEP_CSV_HEADER}', found '{}'",
            header.join(",")
        )));
    }
    reader
        .deserialize()
        .enumerate()
        .map(|(i, row)| row.map_err(|e| Error::Parse(format!("sweep CSV row {}: {e}", i + 1))))
        .collect()
}
