//! Exhaustive scale-value search per target circulant size.
//!
//! For each candidate `r` the lifted matrix is scored by girth (higher is
//! better), then by the number of cycle-forming chains at the girth length
//! (fewer is better), then by the scale value itself (smaller wins). The
//! floor lifting result (`r = 1`) is kept alongside as the baseline.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use num::integer::gcd;
use rayon::prelude::*;

use crate::cycles::{shortest_cycles, Girth};
use crate::error::{Error, Result};
use crate::lift::{floor_lift, fsm_lift};
use crate::matrix::ExponentMatrix;

/// Which scale values to try: units of `Z_{L0}` or every `0 < r < L0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateSet {
    Units,
    All,
}

impl fmt::Display for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CandidateSet::Units => write!(f, "units"),
            CandidateSet::All => write!(f, "all"),
        }
    }
}

impl FromStr for CandidateSet {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "units" => Ok(CandidateSet::Units),
            "all" => Ok(CandidateSet::All),
            other => Err(format!("unknown candidate set `{other}`")),
        }
    }
}

/// The winning scale value for one target size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOutcome {
    pub scale: i64,
    pub girth: Girth,
    pub cycles: u64,
}

/// One schedule row: search winner plus the floor-lifting baseline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScheduleRow {
    pub target: i64,
    pub best: SearchOutcome,
    pub baseline_girth: Girth,
    pub baseline_cycles: u64,
}

/// Search results for a list of target sizes derived from one base matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftSchedule {
    pub base_digest: String,
    pub base_rows: usize,
    pub base_cols: usize,
    pub base_size: i64,
    pub max_len: usize,
    pub candidates: CandidateSet,
    pub rows: Vec<ScheduleRow>,
}

fn candidate_values(base: i64, set: CandidateSet) -> Vec<i64> {
    match set {
        CandidateSet::Units => (1..base).filter(|&r| gcd(r, base) == 1).collect(),
        CandidateSet::All => (1..base).collect(),
    }
}

/// Finds the scale value whose lift maximizes girth, breaking ties by the
/// cycle count at girth and then by the smallest scale. Deterministic
/// regardless of evaluation order.
pub fn search_optimal_r(
    matrix: &ExponentMatrix,
    target: i64,
    max_len: usize,
    candidates: CandidateSet,
) -> Result<SearchOutcome> {
    let base = matrix.circulant_size();
    if target < 1 || target > base {
        return Err(Error::BadTargetSize { target, base });
    }
    let values = candidate_values(base, candidates);
    if values.is_empty() {
        return Err(Error::NoScaleCandidates { base });
    }
    let outcomes: Vec<SearchOutcome> = values
        .par_iter()
        .map(|&scale| -> Result<SearchOutcome> {
            let lifted = fsm_lift(matrix, target, scale)?;
            let (girth, cycles) = shortest_cycles(&lifted, max_len)?;
            Ok(SearchOutcome {
                scale,
                girth,
                cycles,
            })
        })
        .collect::<Result<_>>()?;
    Ok(outcomes
        .into_iter()
        .min_by_key(|o| (Reverse(o.girth), o.cycles, o.scale))
        .expect("candidate list is non-empty"))
}

/// Runs the search for every target and records the floor baseline.
pub fn build_schedule(
    matrix: &ExponentMatrix,
    targets: &[i64],
    max_len: usize,
    candidates: CandidateSet,
) -> Result<LiftSchedule> {
    let mut rows = Vec::with_capacity(targets.len());
    for &target in targets {
        let best = search_optimal_r(matrix, target, max_len, candidates)?;
        let baseline = floor_lift(matrix, target)?;
        let (baseline_girth, baseline_cycles) = shortest_cycles(&baseline, max_len)?;
        rows.push(ScheduleRow {
            target,
            best,
            baseline_girth,
            baseline_cycles,
        });
    }
    Ok(LiftSchedule {
        base_digest: matrix.sha256_hex(),
        base_rows: matrix.rows(),
        base_cols: matrix.cols(),
        base_size: matrix.circulant_size(),
        max_len,
        candidates,
        rows,
    })
}
