//! Candidate-selection procedures.
//!
//! Every algorithm here answers the same question: given a pool of N
//! hypotheses that double as references and a cap on pairwise utility
//! evaluations, which candidate has the highest mean utility over the pool?
//! `exact_mbr` answers it exactly at full cost; the rest trade evaluations
//! for error in different ways.
//!
//! Shared conventions:
//! - Self-pairs are never scored; all means are diagonal-free.
//! - Ties in any argmax break toward the lowest candidate index.
//! - A run never issues a new evaluation past its budget; when a budget runs
//!   out mid-iteration the run truncates and returns the current best guess.
//! - `(instance, budget, seed)` fully determines the returned [`Selection`],
//!   including its trace.

mod aggregation;
mod ambr;
mod c2f;
mod cbp;
mod doubling;
mod exact;
mod medoid;
mod nbys;
mod reward;

pub use aggregation::reference_aggregation;
pub use ambr::{ambr, ambr_replace};
pub use c2f::coarse_to_fine;
pub use cbp::{cbp, CbpConfig};
pub use doubling::doubling_trick;
pub use exact::{exact_mbr, exact_scores};
pub use medoid::medoid;
pub use nbys::nbys;
pub use reward::reward_mbr;

use crate::error::Result;
use crate::oracle::UtilityOracle;
use crate::selection::{Selection, TraceRecord};

/// Index of the largest score, lowest index winning ties. `scored` must be
/// ascending by candidate index (every caller builds it that way).
pub(crate) fn argmax(scored: &[(usize, f64)]) -> usize {
    let mut best = scored[0];
    for &(idx, v) in &scored[1..] {
        if v > best.1 {
            best = (idx, v);
        }
    }
    best.0
}

/// Smallest L with 2^L >= n; 0 for n <= 1.
pub(crate) fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Diagonal-free mean of the cached values of `(h, y)` over `y in refs`.
/// Pairs missing from the cache (budget truncation) shrink the denominator;
/// a candidate with no scored reference ranks below everything.
pub(crate) fn cached_mean(oracle: &UtilityOracle, h: usize, refs: &[usize]) -> f64 {
    let mut sum = 0.0;
    let mut count = 0usize;
    for &y in refs {
        if y == h {
            continue;
        }
        if let Some(v) = oracle.cached(h, y) {
            sum += v;
            count += 1;
        }
    }
    if count == 0 {
        f64::NEG_INFINITY
    } else {
        sum / count as f64
    }
}

/// Per-run budget guard. Enforces both the oracle's ledger and this run's own
/// cap `limit`, counting only evaluations charged since the guard was built.
/// Cached pairs stay free at any budget.
pub(crate) struct RunScorer<'a> {
    oracle: &'a mut UtilityOracle,
    limit: usize,
    start_used: usize,
}

impl<'a> RunScorer<'a> {
    pub(crate) fn new(oracle: &'a mut UtilityOracle, limit: usize) -> Self {
        let start_used = oracle.used();
        RunScorer {
            oracle,
            limit,
            start_used,
        }
    }

    /// Evaluations charged by this run so far.
    pub(crate) fn spent(&self) -> usize {
        self.oracle.used() - self.start_used
    }

    /// `Ok(None)` once either the run cap or the ledger blocks a new pair.
    pub(crate) fn try_score(&mut self, i: usize, j: usize) -> Result<Option<f64>> {
        self.oracle.validate_pair(i, j)?;
        if self.oracle.cached(i, j).is_some() {
            return self.oracle.try_score_pair(i, j);
        }
        if self.spent() >= self.limit {
            return Ok(None);
        }
        self.oracle.try_score_pair(i, j)
    }

    pub(crate) fn oracle(&self) -> &UtilityOracle {
        self.oracle
    }
}

/// Trivial run over a single-candidate pool.
pub(crate) fn single_candidate_selection() -> Selection {
    Selection::new(0, 0, Vec::new())
}

/// The halving shape of an adaptive run, lifted from its trace: per iteration
/// the number of active candidates, the number of survivors, the scheduled
/// reference count, and how many references were actually added.
#[derive(Debug, Clone, PartialEq)]
pub struct HalvingStep {
    pub iteration: usize,
    pub active: usize,
    pub survivors: usize,
    pub target_refs: Option<usize>,
    pub refs_added: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HalvingSchedule {
    steps: Vec<HalvingStep>,
}

impl HalvingSchedule {
    pub fn from_selection(selection: &Selection) -> Self {
        let steps = selection
            .trace
            .iter()
            .map(|r| HalvingStep {
                iteration: r.iteration,
                active: r.active_len(),
                survivors: r.survivors.len(),
                target_refs: r.target_refs,
                refs_added: r.refs_added.len(),
            })
            .collect();
        HalvingSchedule { steps }
    }

    pub fn steps(&self) -> &[HalvingStep] {
        &self.steps
    }

    /// Checks the sequential-halving invariants: survivors carry over as the
    /// next iteration's active set, every non-terminal iteration keeps
    /// exactly `ceil(active/2)` candidates, and scheduled reference counts
    /// never decrease. The last iteration is exempt from the halving rule
    /// because early returns collapse straight to one winner.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for pair in self.steps.windows(2) {
            if pair[1].active != pair[0].survivors {
                return Err(format!(
                    "iteration {} starts with {} candidates but {} survived iteration {}",
                    pair[1].iteration, pair[1].active, pair[0].survivors, pair[0].iteration
                ));
            }
        }
        for (pos, step) in self.steps.iter().enumerate() {
            let terminal = pos + 1 == self.steps.len();
            if !terminal && step.survivors != step.active.div_ceil(2) {
                return Err(format!(
                    "iteration {} kept {} of {} candidates, expected {}",
                    step.iteration,
                    step.survivors,
                    step.active,
                    step.active.div_ceil(2)
                ));
            }
        }
        let targets: Vec<usize> = self.steps.iter().filter_map(|s| s.target_refs).collect();
        for pair in targets.windows(2) {
            if pair[1] < pair[0] {
                return Err(format!(
                    "reference schedule decreased from {} to {}",
                    pair[0], pair[1]
                ));
            }
        }
        Ok(())
    }
}

pub(crate) fn trace_record(
    iteration: usize,
    refs_added: Vec<usize>,
    target_refs: Option<usize>,
    estimates: Vec<(usize, f64)>,
    survivors: Vec<usize>,
) -> TraceRecord {
    TraceRecord {
        iteration,
        refs_added,
        target_refs,
        estimates,
        survivors,
        note: None,
    }
}
