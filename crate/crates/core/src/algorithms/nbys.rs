//! N-by-S: all candidates scored against a random reference subsample.

use crate::algorithms::{argmax, cached_mean, single_candidate_selection, trace_record, RunScorer};
use crate::error::{Error, Result};
use crate::oracle::UtilityOracle;
use crate::rng::RngStream;
use crate::selection::Selection;

/// Scores all N candidates against `S' = ceil(T / (N-1))` references drawn
/// uniformly without replacement, then picks the best subsample mean.
///
/// `(N-1) S'` is the smallest subsample cost covering `T`, so the last few
/// pairs may not fit; evaluation stops at the cap and candidates keep
/// whatever references they were scored against.
pub fn nbys(oracle: &mut UtilityOracle, budget: usize, rng: &mut RngStream) -> Result<Selection> {
    let n = oracle.len();
    if n == 1 {
        return Ok(single_candidate_selection());
    }
    if budget < n - 1 {
        return Err(Error::BudgetTooSmall {
            budget,
            required: n - 1,
        });
    }

    let subsample = budget.div_ceil(n - 1).min(n);
    let pool: Vec<usize> = (0..n).collect();
    let refs = rng.sample_without_replacement(&pool, subsample);

    let mut scorer = RunScorer::new(oracle, budget);
    'eval: for h in 0..n {
        for &y in &refs {
            if y == h {
                continue;
            }
            if scorer.try_score(h, y)?.is_none() {
                break 'eval;
            }
        }
    }

    let spent = scorer.spent();
    let estimates: Vec<(usize, f64)> = (0..n).map(|h| (h, cached_mean(oracle, h, &refs))).collect();
    let chosen = argmax(&estimates);
    let trace = vec![trace_record(
        0,
        refs,
        Some(subsample),
        estimates,
        vec![chosen],
    )];
    Ok(Selection::new(chosen, spent, trace))
}
