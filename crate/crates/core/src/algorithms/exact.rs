//! Standard full-pool MBR.

use crate::algorithms::{argmax, single_candidate_selection, trace_record};
use crate::error::{Error, Result};
use crate::oracle::UtilityOracle;
use crate::selection::Selection;

/// Diagonal-free mean utility of every candidate over the full pool. This is
/// the ground truth every budgeted algorithm is scored against, so a short
/// budget is an error here, never a truncation.
pub fn exact_scores(oracle: &mut UtilityOracle) -> Result<Vec<f64>> {
    let n = oracle.len();
    if n == 1 {
        return Ok(vec![0.0]);
    }

    let mut needed = 0usize;
    for i in 0..n {
        for j in 0..n {
            if i != j && oracle.cached(i, j).is_none() {
                needed += 1;
            }
        }
    }
    // Under mirrored caching each uncached unordered pair was counted twice.
    let needed = if oracle.is_mirrored() { needed / 2 } else { needed };
    if needed > oracle.remaining() {
        let ledger = oracle.ledger();
        return Err(Error::BudgetExhausted {
            used: ledger.used(),
            budget: ledger.budget(),
        });
    }

    let mut scores = Vec::with_capacity(n);
    for h in 0..n {
        let mut sum = 0.0;
        for y in 0..n {
            if y != h {
                sum += oracle.score_pair(h, y)?;
            }
        }
        scores.push(sum / (n - 1) as f64);
    }
    Ok(scores)
}

/// Monte Carlo MBR over the full pool: chooses the candidate with the highest
/// diagonal-free mean utility, at a cost of N(N-1) evaluations (half that
/// under mirrored caching).
pub fn exact_mbr(oracle: &mut UtilityOracle) -> Result<Selection> {
    if oracle.len() == 1 {
        return Ok(single_candidate_selection());
    }
    let before = oracle.used();
    let scores = exact_scores(oracle)?;
    let estimates: Vec<(usize, f64)> = scores.iter().copied().enumerate().collect();
    let chosen = argmax(&estimates);
    let trace = vec![trace_record(
        0,
        (0..oracle.len()).collect(),
        Some(oracle.len()),
        estimates,
        vec![chosen],
    )];
    Ok(Selection::new(chosen, oracle.used() - before, trace))
}
