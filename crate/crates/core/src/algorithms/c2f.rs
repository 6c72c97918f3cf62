//! Coarse-to-fine: cheap-metric prefiltering before fine MBR.

use crate::algorithms::{
    argmax, cached_mean, exact_scores, single_candidate_selection, trace_record, RunScorer,
};
use crate::error::{Error, Result};
use crate::oracle::UtilityOracle;
use crate::selection::Selection;

/// Ranks all candidates by their full-pool coarse mean utility, keeps the top
/// `N' = ceil(T / (N-1))`, then selects among them by fine mean utility
/// against the full pool. Only fine evaluations are charged against `budget`;
/// the coarse stage spends its own oracle's ledger and its cost is reported
/// in the trace.
pub fn coarse_to_fine(
    coarse: &mut UtilityOracle,
    fine: &mut UtilityOracle,
    budget: usize,
) -> Result<Selection> {
    let n = fine.len();
    if coarse.len() != n {
        return Err(Error::LengthMismatch {
            left: coarse.len(),
            right: n,
        });
    }
    if n == 1 {
        return Ok(single_candidate_selection());
    }
    if budget < n - 1 {
        return Err(Error::BudgetTooSmall {
            budget,
            required: n - 1,
        });
    }

    let coarse_before = coarse.used();
    let coarse_scores = exact_scores(coarse)?;
    let coarse_spent = coarse.used() - coarse_before;

    let keep = budget.div_ceil(n - 1).min(n);
    let mut ranked: Vec<(usize, f64)> = coarse_scores.iter().copied().enumerate().collect();
    ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut survivors: Vec<usize> = ranked[..keep].iter().map(|&(h, _)| h).collect();
    survivors.sort_unstable();

    let pool: Vec<usize> = (0..n).collect();
    let mut scorer = RunScorer::new(fine, budget);
    'eval: for &h in &survivors {
        for y in 0..n {
            if y == h {
                continue;
            }
            if scorer.try_score(h, y)?.is_none() {
                break 'eval;
            }
        }
    }
    let fine_spent = scorer.spent();

    let estimates: Vec<(usize, f64)> = survivors
        .iter()
        .map(|&h| (h, cached_mean(fine, h, &pool)))
        .collect();
    let chosen = argmax(&estimates);

    let coarse_estimates: Vec<(usize, f64)> =
        coarse_scores.iter().copied().enumerate().collect();
    let mut coarse_record = trace_record(
        0,
        Vec::new(),
        Some(keep),
        coarse_estimates,
        survivors.clone(),
    );
    coarse_record.note = Some(format!("coarse_evals={coarse_spent}"));
    let fine_record = trace_record(1, pool, Some(n), estimates, vec![chosen]);

    Ok(Selection::new(
        chosen,
        fine_spent,
        vec![coarse_record, fine_record],
    ))
}
