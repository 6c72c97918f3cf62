//! Reward-weighted MBR.

use crate::algorithms::{argmax, single_candidate_selection, trace_record};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::UtilityOracle;
use crate::selection::Selection;

/// Picks the candidate maximizing the diagonal-free mean of
/// `u(h, y) * R(y)` over the pool, where `R` is the per-candidate reward.
/// Like [`exact_mbr`](crate::algorithms::exact_mbr) this needs the full pair
/// grid, so a short budget is an error.
pub fn reward_mbr(instance: &Instance, oracle: &mut UtilityOracle) -> Result<Selection> {
    let rewards = instance.rewards.as_ref().ok_or(Error::MissingRewards)?;
    let n = oracle.len();
    if rewards.len() != n {
        return Err(Error::LengthMismatch {
            left: rewards.len(),
            right: n,
        });
    }
    if n == 1 {
        return Ok(single_candidate_selection());
    }

    let mut needed = 0usize;
    for i in 0..n {
        for j in 0..n {
            if i != j && oracle.cached(i, j).is_none() {
                needed += 1;
            }
        }
    }
    let needed = if oracle.is_mirrored() { needed / 2 } else { needed };
    if needed > oracle.remaining() {
        let ledger = oracle.ledger();
        return Err(Error::BudgetExhausted {
            used: ledger.used(),
            budget: ledger.budget(),
        });
    }

    let before = oracle.used();
    let mut estimates = Vec::with_capacity(n);
    for h in 0..n {
        let mut sum = 0.0;
        for y in 0..n {
            if y != h {
                sum += oracle.score_pair(h, y)? * rewards[y];
            }
        }
        estimates.push((h, sum / (n - 1) as f64));
    }
    let chosen = argmax(&estimates);
    let trace = vec![trace_record(
        0,
        (0..n).collect(),
        Some(n),
        estimates,
        vec![chosen],
    )];
    Ok(Selection::new(chosen, oracle.used() - before, trace))
}
