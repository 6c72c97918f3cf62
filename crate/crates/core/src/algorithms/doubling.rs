//! The doubling trick: rerun with doubled budgets until two consecutive
//! answers agree.

use crate::algorithms::ambr;
use crate::error::{Error, Result};
use crate::oracle::UtilityOracle;
use crate::rng::RngStream;
use crate::selection::{Selection, TraceRecord};

/// Runs adaptive halving at budgets `T0, 2 T0, 4 T0, ...` (each run on a
/// fresh rng substream, all sharing this oracle's cache so repeated pairs are
/// free) and returns the first result whose chosen index matches its
/// predecessor's. If no two consecutive runs agree before the schedule
/// passes `cap`, the last run is returned flagged "unconverged"; agreement
/// flags "converged". `evals_used` sums every run's charges.
pub fn doubling_trick(
    oracle: &mut UtilityOracle,
    initial_budget: usize,
    cap: usize,
    rng: &RngStream,
) -> Result<Selection> {
    if initial_budget == 0 || initial_budget > cap {
        return Err(Error::BudgetTooSmall {
            budget: cap,
            required: initial_budget.max(1),
        });
    }

    let start_used = oracle.used();
    if oracle.len() == 1 {
        let mut selection = ambr(oracle, initial_budget, &mut rng.substream(0))?;
        selection.evals_used = oracle.used() - start_used;
        push_flag(&mut selection, true);
        return Ok(selection);
    }

    let mut run_budget = initial_budget;
    let mut run_index = 0u64;
    let mut previous = ambr(oracle, run_budget, &mut rng.substream(run_index))?;
    loop {
        let Some(next_budget) = run_budget.checked_mul(2).filter(|&b| b <= cap) else {
            previous.evals_used = oracle.used() - start_used;
            push_flag(&mut previous, false);
            return Ok(previous);
        };
        run_budget = next_budget;
        run_index += 1;
        let current = ambr(oracle, run_budget, &mut rng.substream(run_index))?;
        if current.chosen == previous.chosen {
            let mut selection = current;
            selection.evals_used = oracle.used() - start_used;
            push_flag(&mut selection, true);
            return Ok(selection);
        }
        previous = current;
    }
}

fn push_flag(selection: &mut Selection, converged: bool) {
    let iteration = selection.trace.len();
    selection.trace.push(TraceRecord {
        iteration,
        refs_added: Vec::new(),
        target_refs: None,
        estimates: Vec::new(),
        survivors: vec![selection.chosen],
        note: Some(if converged { "converged" } else { "unconverged" }.into()),
    });
}
