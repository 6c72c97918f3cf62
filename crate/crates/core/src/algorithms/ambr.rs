//! Adaptive MBR: correlated sequential halving over the MBR objective.
//!
//! The candidate set is halved over `ceil(log2 N)` rounds. Round `i` grows
//! the shared reference set to
//! `t_i = min(max(floor(T / (|H_i| ceil(log2 N))), 1), N)`
//! and ranks the active candidates by their diagonal-free mean utility over
//! it; the top half survives. If the schedule ever reaches `t_i = N` the
//! round has scored everything that matters and the best candidate is
//! returned immediately.
//!
//! Two variants share the engine and differ only in how round `i` treats the
//! previous reference set: [`ambr`] keeps it and tops it up to `t_i`
//! (references stay correlated across rounds), while [`ambr_replace`] draws a
//! fresh size-`t_i` sample from the full pool each round, the form the
//! fixed-budget identification guarantee is proven for. Replaced references
//! drop out of the estimate but their cached pairs stay free.

use crate::algorithms::{argmax, cached_mean, ceil_log2, single_candidate_selection, trace_record, RunScorer};
use crate::error::Result;
use crate::oracle::UtilityOracle;
use crate::rng::RngStream;
use crate::selection::Selection;

#[derive(Clone, Copy, PartialEq, Eq)]
enum RefRule {
    Union,
    Replace,
}

/// Sequential halving with correlated (accumulating) references.
pub fn ambr(oracle: &mut UtilityOracle, budget: usize, rng: &mut RngStream) -> Result<Selection> {
    halving(oracle, budget, rng, RefRule::Union)
}

/// Sequential halving with a fresh reference sample every round.
pub fn ambr_replace(
    oracle: &mut UtilityOracle,
    budget: usize,
    rng: &mut RngStream,
) -> Result<Selection> {
    halving(oracle, budget, rng, RefRule::Replace)
}

fn halving(
    oracle: &mut UtilityOracle,
    budget: usize,
    rng: &mut RngStream,
    rule: RefRule,
) -> Result<Selection> {
    let n = oracle.len();
    if n == 1 {
        return Ok(single_candidate_selection());
    }
    let rounds = ceil_log2(n);
    let mut active: Vec<usize> = (0..n).collect();
    let mut refs: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let mut scorer = RunScorer::new(oracle, budget);

    for iteration in 0..rounds {
        let target = (budget / (active.len() * rounds)).clamp(1, n);
        let added = match rule {
            RefRule::Union => {
                if target > refs.len() {
                    let unseen: Vec<usize> =
                        (0..n).filter(|y| !refs.contains(y)).collect();
                    let drawn =
                        rng.sample_without_replacement(&unseen, target - refs.len());
                    refs.extend(drawn.iter().copied());
                    drawn
                } else {
                    Vec::new()
                }
            }
            RefRule::Replace => {
                let pool: Vec<usize> = (0..n).collect();
                refs = rng.sample_without_replacement(&pool, target);
                refs.clone()
            }
        };

        // Candidate-major, reference-minor, until the budget blocks. Pairs
        // already cached (survivors against earlier references) stay free.
        let mut truncated = false;
        'eval: for &h in &active {
            let to_score: &[usize] = match rule {
                RefRule::Union => &added,
                RefRule::Replace => &refs,
            };
            for &y in to_score {
                if y == h {
                    continue;
                }
                if scorer.try_score(h, y)?.is_none() {
                    truncated = true;
                    break 'eval;
                }
            }
        }

        let estimates: Vec<(usize, f64)> = active
            .iter()
            .map(|&h| (h, cached_mean(scorer.oracle(), h, &refs)))
            .collect();

        if truncated || target == n {
            let chosen = argmax(&estimates);
            trace.push(trace_record(
                iteration,
                added,
                Some(target),
                estimates,
                vec![chosen],
            ));
            return Ok(Selection::new(chosen, scorer.spent(), trace));
        }

        let keep = active.len().div_ceil(2);
        let mut ranked = estimates.clone();
        ranked.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let mut survivors: Vec<usize> = ranked[..keep].iter().map(|&(h, _)| h).collect();
        survivors.sort_unstable();

        trace.push(trace_record(
            iteration,
            added,
            Some(target),
            estimates,
            survivors.clone(),
        ));
        active = survivors;
    }

    // ceil(log2 N) halvings always reduce the active set to one candidate.
    let chosen = active[0];
    Ok(Selection::new(chosen, scorer.spent(), trace))
}
