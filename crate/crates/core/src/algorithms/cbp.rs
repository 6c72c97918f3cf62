//! Confidence-based pruning.
//!
//! References are revealed from the pool in a seeded shuffle order on the
//! doubling schedule `r_i = 2^i r0`. Each iteration scores the active
//! candidates against the newly revealed references, names the incumbent
//! (best diagonal-free mean so far), and prunes every candidate whose
//! bootstrap win ratio against the incumbent falls below `1 - alpha`.

use crate::algorithms::{argmax, cached_mean, single_candidate_selection, trace_record, RunScorer};
use crate::error::{Error, Result};
use crate::oracle::UtilityOracle;
use crate::rng::RngStream;
use crate::selection::Selection;

/// Hyperparameters: `r0` references at the first iteration, win-ratio
/// threshold `alpha`, and the number of bootstrap reference sets.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CbpConfig {
    pub r0: usize,
    pub alpha: f64,
    pub bootstrap_sets: usize,
}

impl Default for CbpConfig {
    fn default() -> Self {
        CbpConfig {
            r0: 1,
            alpha: 0.99,
            bootstrap_sets: 500,
        }
    }
}

impl CbpConfig {
    pub fn validate(&self) -> Result<()> {
        if self.r0 == 0 {
            return Err(Error::InvalidField {
                field: "r0",
                detail: "must be at least 1".into(),
            });
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(Error::InvalidField {
                field: "alpha",
                detail: format!("must lie in (0, 1], got {}", self.alpha),
            });
        }
        if self.bootstrap_sets == 0 {
            return Err(Error::InvalidField {
                field: "bootstrap_sets",
                detail: "must be at least 1".into(),
            });
        }
        Ok(())
    }
}

/// Win ratio of each active candidate against the incumbent over
/// with-replacement resamples of the revealed references. Each resample has
/// `pool_len` draws shared by all candidates; comparisons use diagonal-free
/// means so a candidate is never judged by its own self-pair, and ties count
/// as wins.
fn win_ratios(
    oracle: &UtilityOracle,
    active: &[usize],
    refs: &[usize],
    incumbent_pos: usize,
    pool_len: usize,
    sets: usize,
    rng: &mut RngStream,
) -> Vec<f64> {
    // utilities[a][k] = u(active[a], refs[k]); NaN marks the self-pair hole.
    let utilities: Vec<Vec<f64>> = active
        .iter()
        .map(|&h| {
            refs.iter()
                .map(|&y| {
                    if y == h {
                        f64::NAN
                    } else {
                        oracle.cached(h, y).unwrap_or(f64::NAN)
                    }
                })
                .collect()
        })
        .collect();

    let resample_mean = |row: &[f64], draws: &[usize]| -> f64 {
        let mut sum = 0.0;
        let mut count = 0usize;
        for &k in draws {
            let v = row[k];
            if !v.is_nan() {
                sum += v;
                count += 1;
            }
        }
        if count == 0 {
            f64::NEG_INFINITY
        } else {
            sum / count as f64
        }
    };

    let mut wins = vec![0usize; active.len()];
    let mut draws = vec![0usize; pool_len];
    for _ in 0..sets {
        for slot in draws.iter_mut() {
            *slot = rng.index(refs.len());
        }
        let incumbent_mean = resample_mean(&utilities[incumbent_pos], &draws);
        for (a, row) in utilities.iter().enumerate() {
            if resample_mean(row, &draws) >= incumbent_mean {
                wins[a] += 1;
            }
        }
    }
    wins.iter().map(|&w| w as f64 / sets as f64).collect()
}

/// Runs confidence-based pruning under an evaluation cap. Terminates when one
/// candidate remains, when the reference schedule covers the pool, or when
/// the cap lands mid-iteration (the current incumbent is returned).
pub fn cbp(
    oracle: &mut UtilityOracle,
    budget: usize,
    config: &CbpConfig,
    rng: &mut RngStream,
) -> Result<Selection> {
    config.validate()?;
    let n = oracle.len();
    if n == 1 {
        return Ok(single_candidate_selection());
    }

    let reveal_order = rng.shuffled_indices(n);
    let mut revealed = 0usize;
    let mut active: Vec<usize> = (0..n).collect();
    let mut trace = Vec::new();
    let mut scorer = RunScorer::new(oracle, budget);

    let mut schedule_size = config.r0;
    for iteration in 0.. {
        let schedule = schedule_size.min(n);
        let new_refs: Vec<usize> = reveal_order[revealed..schedule].to_vec();
        revealed = schedule;

        let mut truncated = false;
        'eval: for &h in &active {
            for &y in &new_refs {
                if y == h {
                    continue;
                }
                if scorer.try_score(h, y)?.is_none() {
                    truncated = true;
                    break 'eval;
                }
            }
        }

        let refs = &reveal_order[..revealed];
        let estimates: Vec<(usize, f64)> = active
            .iter()
            .map(|&h| (h, cached_mean(scorer.oracle(), h, refs)))
            .collect();
        let incumbent = argmax(&estimates);

        if truncated {
            trace.push(trace_record(
                iteration,
                new_refs,
                Some(schedule),
                estimates,
                vec![incumbent],
            ));
            return Ok(Selection::new(incumbent, scorer.spent(), trace));
        }

        let incumbent_pos = active.iter().position(|&h| h == incumbent).expect("active");
        let ratios = win_ratios(
            scorer.oracle(),
            &active,
            refs,
            incumbent_pos,
            n,
            config.bootstrap_sets,
            rng,
        );
        let survivors: Vec<usize> = active
            .iter()
            .zip(&ratios)
            .filter(|&(_, &w)| w >= 1.0 - config.alpha)
            .map(|(&h, _)| h)
            .collect();

        trace.push(trace_record(
            iteration,
            new_refs,
            Some(schedule),
            estimates,
            survivors.clone(),
        ));
        active = survivors;

        if active.len() == 1 || revealed >= n {
            return Ok(Selection::new(incumbent, scorer.spent(), trace));
        }
        schedule_size = schedule_size.saturating_mul(2);
    }
    unreachable!("the doubling schedule reaches the pool size");
}
