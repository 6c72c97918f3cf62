//! Experiment-grid execution.

use std::collections::HashMap;

use crate::algorithms::{
    ambr, ambr_replace, cbp, coarse_to_fine, doubling_trick, exact_scores, nbys,
    reference_aggregation, reward_mbr,
};
use crate::error::Error;
use crate::harness::{
    emit_report, load_instances, AlgorithmSpec, ExperimentConfig, HarnessError, OracleChoice,
    Report, ReportFormat, ReportRow,
};
use crate::instance::Instance;
use crate::rng::{RngStream, SeedMix};
use crate::selection::Selection;

/// Fraction of positions where the two index lists disagree.
pub fn error_rate(chosen: &[usize], exact: &[usize]) -> crate::error::Result<f64> {
    if chosen.len() != exact.len() {
        return Err(Error::LengthMismatch {
            left: chosen.len(),
            right: exact.len(),
        });
    }
    if chosen.is_empty() {
        return Err(Error::InvalidField {
            field: "chosen",
            detail: "at least one decision is required".into(),
        });
    }
    let mismatches = chosen.iter().zip(exact).filter(|(a, b)| a != b).count();
    Ok(mismatches as f64 / chosen.len() as f64)
}

/// Gap in exact full-pool mean utility between the exact winner and the pick.
/// `exact_scores` comes from the exact pass over the same instance.
pub fn regret(exact_scores: &[f64], chosen: usize) -> f64 {
    let best = exact_scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (best - exact_scores[chosen]).max(0.0)
}

/// Ground truth computed once per instance and shared read-only by all cells.
struct ExactPass {
    chosen: usize,
    scores: Vec<f64>,
}

fn exact_pass(config: &ExperimentConfig, instance: &Instance) -> crate::error::Result<ExactPass> {
    // The exact pass warms only its own private cache; per-cell runs get
    // fresh oracles so their budget accounting stays honest.
    let mut oracle = config.utility.build(instance, usize::MAX)?;
    let scores = exact_scores(&mut oracle)?;
    let mut chosen = 0usize;
    for (i, &v) in scores.iter().enumerate() {
        if v > scores[chosen] {
            chosen = i;
        }
    }
    Ok(ExactPass { chosen, scores })
}

/// Runs one algorithm on one instance with a fresh oracle capped at
/// `budget`. For the doubling trick the ledger caps the whole restart
/// schedule at `budget`, with the schedule starting at a quarter of it.
pub fn run_algorithm(
    spec: &AlgorithmSpec,
    utility: OracleChoice,
    coarse_utility: Option<OracleChoice>,
    instance: &Instance,
    budget: usize,
    rng: &mut RngStream,
) -> Result<Selection, HarnessError> {
    let selection = match spec {
        AlgorithmSpec::Exact => {
            let mut oracle = utility.build(instance, budget)?;
            crate::algorithms::exact_mbr(&mut oracle)?
        }
        AlgorithmSpec::Nbys => {
            let mut oracle = utility.build(instance, budget)?;
            nbys(&mut oracle, budget, rng)?
        }
        AlgorithmSpec::CoarseToFine => {
            let coarse_choice = coarse_utility.ok_or_else(|| {
                HarnessError::Config("c2f requires `coarse_utility`".to_string())
            })?;
            let mut coarse = coarse_choice.build(instance, usize::MAX)?;
            let mut fine = utility.build(instance, budget)?;
            coarse_to_fine(&mut coarse, &mut fine, budget)?
        }
        AlgorithmSpec::Cbp(cbp_config) => {
            let mut oracle = utility.build(instance, budget)?;
            cbp(&mut oracle, budget, cbp_config, rng)?
        }
        AlgorithmSpec::Ambr => {
            let mut oracle = utility.build(instance, budget)?;
            ambr(&mut oracle, budget, rng)?
        }
        AlgorithmSpec::AmbrReplace => {
            let mut oracle = utility.build(instance, budget)?;
            ambr_replace(&mut oracle, budget, rng)?
        }
        AlgorithmSpec::Aggregation => reference_aggregation(instance)?,
        AlgorithmSpec::Reward => {
            let mut oracle = utility.build(instance, budget)?;
            reward_mbr(instance, &mut oracle)?
        }
        AlgorithmSpec::Doubling => {
            let mut oracle = utility.build(instance, budget)?;
            let initial = (budget / 4).max(1);
            doubling_trick(&mut oracle, initial, budget.max(1), rng)?
        }
    };
    Ok(selection)
}

/// Budget for an instance of size `n` at fraction `f`: `floor(f n (n-1))`,
/// never exceeding the declared fraction.
pub fn cell_budget(fraction: f64, n: usize) -> usize {
    (fraction * (n * (n.saturating_sub(1))) as f64).floor() as usize
}

/// Runs the full grid over in-memory instances. Exact ground truth is
/// computed once per instance; every (algorithm, fraction, seed) cell then
/// runs on a fresh oracle with budget `floor(f N(N-1))` and a seed derived
/// from `(seed, algorithm, fraction index, instance id)`.
pub fn run_cells(
    config: &ExperimentConfig,
    instances: &[Instance],
) -> Result<Report, HarnessError> {
    config.validate()?;
    let mut truths: HashMap<&str, ExactPass> = HashMap::new();
    for instance in instances {
        instance.validate()?;
        let truth = exact_pass(config, instance)?;
        if truths.insert(instance.id.as_str(), truth).is_some() {
            // Ids key the ground-truth table and per-cell seed derivation.
            return Err(HarnessError::Config(format!(
                "duplicate instance id `{}`",
                instance.id
            )));
        }
    }

    let mut rows = Vec::new();
    for spec in &config.algorithms {
        for (fraction_index, &fraction) in config.budget_fractions.iter().enumerate() {
            for &seed in &config.seeds {
                let mut mismatches = 0usize;
                let mut regret_sum = 0.0;
                let mut evals_sum = 0usize;
                let mut evals_min = usize::MAX;
                let mut evals_max = 0usize;
                for instance in instances {
                    let truth = &truths[instance.id.as_str()];
                    let budget = cell_budget(fraction, instance.len());
                    let mut rng = RngStream::new(
                        SeedMix::new()
                            .push_u64(seed)
                            .push_str(spec.name())
                            .push_u64(fraction_index as u64)
                            .push_str(&instance.id)
                            .finish(),
                    );
                    let selection = run_algorithm(
                        spec,
                        config.utility,
                        config.coarse_utility,
                        instance,
                        budget,
                        &mut rng,
                    )?;
                    if selection.chosen != truth.chosen {
                        mismatches += 1;
                    }
                    regret_sum += regret(&truth.scores, selection.chosen);
                    evals_sum += selection.evals_used;
                    evals_min = evals_min.min(selection.evals_used);
                    evals_max = evals_max.max(selection.evals_used);
                }
                let count = instances.len() as f64;
                rows.push(ReportRow {
                    algorithm: spec.name().to_string(),
                    fraction,
                    seed,
                    error_rate: mismatches as f64 / count,
                    mean_regret: regret_sum / count,
                    mean_evals: evals_sum as f64 / count,
                    min_evals: if instances.is_empty() { 0 } else { evals_min },
                    max_evals: evals_max,
                });
            }
        }
    }
    Ok(Report::from_rows(rows))
}

/// Loads `config.input`, runs the grid, and writes the report to
/// `config.output` in the format implied by its extension.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report, HarnessError> {
    let instances = load_instances(&config.input)?;
    if instances.is_empty() {
        return Err(HarnessError::Config(format!(
            "no instances found in {}",
            config.input.display()
        )));
    }
    let report = run_cells(config, &instances)?;
    emit_report(&report, &config.output, ReportFormat::from_path(&config.output))?;
    Ok(report)
}
