//! Reference aggregation: one aggregated scoring per candidate.
//!
//! For the unit-normalized dot utility the mean over references commutes with
//! the dot product, so scoring each candidate against the mean of the other
//! unit vectors reproduces exact MBR in N evaluations instead of N(N-1).

use crate::algorithms::{argmax, single_candidate_selection, trace_record};
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::selection::Selection;

/// Selects by aggregated cosine score. Each embedding is normalized to unit
/// length; candidate `h` is scored as `dot(unit_h, mean of the other units)`,
/// which equals its diagonal-free mean cosine utility by linearity.
pub fn reference_aggregation(instance: &Instance) -> Result<Selection> {
    let embeddings = instance
        .embeddings
        .as_ref()
        .ok_or(Error::MissingEmbeddings)?;
    let n = instance.len();
    if embeddings.len() != n {
        return Err(Error::LengthMismatch {
            left: embeddings.len(),
            right: n,
        });
    }
    if n == 1 {
        return Ok(single_candidate_selection());
    }

    let d = embeddings[0].len();
    let mut units: Vec<Vec<f64>> = Vec::with_capacity(n);
    for row in embeddings {
        if row.len() != d {
            return Err(Error::DimensionMismatch {
                left: row.len(),
                right: d,
            });
        }
        let norm = row.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::ZeroVector);
        }
        units.push(row.iter().map(|v| v / norm).collect());
    }

    let estimates: Vec<(usize, f64)> = if n == 2 {
        // Both scores reduce to the single cross similarity; computing it
        // once keeps the tie exact.
        let cross: f64 = units[0].iter().zip(&units[1]).map(|(a, b)| a * b).sum();
        vec![(0, cross), (1, cross)]
    } else {
        let mut total = vec![0.0; d];
        for unit in &units {
            for (t, v) in total.iter_mut().zip(unit) {
                *t += v;
            }
        }
        units
            .iter()
            .enumerate()
            .map(|(h, unit)| {
                // Subtract the candidate's own contribution from the aggregate.
                let dot: f64 = unit
                    .iter()
                    .zip(&total)
                    .map(|(u, t)| u * (t - u))
                    .sum();
                (h, dot / (n - 1) as f64)
            })
            .collect()
    };
    let chosen = argmax(&estimates);
    let trace = vec![trace_record(
        0,
        (0..n).collect(),
        Some(n),
        estimates,
        vec![chosen],
    )];
    Ok(Selection::new(chosen, n, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::exact_mbr;
    use crate::metrics::{VectorKind, VectorScorer};
    use crate::oracle::UtilityOracle;
    use crate::rng::RngStream;

    fn embedded_instance(embeddings: Vec<Vec<f64>>) -> Instance {
        let texts = (0..embeddings.len()).map(|i| format!("h{i}")).collect();
        Instance::new("emb", texts).with_embeddings(embeddings)
    }

    fn exact_cosine_choice(instance: &Instance) -> usize {
        let scorer = VectorScorer::new(instance, VectorKind::Cosine).unwrap();
        let mut oracle = UtilityOracle::with_mirrored_cache(Box::new(scorer), usize::MAX);
        exact_mbr(&mut oracle).unwrap().chosen
    }

    #[test]
    fn equals_exact_mbr_under_cosine_by_linearity() {
        let mut rng = RngStream::new(17);
        for case in 0..50 {
            let n = 2 + case % 9;
            let embeddings: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..4).map(|_| rng.symmetric(1.0) + 0.01).collect())
                .collect();
            let inst = embedded_instance(embeddings);
            let got = reference_aggregation(&inst).unwrap();
            assert_eq!(got.chosen, exact_cosine_choice(&inst), "case {case}");
            assert_eq!(got.evals_used, n);
        }
    }

    #[test]
    fn identical_embeddings_tie_break_to_zero() {
        let inst = embedded_instance(vec![vec![0.6, 0.8]; 5]);
        assert_eq!(reference_aggregation(&inst).unwrap().chosen, 0);
    }

    #[test]
    fn majority_cluster_centroid_wins() {
        // Three vectors around +x, a split pair on the y axis. Tilting off
        // the +x centroid loses in-cluster similarity without gaining from
        // the balanced minority, so the centroid candidate wins.
        let inst = embedded_instance(vec![
            vec![1.0, 0.1],
            vec![1.0, 0.0],
            vec![1.0, -0.1],
            vec![0.0, 1.0],
            vec![0.0, -1.0],
        ]);
        let got = reference_aggregation(&inst).unwrap();
        assert_eq!(got.chosen, exact_cosine_choice(&inst));
        assert_eq!(got.chosen, 1);
    }

    #[test]
    fn missing_embeddings_and_zero_vectors_rejected() {
        let inst = Instance::new("none", vec!["a".into(), "b".into()]);
        assert_eq!(
            reference_aggregation(&inst).err(),
            Some(Error::MissingEmbeddings)
        );
        let zero = embedded_instance(vec![vec![0.0, 0.0], vec![1.0, 0.0]]);
        assert_eq!(reference_aggregation(&zero).err(), Some(Error::ZeroVector));
    }
}
