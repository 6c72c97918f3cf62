//! Generic medoid identification via the halving engine.
//!
//! The medoid (minimum total distance to all other points) is the MBR winner
//! under `u = -d`, so any distance grid can ride the adaptive machinery.

use crate::algorithms::ambr;
use crate::error::{Error, Result};
use crate::metrics::MatrixScorer;
use crate::oracle::UtilityOracle;
use crate::rng::RngStream;
use crate::selection::Selection;

/// Runs adaptive halving over the negated distance grid and returns the
/// estimated medoid index.
pub fn medoid(distances: &[Vec<f64>], budget: usize, rng: &mut RngStream) -> Result<usize> {
    Ok(medoid_selection(distances, budget, rng)?.chosen)
}

/// As [`medoid`], but exposing the full run.
pub fn medoid_selection(
    distances: &[Vec<f64>],
    budget: usize,
    rng: &mut RngStream,
) -> Result<Selection> {
    let n = distances.len();
    if n == 0 {
        return Err(Error::MalformedMatrix("matrix has no rows".into()));
    }
    let mut negated = Vec::with_capacity(n);
    for (i, row) in distances.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedMatrix(format!(
                "row {i} has {} columns, expected {n}",
                row.len()
            )));
        }
        negated.push(
            row.iter()
                .enumerate()
                .map(|(j, &d)| if i == j { 0.0 } else { -d })
                .collect::<Vec<f64>>(),
        );
    }
    let scorer = MatrixScorer::from_grid(&negated)?;
    let mut oracle = UtilityOracle::new(Box::new(scorer), budget);
    ambr(&mut oracle, budget, rng)
}
