//! Decoding instances.
//!
//! An [`Instance`] is one decoding problem: an ordered candidate pool that
//! doubles as the reference pool, plus optional per-candidate payloads. Index
//! `i` always denotes the same hypothesis for the lifetime of the instance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One decoding problem over a shared candidate/reference pool.
///
/// When `utility_matrix` is present it is the authoritative utility source;
/// its diagonal is ignored by every average in this crate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub id: String,
    pub candidates: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embeddings: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rewards: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub utility_matrix: Option<Vec<Vec<f64>>>,
}

impl Instance {
    pub fn new(id: impl Into<String>, candidates: Vec<String>) -> Self {
        Instance {
            id: id.into(),
            candidates,
            embeddings: None,
            rewards: None,
            utility_matrix: None,
        }
    }

    pub fn with_embeddings(mut self, embeddings: Vec<Vec<f64>>) -> Self {
        self.embeddings = Some(embeddings);
        self
    }

    pub fn with_rewards(mut self, rewards: Vec<f64>) -> Self {
        self.rewards = Some(rewards);
        self
    }

    pub fn with_matrix(mut self, matrix: Vec<Vec<f64>>) -> Self {
        self.utility_matrix = Some(matrix);
        self
    }

    /// Pool size N.
    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    /// Checks every structural invariant: N >= 1, all optional per-candidate
    /// arrays of length exactly N, embeddings of one finite dimension, finite
    /// rewards, and a square utility matrix with finite off-diagonal entries.
    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        if n == 0 {
            return Err(Error::InvalidField {
                field: "candidates",
                detail: "instance must contain at least one candidate".into(),
            });
        }
        if let Some(embeddings) = &self.embeddings {
            if embeddings.len() != n {
                return Err(Error::InvalidField {
                    field: "embeddings",
                    detail: format!("expected {n} rows, found {}", embeddings.len()),
                });
            }
            let d = embeddings[0].len();
            if d == 0 {
                return Err(Error::InvalidField {
                    field: "embeddings",
                    detail: "embedding dimension must be at least 1".into(),
                });
            }
            for (i, row) in embeddings.iter().enumerate() {
                if row.len() != d {
                    return Err(Error::InvalidField {
                        field: "embeddings",
                        detail: format!("row {i} has dimension {} but row 0 has {d}", row.len()),
                    });
                }
                if let Some(j) = row.iter().position(|v| !v.is_finite()) {
                    return Err(Error::InvalidField {
                        field: "embeddings",
                        detail: format!("non-finite value at [{i}][{j}]"),
                    });
                }
            }
        }
        if let Some(rewards) = &self.rewards {
            if rewards.len() != n {
                return Err(Error::InvalidField {
                    field: "rewards",
                    detail: format!("expected {n} entries, found {}", rewards.len()),
                });
            }
            if let Some(i) = rewards.iter().position(|v| !v.is_finite()) {
                return Err(Error::InvalidField {
                    field: "rewards",
                    detail: format!("non-finite value at [{i}]"),
                });
            }
        }
        if let Some(matrix) = &self.utility_matrix {
            if matrix.len() != n {
                return Err(Error::InvalidField {
                    field: "utility_matrix",
                    detail: format!("expected {n} rows, found {}", matrix.len()),
                });
            }
            for (i, row) in matrix.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::InvalidField {
                        field: "utility_matrix",
                        detail: format!("row {i} has {} columns, expected {n}", row.len()),
                    });
                }
                for (j, v) in row.iter().enumerate() {
                    if i != j && !v.is_finite() {
                        return Err(Error::InvalidField {
                            field: "utility_matrix",
                            detail: format!("non-finite value at [{i}][{j}]"),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Relabels candidates so that old index `i` becomes `perm[i]`, carrying
    /// every per-candidate payload along. `perm` must be a permutation of
    /// `0..N`. Useful for equivariance checks.
    pub fn permuted(&self, perm: &[usize]) -> Result<Instance> {
        let n = self.len();
        if perm.len() != n {
            return Err(Error::LengthMismatch {
                left: perm.len(),
                right: n,
            });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidField {
                    field: "perm",
                    detail: "not a permutation".into(),
                });
            }
            seen[p] = true;
        }

        let mut out = self.clone();
        for (i, &p) in perm.iter().enumerate() {
            out.candidates[p] = self.candidates[i].clone();
        }
        if let Some(embeddings) = &self.embeddings {
            let dst = out.embeddings.as_mut().expect("cloned");
            for (i, &p) in perm.iter().enumerate() {
                dst[p] = embeddings[i].clone();
            }
        }
        if let Some(rewards) = &self.rewards {
            let dst = out.rewards.as_mut().expect("cloned");
            for (i, &p) in perm.iter().enumerate() {
                dst[p] = rewards[i];
            }
        }
        if let Some(matrix) = &self.utility_matrix {
            let dst = out.utility_matrix.as_mut().expect("cloned");
            for (i, &pi) in perm.iter().enumerate() {
                for (j, &pj) in perm.iter().enumerate() {
                    dst[pi][pj] = matrix[i][j];
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn texts(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("h{i}")).collect()
    }

    #[test]
    fn minimal_instance_is_valid() {
        let inst = Instance::new("a", texts(2));
        assert_eq!(inst.len(), 2);
        assert!(inst.validate().is_ok());
    }

    #[test]
    fn empty_pool_rejected() {
        let inst = Instance::new("a", vec![]);
        assert!(matches!(
            inst.validate(),
            Err(Error::InvalidField { field: "candidates", .. })
        ));
    }

    #[test]
    fn embeddings_length_must_match() {
        let inst = Instance::new("a", texts(3)).with_embeddings(vec![vec![1.0], vec![2.0]]);
        assert!(matches!(
            inst.validate(),
            Err(Error::InvalidField { field: "embeddings", .. })
        ));
    }

    #[test]
    fn embeddings_dimensions_must_agree() {
        let inst =
            Instance::new("a", texts(2)).with_embeddings(vec![vec![1.0, 2.0], vec![3.0]]);
        assert!(inst.validate().is_err());
    }

    #[test]
    fn matrix_must_be_square() {
        let inst = Instance::new("a", texts(2)).with_matrix(vec![vec![0.0, 1.0, 2.0], vec![
            1.0, 0.0, 2.0,
        ]]);
        assert!(matches!(
            inst.validate(),
            Err(Error::InvalidField { field: "utility_matrix", .. })
        ));
    }

    #[test]
    fn off_diagonal_nan_rejected_but_diagonal_ignored() {
        let ok = Instance::new("a", texts(2))
            .with_matrix(vec![vec![f64::NAN, 1.0], vec![0.5, f64::NAN]]);
        assert!(ok.validate().is_ok());

        let bad = Instance::new("a", texts(2))
            .with_matrix(vec![vec![0.0, f64::NAN], vec![0.5, 0.0]]);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn rewards_length_must_match() {
        let inst = Instance::new("a", texts(2)).with_rewards(vec![1.0]);
        assert!(matches!(
            inst.validate(),
            Err(Error::InvalidField { field: "rewards", .. })
        ));
    }

    #[test]
    fn permutation_moves_payloads_together() {
        let inst = Instance::new("a", texts(3))
            .with_rewards(vec![0.0, 1.0, 2.0])
            .with_matrix(vec![
                vec![0.0, 0.1, 0.2],
                vec![1.0, 0.0, 1.2],
                vec![2.0, 2.1, 0.0],
            ]);
        // old 0 -> 2, old 1 -> 0, old 2 -> 1
        let got = inst.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(got.candidates, vec!["h1", "h2", "h0"]);
        assert_eq!(got.rewards.as_ref().unwrap(), &vec![1.0, 2.0, 0.0]);
        let m = got.utility_matrix.as_ref().unwrap();
        // u'(pi(i), pi(j)) == u(i, j)
        assert_eq!(m[2][0], 0.1);
        assert_eq!(m[0][1], 1.2);
        assert_eq!(m[1][2], 2.0);
    }

    #[test]
    fn permutation_rejects_non_bijection() {
        let inst = Instance::new("a", texts(3));
        assert!(inst.permuted(&[0, 0, 1]).is_err());
        assert!(inst.permuted(&[0, 1]).is_err());
    }
}
