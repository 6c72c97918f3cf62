//! [`PairScorer`] implementations over instance payloads.

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::metrics::{
    rouge_l_f1, sentence_bleu, tokenize, unigram_f1, vector_utility, TokenSequence, VectorKind,
};
use crate::oracle::{PairScorer, UtilityOracle};

/// Which lexical metric a [`LexicalScorer`] computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexicalMetric {
    UnigramF1,
    SentenceBleu,
    RougeL,
}

/// Scores candidate text `i` against reference text `j` with a lexical
/// metric. Candidates are tokenized once at construction.
pub struct LexicalScorer {
    metric: LexicalMetric,
    tokens: Vec<TokenSequence>,
}

impl LexicalScorer {
    pub fn new(instance: &Instance, metric: LexicalMetric) -> Self {
        LexicalScorer {
            metric,
            tokens: instance.candidates.iter().map(|t| tokenize(t)).collect(),
        }
    }
}

impl PairScorer for LexicalScorer {
    fn len(&self) -> usize {
        self.tokens.len()
    }

    fn score(&self, i: usize, j: usize) -> f64 {
        let (cand, reference) = (&self.tokens[i], &self.tokens[j]);
        match self.metric {
            LexicalMetric::UnigramF1 => unigram_f1(cand, reference),
            LexicalMetric::SentenceBleu => sentence_bleu(cand, reference),
            LexicalMetric::RougeL => rouge_l_f1(cand, reference),
        }
    }
}

/// Cosine or dot similarity over ingested embedding vectors. All shape and
/// zero-vector problems are rejected here so scoring itself cannot fail.
pub struct VectorScorer {
    kind: VectorKind,
    embeddings: Vec<Vec<f64>>,
}

impl VectorScorer {
    pub fn new(instance: &Instance, kind: VectorKind) -> Result<Self> {
        let embeddings = instance
            .embeddings
            .as_ref()
            .ok_or(Error::MissingEmbeddings)?
            .clone();
        if embeddings.len() != instance.len() {
            return Err(Error::LengthMismatch {
                left: embeddings.len(),
                right: instance.len(),
            });
        }
        let d = embeddings.first().map(Vec::len).unwrap_or(0);
        for row in &embeddings {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    left: row.len(),
                    right: d,
                });
            }
            if kind == VectorKind::Cosine && row.iter().all(|v| *v == 0.0) {
                return Err(Error::ZeroVector);
            }
        }
        Ok(VectorScorer { kind, embeddings })
    }
}

impl PairScorer for VectorScorer {
    fn len(&self) -> usize {
        self.embeddings.len()
    }

    fn score(&self, i: usize, j: usize) -> f64 {
        vector_utility(&self.embeddings[i], &self.embeddings[j], self.kind)
            .expect("validated at construction")
    }
}

/// Replays a precomputed utility matrix, enabling externally computed
/// utilities (neural metrics, planted synthetics) to drive every algorithm
/// with identical ledger semantics.
pub struct MatrixScorer {
    n: usize,
    data: Vec<f64>,
}

impl MatrixScorer {
    /// Builds from a square grid with finite off-diagonal entries. The
    /// diagonal is never read.
    pub fn from_grid(grid: &[Vec<f64>]) -> Result<Self> {
        let n = grid.len();
        if n == 0 {
            return Err(Error::MalformedMatrix("matrix has no rows".into()));
        }
        let mut data = vec![0.0; n * n];
        for (i, row) in grid.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedMatrix(format!(
                    "row {i} has {} columns, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if i != j && !v.is_finite() {
                    return Err(Error::MalformedMatrix(format!(
                        "non-finite value at [{i}][{j}]"
                    )));
                }
                data[i * n + j] = v;
            }
        }
        Ok(MatrixScorer { n, data })
    }

    pub fn from_instance(instance: &Instance) -> Result<Self> {
        let grid = instance.utility_matrix.as_ref().ok_or(Error::MissingMatrix)?;
        if grid.len() != instance.len() {
            return Err(Error::MalformedMatrix(format!(
                "matrix has {} rows for {} candidates",
                grid.len(),
                instance.len()
            )));
        }
        MatrixScorer::from_grid(grid)
    }
}

impl PairScorer for MatrixScorer {
    fn len(&self) -> usize {
        self.n
    }

    fn score(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }
}

/// Oracle replaying `instance.utility_matrix` under the given budget.
pub fn matrix_oracle(instance: &Instance, budget: usize) -> Result<UtilityOracle> {
    Ok(UtilityOracle::new(
        Box::new(MatrixScorer::from_instance(instance)?),
        budget,
    ))
}
