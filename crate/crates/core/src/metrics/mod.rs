//! Concrete utility functions.
//!
//! Lexical metrics are computed natively over whitespace tokens; vector
//! similarity operates on embeddings ingested with the instance. Neither is a
//! quality claim: they exist so every selection algorithm can be exercised
//! and benchmarked without neural models.

mod scorers;

pub use scorers::{matrix_oracle, LexicalMetric, LexicalScorer, MatrixScorer, VectorScorer};

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Tokens produced by the canonical tokenizer: lowercase, whitespace-split,
/// no stemming, no punctuation stripping.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenSequence(Vec<String>);

impl TokenSequence {
    pub fn new(tokens: Vec<String>) -> Self {
        TokenSequence(tokens)
    }

    pub fn tokens(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Canonical tokenization: lowercase then split on runs of whitespace.
pub fn tokenize(text: &str) -> TokenSequence {
    TokenSequence(
        text.to_lowercase()
            .split_whitespace()
            .map(str::to_owned)
            .collect(),
    )
}

fn counts(tokens: &[String]) -> HashMap<&str, usize> {
    let mut map = HashMap::new();
    for t in tokens {
        *map.entry(t.as_str()).or_insert(0) += 1;
    }
    map
}

/// F1 of the multiset unigram overlap. With overlap `o`, `P = o/|a|` and
/// `R = o/|b|`, so `F1 = 2PR/(P+R) = 2o/(|a|+|b|)`; 0 when either side is
/// empty or the overlap is 0.
pub fn unigram_f1(a: &TokenSequence, b: &TokenSequence) -> f64 {
    if a.is_empty() || b.is_empty() {
        return 0.0;
    }
    let ca = counts(a.tokens());
    let cb = counts(b.tokens());
    let overlap: usize = ca
        .iter()
        .map(|(t, &n)| n.min(cb.get(t).copied().unwrap_or(0)))
        .sum();
    if overlap == 0 {
        return 0.0;
    }
    2.0 * overlap as f64 / (a.len() + b.len()) as f64
}

fn ngram_counts(tokens: &[String], n: usize) -> HashMap<&[String], usize> {
    let mut map = HashMap::new();
    if tokens.len() >= n {
        for window in tokens.windows(n) {
            *map.entry(window).or_insert(0) += 1;
        }
    }
    map
}

/// Smoothed sentence-level BLEU: geometric mean of the modified n-gram
/// precisions for n = 1..4, each with add-one smoothing on numerator and
/// denominator, times the brevity penalty `exp(min(0, 1 - |ref|/|cand|))`.
/// Returns 0 for an empty candidate.
pub fn sentence_bleu(cand: &TokenSequence, reference: &TokenSequence) -> f64 {
    if cand.is_empty() {
        return 0.0;
    }
    let mut log_sum = 0.0;
    for n in 1..=4 {
        let cand_ngrams = ngram_counts(cand.tokens(), n);
        let ref_ngrams = ngram_counts(reference.tokens(), n);
        let mut clipped = 0usize;
        let mut total = 0usize;
        for (gram, &count) in &cand_ngrams {
            total += count;
            clipped += count.min(ref_ngrams.get(gram).copied().unwrap_or(0));
        }
        let precision = (clipped + 1) as f64 / (total + 1) as f64;
        log_sum += precision.ln();
    }
    let brevity = (1.0 - reference.len() as f64 / cand.len() as f64).min(0.0);
    ((log_sum / 4.0) + brevity).exp()
}

/// Length of the longest common subsequence of two token slices.
fn lcs_len(a: &[String], b: &[String]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for ai in a {
        for (j, bj) in b.iter().enumerate() {
            cur[j + 1] = if ai == bj {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

/// LCS-based F1. With `P = LCS/|cand|` and `R = LCS/|ref|`,
/// `F1 = 2 LCS / (|cand| + |ref|)`; 0 on empty input or zero LCS.
pub fn rouge_l_f1(cand: &TokenSequence, reference: &TokenSequence) -> f64 {
    if cand.is_empty() || reference.is_empty() {
        return 0.0;
    }
    let lcs = lcs_len(cand.tokens(), reference.tokens());
    if lcs == 0 {
        return 0.0;
    }
    2.0 * lcs as f64 / (cand.len() + reference.len()) as f64
}

/// Similarity flavor for embedding payloads.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorKind {
    Cosine,
    Dot,
}

/// Dot product or cosine of two equal-dimension vectors. Cosine additionally
/// requires both vectors to be nonzero.
pub fn vector_utility(a: &[f64], b: &[f64], kind: VectorKind) -> Result<f64> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    match kind {
        VectorKind::Dot => Ok(dot),
        VectorKind::Cosine => {
            let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            if na == 0.0 || nb == 0.0 {
                return Err(Error::ZeroVector);
            }
            Ok(dot / (na * nb))
        }
    }
}
