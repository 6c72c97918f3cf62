//! Budgeted minimum-Bayes-risk decoding.
//!
//! Sample-based MBR picks, from a pool of N hypotheses, the one with the
//! highest mean pairwise utility over the pool — at a cost of N(N-1) utility
//! calls. This crate implements that exact selection together with the
//! budgeted approximations built around it (reference subsampling,
//! coarse-to-fine filtering, confidence-based pruning, adaptive sequential
//! halving, reference aggregation, reward weighting, and the doubling trick
//! for picking a budget), all over pluggable pair-scoring oracles with
//! uniform caching and evaluation accounting.
//!
//! The [`harness`] module adds dataset ingestion, an experiment-grid runner,
//! and CSV/JSON report emission; [`synth`] generates labeled synthetic pools
//! for calibration and testing.

pub mod algorithms;
pub mod error;
pub mod harness;
pub mod instance;
pub mod metrics;
pub mod oracle;
pub mod rng;
pub mod selection;
pub mod synth;

pub use algorithms::{
    ambr, ambr_replace, cbp, coarse_to_fine, doubling_trick, exact_mbr, exact_scores, medoid,
    nbys, reference_aggregation, reward_mbr, CbpConfig, HalvingSchedule, HalvingStep,
};
pub use error::{Error, Result};
pub use instance::Instance;
pub use metrics::{
    matrix_oracle, rouge_l_f1, sentence_bleu, tokenize, unigram_f1, vector_utility,
    LexicalMetric, LexicalScorer, MatrixScorer, TokenSequence, VectorKind, VectorScorer,
};
pub use oracle::{mean_utility, EvalLedger, PairScorer, UtilityOracle};
pub use rng::{RngStream, SeedMix};
pub use selection::{Selection, TraceRecord};
pub use synth::{planted_batch, planted_instance, random_instance, PlantedSpec};
