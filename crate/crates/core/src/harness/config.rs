//! Experiment configuration.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer};

use crate::algorithms::CbpConfig;
use crate::error::Result;
use crate::harness::HarnessError;
use crate::instance::Instance;
use crate::metrics::{LexicalMetric, LexicalScorer, MatrixScorer, VectorKind, VectorScorer};
use crate::oracle::UtilityOracle;

/// Which pairwise utility drives a run.
///
/// Cosine and dot are symmetric, so their oracles use mirrored caching; the
/// lexical metrics and matrix replay are treated as directional.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleChoice {
    UnigramF1,
    SentenceBleu,
    RougeL,
    Cosine,
    Dot,
    Matrix,
}

impl OracleChoice {
    pub fn name(&self) -> &'static str {
        match self {
            OracleChoice::UnigramF1 => "unigram_f1",
            OracleChoice::SentenceBleu => "bleu",
            OracleChoice::RougeL => "rouge_l",
            OracleChoice::Cosine => "cosine",
            OracleChoice::Dot => "dot",
            OracleChoice::Matrix => "matrix",
        }
    }

    /// Builds an oracle over `instance` with the given evaluation budget.
    pub fn build(&self, instance: &Instance, budget: usize) -> Result<UtilityOracle> {
        let oracle = match self {
            OracleChoice::UnigramF1 => UtilityOracle::new(
                Box::new(LexicalScorer::new(instance, LexicalMetric::UnigramF1)),
                budget,
            ),
            OracleChoice::SentenceBleu => UtilityOracle::new(
                Box::new(LexicalScorer::new(instance, LexicalMetric::SentenceBleu)),
                budget,
            ),
            OracleChoice::RougeL => UtilityOracle::new(
                Box::new(LexicalScorer::new(instance, LexicalMetric::RougeL)),
                budget,
            ),
            OracleChoice::Cosine => UtilityOracle::with_mirrored_cache(
                Box::new(VectorScorer::new(instance, VectorKind::Cosine)?),
                budget,
            ),
            OracleChoice::Dot => UtilityOracle::with_mirrored_cache(
                Box::new(VectorScorer::new(instance, VectorKind::Dot)?),
                budget,
            ),
            OracleChoice::Matrix => {
                UtilityOracle::new(Box::new(MatrixScorer::from_instance(instance)?), budget)
            }
        };
        Ok(oracle)
    }
}

impl FromStr for OracleChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "unigram_f1" | "f1" => Ok(OracleChoice::UnigramF1),
            "bleu" | "sentence_bleu" => Ok(OracleChoice::SentenceBleu),
            "rouge_l" | "rouge" => Ok(OracleChoice::RougeL),
            "cosine" => Ok(OracleChoice::Cosine),
            "dot" => Ok(OracleChoice::Dot),
            "matrix" => Ok(OracleChoice::Matrix),
            other => Err(format!(
                "unknown utility `{other}` (expected unigram_f1, bleu, rouge_l, cosine, dot, or matrix)"
            )),
        }
    }
}

impl fmt::Display for OracleChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl<'de> Deserialize<'de> for OracleChoice {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// One algorithm cell of the grid, with per-algorithm settings where they
/// exist.
#[derive(Debug, Clone, PartialEq)]
pub enum AlgorithmSpec {
    Exact,
    Nbys,
    CoarseToFine,
    Cbp(CbpConfig),
    Ambr,
    AmbrReplace,
    Aggregation,
    Reward,
    Doubling,
}

impl AlgorithmSpec {
    pub fn name(&self) -> &'static str {
        match self {
            AlgorithmSpec::Exact => "exact",
            AlgorithmSpec::Nbys => "nbys",
            AlgorithmSpec::CoarseToFine => "c2f",
            AlgorithmSpec::Cbp(_) => "cbp",
            AlgorithmSpec::Ambr => "ambr",
            AlgorithmSpec::AmbrReplace => "ambr_replace",
            AlgorithmSpec::Aggregation => "aggregation",
            AlgorithmSpec::Reward => "reward",
            AlgorithmSpec::Doubling => "doubling",
        }
    }
}

impl FromStr for AlgorithmSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" | "mbr" => Ok(AlgorithmSpec::Exact),
            "nbys" => Ok(AlgorithmSpec::Nbys),
            "c2f" | "coarse_to_fine" => Ok(AlgorithmSpec::CoarseToFine),
            "cbp" => Ok(AlgorithmSpec::Cbp(CbpConfig::default())),
            "ambr" => Ok(AlgorithmSpec::Ambr),
            "ambr_replace" => Ok(AlgorithmSpec::AmbrReplace),
            "aggregation" | "ra" => Ok(AlgorithmSpec::Aggregation),
            "reward" => Ok(AlgorithmSpec::Reward),
            "doubling" => Ok(AlgorithmSpec::Doubling),
            other => Err(format!("unknown algorithm `{other}`")),
        }
    }
}

impl<'de> Deserialize<'de> for AlgorithmSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Detailed {
            name: String,
            #[serde(default)]
            r0: Option<usize>,
            #[serde(default)]
            alpha: Option<f64>,
            #[serde(default, alias = "B")]
            bootstrap_sets: Option<usize>,
        }

        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Name(String),
            Detailed(Detailed),
        }

        match Raw::deserialize(deserializer)? {
            Raw::Name(name) => name.parse().map_err(D::Error::custom),
            Raw::Detailed(detail) => {
                let base: AlgorithmSpec = detail.name.parse().map_err(D::Error::custom)?;
                match base {
                    AlgorithmSpec::Cbp(defaults) => Ok(AlgorithmSpec::Cbp(CbpConfig {
                        r0: detail.r0.unwrap_or(defaults.r0),
                        alpha: detail.alpha.unwrap_or(defaults.alpha),
                        bootstrap_sets: detail
                            .bootstrap_sets
                            .unwrap_or(defaults.bootstrap_sets),
                    })),
                    other => {
                        if detail.r0.is_some()
                            || detail.alpha.is_some()
                            || detail.bootstrap_sets.is_some()
                        {
                            return Err(D::Error::custom(format!(
                                "algorithm `{}` takes no settings",
                                other.name()
                            )));
                        }
                        Ok(other)
                    }
                }
            }
        }
    }
}

/// Default budget fractions of N(N-1) for benchmark grids.
pub const DEFAULT_FRACTIONS: [f64; 5] = [1.0 / 32.0, 1.0 / 16.0, 1.0 / 8.0, 1.0 / 4.0, 1.0 / 2.0];

/// The default five-replicate seed list.
pub const DEFAULT_SEEDS: [u64; 5] = [0, 1, 2, 3, 4];

/// A full experiment grid: algorithms x budget fractions x seeds over one
/// instance file.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub algorithms: Vec<AlgorithmSpec>,
    #[serde(default = "default_fractions")]
    pub budget_fractions: Vec<f64>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    pub utility: OracleChoice,
    #[serde(default)]
    pub coarse_utility: Option<OracleChoice>,
    pub input: PathBuf,
    pub output: PathBuf,
}

fn default_fractions() -> Vec<f64> {
    DEFAULT_FRACTIONS.to_vec()
}

fn default_seeds() -> Vec<u64> {
    DEFAULT_SEEDS.to_vec()
}

impl ExperimentConfig {
    pub fn from_json_str(json: &str) -> Result<Self> {
        let config: ExperimentConfig = serde_json::from_str(json).map_err(|e| {
            crate::error::Error::InvalidField {
                field: "config",
                detail: e.to_string(),
            }
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn from_file(path: &Path) -> std::result::Result<Self, HarnessError> {
        let text = fs::read_to_string(path)?;
        Self::from_json_str(&text).map_err(HarnessError::from)
    }

    pub fn validate(&self) -> Result<()> {
        if self.algorithms.is_empty() {
            return Err(crate::error::Error::InvalidField {
                field: "algorithms",
                detail: "at least one algorithm is required".into(),
            });
        }
        if self.seeds.is_empty() {
            return Err(crate::error::Error::InvalidField {
                field: "seeds",
                detail: "at least one seed is required".into(),
            });
        }
        if self.budget_fractions.is_empty() {
            return Err(crate::error::Error::InvalidField {
                field: "budget_fractions",
                detail: "at least one fraction is required".into(),
            });
        }
        for &f in &self.budget_fractions {
            if !(f > 0.0 && f <= 1.0) {
                return Err(crate::error::Error::InvalidField {
                    field: "budget_fractions",
                    detail: format!("fractions must lie in (0, 1], got {f}"),
                });
            }
        }
        for spec in &self.algorithms {
            if let AlgorithmSpec::Cbp(config) = spec {
                config.validate()?;
            }
        }
        Ok(())
    }
}
