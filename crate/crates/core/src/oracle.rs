//! Pairwise utility oracles with caching and budget accounting.
//!
//! Every utility evaluation in this crate flows through a [`UtilityOracle`].
//! The oracle caches pair scores and charges its [`EvalLedger`] exactly once
//! per unique off-diagonal pair, so "cost" means the same thing for every
//! algorithm: the number of distinct pairs scored.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A pairwise scoring function over a fixed pool of `len()` hypotheses.
///
/// Implementations must be pure: repeated calls with the same indices return
/// bitwise-identical values. Anything fallible (shape checks, zero vectors)
/// must be rejected when the scorer is constructed.
pub trait PairScorer: Send + Sync {
    /// Pool size N.
    fn len(&self) -> usize;

    /// Utility of candidate `i` scored against reference `j`, `i != j`.
    fn score(&self, i: usize, j: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Budget accounting: a cap `budget` on unique off-diagonal evaluations and
/// the monotonically nondecreasing count `used` of pairs charged so far.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalLedger {
    budget: usize,
    used: usize,
}

impl EvalLedger {
    pub fn new(budget: usize) -> Self {
        EvalLedger { budget, used: 0 }
    }

    /// A ledger that never blocks.
    pub fn unlimited() -> Self {
        EvalLedger::new(usize::MAX)
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn used(&self) -> usize {
        self.used
    }

    pub fn remaining(&self) -> usize {
        self.budget - self.used
    }

    fn charge(&mut self) -> Result<()> {
        if self.used >= self.budget {
            return Err(Error::BudgetExhausted {
                used: self.used,
                budget: self.budget,
            });
        }
        self.used += 1;
        Ok(())
    }
}

/// A caching, budget-enforcing wrapper around a [`PairScorer`].
///
/// Pairs are cached under ordered keys `(i, j)`: utilities are not assumed
/// symmetric. Oracles built with [`UtilityOracle::with_mirrored_cache`] opt in
/// to unordered keys, in which case the ledger counts each unordered pair
/// once and `score_pair(i, j)` equals `score_pair(j, i)` by construction.
pub struct UtilityOracle {
    scorer: Box<dyn PairScorer>,
    mirrored: bool,
    cache: HashMap<(usize, usize), f64>,
    ledger: EvalLedger,
}

impl UtilityOracle {
    pub fn new(scorer: Box<dyn PairScorer>, budget: usize) -> Self {
        UtilityOracle {
            scorer,
            mirrored: false,
            cache: HashMap::new(),
            ledger: EvalLedger::new(budget),
        }
    }

    /// Opt-in for symmetric utilities: caches under unordered keys so a pair
    /// and its mirror count as one evaluation.
    pub fn with_mirrored_cache(scorer: Box<dyn PairScorer>, budget: usize) -> Self {
        UtilityOracle {
            scorer,
            mirrored: true,
            cache: HashMap::new(),
            ledger: EvalLedger::new(budget),
        }
    }

    /// Pool size N.
    pub fn len(&self) -> usize {
        self.scorer.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scorer.is_empty()
    }

    pub fn is_mirrored(&self) -> bool {
        self.mirrored
    }

    pub fn ledger(&self) -> EvalLedger {
        self.ledger
    }

    pub fn used(&self) -> usize {
        self.ledger.used()
    }

    pub fn remaining(&self) -> usize {
        self.ledger.remaining()
    }

    /// Number of cached pairs. Grows by exactly one per charged evaluation.
    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }

    fn key(&self, i: usize, j: usize) -> (usize, usize) {
        if self.mirrored && j < i {
            (j, i)
        } else {
            (i, j)
        }
    }

    /// Validates that `(i, j)` is a scoreable off-diagonal pair.
    pub fn validate_pair(&self, i: usize, j: usize) -> Result<()> {
        let len = self.len();
        if i >= len {
            return Err(Error::IndexOutOfRange { index: i, len });
        }
        if j >= len {
            return Err(Error::IndexOutOfRange { index: j, len });
        }
        if i == j {
            return Err(Error::SelfPair { index: i });
        }
        Ok(())
    }

    /// Cached value for `(i, j)`, if that pair has been scored. Never charges.
    pub fn cached(&self, i: usize, j: usize) -> Option<f64> {
        self.cache.get(&self.key(i, j)).copied()
    }

    /// Scores the pair, charging the ledger iff it was uncached.
    pub fn score_pair(&mut self, i: usize, j: usize) -> Result<f64> {
        self.validate_pair(i, j)?;
        let key = self.key(i, j);
        if let Some(&v) = self.cache.get(&key) {
            return Ok(v);
        }
        self.ledger.charge()?;
        let v = self.scorer.score(key.0, key.1);
        self.cache.insert(key, v);
        Ok(v)
    }

    /// Like [`score_pair`](Self::score_pair), but a blocked budget yields
    /// `Ok(None)` instead of an error: cached pairs are always returned, and
    /// no new evaluation is ever issued once the ledger is full. This is the
    /// primitive behind every algorithm's truncation semantics.
    pub fn try_score_pair(&mut self, i: usize, j: usize) -> Result<Option<f64>> {
        self.validate_pair(i, j)?;
        let key = self.key(i, j);
        if let Some(&v) = self.cache.get(&key) {
            return Ok(Some(v));
        }
        if self.ledger.remaining() == 0 {
            return Ok(None);
        }
        self.ledger.charge()?;
        let v = self.scorer.score(key.0, key.1);
        self.cache.insert(key, v);
        Ok(Some(v))
    }
}

impl std::fmt::Debug for UtilityOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("UtilityOracle")
            .field("len", &self.len())
            .field("mirrored", &self.mirrored)
            .field("cached", &self.cache.len())
            .field("ledger", &self.ledger)
            .finish()
    }
}

/// Arithmetic mean of `u(h, y)` over `y in refs \ {h}`; the denominator is
/// the number of references left after dropping `h` itself. `refs` must hold
/// distinct indices.
pub fn mean_utility(oracle: &mut UtilityOracle, h: usize, refs: &[usize]) -> Result<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for &y in refs {
        if y == h {
            continue;
        }
        sum += oracle.score_pair(h, y)?;
        count += 1;
    }
    if count == 0 {
        return Err(Error::EmptyReferenceSet);
    }
    Ok(sum / count as f64)
}
