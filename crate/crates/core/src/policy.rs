//! Merge-selection policies.
//!
//! Each training iteration turns the current pair counts into a selection
//! distribution and draws one pair from it. Four policies are supported:
//!
//! * `Standard`  — deterministic argmax over counts (greedy).
//! * `Softmax`   — probability proportional to `exp(count)`.
//! * `CountProp` — probability proportional to the count itself.
//! * `Uniform`   — every observed pair equally likely, counts ignored.
//!
//! Pairs are ordered lexicographically before inverse-CDF sampling so that a
//! given seed selects the same pair regardless of how the counts were stored
//! or accumulated.

use std::fmt;
use std::str::FromStr;

use crate::corpus::{PairCounts, SymbolPair};
use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// How the pair to merge is chosen at each training iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SamplingMethod {
    /// Most frequent pair, ties broken lexicographically.
    Standard,
    /// Sample with probability `exp(count_i) / sum_j exp(count_j)`.
    Softmax,
    /// Sample with probability `count_i / sum_j count_j`.
    CountProp,
    /// Sample uniformly from the observed pairs.
    Uniform,
}

impl SamplingMethod {
    /// All methods, in a fixed order convenient for sweeps.
    pub const ALL: [SamplingMethod; 4] = [
        SamplingMethod::Standard,
        SamplingMethod::Softmax,
        SamplingMethod::CountProp,
        SamplingMethod::Uniform,
    ];

    /// Canonical lowercase name, as used on the command line and in merge
    /// file sidecars.
    pub fn name(self) -> &'static str {
        match self {
            SamplingMethod::Standard => "standard",
            SamplingMethod::Softmax => "softmax",
            SamplingMethod::CountProp => "countprop",
            SamplingMethod::Uniform => "uniform",
        }
    }

    /// True when selection is independent of the random source.
    pub fn is_deterministic(self) -> bool {
        matches!(self, SamplingMethod::Standard)
    }
}

impl fmt::Display for SamplingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SamplingMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(SamplingMethod::Standard),
            "softmax" => Ok(SamplingMethod::Softmax),
            "countprop" => Ok(SamplingMethod::CountProp),
            "uniform" => Ok(SamplingMethod::Uniform),
            other => Err(Error::Validation(format!(
                "unknown sampling method {other:?} (expected standard, softmax, countprop or uniform)"
            ))),
        }
    }
}

/// A categorical distribution over symbol pairs, with pairs in canonical
/// lexicographic order and probabilities summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionDistribution {
    pairs: Vec<SymbolPair>,
    probs: Vec<f64>,
}

impl SelectionDistribution {
    /// Pairs in canonical order.
    pub fn pairs(&self) -> &[SymbolPair] {
        &self.pairs
    }

    /// Probabilities parallel to [`pairs`](Self::pairs).
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Probability assigned to one pair, zero if absent.
    pub fn prob_of(&self, pair: &SymbolPair) -> f64 {
        match self.pairs.binary_search(pair) {
            Ok(i) => self.probs[i],
            Err(_) => 0.0,
        }
    }
}

/// Builds the selection distribution for `method` over the observed pairs.
///
/// Softmax subtracts the maximum count inside the exponent; the subtraction
/// happens in integer space, so the result is exactly shift-invariant and
/// never overflows for large counts. Tails that underflow `exp` to zero stay
/// at zero, matching the true distribution to machine precision.
pub fn selection_probabilities(
    counts: &PairCounts,
    method: SamplingMethod,
) -> Result<SelectionDistribution> {
    if counts.is_empty() {
        return Err(Error::NoPairsAvailable);
    }
    // BTreeMap iteration already yields lexicographic (left, right) order.
    let pairs: Vec<SymbolPair> = counts.iter().map(|(pair, _)| pair.clone()).collect();
    let raw: Vec<u64> = counts.iter().map(|(_, count)| count).collect();

    let probs = match method {
        SamplingMethod::Standard => {
            let best = argmax_index(&raw);
            let mut probs = vec![0.0; pairs.len()];
            probs[best] = 1.0;
            probs
        }
        SamplingMethod::Softmax => {
            let max = *raw.iter().max().expect("non-empty");
            let weights: Vec<f64> = raw.iter().map(|&c| (-((max - c) as f64)).exp()).collect();
            normalize(weights)
        }
        SamplingMethod::CountProp => {
            let total: u64 = raw.iter().sum();
            raw.iter().map(|&c| c as f64 / total as f64).collect()
        }
        SamplingMethod::Uniform => {
            let p = 1.0 / pairs.len() as f64;
            vec![p; pairs.len()]
        }
    };

    Ok(SelectionDistribution { pairs, probs })
}

/// Draws one pair by inverse CDF over the canonical pair order, consuming
/// exactly one unit draw from the random source.
pub fn sample_categorical(dist: &SelectionDistribution, rng: &mut RandomSource) -> SymbolPair {
    assert!(!dist.is_empty(), "cannot sample an empty distribution");
    let u = rng.next_f64();
    let mut acc = 0.0;
    let mut last_positive = 0;
    for (i, &p) in dist.probs.iter().enumerate() {
        if p > 0.0 {
            last_positive = i;
        }
        acc += p;
        if u < acc {
            return dist.pairs[i].clone();
        }
    }
    // Rounding left the cumulative sum a hair under one; fall back to the
    // last pair that has any mass.
    dist.pairs[last_positive].clone()
}

/// Selects the pair to merge. For `Standard` this is the tie-broken argmax
/// and consumes no randomness; every other method consumes exactly one draw.
pub fn choose_pair(
    counts: &PairCounts,
    method: SamplingMethod,
    rng: &mut RandomSource,
) -> Result<SymbolPair> {
    if counts.is_empty() {
        return Err(Error::NoPairsAvailable);
    }
    if method == SamplingMethod::Standard {
        return Ok(argmax_pair(counts));
    }
    let dist = selection_probabilities(counts, method)?;
    Ok(sample_categorical(&dist, rng))
}

/// Highest-count pair, ties broken by lexicographically smallest
/// (left, right). Independent of map iteration order by construction.
pub fn argmax_pair(counts: &PairCounts) -> SymbolPair {
    counts
        .iter()
        .max_by(|(pair_a, count_a), (pair_b, count_b)| {
            count_a.cmp(count_b).then_with(|| pair_b.cmp(pair_a))
        })
        .map(|(pair, _)| pair.clone())
        .expect("argmax of non-empty counts")
}

// Relies on the caller passing counts in canonical pair order: equal counts
// keep the earlier, lexicographically smaller pair.
fn argmax_index(counts: &[u64]) -> usize {
    let mut best = 0;
    for i in 1..counts.len() {
        if counts[i] > counts[best] {
            best = i;
        }
    }
    best
}

fn normalize(weights: Vec<f64>) -> Vec<f64> {
    let total: f64 = weights.iter().sum();
    weights.into_iter().map(|w| w / total).collect()
}
