//! Frequency-weighted corpus state and adjacent-pair counts.
//!
//! Training never walks running text: the corpus is a dictionary from word
//! type (a [`SymbolSequence`]) to its frequency, so a merge touches each
//! distinct word once regardless of how often it occurs. Both structures are
//! ordered maps, which keeps every downstream iteration deterministic.

use std::collections::BTreeMap;
use std::io::BufRead;

use crate::error::Result;
use crate::symbol::{MergeRule, Symbol, SymbolSequence};

/// An adjacent symbol pair, left then right.
pub type SymbolPair = (Symbol, Symbol);

/// Map from word type to occurrence frequency; the evolving training state.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordTypeCorpus {
    entries: BTreeMap<SymbolSequence, u64>,
}

impl WordTypeCorpus {
    /// Empty corpus.
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds the corpus from whitespace-tokenized lines. Each distinct
    /// token becomes one word type: its characters as individual symbols
    /// plus a final end-of-word marker; its frequency is the number of
    /// occurrences across all lines. An empty input yields an empty corpus.
    pub fn from_tokenized_lines<I, S>(lines: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut corpus = Self::new();
        for line in lines {
            for token in line.as_ref().split_whitespace() {
                corpus.add_token(token, 1)?;
            }
        }
        Ok(corpus)
    }

    /// Streaming variant of [`from_tokenized_lines`](Self::from_tokenized_lines).
    pub fn from_reader<R: BufRead>(reader: R) -> Result<Self> {
        let mut corpus = Self::new();
        for line in reader.lines() {
            let line = line?;
            for token in line.split_whitespace() {
                corpus.add_token(token, 1)?;
            }
        }
        Ok(corpus)
    }

    /// Adds `freq` occurrences of a surface token.
    pub fn add_token(&mut self, token: &str, freq: u64) -> Result<()> {
        let seq = SymbolSequence::from_token(token)?;
        *self.entries.entry(seq).or_insert(0) += freq;
        Ok(())
    }

    /// Word types with their frequencies, in sorted order.
    pub fn iter(&self) -> impl Iterator<Item = (&SymbolSequence, u64)> {
        self.entries.iter().map(|(seq, &freq)| (seq, freq))
    }

    /// Number of distinct word types.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total token count: the sum of all frequencies. Invariant under
    /// [`apply_rule`](Self::apply_rule).
    pub fn total_tokens(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Rewrites every word type with the rule; word types that collide after
    /// merging have their frequencies summed.
    pub fn apply_rule(&self, rule: &MergeRule) -> WordTypeCorpus {
        let mut entries = BTreeMap::new();
        for (seq, &freq) in &self.entries {
            let merged = if seq.contains_pair(rule.left(), rule.right()) {
                seq.apply_rule(rule)
            } else {
                seq.clone()
            };
            *entries.entry(merged).or_insert(0) += freq;
        }
        WordTypeCorpus { entries }
    }

    /// Counts every adjacent symbol pair across all word types, weighted by
    /// word frequency. Pairs never span two word types. Dispatches to the
    /// parallel implementation when the `parallel` feature is enabled.
    pub fn pair_counts(&self) -> PairCounts {
        #[cfg(feature = "parallel")]
        {
            self.pair_counts_par()
        }
        #[cfg(not(feature = "parallel"))]
        {
            self.pair_counts_seq()
        }
    }

    /// Sequential pair counting.
    pub fn pair_counts_seq(&self) -> PairCounts {
        let mut counts = BTreeMap::new();
        for (seq, &freq) in &self.entries {
            accumulate_pairs(&mut counts, seq, freq);
        }
        PairCounts { counts }
    }

    /// Parallel pair counting over word-type shards. Per-shard maps are
    /// merged by summation, so the result is identical to sequential
    /// accumulation.
    #[cfg(feature = "parallel")]
    pub fn pair_counts_par(&self) -> PairCounts {
        use rayon::prelude::*;

        let items: Vec<(&SymbolSequence, u64)> = self.iter().collect();
        let counts = items
            .par_chunks(256.max(items.len() / 64))
            .map(|chunk| {
                let mut local = BTreeMap::new();
                for &(seq, freq) in chunk {
                    accumulate_pairs(&mut local, seq, freq);
                }
                local
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (pair, count) in b {
                    *a.entry(pair).or_insert(0) += count;
                }
                a
            });
        PairCounts { counts }
    }
}

impl FromIterator<(SymbolSequence, u64)> for WordTypeCorpus {
    fn from_iter<T: IntoIterator<Item = (SymbolSequence, u64)>>(iter: T) -> Self {
        let mut entries = BTreeMap::new();
        for (seq, freq) in iter {
            *entries.entry(seq).or_insert(0) += freq;
        }
        Self { entries }
    }
}

fn accumulate_pairs(counts: &mut BTreeMap<SymbolPair, u64>, seq: &SymbolSequence, freq: u64) {
    for (left, right) in seq.adjacent_pairs() {
        *counts.entry((left.clone(), right.clone())).or_insert(0) += freq;
    }
}

/// Occurrence counts of adjacent symbol pairs. Zero-count pairs are absent;
/// iteration is always in lexicographic pair order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairCounts {
    counts: BTreeMap<SymbolPair, u64>,
}

impl PairCounts {
    pub fn new() -> Self {
        Self::default()
    }

    /// Count for a pair, zero if absent.
    pub fn get(&self, left: &Symbol, right: &Symbol) -> u64 {
        self.counts
            .get(&(left.clone(), right.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Pairs with their counts in lexicographic (left, right) order.
    pub fn iter(&self) -> impl Iterator<Item = (&SymbolPair, u64)> {
        self.counts.iter().map(|(pair, &count)| (pair, count))
    }

    /// Number of distinct pairs.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// Sum of all counts.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Applies a signed delta, dropping entries that reach zero.
    ///
    /// Panics if the delta would take a count below zero; callers only
    /// produce deltas derived from actual occurrences, so a negative result
    /// means the counts and corpus were out of sync.
    pub(crate) fn add_signed(&mut self, pair: &SymbolPair, delta: i64) {
        if delta == 0 {
            return;
        }
        if delta > 0 {
            *self.counts.entry(pair.clone()).or_insert(0) += delta as u64;
            return;
        }
        let magnitude = delta.unsigned_abs();
        match self.counts.get_mut(pair) {
            Some(count) if *count > magnitude => *count -= magnitude,
            Some(count) if *count == magnitude => {
                self.counts.remove(pair);
            }
            _ => panic!("pair count underflow for {pair:?}"),
        }
    }
}

impl FromIterator<(SymbolPair, u64)> for PairCounts {
    fn from_iter<T: IntoIterator<Item = (SymbolPair, u64)>>(iter: T) -> Self {
        let mut counts = BTreeMap::new();
        for (pair, count) in iter {
            if count > 0 {
                *counts.entry(pair).or_insert(0) += count;
            }
        }
        Self { counts }
    }
}
