//! The merge-learning loop.
//!
//! Each iteration selects one pair under the configured policy, records the
//! merge, and rewrites the corpus. [`train_bpe`] keeps pair counts up to
//! date incrementally, touching only word types that contain the merged
//! pair; [`train_bpe_full_recount`] recounts everything every iteration and
//! serves as the slow reference the incremental path is checked against.
//! Both consume the random source identically (one draw per iteration for
//! sampled methods, none for standard), so for a given (corpus, merges,
//! method, seed) they produce identical merge tables.

use std::collections::HashMap;

use crate::corpus::{PairCounts, SymbolPair, WordTypeCorpus};
use crate::error::{Error, Result};
use crate::policy::{choose_pair, SamplingMethod};
use crate::rng::RandomSource;
use crate::symbol::{apply_pair, slice_contains_pair, MergeRule, Symbol, END_OF_WORD};

/// How a merge table came to be: the training configuration plus whether
/// the pair supply ran out before the requested budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrainingProvenance {
    pub method: SamplingMethod,
    pub seed: u64,
    pub requested_merges: usize,
    pub early_stopped: bool,
}

/// An ordered list of learned merges with ranks `0..len`, optionally
/// carrying its training provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct MergeTable {
    rules: Vec<MergeRule>,
    provenance: Option<TrainingProvenance>,
}

impl MergeTable {
    /// Builds a table from pairs in rank order, validating that every rule
    /// only references symbols producible from single characters, the
    /// end-of-word marker, or earlier merges.
    pub fn from_pairs(pairs: Vec<SymbolPair>) -> Result<Self> {
        let rules = pairs
            .into_iter()
            .enumerate()
            .map(|(rank, (left, right))| MergeRule::new(left, right, rank))
            .collect();
        let table = Self {
            rules,
            provenance: None,
        };
        table.validate_constructibility()?;
        Ok(table)
    }

    /// Learned rules in rank order.
    pub fn rules(&self) -> &[MergeRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Training provenance, if known. Tables read from a merge file without
    /// a sidecar have none.
    pub fn provenance(&self) -> Option<&TrainingProvenance> {
        self.provenance.as_ref()
    }

    /// Attaches provenance (used when a sidecar is read alongside a file).
    pub fn with_provenance(mut self, provenance: TrainingProvenance) -> Self {
        self.provenance = Some(provenance);
        self
    }

    /// The table restricted to its first `k` rules. Provenance is dropped:
    /// a truncated table was not produced by the recorded run.
    pub fn truncated(&self, k: usize) -> MergeTable {
        MergeTable {
            rules: self.rules.iter().take(k).cloned().collect(),
            provenance: None,
        }
    }

    /// Checks the rank invariant: each rule's sides must be a single
    /// character, the end-of-word marker, or the merged symbol of a
    /// strictly lower-ranked rule.
    pub fn validate_constructibility(&self) -> Result<()> {
        let mut producible: std::collections::HashSet<&str> = std::collections::HashSet::new();
        for rule in &self.rules {
            for side in [rule.left(), rule.right()] {
                if !is_atomic(side.as_str()) && !producible.contains(side.as_str()) {
                    return Err(Error::Unconstructible {
                        rank: rule.rank(),
                        symbol: side.as_str().to_string(),
                    });
                }
            }
            producible.insert(rule.merged().as_str());
        }
        Ok(())
    }
}

fn is_atomic(text: &str) -> bool {
    text == END_OF_WORD || text.chars().count() == 1
}

/// Learns up to `merges` rules from the corpus under the given policy.
///
/// Stops early when no adjacent pairs remain; the shortfall is recorded as
/// `early_stopped` in the provenance rather than reported as an error. Pair
/// counts are maintained incrementally via an occurrence index, so each
/// merge costs time proportional to the words actually containing the pair.
pub fn train_bpe(
    corpus: &WordTypeCorpus,
    merges: usize,
    method: SamplingMethod,
    seed: u64,
) -> MergeTable {
    let mut rng = RandomSource::new(seed);
    let mut words: Vec<TrainWord> = corpus
        .iter()
        .map(|(seq, freq)| TrainWord {
            symbols: seq.symbols().to_vec(),
            freq,
        })
        .collect();

    let mut counts = PairCounts::new();
    let mut index: HashMap<SymbolPair, Vec<usize>> = HashMap::new();
    for (id, word) in words.iter().enumerate() {
        for w in word.symbols.windows(2) {
            let pair = (w[0].clone(), w[1].clone());
            counts.add_signed(&pair, word.freq as i64);
            index.entry(pair).or_default().push(id);
        }
    }

    let mut rules = Vec::with_capacity(merges);
    let mut early_stopped = false;

    for rank in 0..merges {
        if counts.is_empty() {
            early_stopped = true;
            break;
        }
        let (left, right) =
            choose_pair(&counts, method, &mut rng).expect("counts verified non-empty");
        let rule = MergeRule::new(left.clone(), right.clone(), rank);

        // Entries are a superset of the words currently containing the
        // pair: stale ids fail the containment check, duplicates collapse.
        let mut ids = index.remove(&(left, right)).unwrap_or_default();
        ids.sort_unstable();
        ids.dedup();

        for id in ids {
            let word = &mut words[id];
            if !slice_contains_pair(&word.symbols, rule.left(), rule.right()) {
                continue;
            }
            let freq = word.freq as i64;
            let new_symbols = apply_pair(&word.symbols, rule.left(), rule.right(), rule.merged());

            for w in word.symbols.windows(2) {
                counts.add_signed(&(w[0].clone(), w[1].clone()), -freq);
            }
            for w in new_symbols.windows(2) {
                counts.add_signed(&(w[0].clone(), w[1].clone()), freq);
            }
            // Fresh adjacencies can only appear around the merged symbol.
            for (i, sym) in new_symbols.iter().enumerate() {
                if sym != rule.merged() {
                    continue;
                }
                if i > 0 {
                    index
                        .entry((new_symbols[i - 1].clone(), sym.clone()))
                        .or_default()
                        .push(id);
                }
                if i + 1 < new_symbols.len() {
                    index
                        .entry((sym.clone(), new_symbols[i + 1].clone()))
                        .or_default()
                        .push(id);
                }
            }
            word.symbols = new_symbols;
        }
        rules.push(rule);
    }

    MergeTable {
        rules,
        provenance: Some(TrainingProvenance {
            method,
            seed,
            requested_merges: merges,
            early_stopped,
        }),
    }
}

/// Reference trainer: recounts all pairs from scratch every iteration and
/// rewrites the whole corpus per merge. Slow but transparently correct;
/// [`train_bpe`] is property-tested against it.
pub fn train_bpe_full_recount(
    corpus: &WordTypeCorpus,
    merges: usize,
    method: SamplingMethod,
    seed: u64,
) -> MergeTable {
    let mut rng = RandomSource::new(seed);
    let mut state = corpus.clone();
    let mut rules = Vec::with_capacity(merges);
    let mut early_stopped = false;

    for rank in 0..merges {
        let counts = state.pair_counts_seq();
        if counts.is_empty() {
            early_stopped = true;
            break;
        }
        let (left, right) =
            choose_pair(&counts, method, &mut rng).expect("counts verified non-empty");
        let rule = MergeRule::new(left, right, rank);
        state = state.apply_rule(&rule);
        rules.push(rule);
    }

    MergeTable {
        rules,
        provenance: Some(TrainingProvenance {
            method,
            seed,
            requested_merges: merges,
            early_stopped,
        }),
    }
}

/// Rewrites pair counts to reflect one rule application, touching only the
/// word types that contain the merged pair.
///
/// Precondition (unchecked): `counts` equals the pair counts of `corpus`
/// before the merge. Under that precondition the result equals a full
/// recount of `corpus.apply_rule(rule)`.
pub fn update_counts_incremental(
    counts: &PairCounts,
    corpus: &WordTypeCorpus,
    rule: &MergeRule,
) -> PairCounts {
    let mut updated = counts.clone();
    for (seq, freq) in corpus.iter() {
        if !seq.contains_pair(rule.left(), rule.right()) {
            continue;
        }
        let merged = seq.apply_rule(rule);
        let freq = freq as i64;
        for (l, r) in seq.adjacent_pairs() {
            updated.add_signed(&(l.clone(), r.clone()), -freq);
        }
        for (l, r) in merged.adjacent_pairs() {
            updated.add_signed(&(l.clone(), r.clone()), freq);
        }
    }
    updated
}

struct TrainWord {
    symbols: Vec<Symbol>,
    freq: u64,
}

/// Replays a merge table against a corpus, yielding the end-of-training
/// corpus state. Used by consistency checks and the statistics pipeline.
pub fn replay_table(corpus: &WordTypeCorpus, table: &MergeTable) -> WordTypeCorpus {
    let mut state = corpus.clone();
    for rule in table.rules() {
        state = state.apply_rule(rule);
    }
    state
}
