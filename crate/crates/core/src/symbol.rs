//! Symbols and per-word symbol sequences.
//!
//! A [`Symbol`] is an atomic unit at some stage of merging: a single
//! character, a merged chunk, or the end-of-word marker. A
//! [`SymbolSequence`] is one word's current segmentation state; during
//! training and application it always carries the marker in (or fused into)
//! its final symbol.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Sentinel appended to every word so merges can tell word-final contexts
/// apart from word-internal ones. Stripped again on segmented output.
pub const END_OF_WORD: &str = "</w>";

/// An atomic subword unit. Non-empty, whitespace-free text; the distinguished
/// end-of-word marker is an ordinary symbol that compares like any other
/// string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    /// Builds a symbol, rejecting empty or whitespace-containing text.
    pub fn new(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::Validation("symbol text must be non-empty".into()));
        }
        if text.chars().any(char::is_whitespace) {
            return Err(Error::Validation(format!(
                "symbol {text:?} contains whitespace"
            )));
        }
        Ok(Self(Arc::from(text)))
    }

    pub(crate) fn from_char(c: char) -> Self {
        let mut buf = [0u8; 4];
        Self(Arc::from(c.encode_utf8(&mut buf) as &str))
    }

    /// The end-of-word marker symbol.
    pub fn end_of_word() -> Self {
        Self(Arc::from(END_OF_WORD))
    }

    /// Symbol text.
    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Concatenation of `self` and `other`, the result of merging them.
    pub fn merge_with(&self, other: &Symbol) -> Symbol {
        let mut text = String::with_capacity(self.0.len() + other.0.len());
        text.push_str(&self.0);
        text.push_str(&other.0);
        Symbol(Arc::from(text.as_str()))
    }

    /// True for the bare end-of-word marker.
    pub fn is_end_of_word(&self) -> bool {
        &*self.0 == END_OF_WORD
    }

    /// True if the marker has been fused into this symbol's tail.
    pub fn ends_with_marker(&self) -> bool {
        self.0.ends_with(END_OF_WORD)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A learned rewrite `(left, right) -> merged` with its position in the
/// merge order. `merged` is always the concatenation of the two sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MergeRule {
    left: Symbol,
    right: Symbol,
    merged: Symbol,
    rank: usize,
}

impl MergeRule {
    /// Builds a rule; the merged symbol is derived from the pair.
    pub fn new(left: Symbol, right: Symbol, rank: usize) -> Self {
        let merged = left.merge_with(&right);
        Self {
            left,
            right,
            merged,
            rank,
        }
    }

    pub fn left(&self) -> &Symbol {
        &self.left
    }

    pub fn right(&self) -> &Symbol {
        &self.right
    }

    pub fn merged(&self) -> &Symbol {
        &self.merged
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// One word's segmentation state: an ordered, non-empty list of symbols.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SymbolSequence(Vec<Symbol>);

impl SymbolSequence {
    /// Wraps a non-empty symbol list.
    pub fn new(symbols: Vec<Symbol>) -> Self {
        assert!(!symbols.is_empty(), "symbol sequence must be non-empty");
        Self(symbols)
    }

    /// Splits a token into character symbols plus a trailing end-of-word
    /// marker. Tokens containing the marker as literal text are rejected:
    /// the interchange format has no escaping sublanguage.
    pub fn from_token(token: &str) -> Result<Self> {
        if token.is_empty() {
            return Err(Error::Validation("token must be non-empty".into()));
        }
        if token.chars().any(char::is_whitespace) {
            return Err(Error::Validation(format!(
                "token {token:?} contains whitespace"
            )));
        }
        if token.contains(END_OF_WORD) {
            return Err(Error::ReservedMarker {
                token: token.to_string(),
            });
        }
        let mut symbols: Vec<Symbol> = token.chars().map(Symbol::from_char).collect();
        symbols.push(Symbol::end_of_word());
        Ok(Self(symbols))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    /// Adjacent symbol pairs, one per position; overlapping positions such
    /// as `a a a` each yield a pair.
    pub fn adjacent_pairs(&self) -> impl Iterator<Item = (&Symbol, &Symbol)> {
        self.0.windows(2).map(|w| (&w[0], &w[1]))
    }

    /// Replaces every left-to-right non-overlapping occurrence of the rule's
    /// pair with its merged symbol.
    pub fn apply_rule(&self, rule: &MergeRule) -> SymbolSequence {
        SymbolSequence(apply_pair(
            &self.0,
            rule.left(),
            rule.right(),
            rule.merged(),
        ))
    }

    /// True if the rule's pair occurs somewhere in the sequence.
    pub fn contains_pair(&self, left: &Symbol, right: &Symbol) -> bool {
        self.0.windows(2).any(|w| &w[0] == left && &w[1] == right)
    }

    /// The original token text: all symbol text concatenated, with the
    /// end-of-word marker removed.
    pub fn surface_form(&self) -> String {
        let mut text = String::new();
        for sym in &self.0 {
            text.push_str(sym.as_str());
        }
        match text.strip_suffix(END_OF_WORD) {
            Some(stripped) => stripped.to_string(),
            None => text,
        }
    }
}

impl fmt::Display for SymbolSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, sym) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{sym}")?;
        }
        Ok(())
    }
}

pub(crate) fn slice_contains_pair(symbols: &[Symbol], left: &Symbol, right: &Symbol) -> bool {
    symbols.windows(2).any(|w| &w[0] == left && &w[1] == right)
}

/// Shared left-to-right non-overlapping replacement over a symbol slice.
pub(crate) fn apply_pair(
    symbols: &[Symbol],
    left: &Symbol,
    right: &Symbol,
    merged: &Symbol,
) -> Vec<Symbol> {
    let mut out = Vec::with_capacity(symbols.len());
    let mut i = 0;
    while i < symbols.len() {
        if i + 1 < symbols.len() && &symbols[i] == left && &symbols[i + 1] == right {
            out.push(merged.clone());
            i += 2; // consumed both halves; overlapping occurrences skip
        } else {
            out.push(symbols[i].clone());
            i += 1;
        }
    }
    out
}
