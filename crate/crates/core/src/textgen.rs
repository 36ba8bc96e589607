//! Deterministic English-like corpus synthesis.
//!
//! Tests, benchmarks and demos need a tokenized corpus with realistic
//! statistics — Zipf-distributed word frequencies and morphological variant
//! families — without shipping or downloading one. The generator derives a
//! vocabulary from common English stems and suffixes, ranks it with a
//! seeded shuffle, and samples sentences from a Zipf distribution. The same
//! (target, seed) always produces the same lines.

use crate::rng::RandomSource;

const STEMS: &[&str] = &[
    "time",
    "year",
    "people",
    "way",
    "day",
    "man",
    "thing",
    "woman",
    "life",
    "child",
    "world",
    "school",
    "state",
    "family",
    "student",
    "group",
    "country",
    "problem",
    "hand",
    "part",
    "place",
    "case",
    "week",
    "company",
    "system",
    "program",
    "question",
    "work",
    "govern",
    "number",
    "night",
    "point",
    "home",
    "water",
    "room",
    "mother",
    "area",
    "money",
    "story",
    "fact",
    "month",
    "lot",
    "right",
    "study",
    "book",
    "eye",
    "job",
    "word",
    "business",
    "issue",
    "side",
    "kind",
    "head",
    "house",
    "service",
    "friend",
    "father",
    "power",
    "hour",
    "game",
    "line",
    "end",
    "member",
    "law",
    "car",
    "city",
    "community",
    "name",
    "president",
    "team",
    "minute",
    "idea",
    "body",
    "information",
    "back",
    "parent",
    "face",
    "others",
    "level",
    "office",
    "door",
    "health",
    "person",
    "art",
    "war",
    "history",
    "party",
    "result",
    "change",
    "morning",
    "reason",
    "research",
    "girl",
    "guy",
    "moment",
    "air",
    "teacher",
    "force",
    "education",
    "be",
    "have",
    "do",
    "say",
    "get",
    "make",
    "go",
    "know",
    "take",
    "see",
    "come",
    "think",
    "look",
    "want",
    "give",
    "use",
    "find",
    "tell",
    "ask",
    "seem",
    "feel",
    "try",
    "leave",
    "call",
    "walk",
    "turn",
    "start",
    "show",
    "hear",
    "play",
    "run",
    "move",
    "like",
    "live",
    "believe",
    "hold",
    "bring",
    "happen",
    "write",
    "provide",
    "sit",
    "stand",
    "lose",
    "pay",
    "meet",
    "include",
    "continue",
    "set",
    "learn",
    "lead",
    "understand",
    "watch",
    "follow",
    "stop",
    "create",
    "speak",
    "read",
    "allow",
    "add",
    "spend",
    "grow",
    "open",
    "remember",
    "love",
    "consider",
    "appear",
    "buy",
    "wait",
    "serve",
    "die",
    "send",
    "expect",
    "build",
    "stay",
    "fall",
    "cut",
    "reach",
    "kill",
    "remain",
    "suggest",
    "raise",
    "pass",
    "sell",
    "require",
    "report",
    "decide",
    "pull",
    "good",
    "new",
    "first",
    "last",
    "long",
    "great",
    "little",
    "own",
    "other",
    "old",
    "big",
    "high",
    "small",
    "large",
    "next",
    "early",
    "young",
    "important",
    "few",
    "public",
    "bad",
    "same",
    "able",
    "strong",
    "certain",
    "clear",
    "recent",
    "late",
    "hard",
    "major",
    "better",
    "economic",
    "simple",
    "possible",
    "whole",
    "free",
    "military",
    "true",
    "federal",
    "international",
    "full",
    "special",
    "easy",
    "slow",
    "deep",
    "quick",
    "bright",
    "dark",
    "warm",
    "cold",
    "light",
    "heavy",
    "soft",
    "quiet",
];

const SUFFIXES: &[&str] = &[
    "", "s", "ed", "ing", "er", "est", "ly", "ness", "ment", "tion", "al", "ful", "less",
];

const ZIPF_EXPONENT: f64 = 1.07;
const VOCAB_SHUFFLE_SEED: u64 = 0x5EED_C0DE;

/// The derived vocabulary in rank order: most frequent form first.
pub fn vocabulary() -> Vec<String> {
    let mut forms = Vec::new();
    for (i, stem) in STEMS.iter().enumerate() {
        for (j, suffix) in SUFFIXES.iter().enumerate() {
            // Each stem takes roughly half the suffixes; which half varies
            // by stem so variant families differ in shape.
            if j > 0 && (i * 7 + j * 13) % 5 < 2 {
                continue;
            }
            forms.push(attach(stem, suffix));
        }
    }
    forms.sort();
    forms.dedup();

    // Seeded Fisher-Yates so frequency rank is not correlated with the
    // alphabetical order of the stems.
    let mut rng = RandomSource::new(VOCAB_SHUFFLE_SEED);
    for i in (1..forms.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        forms.swap(i, j);
    }
    forms
}

fn attach(stem: &str, suffix: &str) -> String {
    if suffix.is_empty() {
        return stem.to_string();
    }
    let mut base = stem.to_string();
    // drop a silent final e before vowel-initial suffixes: time+ing -> timing
    if base.ends_with('e') && suffix.starts_with(['e', 'i']) {
        base.pop();
    }
    base.push_str(suffix);
    base
}

/// Generates whitespace-tokenized lines totalling at least `target_tokens`
/// tokens, deterministically from `seed`.
pub fn generate_lines(target_tokens: usize, seed: u64) -> Vec<String> {
    let vocab = vocabulary();
    let cdf = zipf_cdf(vocab.len());
    let mut rng = RandomSource::new(seed);

    let mut lines = Vec::new();
    let mut emitted = 0usize;
    while emitted < target_tokens {
        let len = 5 + (rng.next_u64() % 12) as usize;
        let mut line = String::new();
        for i in 0..len {
            if i > 0 {
                line.push(' ');
            }
            let u = rng.next_f64();
            let idx = cdf.partition_point(|&c| c <= u);
            line.push_str(&vocab[idx.min(vocab.len() - 1)]);
        }
        emitted += len;
        lines.push(line);
    }
    lines
}

fn zipf_cdf(n: usize) -> Vec<f64> {
    let weights: Vec<f64> = (0..n)
        .map(|rank| 1.0 / ((rank + 1) as f64).powf(ZIPF_EXPONENT))
        .collect();
    let total: f64 = weights.iter().sum();
    let mut acc = 0.0;
    weights
        .into_iter()
        .map(|w| {
            acc += w / total;
            acc
        })
        .collect()
}
