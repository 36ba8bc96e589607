//! Statistical checks on the seeded sampler: empirical frequencies against
//! binomial intervals and chi-square goodness of fit against the analytic
//! selection distributions.

use bpekit_core::{
    choose_pair, merge_file::merges_to_bytes, sample_categorical, selection_probabilities,
    train_bpe, PairCounts, RandomSource, SamplingMethod, SelectionDistribution, Symbol, SymbolPair,
    WordTypeCorpus,
};

fn pair(l: &str, r: &str) -> SymbolPair {
    (Symbol::new(l).unwrap(), Symbol::new(r).unwrap())
}

fn counts(entries: &[(&str, &str, u64)]) -> PairCounts {
    entries.iter().map(|&(l, r, c)| (pair(l, r), c)).collect()
}

/// Upper critical values of the chi-square distribution at significance
/// 0.001, by degrees of freedom.
fn chi_square_critical(dof: usize) -> f64 {
    match dof {
        1 => 10.828,
        2 => 13.816,
        3 => 16.266,
        4 => 18.467,
        5 => 20.515,
        _ => panic!("no tabulated critical value for {dof} degrees of freedom"),
    }
}

/// Chi-square statistic of observed draw counts against the analytic
/// distribution, skipping negligible-probability outcomes.
fn chi_square_statistic(
    dist: &SelectionDistribution,
    observed: &[u64],
    draws: u64,
) -> (f64, usize) {
    let mut statistic = 0.0;
    let mut dof: isize = -1;
    for (p, &o) in dist.probs().iter().zip(observed) {
        if *p < 1e-9 {
            assert_eq!(o, 0, "draw landed on a negligible-probability outcome");
            continue;
        }
        let expected = p * draws as f64;
        statistic += (o as f64 - expected).powi(2) / expected;
        dof += 1;
    }
    (statistic, dof as usize)
}

fn draw_histogram(dist: &SelectionDistribution, seed: u64, draws: u64) -> Vec<u64> {
    let mut observed = vec![0u64; dist.len()];
    let mut rng = RandomSource::new(seed);
    for _ in 0..draws {
        let picked = sample_categorical(dist, &mut rng);
        let idx = dist
            .pairs()
            .binary_search(&picked)
            .expect("sampled pair is in the distribution");
        observed[idx] += 1;
    }
    observed
}

fn assert_goodness_of_fit(counts: &PairCounts, method: SamplingMethod, seed: u64) {
    const DRAWS: u64 = 10_000;
    let dist = selection_probabilities(counts, method).unwrap();
    let observed = draw_histogram(&dist, seed, DRAWS);
    let (statistic, dof) = chi_square_statistic(&dist, &observed, DRAWS);
    assert!(dof >= 1, "need at least two non-negligible outcomes");
    let critical = chi_square_critical(dof);
    assert!(
        statistic < critical,
        "{method}: chi-square {statistic:.3} exceeds critical {critical} at dof {dof}"
    );
}

#[test]
fn uniform_draws_fit_the_analytic_distribution() {
    let four = counts(&[
        ("a", "b", 5),
        ("c", "d", 50),
        ("e", "f", 500),
        ("g", "h", 5000),
    ]);
    assert_goodness_of_fit(&four, SamplingMethod::Uniform, 2024);
}

#[test]
fn countprop_draws_fit_the_analytic_distribution() {
    let skew = counts(&[
        ("a", "b", 5),
        ("c", "d", 50),
        ("e", "f", 500),
        ("g", "h", 5000),
    ]);
    assert_goodness_of_fit(&skew, SamplingMethod::CountProp, 2024);
    let two = counts(&[("a", "b", 3), ("c", "d", 1)]);
    assert_goodness_of_fit(&two, SamplingMethod::CountProp, 99);
}

#[test]
fn softmax_draws_fit_the_analytic_distribution() {
    // small count gaps keep several outcomes non-negligible
    let gentle = counts(&[("a", "b", 3), ("c", "d", 3), ("e", "f", 2), ("g", "h", 2)]);
    assert_goodness_of_fit(&gentle, SamplingMethod::Softmax, 777);
}

#[test]
fn countprop_heavy_pair_frequency_within_binomial_interval() {
    // 10,000 independent first draws, seeds 0..9999; p = 0.75, the interval
    // is the +/- 3 sigma band around it
    let dist = selection_probabilities(
        &counts(&[("a", "b", 3), ("c", "d", 1)]),
        SamplingMethod::CountProp,
    )
    .unwrap();
    let mut heavy = 0u64;
    for seed in 0..10_000u64 {
        let mut rng = RandomSource::new(seed);
        if sample_categorical(&dist, &mut rng) == pair("a", "b") {
            heavy += 1;
        }
    }
    let frequency = heavy as f64 / 10_000.0;
    assert!(
        (0.737..=0.763).contains(&frequency),
        "heavy-pair frequency {frequency} outside [0.737, 0.763]"
    );
}

#[test]
fn uniform_ignores_extreme_count_skew() {
    let skew = counts(&[("a", "b", 1_000_000), ("c", "d", 1)]);
    let mut rare = 0u64;
    for seed in 0..10_000u64 {
        let mut rng = RandomSource::new(seed);
        if choose_pair(&skew, SamplingMethod::Uniform, &mut rng).unwrap() == pair("c", "d") {
            rare += 1;
        }
    }
    let frequency = rare as f64 / 10_000.0;
    assert!(
        (0.485..=0.515).contains(&frequency),
        "rare-pair frequency {frequency} outside [0.485, 0.515]"
    );
}

#[test]
fn uniform_training_is_seed_sensitive() {
    // a corpus with well over 20 distinct pairs
    let corpus = WordTypeCorpus::from_tokenized_lines([
        "alpha bravo charlie delta echo foxtrot golf hotel india juliet",
        "kilo lima mike november oscar papa quebec romeo sierra tango",
    ])
    .unwrap();
    assert!(corpus.pair_counts_seq().len() >= 20);

    let tables: Vec<Vec<u8>> = (0..10u64)
        .map(|seed| merges_to_bytes(&train_bpe(&corpus, 5, SamplingMethod::Uniform, seed)))
        .collect();
    let mut distinct = tables.clone();
    distinct.sort();
    distinct.dedup();
    assert!(
        distinct.len() >= 2,
        "expected at least two distinct tables across 10 seeds, got {}",
        distinct.len()
    );
}

#[test]
fn standard_training_is_seed_invariant() {
    let corpus = WordTypeCorpus::from_tokenized_lines([
        "alpha bravo charlie delta echo foxtrot golf hotel india juliet",
    ])
    .unwrap();
    let reference = merges_to_bytes(&train_bpe(&corpus, 10, SamplingMethod::Standard, 0));
    for seed in 1..10u64 {
        assert_eq!(
            merges_to_bytes(&train_bpe(&corpus, 10, SamplingMethod::Standard, seed)),
            reference
        );
    }
}

#[test]
fn softmax_tail_underflow_makes_pairs_unsampleable() {
    // count gap of 1000 underflows exp to exactly zero; the tail pair can
    // never be drawn, matching the true distribution to machine precision
    let gap = counts(&[("a", "b", 2000), ("c", "d", 1000)]);
    let dist = selection_probabilities(&gap, SamplingMethod::Softmax).unwrap();
    assert_eq!(dist.prob_of(&pair("c", "d")), 0.0);
    for seed in 0..1000u64 {
        let mut rng = RandomSource::new(seed);
        assert_eq!(sample_categorical(&dist, &mut rng), pair("a", "b"));
    }
}
