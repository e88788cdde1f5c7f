//! Property tests over randomized corpora and counts.

mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::CorpusGen;
use wsd_core::corpus::Corpus;
use wsd_core::declist::{weight, DecisionList, Outcome};
use wsd_core::eval::EvalReport;
use wsd_core::features::{enumerate_targets, extract, Family, FeatureConfig, Window};

proptest! {
    /// parse(serialize(c)) is the identity, and serialization is stable.
    #[test]
    fn corpus_round_trip(seed in any::<u64>()) {
        let (corpus, _, _) = CorpusGen::new(seed).next();
        let text = corpus.to_text();
        let reparsed = Corpus::parse(&text).unwrap();
        prop_assert_eq!(&reparsed, &corpus);
        prop_assert_eq!(reparsed.to_text(), text);
    }

    /// Enlarging the enabled-kind set never removes a feature, extraction
    /// is pure, and outputs are duplicate-free by construction.
    #[test]
    fn extraction_monotone_and_pure(seed in any::<u64>(), subset_mask in 1u16..(1 << 12)) {
        let (corpus, inv, word) = CorpusGen::new(seed).next();
        let examples = enumerate_targets(&corpus, &word);
        let small = FeatureConfig {
            families: Family::ALL
                .into_iter()
                .enumerate()
                .filter(|(i, _)| subset_mask & (1 << i) != 0)
                .map(|(_, f)| f)
                .collect(),
            windows: [Window::Words(4), Window::Sentence].into(),
            pos_granularity: Default::default(),
        };
        let mut big = FeatureConfig::all();
        big.windows = small.windows.clone();
        for example in examples.iter().take(8) {
            let a = extract(example, &small, &inv);
            let b = extract(example, &big, &inv);
            prop_assert!(a.is_subset(&b), "small config produced features the superset lacks");
            prop_assert_eq!(&a, &extract(example, &small, &inv));
        }
    }

    /// Wider bag windows only add members, never remove them.
    #[test]
    fn window_growth_is_monotone(seed in any::<u64>()) {
        let (corpus, inv, word) = CorpusGen::new(seed).next();
        let examples = enumerate_targets(&corpus, &word);
        let narrow = FeatureConfig::parse("kinds = bag_lem\nwindows = 20\n").unwrap();
        let wide = FeatureConfig::parse("kinds = bag_lem\nwindows = 20, 50\n").unwrap();
        for example in examples.iter().take(8) {
            let a = extract(example, &narrow, &inv);
            let b = extract(example, &wide, &inv);
            prop_assert!(a.is_subset(&b));
            let values = |set: &BTreeSet<wsd_core::features::Feature>, suffix: &str| -> BTreeSet<String> {
                set.iter()
                    .filter(|f| f.kind.name().ends_with(suffix))
                    .map(|f| f.value.clone())
                    .collect()
            };
            prop_assert!(values(&b, "20w").is_subset(&values(&b, "50w")));
        }
    }

    /// ln(count_for / count_rest) is invariant under integer scaling while
    /// the rest count stays positive.
    #[test]
    fn weight_scaling_invariance(c in 1u32..2000, r in 1u32..2000, k in 1u32..1000) {
        prop_assert_eq!(weight(c * k, r * k), weight(c, r));
    }

    /// Strict monotonicity of the weight in both arguments.
    #[test]
    fn weight_monotone(c in 1u32..5000, r in 0u32..5000) {
        prop_assert!(weight(c + 1, r) > weight(c, r));
        prop_assert!(weight(c, r + 1) < weight(c, r));
    }

    /// recall = precision * coverage on arbitrary consistent counts.
    #[test]
    fn report_identity(n in 0u64..10_000, a_frac in 0.0f64..=1.0, c_frac in 0.0f64..=1.0) {
        let a = (n as f64 * a_frac).floor() as u64;
        let c = a as f64 * c_frac;
        let report = EvalReport { n, a, c };
        prop_assert!((report.recall() - report.precision() * report.coverage()).abs() <= 1e-12);
    }
}

/// Training on a corpus with every document duplicated scales every count
/// by two; rules whose rest count was positive keep their exact weight and
/// unsmoothed decisions are unchanged.
#[test]
fn duplicated_corpus_keeps_unsmoothed_weights() {
    let mut generator = CorpusGen::new(0xD0);
    for _ in 0..20 {
        let (corpus, inv, word) = generator.next();
        let examples = enumerate_targets(&corpus, &word);
        if examples.is_empty() {
            continue;
        }
        let mut doubled = corpus.clone();
        for doc in corpus.documents.iter() {
            let mut copy = doc.clone();
            copy.id = format!("{}-copy", doc.id);
            for sentence in &mut copy.sentences {
                sentence.doc_id = copy.id.clone();
            }
            doubled.documents.push(copy);
        }
        let config = FeatureConfig::basic();
        let single = DecisionList::train(&examples, &config, &inv).unwrap();
        let doubled_examples = enumerate_targets(&doubled, &word);
        let double = DecisionList::train(&doubled_examples, &config, &inv).unwrap();
        for entry in single.entries() {
            if entry.count_for < entry.count_total {
                let twin = double
                    .entries()
                    .iter()
                    .find(|e| e.feature == entry.feature && e.class == entry.class)
                    .expect("scaled rule survives");
                assert_eq!(twin.weight, entry.weight);
                assert_eq!(twin.count_for, entry.count_for * 2);
                assert_eq!(twin.count_total, entry.count_total * 2);
            }
        }
    }
}

/// classify never names a sense outside the word's inventory entry.
#[test]
fn classify_stays_inside_inventory() {
    let mut generator = CorpusGen::new(0xC1A55);
    for _ in 0..20 {
        let (corpus, inv, word) = generator.next();
        let examples = enumerate_targets(&corpus, &word);
        if examples.len() < 2 {
            continue;
        }
        let config = FeatureConfig::basic();
        let (train, test) = examples.split_at(examples.len() / 2);
        let list = DecisionList::train(train, &config, &inv).unwrap();
        let valid: BTreeSet<_> = inv.senses(&word).iter().map(|e| e.id.clone()).collect();
        for example in test {
            let features = extract(example, &config, &inv);
            match list.classify(&features).outcome {
                Outcome::Decided(s) => assert!(valid.contains(&s)),
                Outcome::Tied(set) => assert!(set.iter().all(|s| valid.contains(s))),
                Outcome::Abstain => {}
            }
        }
    }
}
