//! The most-frequent-sense and random baselines.

use std::collections::BTreeMap;

use crate::corpus::{SenseId, SenseInventory};
use crate::declist::Prediction;
use crate::error::{Error, Result};
use crate::features::TrainingExample;

use super::folds::FoldPlan;
use super::{score, EvalReport};

/// The sense with the highest training count; count ties break toward the
/// lowest sense index. Multi-tagged examples count once per gold sense.
pub fn majority_sense(train: &[TrainingExample<'_>]) -> Result<SenseId> {
    if train.is_empty() {
        return Err(Error::invalid("cannot take a majority over zero examples"));
    }
    let mut counts: BTreeMap<&SenseId, u32> = BTreeMap::new();
    for example in train {
        for sense in &example.gold {
            *counts.entry(sense).or_insert(0) += 1;
        }
    }
    let mut best: Option<(&SenseId, u32)> = None;
    for (sense, count) in counts {
        match best {
            Some((_, c)) if c >= count => {}
            _ => best = Some((sense, count)),
        }
    }
    Ok(best.expect("non-empty training set").0.clone())
}

/// Predicts the training-majority sense for every test instance.
/// Coverage is always 1.0.
pub fn mfs_baseline(
    train: &[TrainingExample<'_>],
    test: &[TrainingExample<'_>],
) -> Result<EvalReport> {
    let majority = majority_sense(train)?;
    let predictions: Vec<Prediction<SenseId>> = test
        .iter()
        .map(|_| Prediction::decided(majority.clone()))
        .collect();
    let gold: Vec<_> = test.iter().map(|e| e.gold.clone()).collect();
    score(&predictions, &gold)
}

/// MFS under a fold plan: each fold's majority comes from the remaining
/// folds, mirroring how the decision list is cross-validated.
pub fn mfs_cross_validate(
    examples: &[TrainingExample<'_>],
    plan: &FoldPlan,
) -> Result<EvalReport> {
    let mut report = EvalReport::default();
    for fold in 0..plan.k() {
        let train: Vec<TrainingExample<'_>> = plan
            .train_indices(fold)
            .iter()
            .map(|&i| examples[i].clone())
            .collect();
        let test: Vec<TrainingExample<'_>> = plan
            .test_indices(fold)
            .iter()
            .map(|&i| examples[i].clone())
            .collect();
        report += mfs_baseline(&train, &test)?;
    }
    Ok(report)
}

/// The expected precision of a uniform random guess over the word's
/// senses: the mean of `|gold| / n_senses` over test instances. Reported
/// as an expectation, never sampled. Empty test sets score 0.
pub fn random_baseline(test: &[TrainingExample<'_>], inventory: &SenseInventory) -> f64 {
    if test.is_empty() {
        return 0.0;
    }
    let total: f64 = test
        .iter()
        .map(|e| {
            let n = inventory.n_senses(&e.target);
            if n == 0 {
                0.0
            } else {
                e.gold.len() as f64 / n as f64
            }
        })
        .sum();
    total / test.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{CoarsePos, Corpus, Word};
    use crate::features::enumerate_targets;

    fn corpus(tags: &[u32]) -> Corpus {
        let mut text = String::from("# doc d1\n");
        for t in tags {
            text.push_str(&format!("only\tonly\tNN\tnoun\tonly.noun.{t}\n\n"));
        }
        Corpus::parse(&text).unwrap()
    }

    fn inv(n: usize) -> SenseInventory {
        let mut text = String::new();
        for i in 1..=n {
            text.push_str(&format!("only\tnoun\t{i}\tnoun.act\t\tsense {i}\n"));
        }
        SenseInventory::parse(&text).unwrap()
    }

    #[test]
    fn mfs_predicts_training_majority() {
        let word = Word::new("only", CoarsePos::Noun);
        let train_c = corpus(&[1, 1, 1, 1, 1, 2, 2, 2]);
        let test_c = corpus(&[1, 1, 1, 2]);
        let train = enumerate_targets(&train_c, &word);
        let test = enumerate_targets(&test_c, &word);
        let report = mfs_baseline(&train, &test).unwrap();
        assert_eq!(report.coverage(), 1.0);
        assert_eq!(report.precision(), 0.75);

        let s1_corpus = corpus(&[1, 1]);
        let all_s1 = enumerate_targets(&s1_corpus, &word);
        assert_eq!(mfs_baseline(&train, &all_s1).unwrap().precision(), 1.0);
    }

    #[test]
    fn mfs_count_tie_breaks_to_lowest_index() {
        let word = Word::new("only", CoarsePos::Noun);
        let train_c = corpus(&[2, 2, 1, 1]);
        let train = enumerate_targets(&train_c, &word);
        assert_eq!(majority_sense(&train).unwrap().index, 1);
    }

    #[test]
    fn random_baseline_expected_values() {
        let word = Word::new("only", CoarsePos::Noun);
        let test_corpus = corpus(&[1, 2, 1]);
        let test = enumerate_targets(&test_corpus, &word);
        // Two senses, single gold tags: 0.50.
        assert_eq!(random_baseline(&test, &inv(2)), 0.5);
        // Seven senses: ~0.1429.
        assert!((random_baseline(&test, &inv(7)) - 1.0 / 7.0).abs() < 1e-12);
        // Empty test: 0 by convention.
        assert_eq!(random_baseline(&[], &inv(2)), 0.0);
    }
}
