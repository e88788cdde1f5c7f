//! Corpus-level protocols: all-words file holdout, cross-corpus tagging
//! through a sense mapping, and per-word report tables.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{Corpus, SenseId, SenseInventory, SenseMapping, Word};
use crate::declist::{DecisionList, Prediction};
use crate::error::{Error, Result};
use crate::exec;
use crate::features::{
    enumerate_all_content_words, enumerate_targets, extract, FeatureConfig, TrainingExample,
};

use super::baselines::{majority_sense, mfs_cross_validate, random_baseline};
use super::folds::FoldPlan;
use super::protocols::cross_validate;
use super::{score, score_projected, EvalReport};

/// Scores for one held-out document.
#[derive(Debug, Clone, PartialEq)]
pub struct DocRow {
    pub doc_id: String,
    pub n: u64,
    pub dl: EvalReport,
    pub mfs: EvalReport,
    pub random_precision: f64,
}

/// All-words evaluation over a document holdout.
#[derive(Debug, Clone, PartialEq)]
pub struct AllWordsOutcome {
    pub dl: EvalReport,
    pub mfs: EvalReport,
    pub random_precision: f64,
    pub per_doc: Vec<DocRow>,
}

/// Trains one decision list per content word tagged in the holdout
/// documents (on the rest of the corpus) and classifies every tagged
/// content-word occurrence in the holdout. Words without training data
/// abstain.
pub fn all_words_eval(
    corpus: &Corpus,
    holdout_doc_ids: &BTreeSet<String>,
    config: &FeatureConfig,
    inventory: &SenseInventory,
) -> Result<AllWordsOutcome> {
    for id in holdout_doc_ids {
        if corpus.document(id).is_none() {
            return Err(Error::invalid(format!("holdout doc '{id}' not in corpus")));
        }
    }
    let tests = enumerate_all_content_words(corpus, holdout_doc_ids);
    let mut by_word: BTreeMap<Word, Vec<usize>> = BTreeMap::new();
    for (i, example) in tests.iter().enumerate() {
        by_word.entry(example.target.clone()).or_default().push(i);
    }
    let words: Vec<Word> = by_word.keys().cloned().collect();

    let per_word = exec::try_map_ordered(&words, |word| {
        let train: Vec<TrainingExample<'_>> = enumerate_targets(corpus, word)
            .into_iter()
            .filter(|e| !holdout_doc_ids.contains(&e.doc.id))
            .collect();
        let list = DecisionList::train_for(word.clone(), &train, config, inventory, |s| {
            Ok(s.clone())
        })?;
        let mfs = if train.is_empty() {
            None
        } else {
            Some(majority_sense(&train)?)
        };
        let mut rows = Vec::new();
        for &i in &by_word[word] {
            let features = extract(&tests[i], config, inventory);
            rows.push((i, list.classify(&features)));
        }
        Ok::<_, Error>((rows, mfs))
    })?;

    let mut dl_slots: Vec<Option<Prediction<SenseId>>> = vec![None; tests.len()];
    let mut mfs_slots: Vec<Option<Prediction<SenseId>>> = vec![None; tests.len()];
    for (rows, mfs) in per_word {
        for (i, prediction) in rows {
            mfs_slots[i] = Some(match &mfs {
                Some(sense) => Prediction::decided(sense.clone()),
                None => Prediction::abstain(),
            });
            dl_slots[i] = Some(prediction);
        }
    }
    let dl_predictions: Vec<Prediction<SenseId>> =
        dl_slots.into_iter().map(|s| s.expect("covered")).collect();
    let mfs_predictions: Vec<Prediction<SenseId>> =
        mfs_slots.into_iter().map(|s| s.expect("covered")).collect();
    let gold: Vec<BTreeSet<SenseId>> = tests.iter().map(|e| e.gold.clone()).collect();

    let mut per_doc = Vec::new();
    for doc in &corpus.documents {
        if !holdout_doc_ids.contains(&doc.id) {
            continue;
        }
        let indices: Vec<usize> = (0..tests.len())
            .filter(|&i| tests[i].doc.id == doc.id)
            .collect();
        let pick = |slice: &[Prediction<SenseId>]| -> Vec<Prediction<SenseId>> {
            indices.iter().map(|&i| slice[i].clone()).collect()
        };
        let doc_gold: Vec<BTreeSet<SenseId>> = indices.iter().map(|&i| gold[i].clone()).collect();
        let doc_tests: Vec<TrainingExample<'_>> =
            indices.iter().map(|&i| tests[i].clone()).collect();
        per_doc.push(DocRow {
            doc_id: doc.id.clone(),
            n: indices.len() as u64,
            dl: score(&pick(&dl_predictions), &doc_gold)?,
            mfs: score(&pick(&mfs_predictions), &doc_gold)?,
            random_precision: random_baseline(&doc_tests, inventory),
        });
    }

    Ok(AllWordsOutcome {
        dl: score(&dl_predictions, &gold)?,
        mfs: score(&mfs_predictions, &gold)?,
        random_precision: random_baseline(&tests, inventory),
        per_doc,
    })
}

/// Cross-corpus scores for one word.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossWordRow {
    pub word: Word,
    pub n_train: usize,
    pub report: EvalReport,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossCorpusOutcome {
    pub overall: EvalReport,
    pub per_word: Vec<CrossWordRow>,
}

/// Trains on one corpus, maps predicted senses through `mapping`, and
/// scores against the other corpus' gold tags. With an empty word list the
/// words tagged in both corpora are evaluated. Predicting a sense the
/// mapping does not cover is an error.
pub fn cross_corpus_eval(
    train_corpus: &Corpus,
    test_corpus: &Corpus,
    words: &[Word],
    mapping: &SenseMapping,
    config: &FeatureConfig,
    train_inventory: &SenseInventory,
    test_inventory: &SenseInventory,
) -> Result<CrossCorpusOutcome> {
    let words: Vec<Word> = if words.is_empty() {
        let tagged = |corpus: &Corpus| -> BTreeSet<Word> {
            corpus
                .documents
                .iter()
                .flat_map(|d| d.sentences.iter())
                .flat_map(|s| s.tokens.iter())
                .filter(|t| t.is_tagged())
                .map(|t| t.word())
                .collect()
        };
        tagged(train_corpus)
            .intersection(&tagged(test_corpus))
            .cloned()
            .collect()
    } else {
        words.to_vec()
    };
    if words.is_empty() {
        return Err(Error::invalid("no words tagged in both corpora"));
    }

    let per_word = exec::try_map_ordered(&words, |word| {
        let train = enumerate_targets(train_corpus, word);
        let tests = enumerate_targets(test_corpus, word);
        let list = DecisionList::train_for(word.clone(), &train, config, train_inventory, |s| {
            Ok(s.clone())
        })?;
        let predictions: Vec<Prediction<SenseId>> = tests
            .iter()
            .map(|e| list.classify(&extract(e, config, test_inventory)))
            .collect();
        let gold: Vec<BTreeSet<SenseId>> = tests.iter().map(|e| e.gold.clone()).collect();
        let report = score_projected(&predictions, &gold, |sense| {
            mapping.map(sense).cloned().ok_or_else(|| {
                Error::invalid(format!("predicted sense '{sense}' is not in the mapping"))
            })
        })?;
        Ok::<_, Error>(CrossWordRow {
            word: word.clone(),
            n_train: train.len(),
            report,
        })
    })?;

    let overall = per_word
        .iter()
        .fold(EvalReport::default(), |acc, row| acc + row.report);
    Ok(CrossCorpusOutcome {
        overall,
        per_word,
    })
}

/// One row of the per-word report table.
#[derive(Debug, Clone, PartialEq)]
pub struct WordReportRow {
    pub word: Word,
    pub n_senses: usize,
    pub n_examples: usize,
    pub examples_per_sense: f64,
    pub mfs_precision: f64,
    pub random_precision: f64,
    pub dl_precision: f64,
    pub dl_coverage: f64,
    /// Relative frequency of the corpus-majority sense in the gold data.
    pub skew: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WordReport {
    pub rows: Vec<WordReportRow>,
    /// Count-level aggregates over all per-word cross-validations.
    pub dl_micro: EvalReport,
    pub mfs_micro: EvalReport,
}

/// Per-word baselines and 10-fold cross-validation results, one row per
/// word in input order. Per-word seeds derive from `seed` by stable
/// hashing, so results do not depend on evaluation order. Words with
/// fewer examples than folds fall back to leave-one-out; words with
/// fewer than 2 examples score zero with zero coverage.
pub fn word_report(
    corpus: &Corpus,
    words: &[Word],
    k: usize,
    seed: u64,
    config: &FeatureConfig,
    inventory: &SenseInventory,
) -> Result<WordReport> {
    let rows = exec::try_map_ordered(words, |word| {
        let n_senses = inventory.n_senses(word);
        if n_senses == 0 {
            return Err(Error::invalid(format!("'{word}' is not in the inventory")));
        }
        let examples = enumerate_targets(corpus, word);
        let n_examples = examples.len();
        let random_precision = random_baseline(&examples, inventory);
        let skew = if examples.is_empty() {
            0.0
        } else {
            let majority = majority_sense(&examples)?;
            examples.iter().filter(|e| e.gold.contains(&majority)).count() as f64
                / n_examples as f64
        };
        let (dl, mfs) = if n_examples >= 2 {
            let word_seed = exec::derive_seed(seed, &["word", &word.to_string()]);
            let k_eff = k.min(n_examples);
            let outcome = cross_validate(&examples, k_eff, word_seed, config, inventory)?;
            let plan = FoldPlan::new(n_examples, k_eff, word_seed)?;
            let mfs = mfs_cross_validate(&examples, &plan)?;
            (outcome.report, mfs)
        } else {
            (
                EvalReport { n: n_examples as u64, a: 0, c: 0.0 },
                EvalReport { n: n_examples as u64, a: 0, c: 0.0 },
            )
        };
        Ok::<_, Error>((
            WordReportRow {
                word: word.clone(),
                n_senses,
                n_examples,
                examples_per_sense: n_examples as f64 / n_senses as f64,
                mfs_precision: mfs.precision(),
                random_precision,
                dl_precision: dl.precision(),
                dl_coverage: dl.coverage(),
                skew,
            },
            dl,
            mfs,
        ))
    })?;

    let mut report = WordReport {
        rows: Vec::with_capacity(rows.len()),
        dl_micro: EvalReport::default(),
        mfs_micro: EvalReport::default(),
    };
    for (row, dl, mfs) in rows {
        report.dl_micro += dl;
        report.mfs_micro += mfs;
        report.rows.push(row);
    }
    Ok(report)
}
