//! Metrics, baselines, and the experimental protocols: cross-validation,
//! learning curves, noise injection, coarse senses, all-words holdout,
//! cross-corpus tagging, and per-word reports.
//!
//! Scoring follows the N/A/C convention: N test instances, A answered
//! (decided or tied), C credited correct. Ties earn fractional credit —
//! `|gold intersect tie| / |tie|` — which equals the expected score of
//! choosing uniformly at random among the tied senses. Protocol results
//! aggregate counts across folds before any ratio is computed.

mod baselines;
mod folds;
mod protocols;
mod reports;

pub use baselines::{majority_sense, mfs_baseline, mfs_cross_validate, random_baseline};
pub use folds::{inject_noise, noise_selection, FoldPlan, NoiseSpec};
pub use protocols::{
    cross_validate, cross_validate_coarse, learning_curve, noisy_cross_validate, CurvePoint,
    CurveSpec, XvalOutcome,
};
pub use reports::{
    all_words_eval, cross_corpus_eval, word_report, AllWordsOutcome, CrossCorpusOutcome,
    CrossWordRow, DocRow, WordReport, WordReportRow,
};

use std::collections::BTreeSet;
use std::ops::{Add, AddAssign};

use crate::corpus::{SenseId, SenseInventory};
use crate::declist::{Class, Outcome, Prediction};
use crate::error::{Error, Result};

/// Aggregate counts of one evaluation: `n` test instances, `a` answered,
/// `c` credited correct (real-valued because ties earn fractional credit).
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct EvalReport {
    pub n: u64,
    pub a: u64,
    pub c: f64,
}

impl EvalReport {
    pub fn precision(&self) -> f64 {
        if self.a == 0 {
            0.0
        } else {
            self.c / self.a as f64
        }
    }

    pub fn recall(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.c / self.n as f64
        }
    }

    pub fn coverage(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.a as f64 / self.n as f64
        }
    }
}

impl Add for EvalReport {
    type Output = EvalReport;

    fn add(self, other: EvalReport) -> EvalReport {
        EvalReport {
            n: self.n + other.n,
            a: self.a + other.a,
            c: self.c + other.c,
        }
    }
}

impl AddAssign for EvalReport {
    fn add_assign(&mut self, other: EvalReport) {
        *self = *self + other;
    }
}

/// Scores predictions against gold sense sets. A prediction is correct if
/// it is a member of the gold set; ties earn `|gold intersect tie|/|tie|`.
pub fn score<C: Class>(
    predictions: &[Prediction<C>],
    gold: &[BTreeSet<C>],
) -> Result<EvalReport> {
    score_projected(predictions, gold, |c| Ok(c.clone()))
}

/// Scores predictions whose classes are first pushed through `project`
/// (semantic-file coarsening, cross-corpus sense mapping). Tie members are
/// projected individually and keep their weight in the tie, so the credit
/// stays the expected score of a uniform random choice among the original
/// tied classes.
pub fn score_projected<C: Class, D: Class>(
    predictions: &[Prediction<C>],
    gold: &[BTreeSet<D>],
    project: impl Fn(&C) -> Result<D>,
) -> Result<EvalReport> {
    if predictions.len() != gold.len() {
        return Err(Error::invalid(format!(
            "{} predictions against {} gold sets",
            predictions.len(),
            gold.len()
        )));
    }
    let mut report = EvalReport::default();
    for (pred, gold) in predictions.iter().zip(gold) {
        report.n += 1;
        match &pred.outcome {
            Outcome::Abstain => {}
            Outcome::Decided(c) => {
                report.a += 1;
                if gold.contains(&project(c)?) {
                    report.c += 1.0;
                }
            }
            Outcome::Tied(set) => {
                report.a += 1;
                let mut hits = 0usize;
                for member in set {
                    if gold.contains(&project(member)?) {
                        hits += 1;
                    }
                }
                report.c += hits as f64 / set.len() as f64;
            }
        }
    }
    Ok(report)
}

/// The coarse label of a sense: its semantic file.
pub fn map_to_coarse(sense: &SenseId, inventory: &SenseInventory) -> Result<String> {
    inventory.semantic_file(sense).map(str::to_string)
}

/// Projects a gold sense set onto semantic-file labels.
pub fn coarse_gold(gold: &BTreeSet<SenseId>, inventory: &SenseInventory) -> Result<BTreeSet<String>> {
    gold.iter().map(|s| map_to_coarse(s, inventory)).collect()
}

/// Scores fine-grained predictions at the semantic-file level. Never
/// scores below [`score`] on the same predictions: projection can only
/// turn misses into hits.
pub fn score_fine_as_coarse(
    predictions: &[Prediction<SenseId>],
    gold: &[BTreeSet<SenseId>],
    inventory: &SenseInventory,
) -> Result<EvalReport> {
    let coarse: Vec<BTreeSet<String>> = gold
        .iter()
        .map(|g| coarse_gold(g, inventory))
        .collect::<Result<_>>()?;
    score_projected(predictions, &coarse, |s| map_to_coarse(s, inventory))
}
