//! Cross-validation, training-noise, and learning-curve protocols.
//!
//! Folds run independently (in parallel with the `parallel` feature) and
//! their predictions are reassembled in instance order, so every protocol
//! is bit-reproducible from (inputs, seed).

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::corpus::{SenseId, SenseInventory};
use crate::declist::{Class, DecisionList, Prediction};
use crate::error::{Error, Result};
use crate::exec;
use crate::features::{extract, FeatureConfig, TrainingExample};

use super::folds::{inject_noise, FoldPlan, NoiseSpec};
use super::{map_to_coarse, score, EvalReport};

/// Everything one cross-validation run produced: the aggregate report,
/// per-fold reports, and the per-instance predictions (indexed like the
/// input examples) they were computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct XvalOutcome<C: Class> {
    pub report: EvalReport,
    pub fold_reports: Vec<EvalReport>,
    pub predictions: Vec<Prediction<C>>,
    pub gold: Vec<BTreeSet<C>>,
}

fn xval_run<'c, C: Class>(
    examples: &[TrainingExample<'c>],
    plan: &FoldPlan,
    config: &FeatureConfig,
    inventory: &SenseInventory,
    project: &(impl Fn(&SenseId) -> Result<C> + Sync),
    prepare_train: &(impl Fn(usize, Vec<TrainingExample<'c>>) -> Result<Vec<TrainingExample<'c>>> + Sync),
) -> Result<XvalOutcome<C>> {
    let word = examples[0].target.clone();
    let folds: Vec<usize> = (0..plan.k()).collect();
    let per_fold = exec::try_map_ordered(&folds, |&fold| {
        let train: Vec<TrainingExample<'c>> = plan
            .train_indices(fold)
            .iter()
            .map(|&i| examples[i].clone())
            .collect();
        let train = prepare_train(fold, train)?;
        let list = DecisionList::train_for(word.clone(), &train, config, inventory, project)?;
        let mut predictions = Vec::new();
        for i in plan.test_indices(fold) {
            let features = extract(&examples[i], config, inventory);
            predictions.push((i, list.classify(&features)));
        }
        Ok::<_, Error>(predictions)
    })?;

    let gold: Vec<BTreeSet<C>> = examples
        .iter()
        .map(|e| e.gold.iter().map(project).collect())
        .collect::<Result<_>>()?;
    let mut slots: Vec<Option<Prediction<C>>> = vec![None; examples.len()];
    let mut fold_reports = Vec::with_capacity(plan.k());
    for fold_predictions in per_fold {
        let fold_gold: Vec<BTreeSet<C>> = fold_predictions
            .iter()
            .map(|(i, _)| gold[*i].clone())
            .collect();
        let preds: Vec<Prediction<C>> =
            fold_predictions.iter().map(|(_, p)| p.clone()).collect();
        fold_reports.push(score(&preds, &fold_gold)?);
        for (i, p) in fold_predictions {
            slots[i] = Some(p);
        }
    }
    let predictions: Vec<Prediction<C>> = slots
        .into_iter()
        .map(|s| s.expect("folds are exhaustive"))
        .collect();
    let report = score(&predictions, &gold)?;
    Ok(XvalOutcome {
        report,
        fold_reports,
        predictions,
        gold,
    })
}

fn check_examples(examples: &[TrainingExample<'_>]) -> Result<()> {
    let first = examples
        .first()
        .ok_or_else(|| Error::invalid("no examples to cross-validate"))?;
    if let Some(other) = examples.iter().find(|e| e.target != first.target) {
        return Err(Error::invalid(format!(
            "mixed target words: '{}' and '{}'",
            first.target, other.target
        )));
    }
    Ok(())
}

/// k-fold cross-validation: trains on k-1 folds, scores the held-out fold,
/// and aggregates counts over folds before computing any ratio.
pub fn cross_validate<'c>(
    examples: &[TrainingExample<'c>],
    k: usize,
    seed: u64,
    config: &FeatureConfig,
    inventory: &SenseInventory,
) -> Result<XvalOutcome<SenseId>> {
    check_examples(examples)?;
    let plan = FoldPlan::new(examples.len(), k, seed)?;
    xval_run(examples, &plan, config, inventory, &|s| Ok(s.clone()), &|_, t| Ok(t))
}

/// Cross-validation with the training portion of each fold relabeled per
/// `noise` first. Held-out gold tags are never touched. Per-fold noise
/// seeds derive from `noise.seed` by stable hashing, so the run does not
/// depend on scheduling.
pub fn noisy_cross_validate<'c>(
    examples: &[TrainingExample<'c>],
    k: usize,
    seed: u64,
    noise: &NoiseSpec,
    config: &FeatureConfig,
    inventory: &SenseInventory,
) -> Result<XvalOutcome<SenseId>> {
    check_examples(examples)?;
    let plan = FoldPlan::new(examples.len(), k, seed)?;
    xval_run(
        examples,
        &plan,
        config,
        inventory,
        &|s| Ok(s.clone()),
        &|fold, train| {
            let fold_noise = NoiseSpec {
                seed: exec::derive_seed(noise.seed, &["noise", &fold.to_string()]),
                ..noise.clone()
            };
            inject_noise(&train, &fold_noise, inventory)
        },
    )
}

/// Cross-validation at the semantic-file level: gold senses are replaced
/// by their semantic files before counting, producing decision lists over
/// coarse labels.
pub fn cross_validate_coarse<'c>(
    examples: &[TrainingExample<'c>],
    k: usize,
    seed: u64,
    config: &FeatureConfig,
    inventory: &SenseInventory,
) -> Result<XvalOutcome<String>> {
    check_examples(examples)?;
    let plan = FoldPlan::new(examples.len(), k, seed)?;
    xval_run(
        examples,
        &plan,
        config,
        inventory,
        &|s| map_to_coarse(s, inventory),
        &|_, t| Ok(t),
    )
}

/// Training-set fractions to sweep, how many seeded rounds to average per
/// fraction, and the base seed.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub fractions: Vec<f64>,
    pub rounds: u32,
    pub seed: u64,
}

impl Default for CurveSpec {
    fn default() -> CurveSpec {
        CurveSpec {
            fractions: vec![0.10, 0.25, 0.50, 0.75, 1.00],
            rounds: 10,
            seed: 0,
        }
    }
}

/// One learning-curve row.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePoint {
    pub fraction: f64,
    pub mean_recall: f64,
    pub mean_train_size: f64,
}

/// For each fraction, repeats `rounds` times: sample that fraction of each
/// fold's training portion (seeded, without replacement), train, score the
/// held-out fold, and aggregate. Reports the mean recall over rounds and
/// the mean sampled training size. Rounds that sample zero examples score
/// as all-abstain.
pub fn learning_curve<'c>(
    examples: &[TrainingExample<'c>],
    spec: &CurveSpec,
    k: usize,
    config: &FeatureConfig,
    inventory: &SenseInventory,
) -> Result<Vec<CurvePoint>> {
    check_examples(examples)?;
    if spec.fractions.is_empty() {
        return Err(Error::invalid("no curve fractions configured"));
    }
    if spec.rounds == 0 {
        return Err(Error::invalid("curve rounds must be >= 1"));
    }
    for pair in spec.fractions.windows(2) {
        if pair[1] <= pair[0] {
            return Err(Error::invalid("curve fractions must be strictly ascending"));
        }
    }
    for &f in &spec.fractions {
        if !(f > 0.0 && f <= 1.0) {
            return Err(Error::invalid(format!(
                "curve fraction must be in (0, 1], got {f}"
            )));
        }
    }
    let plan = FoldPlan::new(examples.len(), k, spec.seed)?;

    let mut tasks: Vec<(usize, u32)> = Vec::new();
    for fi in 0..spec.fractions.len() {
        for round in 0..spec.rounds {
            tasks.push((fi, round));
        }
    }
    let results = exec::try_map_ordered(&tasks, |&(fi, round)| {
        let fraction = spec.fractions[fi];
        let outcome = xval_run(
            examples,
            &plan,
            config,
            inventory,
            &|s| Ok(s.clone()),
            &|fold, train| Ok(sample_fraction(train, fraction, spec.seed, fi, round, fold)),
        )?;
        let train_total: usize = (0..plan.k())
            .map(|fold| {
                let n = plan.train_indices(fold).len();
                (fraction * n as f64).floor() as usize
            })
            .sum();
        Ok::<_, Error>((outcome.report.recall(), train_total))
    })?;

    let mut points = Vec::with_capacity(spec.fractions.len());
    for (fi, &fraction) in spec.fractions.iter().enumerate() {
        let rows = &results[fi * spec.rounds as usize..(fi + 1) * spec.rounds as usize];
        let mean_recall = rows.iter().map(|(r, _)| r).sum::<f64>() / rows.len() as f64;
        let mean_train_size = rows.iter().map(|(_, t)| *t as f64).sum::<f64>()
            / (rows.len() * plan.k()) as f64;
        points.push(CurvePoint {
            fraction,
            mean_recall,
            mean_train_size,
        });
    }
    Ok(points)
}

fn sample_fraction<'c>(
    train: Vec<TrainingExample<'c>>,
    fraction: f64,
    seed: u64,
    fraction_index: usize,
    round: u32,
    fold: usize,
) -> Vec<TrainingExample<'c>> {
    let m = (fraction * train.len() as f64).floor() as usize;
    let child = exec::derive_seed(
        seed,
        &[
            "curve",
            &fraction_index.to_string(),
            &round.to_string(),
            &fold.to_string(),
        ],
    );
    let mut rng = ChaCha8Rng::seed_from_u64(child);
    let mut picked = sample(&mut rng, train.len(), m).into_vec();
    picked.sort_unstable();
    picked.into_iter().map(|i| train[i].clone()).collect()
}
