//! Fold assignment and training-noise injection, both seeded.

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::SenseInventory;
use crate::error::{Error, Result};
use crate::features::TrainingExample;

/// A disjoint, exhaustive assignment of instance indices to `k` folds with
/// sizes differing by at most one: a seeded shuffle dealt round-robin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    k: usize,
    seed: u64,
    assignment: Vec<usize>,
}

impl FoldPlan {
    pub fn new(n: usize, k: usize, seed: u64) -> Result<FoldPlan> {
        if k < 2 {
            return Err(Error::invalid(format!("fold count must be >= 2, got {k}")));
        }
        if n < k {
            return Err(Error::invalid(format!(
                "too few examples for {k}-fold cross-validation: {n}"
            )));
        }
        let mut order: Vec<usize> = (0..n).collect();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        order.shuffle(&mut rng);
        let mut assignment = vec![0; n];
        for (j, &i) in order.iter().enumerate() {
            assignment[i] = j % k;
        }
        Ok(FoldPlan { k, seed, assignment })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.assignment.len()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn fold_of(&self, index: usize) -> usize {
        self.assignment[index]
    }

    /// Indices held out in `fold`, ascending.
    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.assignment[i] == fold).collect()
    }

    /// Indices trained on in `fold`, ascending.
    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.assignment[i] != fold).collect()
    }

    pub fn fold_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &f in &self.assignment {
            sizes[f] += 1;
        }
        sizes
    }
}

/// How much training noise to inject and how.
#[derive(Debug, Clone, PartialEq)]
pub struct NoiseSpec {
    /// Fraction of training instances to relabel, in [0, 1].
    pub fraction: f64,
    pub seed: u64,
    /// When set, the replacement sense is drawn from the senses outside the
    /// original gold set instead of from all senses.
    pub force_different: bool,
}

impl NoiseSpec {
    pub fn new(fraction: f64, seed: u64) -> NoiseSpec {
        NoiseSpec {
            fraction,
            seed,
            force_different: false,
        }
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.fraction) {
            return Err(Error::invalid(format!(
                "noise fraction must be in [0, 1], got {}",
                self.fraction
            )));
        }
        Ok(())
    }
}

/// The indices [`inject_noise`] will relabel: exactly
/// `floor(fraction * n)` distinct positions, uniformly sampled, ascending.
pub fn noise_selection(n: usize, spec: &NoiseSpec) -> Result<Vec<usize>> {
    spec.validate()?;
    let m = (spec.fraction * n as f64).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut selected = sample(&mut rng, n, m).into_vec();
    selected.sort_unstable();
    Ok(selected)
}

/// Replaces the gold annotation of the selected instances with one
/// uniformly random sense of the same word. By default the draw ranges
/// over all senses and may reproduce the original tag; the instance still
/// counts as relabeled.
pub fn inject_noise<'c>(
    train: &[TrainingExample<'c>],
    spec: &NoiseSpec,
    inventory: &SenseInventory,
) -> Result<Vec<TrainingExample<'c>>> {
    spec.validate()?;
    for example in train {
        if inventory.n_senses(&example.target) < 2 {
            return Err(Error::invalid(format!(
                "cannot inject noise: '{}' has fewer than 2 senses",
                example.target
            )));
        }
    }
    let m = (spec.fraction * train.len() as f64).floor() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut selected = sample(&mut rng, train.len(), m).into_vec();
    selected.sort_unstable();

    let mut out: Vec<TrainingExample<'c>> = train.to_vec();
    for &i in &selected {
        let example = &mut out[i];
        let senses = inventory.senses(&example.target);
        let replacement = if spec.force_different {
            let candidates: Vec<_> = senses
                .iter()
                .filter(|e| !example.gold.contains(&e.id))
                .collect();
            if candidates.is_empty() {
                return Err(Error::invalid(format!(
                    "cannot force a different sense for '{}': every sense is already gold",
                    example.target
                )));
            }
            candidates[rng.random_range(0..candidates.len())].id.clone()
        } else {
            senses[rng.random_range(0..senses.len())].id.clone()
        };
        example.gold = [replacement].into();
    }
    Ok(out)
}
