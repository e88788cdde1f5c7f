//! Decision-list training and classification.
//!
//! Each (class, feature) pair seen in training becomes a candidate rule
//! weighted by the log-likelihood ratio of the class against all others
//! given the feature. Probabilities are maximum-likelihood estimates, so
//! the ratio reduces to `count_for / count_rest`; a zero denominator is
//! smoothed to 0.1. Rules with weight <= 0 are dropped. Classification
//! scans the list in weight order and the first rule whose feature is
//! present decides; equal-weight matches naming different classes tie.
//!
//! The machinery is generic over the class type: sense ids for ordinary
//! training, semantic-file labels for coarse training.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::fmt::Display;
use std::hash::Hash;
use std::str::FromStr;

use crate::corpus::{SenseId, SenseInventory, Word};
use crate::error::{Error, Result};
use crate::exec;
use crate::features::{extract, Feature, FeatureConfig, TrainingExample};

/// Anything a decision list can predict: a sense id or a coarse label.
pub trait Class: Clone + Ord + Eq + Hash + Display + Send + Sync {}

impl<T: Clone + Ord + Eq + Hash + Display + Send + Sync> Class for T {}

/// Per-feature class counts accumulated over a training set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable<C: Class> {
    features: BTreeMap<Feature, ClassCounts<C>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ClassCounts<C: Class> {
    per_class: BTreeMap<C, u32>,
    total: u32,
}

impl<C: Class> Default for ClassCounts<C> {
    fn default() -> Self {
        ClassCounts {
            per_class: BTreeMap::new(),
            total: 0,
        }
    }
}

impl<C: Class> CountTable<C> {
    pub fn is_empty(&self) -> bool {
        self.features.is_empty()
    }

    pub fn n_features(&self) -> usize {
        self.features.len()
    }

    /// Occurrences of `feature` with `class`.
    pub fn count(&self, class: &C, feature: &Feature) -> u32 {
        self.features
            .get(feature)
            .and_then(|c| c.per_class.get(class))
            .copied()
            .unwrap_or(0)
    }

    /// Occurrences of `feature` with any class.
    pub fn total(&self, feature: &Feature) -> u32 {
        self.features.get(feature).map(|c| c.total).unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Feature, &C, u32, u32)> {
        self.features.iter().flat_map(|(f, counts)| {
            counts
                .per_class
                .iter()
                .map(move |(c, n)| (f, c, *n, counts.total))
        })
    }
}

/// Counts extracted features against gold senses. Every gold sense of an
/// example increments the count of every feature of that example, so the
/// feature total is the sum over classes.
pub fn count(
    examples: &[TrainingExample<'_>],
    config: &FeatureConfig,
    inventory: &SenseInventory,
) -> Result<CountTable<SenseId>> {
    count_with(examples, config, inventory, |s| Ok(s.clone()))
}

/// Like [`count`], with gold senses projected through `project` first
/// (e.g. onto semantic-file labels for coarse training).
pub fn count_with<C: Class>(
    examples: &[TrainingExample<'_>],
    config: &FeatureConfig,
    inventory: &SenseInventory,
    project: impl Fn(&SenseId) -> Result<C> + Sync,
) -> Result<CountTable<C>> {
    if let Some(first) = examples.first() {
        if let Some(other) = examples.iter().find(|e| e.target != first.target) {
            return Err(Error::invalid(format!(
                "mixed target words in one training set: '{}' and '{}'",
                first.target, other.target
            )));
        }
    }
    // Extraction is pure and dominates training time; fan it out and tally
    // sequentially in input order.
    let extracted = exec::try_map_ordered(examples, |example| {
        let feats = extract(example, config, inventory);
        let classes = example
            .gold
            .iter()
            .map(&project)
            .collect::<Result<BTreeSet<C>>>()?;
        Ok::<_, Error>((feats, classes))
    })?;
    let mut table = CountTable {
        features: BTreeMap::new(),
    };
    for (feats, classes) in extracted {
        for feature in feats {
            let slot = table.features.entry(feature).or_default();
            for class in &classes {
                *slot.per_class.entry(class.clone()).or_insert(0) += 1;
                slot.total += 1;
            }
        }
    }
    Ok(table)
}

/// The adapted log-likelihood weight: `ln(count_for / d)` where `d` is
/// `count_rest`, smoothed to 0.1 when the rest count is zero.
///
/// `count_for` must be >= 1; a rule is only ever built from observed pairs.
pub fn weight(count_for: u32, count_rest: u32) -> f64 {
    assert!(count_for >= 1, "weight() requires count_for >= 1");
    let denominator = if count_rest > 0 {
        count_rest as f64
    } else {
        0.1
    };
    (count_for as f64 / denominator).ln()
}

/// One rule: feature evidence for a class, with its training counts.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionEntry<C: Class> {
    pub weight: f64,
    pub class: C,
    pub feature: Feature,
    pub count_for: u32,
    pub count_total: u32,
}

/// A weight-sorted rule list for one word, immutable after training.
/// Ties sort by (feature kind name, feature value, class) ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionList<C: Class> {
    word: Word,
    fingerprint: String,
    entries: Vec<DecisionEntry<C>>,
}

/// The classifier's verdict on one feature set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<C> {
    Decided(C),
    Tied(BTreeSet<C>),
    Abstain,
}

impl<C> Outcome<C> {
    pub fn is_answered(&self) -> bool {
        !matches!(self, Outcome::Abstain)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction<C: Class> {
    pub outcome: Outcome<C>,
    /// The highest-weight matching rule, when any matched.
    pub matched: Option<DecisionEntry<C>>,
}

impl<C: Class> Prediction<C> {
    pub fn abstain() -> Prediction<C> {
        Prediction {
            outcome: Outcome::Abstain,
            matched: None,
        }
    }

    pub fn decided(class: C) -> Prediction<C> {
        Prediction {
            outcome: Outcome::Decided(class),
            matched: None,
        }
    }
}

impl<C: Class> DecisionList<C> {
    /// Trains a list for `word`; `examples` may be empty (the list then
    /// abstains on everything).
    pub fn train_for(
        word: Word,
        examples: &[TrainingExample<'_>],
        config: &FeatureConfig,
        inventory: &SenseInventory,
        project: impl Fn(&SenseId) -> Result<C> + Sync,
    ) -> Result<DecisionList<C>> {
        if let Some(e) = examples.iter().find(|e| e.target != word) {
            return Err(Error::invalid(format!(
                "example for '{}' in training set for '{}'",
                e.target, word
            )));
        }
        if let Some(e) = examples.iter().find(|e| e.gold.is_empty()) {
            return Err(Error::invalid(format!(
                "untagged training example for '{}' (doc '{}')",
                e.target, e.doc.id
            )));
        }
        let table = count_with(examples, config, inventory, project)?;
        Ok(DecisionList::from_counts(
            word,
            config.fingerprint(),
            &table,
        ))
    }

    /// Builds the sorted, pruned rule list from a count table.
    pub fn from_counts(word: Word, fingerprint: String, table: &CountTable<C>) -> DecisionList<C> {
        let mut entries: Vec<DecisionEntry<C>> = Vec::new();
        for (feature, class, count_for, count_total) in table.iter() {
            let w = weight(count_for, count_total - count_for);
            if w > 0.0 {
                entries.push(DecisionEntry {
                    weight: w,
                    class: class.clone(),
                    feature: feature.clone(),
                    count_for,
                    count_total,
                });
            }
        }
        sort_entries(&mut entries);
        DecisionList {
            word,
            fingerprint,
            entries,
        }
    }

    /// Rebuilds a list from pre-sorted entries, re-validating the sort
    /// order and the pruning invariant.
    pub fn from_entries(
        word: Word,
        fingerprint: String,
        entries: Vec<DecisionEntry<C>>,
    ) -> Result<DecisionList<C>> {
        for (i, e) in entries.iter().enumerate() {
            if e.weight <= 0.0 {
                return Err(Error::invalid(format!(
                    "entry {} has non-positive weight {}",
                    i + 1,
                    e.weight
                )));
            }
            if e.count_for < 1 || e.count_for > e.count_total {
                return Err(Error::invalid(format!(
                    "entry {} has inconsistent counts {}/{}",
                    i + 1,
                    e.count_for,
                    e.count_total
                )));
            }
        }
        let mut sorted = entries.clone();
        sort_entries(&mut sorted);
        if sorted != entries {
            return Err(Error::invalid(
                "entries are not in decision-list order (weight descending, ties by kind, value, class)",
            ));
        }
        Ok(DecisionList {
            word,
            fingerprint,
            entries,
        })
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn entries(&self) -> &[DecisionEntry<C>] {
        &self.entries
    }

    /// Scans the list in order; the first present feature decides. Several
    /// equal-weight present rules naming different classes tie.
    pub fn classify(&self, features: &BTreeSet<Feature>) -> Prediction<C> {
        let first = match self
            .entries
            .iter()
            .position(|e| features.contains(&e.feature))
        {
            Some(i) => i,
            None => return Prediction::abstain(),
        };
        let level = self.entries[first].weight;
        let mut classes: BTreeSet<C> = BTreeSet::new();
        for e in &self.entries[first..] {
            if e.weight != level {
                break;
            }
            if features.contains(&e.feature) {
                classes.insert(e.class.clone());
            }
        }
        let outcome = if classes.len() == 1 {
            Outcome::Decided(classes.into_iter().next().unwrap())
        } else {
            Outcome::Tied(classes)
        };
        Prediction {
            outcome,
            matched: Some(self.entries[first].clone()),
        }
    }
}

fn sort_entries<C: Class>(entries: &mut [DecisionEntry<C>]) {
    entries.sort_by(|a, b| {
        b.weight
            .total_cmp(&a.weight)
            .then_with(|| a.feature.kind.cmp(&b.feature.kind))
            .then_with(|| a.feature.value.cmp(&b.feature.value))
            .then_with(|| a.class.cmp(&b.class))
    });
}

impl DecisionList<SenseId> {
    /// Trains on a non-empty set of examples of one word.
    pub fn train(
        examples: &[TrainingExample<'_>],
        config: &FeatureConfig,
        inventory: &SenseInventory,
    ) -> Result<DecisionList<SenseId>> {
        let word = examples
            .first()
            .map(|e| e.target.clone())
            .ok_or_else(|| Error::invalid("empty training set"))?;
        DecisionList::train_for(word, examples, config, inventory, |s| Ok(s.clone()))
    }

    /// The `.dl` text format: a header line
    /// `# declist <lemma>.<pos> config=<fingerprint>` followed by one rule
    /// per line, `weight TAB sense TAB kind TAB value TAB count_for TAB
    /// count_total`, weights at full round-trip precision.
    pub fn to_text(&self) -> String {
        let mut out = format!("# declist {} config={}\n", self.word, self.fingerprint);
        for e in &self.entries {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                e.weight,
                e.class,
                e.feature.kind.name(),
                e.feature.value,
                e.count_for,
                e.count_total
            ));
        }
        out
    }

    pub fn parse(text: &str) -> Result<DecisionList<SenseId>> {
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty decision-list file"))?;
        let rest = header
            .strip_prefix("# declist ")
            .ok_or_else(|| Error::parse(1, "expected '# declist <word> config=<fingerprint>'"))?;
        let (word, fingerprint) = rest
            .split_once(" config=")
            .ok_or_else(|| Error::parse(1, "missing 'config=' in header"))?;
        let word: Word = word
            .parse()
            .map_err(|e: Error| Error::parse(1, e.to_string()))?;
        let mut entries = Vec::new();
        for (i, line) in lines {
            let lineno = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 6 {
                return Err(Error::parse(
                    lineno,
                    format!("expected 6 tab-separated fields, got {}", fields.len()),
                ));
            }
            let w: f64 = fields[0]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad weight '{}'", fields[0])))?;
            let sense: SenseId = fields[1]
                .parse()
                .map_err(|e: Error| Error::parse(lineno, e.to_string()))?;
            let kind = fields[2]
                .parse()
                .map_err(|e: Error| Error::parse(lineno, e.to_string()))?;
            let value = fields[3].to_string();
            if value.is_empty() {
                return Err(Error::parse(lineno, "empty feature value"));
            }
            let count_for: u32 = fields[4]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad count '{}'", fields[4])))?;
            let count_total: u32 = fields[5]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad count '{}'", fields[5])))?;
            if count_for < 1 || count_for > count_total {
                return Err(Error::parse(
                    lineno,
                    format!("inconsistent counts {count_for}/{count_total}"),
                ));
            }
            let expected = weight(count_for, count_total - count_for);
            if w != expected {
                return Err(Error::parse(
                    lineno,
                    format!("weight {w} does not match counts (expected {expected})"),
                ));
            }
            if sense.word() != word {
                return Err(Error::parse(
                    lineno,
                    format!("sense '{sense}' does not belong to '{word}'"),
                ));
            }
            entries.push(DecisionEntry {
                weight: w,
                class: sense,
                feature: Feature::new(kind, value),
                count_for,
                count_total,
            });
        }
        for (i, pair) in entries.windows(2).enumerate() {
            if pair[1].weight > pair[0].weight {
                return Err(Error::parse(
                    i + 3,
                    format!(
                        "weights out of order: {} after {}",
                        pair[1].weight, pair[0].weight
                    ),
                ));
            }
        }
        DecisionList::from_entries(word, fingerprint.to_string(), entries)
    }
}

impl FromStr for DecisionList<SenseId> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        DecisionList::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{CoarsePos, Corpus, SenseInventory};
    use crate::features::enumerate_targets;

    fn approx(a: f64, b: f64) {
        assert!((a - b).abs() < 5e-5, "{a} != {b}");
    }

    #[test]
    fn weight_reproduces_printed_values() {
        approx(weight(2, 0), 2.9957);
        approx(weight(14, 3), 1.5404);
        approx(weight(14, 4), 1.2528);
        assert_eq!(weight(1, 1), 0.0);
        approx(weight(1, 0), std::f64::consts::LN_10);
    }

    #[test]
    #[should_panic(expected = "count_for >= 1")]
    fn weight_rejects_zero_numerator() {
        weight(0, 3);
    }

    #[test]
    fn weight_monotonicity() {
        for rest in 0..10 {
            for c in 1..10 {
                assert!(weight(c + 1, rest) > weight(c, rest));
            }
        }
        for c in 1..10 {
            for rest in 0..10 {
                assert!(weight(c, rest + 1) < weight(c, rest));
            }
        }
    }

    fn two_sense_inv() -> SenseInventory {
        SenseInventory::parse(
            "interest\tnoun\t1\tnoun.cognition\t\tcuriosity\n\
             interest\tnoun\t2\tnoun.attribute\t\tpower to attract\n\
             interest\tnoun\t3\tnoun.advantage\t\tbenefit\n",
        )
        .unwrap()
    }

    fn win_corpus() -> Corpus {
        // Two sense-3 occurrences with "win" in the wide window.
        Corpus::parse(
            "# doc d1\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.3\n\
             in\tin\tIN\tother\t-\n\
             winning\twin\tVBG\tverb\t-\n\
             # doc d2\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.3\n\
             helped\thelp\tVBD\tverb\t-\n\
             winning\twin\tVBG\tverb\t-\n",
        )
        .unwrap()
    }

    fn lem50_config() -> FeatureConfig {
        FeatureConfig::parse("kinds = bag_lem\nwindows = 50\n").unwrap()
    }

    #[test]
    fn count_matches_paper_example() {
        let corpus = win_corpus();
        let inv = two_sense_inv();
        let word = Word::new("interest", CoarsePos::Noun);
        let examples = enumerate_targets(&corpus, &word);
        let table = count(&examples, &lem50_config(), &inv).unwrap();
        let f = Feature::new("lem_50w".parse().unwrap(), "win");
        assert_eq!(table.count(&SenseId::new("interest", CoarsePos::Noun, 3), &f), 2);
        assert_eq!(table.total(&f), 2);
    }

    #[test]
    fn empty_and_multi_gold_counting() {
        let inv = two_sense_inv();
        let config = lem50_config();
        let empty = count(&[], &config, &inv).unwrap();
        assert!(empty.is_empty());

        let corpus = Corpus::parse(
            "# doc d1\ninterest\tinterest\tNN\tnoun\tinterest.noun.1;interest.noun.2\nrose\trise\tVBD\tverb\t-\n",
        )
        .unwrap();
        let examples = enumerate_targets(&corpus, &Word::new("interest", CoarsePos::Noun));
        let table = count(&examples, &config, &inv).unwrap();
        let f = Feature::new("lem_50w".parse().unwrap(), "rise");
        assert_eq!(table.count(&SenseId::new("interest", CoarsePos::Noun, 1), &f), 1);
        assert_eq!(table.count(&SenseId::new("interest", CoarsePos::Noun, 2), &f), 1);
        assert_eq!(table.total(&f), 2);
    }

    #[test]
    fn mixed_words_error() {
        let corpus = Corpus::parse(
            "# doc d1\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.1\n\n\
             rate\trate\tNN\tnoun\trate.noun.1\n",
        )
        .unwrap();
        let inv = SenseInventory::parse(
            "interest\tnoun\t1\tnoun.cognition\t\tcuriosity\nrate\tnoun\t1\tnoun.attribute\t\tpace\n",
        )
        .unwrap();
        let mut examples = enumerate_targets(&corpus, &Word::new("interest", CoarsePos::Noun));
        examples.extend(enumerate_targets(&corpus, &Word::new("rate", CoarsePos::Noun)));
        assert!(count(&examples, &FeatureConfig::basic(), &inv)
            .unwrap_err()
            .to_string()
            .contains("mixed target words"));
    }

    #[test]
    fn train_prunes_and_sorts() {
        let corpus = win_corpus();
        let inv = two_sense_inv();
        let examples = enumerate_targets(&corpus, &Word::new("interest", CoarsePos::Noun));
        let list = DecisionList::train(&examples, &lem50_config(), &inv).unwrap();
        // "win" appears twice, always sense 3: ln(2/0.1).
        let top = &list.entries()[0];
        assert_eq!(top.feature.value, "win");
        approx(top.weight, 2.9957);
        assert!(list
            .entries()
            .windows(2)
            .all(|p| p[0].weight >= p[1].weight));
        // Every stored entry has positive evidence.
        assert!(list
            .entries()
            .iter()
            .all(|e| e.count_for > e.count_total - e.count_for || e.count_total == e.count_for));
    }

    #[test]
    fn singleton_smoothing_and_symmetric_pruning() {
        let inv = two_sense_inv();
        let config = lem50_config();
        // One example, one feature: ln(1/0.1).
        let one = Corpus::parse(
            "# doc d1\ninterest\tinterest\tNN\tnoun\tinterest.noun.1\nrose\trise\tVBD\tverb\t-\n",
        )
        .unwrap();
        let examples = enumerate_targets(&one, &Word::new("interest", CoarsePos::Noun));
        let list = DecisionList::train(&examples, &config, &inv).unwrap();
        assert_eq!(list.entries().len(), 1);
        approx(list.entries()[0].weight, std::f64::consts::LN_10);

        // The same feature once with each of two senses: weight 0, pruned.
        let two = Corpus::parse(
            "# doc d1\ninterest\tinterest\tNN\tnoun\tinterest.noun.1\nrose\trise\tVBD\tverb\t-\n\
             # doc d2\ninterest\tinterest\tNN\tnoun\tinterest.noun.2\nrose\trise\tVBD\tverb\t-\n",
        )
        .unwrap();
        let examples = enumerate_targets(&two, &Word::new("interest", CoarsePos::Noun));
        let list = DecisionList::train(&examples, &config, &inv).unwrap();
        assert!(list.entries().is_empty());
    }

    #[test]
    fn classify_first_match_ties_and_abstain() {
        let corpus = win_corpus();
        let inv = two_sense_inv();
        let examples = enumerate_targets(&corpus, &Word::new("interest", CoarsePos::Noun));
        let list = DecisionList::train(&examples, &lem50_config(), &inv).unwrap();

        let feats: BTreeSet<Feature> =
            [Feature::new("lem_50w".parse().unwrap(), "win")].into();
        match list.classify(&feats).outcome {
            Outcome::Decided(s) => assert_eq!(s.index, 3),
            other => panic!("expected decided, got {other:?}"),
        }
        assert_eq!(list.classify(&BTreeSet::new()).outcome, Outcome::Abstain);
    }

    #[test]
    fn symmetric_counts_tie() {
        // "tie" occurs once with sense 2 and once with sense 3; both rules
        // get ln(1/1)=0 and are pruned, so build the tie from two features
        // with equal positive evidence instead.
        let corpus = Corpus::parse(
            "# doc d1\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.2\n\
             alpha\talpha\tNN\tnoun\t-\n\
             beta\tbeta\tNN\tnoun\t-\n\
             # doc d2\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.3\n\
             beta\tbeta\tNN\tnoun\t-\n\
             gamma\tgamma\tNN\tnoun\t-\n",
        )
        .unwrap();
        let inv = two_sense_inv();
        let examples = enumerate_targets(&corpus, &Word::new("interest", CoarsePos::Noun));
        let list = DecisionList::train(&examples, &lem50_config(), &inv).unwrap();
        // alpha -> sense 2 with ln(1/0.1); gamma -> sense 3 with ln(1/0.1).
        let feats: BTreeSet<Feature> = [
            Feature::new("lem_50w".parse().unwrap(), "alpha"),
            Feature::new("lem_50w".parse().unwrap(), "gamma"),
        ]
        .into();
        match list.classify(&feats).outcome {
            Outcome::Tied(set) => {
                let indices: Vec<u32> = set.iter().map(|s| s.index).collect();
                assert_eq!(indices, vec![2, 3]);
            }
            other => panic!("expected tie, got {other:?}"),
        }
    }

    #[test]
    fn serialization_round_trips_exactly() {
        let corpus = win_corpus();
        let inv = two_sense_inv();
        let examples = enumerate_targets(&corpus, &Word::new("interest", CoarsePos::Noun));
        let config = FeatureConfig::parse("kinds = bag_lem, big_wf\nwindows = 50\n").unwrap();
        let list = DecisionList::train(&examples, &config, &inv).unwrap();
        let text = list.to_text();
        let reparsed = DecisionList::parse(&text).unwrap();
        assert_eq!(reparsed, list);
        assert_eq!(reparsed.to_text(), text);
    }

    #[test]
    fn empty_list_serializes_as_header_only() {
        let inv = two_sense_inv();
        let config = lem50_config();
        // One feature with each of two senses: everything prunes away.
        let corpus = Corpus::parse(
            "# doc d1\ninterest\tinterest\tNN\tnoun\tinterest.noun.1\nrose\trise\tVBD\tverb\t-\n\
             # doc d2\ninterest\tinterest\tNN\tnoun\tinterest.noun.2\nrose\trise\tVBD\tverb\t-\n",
        )
        .unwrap();
        let examples = enumerate_targets(&corpus, &Word::new("interest", CoarsePos::Noun));
        let list = DecisionList::train(&examples, &config, &inv).unwrap();
        assert!(list.entries().is_empty());
        let text = list.to_text();
        assert_eq!(text.lines().count(), 1);
        assert!(text.starts_with("# declist interest.noun config="));
        let reparsed = DecisionList::parse(&text).unwrap();
        assert_eq!(reparsed, list);
    }

    #[test]
    fn deserialize_rejects_mutations() {
        let corpus = win_corpus();
        let inv = two_sense_inv();
        let examples = enumerate_targets(&corpus, &Word::new("interest", CoarsePos::Noun));
        let config = FeatureConfig::parse("kinds = bag_lem, big_wf\nwindows = 50\n").unwrap();
        let list = DecisionList::train(&examples, &config, &inv).unwrap();
        let text = list.to_text();
        assert!(list.entries().len() >= 2);

        // Swapping two rule lines breaks the sort order.
        let mut lines: Vec<&str> = text.lines().collect();
        lines.swap(1, 2);
        let swapped = lines.join("\n");
        assert!(DecisionList::parse(&swapped).is_err());

        // Tampering with a count breaks the weight consistency check.
        let tampered = text.replacen("\t2\t2", "\t1\t2", 1);
        assert_ne!(tampered, text);
        let err = DecisionList::parse(&tampered).unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn determinism_byte_identical_lists() {
        let corpus = win_corpus();
        let inv = two_sense_inv();
        let examples = enumerate_targets(&corpus, &Word::new("interest", CoarsePos::Noun));
        let config = FeatureConfig::all();
        let a = DecisionList::train(&examples, &config, &inv).unwrap().to_text();
        let b = DecisionList::train(&examples, &config, &inv).unwrap().to_text();
        assert_eq!(a, b);
    }
}
