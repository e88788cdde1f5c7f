//! Feature extraction around a target token.
//!
//! Two kinds of features:
//!
//! * collocations: bigrams and trigrams of word-forms, PoS tags, or lemmas
//!   anchored at the target. The kind carries a numeric label equal to
//!   minus the number of pattern tokens right of the target, so `big_wf_-1`
//!   pairs the target with the next word and `big_wf_0` with the previous
//!   one; trigram labels run `-2` (target first) through `0` (target last).
//! * bags: the distinct word-forms, lemmas, gold synsets, semantic files,
//!   or general PoS tags of context tokens in a window (`wf_4w`, `lem_50w`,
//!   `wf_sent`, ...). The target itself never contributes. The 4-word
//!   window stops at the sentence; the 20- and 50-word windows cross
//!   sentences but stop at the document.
//!
//! Feature value spellings follow the decision-list output format: word-form
//! collocations print every pattern token, lemma collocations print only the
//! context lemmas (`big_lem_-1 in`, not `interest in`).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::corpus::{Corpus, Document, SenseId, SenseInventory, Sentence, Token, Word, UNKNOWN_POS};
use crate::error::{Error, Result};

/// Collocation families: word-form, PoS, and lemma n-grams, plus the mixed
/// trigram that spells context positions as PoS tags and the target as its
/// word-form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CollocFamily {
    BigWf,
    BigPos,
    BigLem,
    TrigWf,
    TrigPos,
    TrigLem,
    TrigMix,
}

impl CollocFamily {
    pub fn prefix(self) -> &'static str {
        match self {
            CollocFamily::BigWf => "big_wf",
            CollocFamily::BigPos => "big_pos",
            CollocFamily::BigLem => "big_lem",
            CollocFamily::TrigWf => "trig_wf",
            CollocFamily::TrigPos => "trig_pos",
            CollocFamily::TrigLem => "trig_lem",
            CollocFamily::TrigMix => "trig_mix",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            CollocFamily::BigWf | CollocFamily::BigPos | CollocFamily::BigLem => 2,
            _ => 3,
        }
    }

    /// Pattern labels for this arity: minus the count of pattern tokens to
    /// the right of the target.
    pub fn labels(self) -> &'static [i8] {
        if self.arity() == 2 {
            &[-1, 0]
        } else {
            &[-2, -1, 0]
        }
    }
}

/// What a bag feature reads off each context token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BagLevel {
    WordForm,
    Lemma,
    Synset,
    SemanticFile,
    GeneralPos,
}

impl BagLevel {
    pub fn prefix(self) -> &'static str {
        match self {
            BagLevel::WordForm => "wf",
            BagLevel::Lemma => "lem",
            BagLevel::Synset => "syn",
            BagLevel::SemanticFile => "sf",
            BagLevel::GeneralPos => "genpos",
        }
    }
}

/// Context window for bag features.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Window {
    /// +/- n words around the target (n in {4, 20, 50}).
    Words(u8),
    /// The target's sentence.
    Sentence,
}

impl Window {
    pub const ALL: [Window; 4] = [
        Window::Words(4),
        Window::Words(20),
        Window::Words(50),
        Window::Sentence,
    ];

    fn suffix(self) -> &'static str {
        match self {
            Window::Words(4) => "4w",
            Window::Words(20) => "20w",
            Window::Words(50) => "50w",
            Window::Sentence => "sent",
            Window::Words(n) => unreachable!("unsupported window size {n}"),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Window::Words(n) => write!(f, "{n}"),
            Window::Sentence => f.write_str("sentence"),
        }
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "4" => Ok(Window::Words(4)),
            "20" => Ok(Window::Words(20)),
            "50" => Ok(Window::Words(50)),
            "sentence" | "sent" => Ok(Window::Sentence),
            _ => Err(Error::invalid(format!(
                "unknown window '{s}' (expected 4, 20, 50, or sentence)"
            ))),
        }
    }
}

/// A feature kind: one collocation pattern or one bag level/window pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FeatureKind {
    Colloc { family: CollocFamily, label: i8 },
    Bag { level: BagLevel, window: Window },
}

impl FeatureKind {
    /// The two name components; the full kind name is `prefix_suffix`.
    fn parts(&self) -> (&'static str, &'static str) {
        match self {
            FeatureKind::Colloc { family, label } => {
                let suffix = match label {
                    -2 => "-2",
                    -1 => "-1",
                    0 => "0",
                    _ => unreachable!("unsupported collocation label {label}"),
                };
                (family.prefix(), suffix)
            }
            FeatureKind::Bag { level, window } => (level.prefix(), window.suffix()),
        }
    }

    pub fn name(&self) -> String {
        let (p, s) = self.parts();
        format!("{p}_{s}")
    }
}

impl fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, s) = self.parts();
        write!(f, "{p}_{s}")
    }
}

impl FromStr for FeatureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (prefix, suffix) = s
            .rsplit_once('_')
            .ok_or_else(|| Error::invalid(format!("unknown feature kind '{s}'")))?;
        const FAMILIES: [CollocFamily; 7] = [
            CollocFamily::BigWf,
            CollocFamily::BigPos,
            CollocFamily::BigLem,
            CollocFamily::TrigWf,
            CollocFamily::TrigPos,
            CollocFamily::TrigLem,
            CollocFamily::TrigMix,
        ];
        for family in FAMILIES {
            if prefix == family.prefix() {
                let label: i8 = suffix
                    .parse()
                    .map_err(|_| Error::invalid(format!("bad collocation label in '{s}'")))?;
                if !family.labels().contains(&label) {
                    return Err(Error::invalid(format!("bad collocation label in '{s}'")));
                }
                return Ok(FeatureKind::Colloc { family, label });
            }
        }
        const LEVELS: [BagLevel; 5] = [
            BagLevel::WordForm,
            BagLevel::Lemma,
            BagLevel::Synset,
            BagLevel::SemanticFile,
            BagLevel::GeneralPos,
        ];
        for level in LEVELS {
            if prefix == level.prefix() {
                let window = match suffix {
                    "4w" => Window::Words(4),
                    "20w" => Window::Words(20),
                    "50w" => Window::Words(50),
                    "sent" => Window::Sentence,
                    _ => return Err(Error::invalid(format!("bad window in '{s}'"))),
                };
                return Ok(FeatureKind::Bag { level, window });
            }
        }
        Err(Error::invalid(format!("unknown feature kind '{s}'")))
    }
}

// Kind names are the tie-break key in decision lists, so the kind order is
// the lexicographic order of the rendered names. Prefixes are pairwise
// non-prefixing, which makes the component-wise comparison equivalent.
impl Ord for FeatureKind {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.parts().cmp(&other.parts())
    }
}

impl PartialOrd for FeatureKind {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A (kind, value) pair, e.g. `(big_wf_-1, "interest in")`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Feature {
    pub kind: FeatureKind,
    pub value: String,
}

impl Feature {
    pub fn new(kind: FeatureKind, value: impl Into<String>) -> Feature {
        Feature {
            kind,
            value: value.into(),
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.kind, self.value)
    }
}

/// The twelve feature families a configuration can enable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    BigWf,
    BigPos,
    BigLem,
    TrigWf,
    TrigPos,
    TrigLem,
    TrigMix,
    BagWf,
    BagLem,
    BagSyn,
    BagSf,
    BagPosGeneral,
}

impl Family {
    pub const ALL: [Family; 12] = [
        Family::BigWf,
        Family::BigPos,
        Family::BigLem,
        Family::TrigWf,
        Family::TrigPos,
        Family::TrigLem,
        Family::TrigMix,
        Family::BagWf,
        Family::BagLem,
        Family::BagSyn,
        Family::BagSf,
        Family::BagPosGeneral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::BigWf => "big_wf",
            Family::BigPos => "big_pos",
            Family::BigLem => "big_lem",
            Family::TrigWf => "trig_wf",
            Family::TrigPos => "trig_pos",
            Family::TrigLem => "trig_lem",
            Family::TrigMix => "trig_mix",
            Family::BagWf => "bag_wf",
            Family::BagLem => "bag_lem",
            Family::BagSyn => "bag_syn",
            Family::BagSf => "bag_sf",
            Family::BagPosGeneral => "bag_pos_general",
        }
    }

    fn colloc(self) -> Option<CollocFamily> {
        match self {
            Family::BigWf => Some(CollocFamily::BigWf),
            Family::BigPos => Some(CollocFamily::BigPos),
            Family::BigLem => Some(CollocFamily::BigLem),
            Family::TrigWf => Some(CollocFamily::TrigWf),
            Family::TrigPos => Some(CollocFamily::TrigPos),
            Family::TrigLem => Some(CollocFamily::TrigLem),
            Family::TrigMix => Some(CollocFamily::TrigMix),
            _ => None,
        }
    }

    fn bag(self) -> Option<BagLevel> {
        match self {
            Family::BagWf => Some(BagLevel::WordForm),
            Family::BagLem => Some(BagLevel::Lemma),
            Family::BagSyn => Some(BagLevel::Synset),
            Family::BagSf => Some(BagLevel::SemanticFile),
            Family::BagPosGeneral => Some(BagLevel::GeneralPos),
            _ => None,
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown feature family '{s}'")))
    }
}

/// PoS collocations can use the fine tag set or the general five-tag set.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub enum PosGranularity {
    #[default]
    Fine,
    General,
}

impl PosGranularity {
    fn name(self) -> &'static str {
        match self {
            PosGranularity::Fine => "fine",
            PosGranularity::General => "general",
        }
    }
}

/// Which families, bag windows, and PoS granularity to extract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureConfig {
    pub families: BTreeSet<Family>,
    pub windows: BTreeSet<Window>,
    pub pos_granularity: PosGranularity,
}

impl FeatureConfig {
    /// Word-form and PoS bigrams/trigrams plus the 4-word and sentence
    /// word-form bags.
    pub fn basic() -> FeatureConfig {
        FeatureConfig {
            families: [
                Family::BigWf,
                Family::BigPos,
                Family::TrigWf,
                Family::TrigPos,
                Family::BagWf,
            ]
            .into(),
            windows: [Window::Words(4), Window::Sentence].into(),
            pos_granularity: PosGranularity::Fine,
        }
    }

    /// The collocations of the basic set.
    pub fn local() -> FeatureConfig {
        FeatureConfig {
            families: [Family::BigWf, Family::BigPos, Family::TrigWf, Family::TrigPos].into(),
            windows: BTreeSet::new(),
            pos_granularity: PosGranularity::Fine,
        }
    }

    /// The bags of the basic set: sentence plus 4-word word-form windows.
    pub fn topical() -> FeatureConfig {
        FeatureConfig {
            families: [Family::BagWf].into(),
            windows: [Window::Words(4), Window::Sentence].into(),
            pos_granularity: PosGranularity::Fine,
        }
    }

    /// Every family over every window.
    pub fn all() -> FeatureConfig {
        FeatureConfig {
            families: Family::ALL.into(),
            windows: Window::ALL.into(),
            pos_granularity: PosGranularity::Fine,
        }
    }

    pub fn preset(name: &str) -> Option<FeatureConfig> {
        match name {
            "basic" => Some(FeatureConfig::basic()),
            "local" => Some(FeatureConfig::local()),
            "topical" => Some(FeatureConfig::topical()),
            "all" => Some(FeatureConfig::all()),
            _ => None,
        }
    }

    /// Parses a flat key=value file. Keys: `preset`, `kinds`, `windows`,
    /// `pos_granularity`; values comma-separated. `kinds`/`windows` replace
    /// whatever the preset enabled.
    pub fn parse(text: &str) -> Result<FeatureConfig> {
        let mut families: Option<BTreeSet<Family>> = None;
        let mut windows: Option<BTreeSet<Window>> = None;
        let mut granularity: Option<PosGranularity> = None;
        let mut base: Option<FeatureConfig> = None;
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(lineno, "expected 'key=value'"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "preset" => {
                    base = Some(FeatureConfig::preset(value).ok_or_else(|| {
                        Error::parse(lineno, format!("unknown preset '{value}'"))
                    })?);
                }
                "kinds" => {
                    let mut set = BTreeSet::new();
                    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        set.insert(
                            item.parse::<Family>()
                                .map_err(|e| Error::parse(lineno, e.to_string()))?,
                        );
                    }
                    families = Some(set);
                }
                "windows" => {
                    let mut set = BTreeSet::new();
                    for item in value.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                        set.insert(
                            item.parse::<Window>()
                                .map_err(|e| Error::parse(lineno, e.to_string()))?,
                        );
                    }
                    windows = Some(set);
                }
                "pos_granularity" => {
                    granularity = Some(match value {
                        "fine" => PosGranularity::Fine,
                        "general" => PosGranularity::General,
                        _ => {
                            return Err(Error::parse(
                                lineno,
                                format!("pos_granularity must be 'fine' or 'general', got '{value}'"),
                            ))
                        }
                    });
                }
                _ => return Err(Error::parse(lineno, format!("unknown key '{key}'"))),
            }
        }
        let base = base.unwrap_or(FeatureConfig {
            families: BTreeSet::new(),
            windows: BTreeSet::new(),
            pos_granularity: PosGranularity::Fine,
        });
        let config = FeatureConfig {
            families: families.unwrap_or(base.families),
            windows: windows.unwrap_or(base.windows),
            pos_granularity: granularity.unwrap_or(base.pos_granularity),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.families.is_empty() {
            return Err(Error::invalid("no feature kinds enabled"));
        }
        let has_bag = self.families.iter().any(|f| f.bag().is_some());
        if has_bag && self.windows.is_empty() {
            return Err(Error::invalid("bag kinds enabled but no windows configured"));
        }
        Ok(())
    }

    /// Rebuilds a configuration from a [`FeatureConfig::fingerprint`]
    /// rendering, so a stored decision list carries enough to extract
    /// matching features at tag time.
    pub fn from_fingerprint(fingerprint: &str) -> Result<FeatureConfig> {
        let mut families = BTreeSet::new();
        let mut windows = BTreeSet::new();
        let mut granularity = PosGranularity::Fine;
        for part in fingerprint.split(';') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("bad fingerprint part '{part}'")))?;
            match key {
                "kinds" => {
                    for item in value.split('|').filter(|s| !s.is_empty()) {
                        families.insert(item.parse::<Family>()?);
                    }
                }
                "windows" => {
                    for item in value.split('|').filter(|s| !s.is_empty()) {
                        windows.insert(item.parse::<Window>()?);
                    }
                }
                "pos" => {
                    granularity = match value {
                        "fine" => PosGranularity::Fine,
                        "general" => PosGranularity::General,
                        _ => return Err(Error::invalid(format!("bad pos granularity '{value}'"))),
                    };
                }
                _ => return Err(Error::invalid(format!("bad fingerprint key '{key}'"))),
            }
        }
        let config = FeatureConfig {
            families,
            windows,
            pos_granularity: granularity,
        };
        config.validate()?;
        Ok(config)
    }

    /// A canonical, whitespace-free rendering recorded in trained decision
    /// lists so a list and a test-time configuration can be matched up.
    pub fn fingerprint(&self) -> String {
        let kinds = self
            .families
            .iter()
            .map(|f| f.name())
            .collect::<Vec<_>>()
            .join("|");
        let windows = self
            .windows
            .iter()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join("|");
        format!(
            "kinds={kinds};windows={windows};pos={}",
            self.pos_granularity.name()
        )
    }
}

/// One occurrence of a target word, with enough context to extract
/// document-wide windows. `gold` is owned so protocols may relabel it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrainingExample<'c> {
    pub doc: &'c Document,
    pub sentence_index: usize,
    pub token_index: usize,
    pub target: Word,
    pub gold: BTreeSet<SenseId>,
}

impl<'c> TrainingExample<'c> {
    pub fn sentence(&self) -> &'c Sentence {
        &self.doc.sentences[self.sentence_index]
    }

    pub fn token(&self) -> &'c Token {
        &self.sentence().tokens[self.token_index]
    }
}

/// One example per tagged occurrence of `word`, in document order.
pub fn enumerate_targets<'c>(corpus: &'c Corpus, word: &Word) -> Vec<TrainingExample<'c>> {
    enumerate_occurrences(corpus, word)
        .into_iter()
        .filter(|e| !e.gold.is_empty())
        .collect()
}

/// Every occurrence of `word`, tagged or not, in document order. Untagged
/// occurrences have an empty gold set and are only useful for tagging.
pub fn enumerate_occurrences<'c>(corpus: &'c Corpus, word: &Word) -> Vec<TrainingExample<'c>> {
    let mut out = Vec::new();
    for doc in &corpus.documents {
        for (si, sentence) in doc.sentences.iter().enumerate() {
            for (ti, token) in sentence.tokens.iter().enumerate() {
                if token.lemma == word.lemma && token.coarse_pos == word.pos {
                    out.push(TrainingExample {
                        doc,
                        sentence_index: si,
                        token_index: ti,
                        target: word.clone(),
                        gold: token.senses.iter().cloned().collect(),
                    });
                }
            }
        }
    }
    out
}

/// One example per tagged open-class token in the given documents, in
/// document order.
pub fn enumerate_all_content_words<'c>(
    corpus: &'c Corpus,
    doc_ids: &BTreeSet<String>,
) -> Vec<TrainingExample<'c>> {
    let mut out = Vec::new();
    for doc in &corpus.documents {
        if !doc_ids.contains(&doc.id) {
            continue;
        }
        for (si, sentence) in doc.sentences.iter().enumerate() {
            for (ti, token) in sentence.tokens.iter().enumerate() {
                if token.coarse_pos.is_open_class() && token.is_tagged() {
                    out.push(TrainingExample {
                        doc,
                        sentence_index: si,
                        token_index: ti,
                        target: token.word(),
                        gold: token.senses.iter().cloned().collect(),
                    });
                }
            }
        }
    }
    out
}

/// Extracts the configured feature set around the example's target token.
/// Pure: identical inputs produce identical sets.
pub fn extract(
    example: &TrainingExample<'_>,
    config: &FeatureConfig,
    inventory: &SenseInventory,
) -> BTreeSet<Feature> {
    let mut out = BTreeSet::new();
    let sentence = example.sentence();
    let t = example.token_index;

    for family in &config.families {
        if let Some(colloc) = family.colloc() {
            extract_colloc(colloc, sentence, t, config.pos_granularity, &mut out);
        }
        if let Some(level) = family.bag() {
            for window in &config.windows {
                extract_bag(level, *window, example, inventory, &mut out);
            }
        }
    }
    out
}

fn extract_colloc(
    family: CollocFamily,
    sentence: &Sentence,
    t: usize,
    granularity: PosGranularity,
    out: &mut BTreeSet<Feature>,
) {
    let n = sentence.tokens.len() as isize;
    let arity = family.arity() as isize;
    for &label in family.labels() {
        // label = -(tokens right of target); the pattern spans
        // offsets -(arity-1-right) ..= right around the target.
        let right = -(label as isize);
        let left = arity - 1 - right;
        let lo = t as isize - left;
        let hi = t as isize + right;
        if lo < 0 || hi >= n {
            continue;
        }
        let pattern: Vec<&Token> = (lo..=hi)
            .map(|i| &sentence.tokens[i as usize])
            .collect();
        let target_off = left as usize;
        if let Some(value) = colloc_value(family, &pattern, target_off, granularity) {
            out.insert(Feature::new(FeatureKind::Colloc { family, label }, value));
        }
    }
}

fn pos_of(token: &Token, granularity: PosGranularity) -> Option<String> {
    if token.pos == UNKNOWN_POS {
        return None;
    }
    Some(match granularity {
        PosGranularity::Fine => token.pos.clone(),
        PosGranularity::General => token.coarse_pos.to_string(),
    })
}

fn colloc_value(
    family: CollocFamily,
    pattern: &[&Token],
    target_off: usize,
    granularity: PosGranularity,
) -> Option<String> {
    let mut parts: Vec<String> = Vec::with_capacity(pattern.len());
    match family {
        CollocFamily::BigWf | CollocFamily::TrigWf => {
            parts.extend(pattern.iter().map(|t| t.surface.clone()));
        }
        CollocFamily::BigPos | CollocFamily::TrigPos => {
            for token in pattern {
                parts.push(pos_of(token, granularity)?);
            }
        }
        CollocFamily::BigLem | CollocFamily::TrigLem => {
            // Context lemmas only; the target position is implied by the kind.
            for (i, token) in pattern.iter().enumerate() {
                if i != target_off {
                    parts.push(token.lemma.clone());
                }
            }
        }
        CollocFamily::TrigMix => {
            for (i, token) in pattern.iter().enumerate() {
                if i == target_off {
                    parts.push(token.surface.clone());
                } else {
                    parts.push(pos_of(token, granularity)?);
                }
            }
        }
    }
    Some(parts.join(" "))
}

fn extract_bag(
    level: BagLevel,
    window: Window,
    example: &TrainingExample<'_>,
    inventory: &SenseInventory,
    out: &mut BTreeSet<Feature>,
) {
    let kind = FeatureKind::Bag { level, window };
    let push = |token: &Token, out: &mut BTreeSet<Feature>| match level {
        BagLevel::WordForm => {
            out.insert(Feature::new(kind.clone(), token.surface.clone()));
        }
        BagLevel::Lemma => {
            out.insert(Feature::new(kind.clone(), token.lemma.clone()));
        }
        BagLevel::Synset => {
            if token.coarse_pos.is_open_class() {
                for sense in &token.senses {
                    out.insert(Feature::new(kind.clone(), sense.to_string()));
                }
            }
        }
        BagLevel::SemanticFile => {
            if token.coarse_pos.is_open_class() {
                for sense in &token.senses {
                    // Unannotated or unresolvable context contributes nothing.
                    if let Some(entry) = inventory.resolve(sense) {
                        out.insert(Feature::new(kind.clone(), entry.semantic_file.clone()));
                    }
                }
            }
        }
        BagLevel::GeneralPos => {
            if token.pos != UNKNOWN_POS {
                out.insert(Feature::new(kind.clone(), token.coarse_pos.to_string()));
            }
        }
    };

    match window {
        Window::Sentence => {
            for (i, token) in example.sentence().tokens.iter().enumerate() {
                if i != example.token_index {
                    push(token, out);
                }
            }
        }
        Window::Words(4) => {
            let tokens = &example.sentence().tokens;
            let t = example.token_index;
            let lo = t.saturating_sub(4);
            let hi = (t + 4).min(tokens.len().saturating_sub(1));
            for (i, token) in tokens.iter().enumerate().take(hi + 1).skip(lo) {
                if i != t {
                    push(token, out);
                }
            }
        }
        Window::Words(w) => {
            // Wide windows cross sentence boundaries within the document.
            let w = w as usize;
            let doc = example.doc;
            let mut flat: Vec<&Token> = Vec::new();
            let mut target_pos = 0;
            for (si, sentence) in doc.sentences.iter().enumerate() {
                for (ti, token) in sentence.tokens.iter().enumerate() {
                    if si == example.sentence_index && ti == example.token_index {
                        target_pos = flat.len();
                    }
                    flat.push(token);
                }
            }
            let lo = target_pos.saturating_sub(w);
            let hi = (target_pos + w).min(flat.len().saturating_sub(1));
            for (i, token) in flat.iter().enumerate().take(hi + 1).skip(lo) {
                if i != target_pos {
                    push(token, out);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CoarsePos;

    fn inv() -> SenseInventory {
        SenseInventory::parse(
            "interest\tnoun\t1\tnoun.cognition\t\tcuriosity\n\
             interest\tnoun\t2\tnoun.attribute\t\tpower to attract\n\
             interest\tnoun\t3\tnoun.advantage\t\tbenefit\n\
             election\tnoun\t1\tnoun.act\t\tvote\n",
        )
        .unwrap()
    }

    fn example_corpus() -> Corpus {
        // "... considering the widespread interest in the election ..."
        Corpus::parse(
            "# doc d1\n\
             considering\tconsider\tVBG\tverb\t-\n\
             the\tthe\tDT\tother\t-\n\
             widespread\twidespread\tJJ\tadjective\t-\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.2\n\
             in\tin\tIN\tother\t-\n\
             the\tthe\tDT\tother\t-\n\
             election\telection\tNN\tnoun\telection.noun.1\n",
        )
        .unwrap()
    }

    fn target<'c>(corpus: &'c Corpus) -> TrainingExample<'c> {
        enumerate_targets(corpus, &Word::new("interest", CoarsePos::Noun))
            .into_iter()
            .next()
            .unwrap()
    }

    #[test]
    fn paper_bigram_spellings() {
        let corpus = example_corpus();
        let ex = target(&corpus);
        let feats = extract(&ex, &FeatureConfig::all(), &inv());
        // The printed decision-list forms: `big_wf_-1 interest in` pairs the
        // target with the next word; `big_lem_-1 in` prints only the context
        // lemma.
        assert!(feats.contains(&Feature::new(
            "big_wf_-1".parse().unwrap(),
            "interest in"
        )));
        assert!(feats.contains(&Feature::new("big_lem_-1".parse().unwrap(), "in")));
        assert!(feats.contains(&Feature::new(
            "big_wf_0".parse().unwrap(),
            "widespread interest"
        )));
        assert!(feats.contains(&Feature::new(
            "trig_wf_-1".parse().unwrap(),
            "widespread interest in"
        )));
        assert!(feats.contains(&Feature::new("trig_pos_-2".parse().unwrap(), "NN IN DT")));
        assert!(feats.contains(&Feature::new("trig_mix_-1".parse().unwrap(), "JJ interest IN")));
        assert!(feats.contains(&Feature::new("trig_lem_0".parse().unwrap(), "the widespread")));
    }

    #[test]
    fn bags_exclude_target_and_resolve_levels() {
        let corpus = example_corpus();
        let ex = target(&corpus);
        let feats = extract(&ex, &FeatureConfig::all(), &inv());
        assert!(feats.contains(&Feature::new("wf_sent".parse().unwrap(), "election")));
        assert!(!feats.contains(&Feature::new("wf_sent".parse().unwrap(), "interest")));
        assert!(feats.contains(&Feature::new("lem_50w".parse().unwrap(), "consider")));
        assert!(feats.contains(&Feature::new("syn_4w".parse().unwrap(), "election.noun.1")));
        assert!(feats.contains(&Feature::new("sf_sent".parse().unwrap(), "noun.act")));
        assert!(feats.contains(&Feature::new("genpos_4w".parse().unwrap(), "other")));
    }

    #[test]
    fn four_word_window_truncates_at_sentence() {
        let corpus = Corpus::parse(
            "# doc d1\n\
             far\tfar\tRB\tadverb\t-\n\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.1\n\
             near\tnear\tJJ\tadjective\t-\n",
        )
        .unwrap();
        let ex = target(&corpus);
        let feats = extract(&ex, &FeatureConfig::topical(), &inv());
        assert!(feats.contains(&Feature::new("wf_4w".parse().unwrap(), "near")));
        // "far" is in the previous sentence: outside the 4-word window but
        // inside the wide windows, which cross sentences within a document.
        assert!(!feats.contains(&Feature::new("wf_4w".parse().unwrap(), "far")));
        let all = extract(&ex, &FeatureConfig::all(), &inv());
        assert!(all.contains(&Feature::new("wf_50w".parse().unwrap(), "far")));
    }

    #[test]
    fn duplicate_window_members_emit_one_feature() {
        let corpus = Corpus::parse(
            "# doc d1\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.3\n\
             helped\thelp\tVBD\tverb\t-\n\
             winning\twin\tVBG\tverb\t-\n\
             after\tafter\tIN\tother\t-\n\
             winning\twin\tVBG\tverb\t-\n",
        )
        .unwrap();
        let ex = target(&corpus);
        let config = FeatureConfig::parse("kinds = bag_lem\nwindows = 50\n").unwrap();
        let feats = extract(&ex, &config, &inv());
        let wins = feats
            .iter()
            .filter(|f| f.kind.name() == "lem_50w" && f.value == "win")
            .count();
        assert_eq!(wins, 1);
    }

    #[test]
    fn lone_target_with_bags_yields_nothing() {
        let corpus = Corpus::parse("# doc d1\ninterest\tinterest\tNN\tnoun\tinterest.noun.1\n")
            .unwrap();
        let ex = target(&corpus);
        assert!(extract(&ex, &FeatureConfig::all(), &inv()).is_empty());
    }

    #[test]
    fn boundary_patterns_drop_out() {
        let corpus = Corpus::parse(
            "# doc d1\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.1\n\
             in\tin\tIN\tother\t-\n\
             rome\trome\tNN\tnoun\t-\n",
        )
        .unwrap();
        let ex = target(&corpus);
        let feats = extract(&ex, &FeatureConfig::local(), &inv());
        let kinds: BTreeSet<String> = feats.iter().map(|f| f.kind.name()).collect();
        // Sentence-initial target: only patterns extending right survive.
        assert!(kinds.contains("big_wf_-1"));
        assert!(kinds.contains("trig_wf_-2"));
        assert!(!kinds.contains("big_wf_0"));
        assert!(!kinds.contains("trig_wf_-1"));
        assert!(!kinds.contains("trig_wf_0"));
    }

    #[test]
    fn unknown_pos_suppresses_pos_features() {
        let corpus = Corpus::parse(
            "# doc d1\n\
             interest\tinterest\tNOUN\tnoun\tinterest.noun.1\n\
             grew\tgrew\tUNK\tother\t-\n",
        )
        .unwrap();
        let ex = target(&corpus);
        let feats = extract(&ex, &FeatureConfig::all(), &inv());
        let kinds: BTreeSet<String> = feats.iter().map(|f| f.kind.name()).collect();
        assert!(kinds.contains("big_wf_-1"));
        assert!(kinds.contains("big_lem_-1"));
        assert!(!kinds.contains("big_pos_-1"));
        assert!(!kinds.contains("trig_mix_-1"));
        assert!(!feats.contains(&Feature::new("genpos_sent".parse().unwrap(), "other")));
    }

    #[test]
    fn local_and_topical_partition_the_basic_set() {
        let corpus = example_corpus();
        let ex = target(&corpus);
        let inv = inv();
        let local = extract(&ex, &FeatureConfig::local(), &inv);
        let topical = extract(&ex, &FeatureConfig::topical(), &inv);
        let basic = extract(&ex, &FeatureConfig::basic(), &inv);
        assert!(local.is_disjoint(&topical));
        let union: BTreeSet<_> = local.union(&topical).cloned().collect();
        assert_eq!(union, basic);
    }

    #[test]
    fn enumeration_counts_and_ordering() {
        let corpus = Corpus::parse(
            "# doc d1\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.1\n\n\
             interest\tinterest\tNN\tnoun\t-\n\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.2\n",
        )
        .unwrap();
        let word = Word::new("interest", CoarsePos::Noun);
        let examples = enumerate_targets(&corpus, &word);
        // The untagged occurrence is skipped.
        assert_eq!(examples.len(), 2);
        assert_eq!(examples[0].sentence_index, 0);
        assert_eq!(examples[1].sentence_index, 2);
        assert!(enumerate_targets(&corpus, &Word::new("absent", CoarsePos::Noun)).is_empty());
    }

    #[test]
    fn content_word_enumeration_filters_docs_and_classes() {
        let corpus = Corpus::parse(
            "# doc d1\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.1\n\
             in\tin\tIN\tother\t-\n\
             election\telection\tNN\tnoun\telection.noun.1\n\
             # doc d2\n\
             interest\tinterest\tNN\tnoun\tinterest.noun.2\n",
        )
        .unwrap();
        let only_d1: BTreeSet<String> = ["d1".to_string()].into();
        let examples = enumerate_all_content_words(&corpus, &only_d1);
        assert_eq!(examples.len(), 2);
        assert!(enumerate_all_content_words(&corpus, &BTreeSet::new()).is_empty());
    }

    #[test]
    fn kind_names_round_trip_and_order_lexicographically() {
        let names = [
            "big_lem_-1", "big_lem_0", "big_pos_-1", "big_wf_-1", "big_wf_0", "genpos_4w",
            "lem_20w", "lem_4w", "lem_50w", "lem_sent", "sf_sent", "syn_4w", "trig_mix_-1",
            "trig_mix_-2", "trig_wf_-1", "trig_wf_-2", "trig_wf_0", "wf_4w", "wf_sent",
        ];
        let mut kinds: Vec<FeatureKind> = names.iter().map(|n| n.parse().unwrap()).collect();
        for (kind, name) in kinds.iter().zip(names) {
            assert_eq!(kind.name(), *name);
        }
        kinds.sort();
        let sorted: Vec<String> = kinds.iter().map(|k| k.name()).collect();
        let mut expected: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        expected.sort();
        assert_eq!(sorted, expected);
    }

    #[test]
    fn fingerprint_round_trips() {
        for config in [
            FeatureConfig::basic(),
            FeatureConfig::local(),
            FeatureConfig::topical(),
            FeatureConfig::all(),
        ] {
            let rebuilt = FeatureConfig::from_fingerprint(&config.fingerprint()).unwrap();
            assert_eq!(rebuilt, config);
        }
    }

    #[test]
    fn config_file_and_fingerprint() {
        let config = FeatureConfig::parse(
            "# comment\npreset = basic\nwindows = 4, sentence\npos_granularity = general\n",
        )
        .unwrap();
        assert_eq!(config.windows, [Window::Words(4), Window::Sentence].into());
        assert_eq!(config.pos_granularity, PosGranularity::General);
        assert_eq!(
            FeatureConfig::basic().fingerprint(),
            "kinds=big_wf|big_pos|trig_wf|trig_pos|bag_wf;windows=4|sentence;pos=fine"
        );
        assert!(FeatureConfig::parse("kinds = bag_wf\n").is_err());
        assert!(FeatureConfig::parse("windows = 4\n").is_err());
    }

    #[test]
    fn general_granularity_switches_pos_values() {
        let corpus = example_corpus();
        let ex = target(&corpus);
        let mut config = FeatureConfig::local();
        config.pos_granularity = PosGranularity::General;
        let feats = extract(&ex, &config, &inv());
        assert!(feats.contains(&Feature::new("big_pos_-1".parse().unwrap(), "noun other")));
    }
}
