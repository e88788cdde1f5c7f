//! Annotated-text data model and the line-based file formats.
//!
//! Three formats, all UTF-8 and tab-separated:
//!
//! * corpus: `# doc <id>` opens a document, one token per line as
//!   `surface TAB lemma TAB pos TAB coarse_pos TAB senses`, a blank line
//!   closes a sentence. The senses cell is `-` or a `;`-separated list of
//!   `lemma.pos.index` ids.
//! * inventory: one sense per line,
//!   `lemma TAB coarse_pos TAB index TAB semantic_file TAB synonyms TAB gloss`,
//!   synonyms comma-separated with a trailing `*` marking monosemous phrases.
//! * mapping: `source_sense_id TAB target_sense_id` per line.
//!
//! Surfaces, lemmas, synonym phrases, and glosses are lowercased at parse
//! time; matching throughout the crate is therefore case-insensitive.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use crate::error::{Error, Result};

/// The reserved fine PoS tag for tokens whose tag is genuinely unknown
/// (e.g. text acquired from the web). Tokens carrying it contribute no
/// PoS-based features.
pub const UNKNOWN_POS: &str = "UNK";

/// The general five-tag PoS set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoarsePos {
    Noun,
    Verb,
    Adjective,
    Adverb,
    Other,
}

impl CoarsePos {
    pub fn as_str(self) -> &'static str {
        match self {
            CoarsePos::Noun => "noun",
            CoarsePos::Verb => "verb",
            CoarsePos::Adjective => "adjective",
            CoarsePos::Adverb => "adverb",
            CoarsePos::Other => "other",
        }
    }

    /// Nouns, verbs, adjectives, and adverbs are open-class.
    pub fn is_open_class(self) -> bool {
        !matches!(self, CoarsePos::Other)
    }

    /// The synthetic fine tag used when generating annotated text (web
    /// acquisition) where only the coarse class is known.
    pub fn synthetic_fine_tag(self) -> &'static str {
        match self {
            CoarsePos::Noun => "NOUN",
            CoarsePos::Verb => "VERB",
            CoarsePos::Adjective => "ADJ",
            CoarsePos::Adverb => "ADV",
            CoarsePos::Other => UNKNOWN_POS,
        }
    }
}

impl fmt::Display for CoarsePos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoarsePos {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "noun" => Ok(CoarsePos::Noun),
            "verb" => Ok(CoarsePos::Verb),
            "adjective" => Ok(CoarsePos::Adjective),
            "adverb" => Ok(CoarsePos::Adverb),
            "other" => Ok(CoarsePos::Other),
            _ => Err(Error::invalid(format!("unknown coarse PoS tag '{s}'"))),
        }
    }
}

/// Maps fine PoS tags to the general set by longest matching prefix.
/// Tags matching no prefix map to `other`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosTable {
    prefixes: Vec<(String, CoarsePos)>,
}

static BUILTIN_POS_TABLE: LazyLock<PosTable> = LazyLock::new(|| PosTable {
    prefixes: vec![
        ("NN".into(), CoarsePos::Noun),
        ("NOUN".into(), CoarsePos::Noun),
        ("VB".into(), CoarsePos::Verb),
        ("VERB".into(), CoarsePos::Verb),
        ("JJ".into(), CoarsePos::Adjective),
        ("ADJ".into(), CoarsePos::Adjective),
        ("RB".into(), CoarsePos::Adverb),
        ("ADV".into(), CoarsePos::Adverb),
    ],
});

impl PosTable {
    /// The built-in Penn-style prefix table (NN*, VB*, JJ*, RB* plus the
    /// synthetic NOUN/VERB/ADJ/ADV tags).
    pub fn builtin() -> &'static PosTable {
        &BUILTIN_POS_TABLE
    }

    /// Parses an override table: one `prefix TAB coarse_pos` per line,
    /// blank lines and `#` comments skipped.
    pub fn parse(text: &str) -> Result<PosTable> {
        let mut prefixes = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split('\t');
            match (parts.next(), parts.next(), parts.next()) {
                (Some(prefix), Some(pos), None) if !prefix.is_empty() => {
                    let pos = pos
                        .parse::<CoarsePos>()
                        .map_err(|e| Error::parse(i + 1, e.to_string()))?;
                    prefixes.push((prefix.to_string(), pos));
                }
                _ => {
                    return Err(Error::parse(
                        i + 1,
                        "expected 'prefix TAB coarse_pos'".to_string(),
                    ))
                }
            }
        }
        Ok(PosTable { prefixes })
    }

    pub fn coarse_of(&self, pos: &str) -> CoarsePos {
        let mut best: Option<(&str, CoarsePos)> = None;
        for (prefix, coarse) in &self.prefixes {
            if pos.starts_with(prefix.as_str()) {
                match best {
                    Some((b, _)) if b.len() >= prefix.len() => {}
                    _ => best = Some((prefix, *coarse)),
                }
            }
        }
        best.map(|(_, c)| c).unwrap_or(CoarsePos::Other)
    }
}

/// A (lemma, coarse PoS) pair naming one disambiguation target.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    pub lemma: String,
    pub pos: CoarsePos,
}

impl Word {
    pub fn new(lemma: impl Into<String>, pos: CoarsePos) -> Word {
        Word {
            lemma: lemma.into().to_lowercase(),
            pos,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.lemma, self.pos)
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `lemma.pos`; the lemma may itself contain dots.
    fn from_str(s: &str) -> Result<Self> {
        let (lemma, pos) = s
            .rsplit_once('.')
            .ok_or_else(|| Error::invalid(format!("expected 'lemma.pos', got '{s}'")))?;
        if lemma.is_empty() {
            return Err(Error::invalid(format!("empty lemma in '{s}'")));
        }
        Ok(Word::new(lemma, pos.parse()?))
    }
}

/// One sense of a word, written `lemma.pos.index` (e.g. `interest.noun.3`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SenseId {
    pub lemma: String,
    pub pos: CoarsePos,
    pub index: u32,
}

impl SenseId {
    pub fn new(lemma: impl Into<String>, pos: CoarsePos, index: u32) -> SenseId {
        SenseId {
            lemma: lemma.into().to_lowercase(),
            pos,
            index,
        }
    }

    pub fn word(&self) -> Word {
        Word {
            lemma: self.lemma.clone(),
            pos: self.pos,
        }
    }
}

impl fmt::Display for SenseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}.{}", self.lemma, self.pos, self.index)
    }
}

impl FromStr for SenseId {
    type Err = Error;

    /// Parses `lemma.pos.index`; the lemma may itself contain dots.
    fn from_str(s: &str) -> Result<Self> {
        let mut it = s.rsplitn(3, '.');
        let (index, pos, lemma) = match (it.next(), it.next(), it.next()) {
            (Some(i), Some(p), Some(l)) if !l.is_empty() => (i, p, l),
            _ => {
                return Err(Error::invalid(format!(
                    "expected 'lemma.pos.index', got '{s}'"
                )))
            }
        };
        let index: u32 = index
            .parse()
            .map_err(|_| Error::invalid(format!("bad sense index '{index}' in '{s}'")))?;
        if index == 0 {
            return Err(Error::invalid(format!("sense index must be >= 1 in '{s}'")));
        }
        Ok(SenseId::new(lemma, pos.parse()?, index))
    }
}

/// One annotated token. Surfaces and lemmas are stored lowercased.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub lemma: String,
    pub pos: String,
    pub coarse_pos: CoarsePos,
    /// Gold annotation; empty for untagged tokens, multiple ids allowed.
    pub senses: Vec<SenseId>,
}

impl Token {
    pub fn word(&self) -> Word {
        Word {
            lemma: self.lemma.clone(),
            pos: self.coarse_pos,
        }
    }

    pub fn is_tagged(&self) -> bool {
        !self.senses.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub doc_id: String,
    pub tokens: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    pub sentences: Vec<Sentence>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Corpus {
    pub documents: Vec<Document>,
}

impl Corpus {
    /// Parses the corpus format with the built-in PoS table.
    pub fn parse(text: &str) -> Result<Corpus> {
        Corpus::parse_with(text, PosTable::builtin())
    }

    pub fn parse_with(text: &str, table: &PosTable) -> Result<Corpus> {
        let mut documents: Vec<Document> = Vec::new();
        let mut seen_ids: BTreeSet<String> = BTreeSet::new();
        let mut current: Option<Document> = None;
        let mut tokens: Vec<Token> = Vec::new();

        fn flush_sentence(doc: &mut Option<Document>, tokens: &mut Vec<Token>) {
            if tokens.is_empty() {
                return;
            }
            let doc = doc.as_mut().expect("tokens require an open document");
            doc.sentences.push(Sentence {
                doc_id: doc.id.clone(),
                tokens: std::mem::take(tokens),
            });
        }

        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let trimmed = line.trim_end();
            if trimmed.is_empty() {
                flush_sentence(&mut current, &mut tokens);
            } else if let Some(rest) = trimmed.strip_prefix('#') {
                let id = rest
                    .trim_start()
                    .strip_prefix("doc")
                    .filter(|r| r.starts_with(char::is_whitespace))
                    .map(str::trim)
                    .filter(|id| !id.is_empty())
                    .ok_or_else(|| {
                        Error::parse(lineno, format!("unknown doc header '{trimmed}'"))
                    })?;
                if !seen_ids.insert(id.to_string()) {
                    return Err(Error::parse(lineno, format!("duplicate doc id '{id}'")));
                }
                flush_sentence(&mut current, &mut tokens);
                if let Some(doc) = current.take() {
                    documents.push(doc);
                }
                current = Some(Document {
                    id: id.to_string(),
                    sentences: Vec::new(),
                });
            } else {
                if current.is_none() {
                    return Err(Error::parse(
                        lineno,
                        "token line before any '# doc <id>' header",
                    ));
                }
                tokens.push(parse_token(trimmed, lineno, table)?);
            }
        }
        flush_sentence(&mut current, &mut tokens);
        if let Some(doc) = current.take() {
            documents.push(doc);
        }
        Ok(Corpus { documents })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for doc in &self.documents {
            out.push_str("# doc ");
            out.push_str(&doc.id);
            out.push('\n');
            for sentence in &doc.sentences {
                for t in &sentence.tokens {
                    let senses = if t.senses.is_empty() {
                        "-".to_string()
                    } else {
                        t.senses
                            .iter()
                            .map(|s| s.to_string())
                            .collect::<Vec<_>>()
                            .join(";")
                    };
                    out.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\n",
                        t.surface, t.lemma, t.pos, t.coarse_pos, senses
                    ));
                }
                out.push('\n');
            }
        }
        out
    }

    pub fn document(&self, id: &str) -> Option<&Document> {
        self.documents.iter().find(|d| d.id == id)
    }

    /// Checks that every sense id carried by any token resolves in `inv`.
    pub fn validate_against(&self, inv: &SenseInventory) -> Result<()> {
        for doc in &self.documents {
            for sentence in &doc.sentences {
                for token in &sentence.tokens {
                    for sense in &token.senses {
                        if inv.resolve(sense).is_none() {
                            return Err(Error::invalid(format!(
                                "sense '{sense}' (doc '{}') does not resolve in the inventory",
                                doc.id
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

fn parse_token(line: &str, lineno: usize, table: &PosTable) -> Result<Token> {
    let fields: Vec<&str> = line.split('\t').collect();
    if fields.len() != 5 {
        return Err(Error::parse(
            lineno,
            format!("expected 5 tab-separated fields, got {}", fields.len()),
        ));
    }
    let surface = fields[0].to_lowercase();
    let lemma = fields[1].to_lowercase();
    let pos = fields[2].to_string();
    if surface.is_empty() {
        return Err(Error::parse(lineno, "empty surface field"));
    }
    if lemma.is_empty() {
        return Err(Error::parse(lineno, "empty lemma field"));
    }
    if pos.is_empty() {
        return Err(Error::parse(lineno, "empty pos field"));
    }
    let coarse: CoarsePos = fields[3]
        .parse()
        .map_err(|e: Error| Error::parse(lineno, format!("coarse_pos field: {e}")))?;
    let expected = table.coarse_of(&pos);
    if coarse != expected {
        return Err(Error::parse(
            lineno,
            format!("coarse_pos '{coarse}' does not match pos '{pos}' (maps to '{expected}')"),
        ));
    }
    let mut senses = Vec::new();
    if fields[4] != "-" {
        for part in fields[4].to_lowercase().split(';') {
            let id: SenseId = part
                .parse()
                .map_err(|e: Error| Error::parse(lineno, format!("senses field: {e}")))?;
            if id.lemma != lemma || id.pos != coarse {
                return Err(Error::parse(
                    lineno,
                    format!("sense '{id}' does not match token '{lemma}.{coarse}'"),
                ));
            }
            if senses.contains(&id) {
                return Err(Error::parse(lineno, format!("duplicate sense '{id}'")));
            }
            senses.push(id);
        }
    }
    Ok(Token {
        surface,
        lemma,
        pos,
        coarse_pos: coarse,
        senses,
    })
}

/// A synonym phrase of one sense; monosemous phrases are usable as
/// unambiguous search proxies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Synonym {
    pub phrase: String,
    pub monosemous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SenseEntry {
    pub id: SenseId,
    pub semantic_file: String,
    pub synonyms: Vec<Synonym>,
    pub gloss: String,
}

/// Per-word sense lists, indexed by (lemma, coarse PoS). Sense indices
/// within one word are contiguous from 1; the stored lists are sorted by
/// index.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SenseInventory {
    entries: BTreeMap<Word, Vec<SenseEntry>>,
}

impl SenseInventory {
    pub fn parse(text: &str) -> Result<SenseInventory> {
        let mut grouped: BTreeMap<Word, Vec<SenseEntry>> = BTreeMap::new();
        let mut seen: BTreeSet<SenseId> = BTreeSet::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim_end_matches(['\r', '\n']);
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
            let lemma = fields[0].to_lowercase();
            if lemma.is_empty() {
                return Err(Error::parse(lineno, "empty lemma field"));
            }
            let pos: CoarsePos = fields[1]
                .parse()
                .map_err(|e: Error| Error::parse(lineno, format!("coarse_pos field: {e}")))?;
            let index: u32 = fields[2]
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad sense index '{}'", fields[2])))?;
            if index == 0 {
                return Err(Error::parse(lineno, "sense index must be >= 1"));
            }
            let semantic_file = fields[3].to_string();
            if semantic_file.is_empty() {
                return Err(Error::parse(lineno, "empty semantic_file field"));
            }
            let mut synonyms = Vec::new();
            if !fields[4].is_empty() {
                for raw in fields[4].split(',') {
                    let raw = raw.trim();
                    let (phrase, monosemous) = match raw.strip_suffix('*') {
                        Some(p) => (p.trim(), true),
                        None => (raw, false),
                    };
                    if phrase.is_empty() {
                        return Err(Error::parse(lineno, "empty synonym phrase"));
                    }
                    synonyms.push(Synonym {
                        phrase: phrase.to_lowercase(),
                        monosemous,
                    });
                }
            }
            let gloss = fields[5].to_lowercase();
            if gloss.is_empty() && !synonyms.iter().any(|s| s.monosemous) {
                return Err(Error::parse(
                    lineno,
                    "empty gloss requires at least one monosemous synonym",
                ));
            }
            let id = SenseId::new(lemma, pos, index);
            if !seen.insert(id.clone()) {
                return Err(Error::parse(lineno, format!("duplicate sense id '{id}'")));
            }
            grouped.entry(id.word()).or_default().push(SenseEntry {
                id,
                semantic_file,
                synonyms,
                gloss,
            });
        }
        for (word, entries) in &mut grouped {
            entries.sort_by_key(|e| e.id.index);
            for (i, entry) in entries.iter().enumerate() {
                if entry.id.index != i as u32 + 1 {
                    return Err(Error::invalid(format!(
                        "non-contiguous sense indices for '{word}': expected {}, found {}",
                        i + 1,
                        entry.id.index
                    )));
                }
            }
        }
        Ok(SenseInventory { entries: grouped })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for entries in self.entries.values() {
            for e in entries {
                let synonyms = e
                    .synonyms
                    .iter()
                    .map(|s| {
                        if s.monosemous {
                            format!("{}*", s.phrase)
                        } else {
                            s.phrase.clone()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(",");
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\n",
                    e.id.lemma, e.id.pos, e.id.index, e.semantic_file, synonyms, e.gloss
                ));
            }
        }
        out
    }

    pub fn senses(&self, word: &Word) -> &[SenseEntry] {
        self.entries.get(word).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn n_senses(&self, word: &Word) -> usize {
        self.senses(word).len()
    }

    pub fn resolve(&self, id: &SenseId) -> Option<&SenseEntry> {
        self.entries
            .get(&id.word())?
            .get(id.index as usize - 1)
            .filter(|e| e.id == *id)
    }

    /// The coarse (semantic-file) label of a sense.
    pub fn semantic_file(&self, id: &SenseId) -> Result<&str> {
        self.resolve(id)
            .map(|e| e.semantic_file.as_str())
            .ok_or_else(|| Error::invalid(format!("sense '{id}' does not resolve in the inventory")))
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.entries.keys()
    }
}

/// A total map from source-inventory senses to target-inventory senses,
/// used when training on one corpus and scoring on another.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SenseMapping {
    pairs: BTreeMap<SenseId, SenseId>,
}

impl SenseMapping {
    /// Maps every sense of `inv` to itself.
    pub fn identity(inv: &SenseInventory) -> SenseMapping {
        let mut pairs = BTreeMap::new();
        for word in inv.words() {
            for entry in inv.senses(word) {
                pairs.insert(entry.id.clone(), entry.id.clone());
            }
        }
        SenseMapping { pairs }
    }

    pub fn parse(text: &str) -> Result<SenseMapping> {
        let mut pairs = BTreeMap::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.trim_end().split('\t').collect();
            if fields.len() != 2 {
                return Err(Error::parse(
                    lineno,
                    format!("expected 2 tab-separated sense ids, got {} fields", fields.len()),
                ));
            }
            let source: SenseId = fields[0]
                .to_lowercase()
                .parse()
                .map_err(|e: Error| Error::parse(lineno, e.to_string()))?;
            let target: SenseId = fields[1]
                .to_lowercase()
                .parse()
                .map_err(|e: Error| Error::parse(lineno, e.to_string()))?;
            if pairs.insert(source.clone(), target).is_some() {
                return Err(Error::parse(
                    lineno,
                    format!("duplicate source sense id '{source}'"),
                ));
            }
        }
        Ok(SenseMapping { pairs })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, t) in &self.pairs {
            out.push_str(&format!("{s}\t{t}\n"));
        }
        out
    }

    pub fn map(&self, id: &SenseId) -> Option<&SenseId> {
        self.pairs.get(id)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Checks the mapping is total over every sense tagged in `corpus` and
    /// that every target resolves in `target_inv`.
    pub fn validate(&self, corpus: &Corpus, target_inv: &SenseInventory) -> Result<()> {
        for doc in &corpus.documents {
            for sentence in &doc.sentences {
                for token in &sentence.tokens {
                    for sense in &token.senses {
                        let target = self.map(sense).ok_or_else(|| {
                            Error::invalid(format!("mapping is not total: '{sense}' is unmapped"))
                        })?;
                        if target_inv.resolve(target).is_none() {
                            return Err(Error::invalid(format!(
                                "mapping target '{target}' does not resolve in the target inventory"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Parses a corpus and its companion inventory together, rejecting corpora
/// whose sense tags do not resolve.
pub fn load_validated(corpus_text: &str, inventory_text: &str) -> Result<(Corpus, SenseInventory)> {
    let inventory = SenseInventory::parse(inventory_text)?;
    let corpus = Corpus::parse(corpus_text)?;
    corpus.validate_against(&inventory)?;
    Ok((corpus, inventory))
}
