//! Training-data acquisition: build queries from monosemous synonyms and
//! glosses, retrieve text through a pluggable store, and generate annotated
//! examples by substituting the query phrase with the target word.
//!
//! Retrieval is an abstraction; the bundled [`DirStore`] reads plain-text
//! files from `<root>/<hash(phrase)>/*.txt`, where the hash is a stable
//! lowercase-hex FNV-1a of the whitespace-normalized phrase. A `manifest.tsv`
//! at the store root maps hashes back to phrases.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::LazyLock;

use crate::corpus::{CoarsePos, Corpus, Document, SenseEntry, SenseId, SenseInventory, Sentence, Token, Word, UNKNOWN_POS};
use crate::error::{Error, Result};
use crate::exec;

/// Where a query phrase came from; synonym queries rank ahead of gloss
/// queries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuerySource {
    MonosemousSynonym,
    Gloss,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub sense: SenseId,
    pub phrase: String,
    pub source: QuerySource,
    pub rank: u32,
}

/// Function words stripped from gloss edges when building queries.
static STOP_WORDS: LazyLock<Vec<&'static str>> = LazyLock::new(|| {
    vec![
        "a", "an", "the", "of", "in", "on", "at", "to", "for", "with", "by", "from", "as", "or",
        "and", "but", "that", "this", "these", "those", "is", "are", "was", "were", "be", "been",
        "being", "it", "its", "his", "her", "their", "who", "which", "any", "some", "such", "not",
        "usually", "especially",
    ]
});

fn is_stop_word(word: &str, stop_list: &[&str]) -> bool {
    stop_list.contains(&word)
}

/// Splits a gloss into phrase queries: split on punctuation, then trim
/// function words off both edges of each piece.
fn gloss_phrases(gloss: &str, stop_list: &[&str]) -> Vec<String> {
    let mut phrases = Vec::new();
    for piece in gloss.split(|c: char| ",;:.()!?\"".contains(c)) {
        let mut words: Vec<&str> = piece.split_whitespace().collect();
        while let Some(first) = words.first() {
            if is_stop_word(first, stop_list) {
                words.remove(0);
            } else {
                break;
            }
        }
        while let Some(last) = words.last() {
            if is_stop_word(last, stop_list) {
                words.pop();
            } else {
                break;
            }
        }
        if !words.is_empty() {
            phrases.push(words.join(" "));
        }
    }
    phrases
}

/// One query per monosemous synonym (rank 0, inventory order), then the
/// gloss-derived phrases (rank 1). Errors when nothing usable remains.
pub fn build_queries(entry: &SenseEntry) -> Result<Vec<Query>> {
    build_queries_with(entry, &STOP_WORDS)
}

pub fn build_queries_with(entry: &SenseEntry, stop_list: &[&str]) -> Result<Vec<Query>> {
    let mut queries = Vec::new();
    for synonym in &entry.synonyms {
        if synonym.monosemous {
            queries.push(Query {
                sense: entry.id.clone(),
                phrase: synonym.phrase.clone(),
                source: QuerySource::MonosemousSynonym,
                rank: 0,
            });
        }
    }
    for phrase in gloss_phrases(&entry.gloss, stop_list) {
        queries.push(Query {
            sense: entry.id.clone(),
            phrase,
            source: QuerySource::Gloss,
            rank: 1,
        });
    }
    if queries.is_empty() {
        return Err(Error::invalid(format!(
            "no queries derivable for '{}': no monosemous synonym and no usable gloss",
            entry.id
        )));
    }
    Ok(queries)
}

/// A text retrieved for one query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RetrievedDoc {
    pub query: Query,
    pub doc_id: String,
    pub body: String,
}

/// Pluggable retrieval backend; implementations must be safe for
/// concurrent reads.
pub trait Retriever: Send + Sync {
    /// Up to `limit` (doc id, body) pairs for a phrase, in a stable order.
    fn fetch(&self, phrase: &str, limit: usize) -> Result<Vec<(String, String)>>;
}

/// Runs a query against a retriever. Zero hits is an empty list, not an
/// error.
pub fn retrieve(query: &Query, retriever: &dyn Retriever, limit: usize) -> Result<Vec<RetrievedDoc>> {
    if limit < 1 {
        return Err(Error::invalid("retrieval limit must be >= 1"));
    }
    let docs = retriever.fetch(&query.phrase, limit)?;
    Ok(docs
        .into_iter()
        .map(|(doc_id, body)| RetrievedDoc {
            query: query.clone(),
            doc_id,
            body,
        })
        .collect())
}

/// Lowercases and collapses whitespace: the canonical form behind phrase
/// hashing and matching.
pub fn normalize_phrase(phrase: &str) -> String {
    phrase.to_lowercase().split_whitespace().collect::<Vec<_>>().join(" ")
}

/// The store-directory key of a phrase: 16 hex digits of FNV-1a.
pub fn phrase_hash(phrase: &str) -> String {
    format!("{:016x}", exec::stable_hash64(&[normalize_phrase(phrase).as_bytes()]))
}

/// File-backed document store: one directory per phrase hash holding
/// `*.txt` files, plus a `manifest.tsv` of `hash TAB phrase` lines.
#[derive(Debug, Clone)]
pub struct DirStore {
    root: PathBuf,
}

impl DirStore {
    /// Opens an existing store; a missing root is an error.
    pub fn open(root: impl Into<PathBuf>) -> Result<DirStore> {
        let root = root.into();
        if !root.is_dir() {
            return Err(Error::invalid(format!(
                "document store '{}' does not exist",
                root.display()
            )));
        }
        Ok(DirStore { root })
    }

    /// Creates the root directory (if needed) and opens it.
    pub fn create(root: impl Into<PathBuf>) -> Result<DirStore> {
        let root = root.into();
        fs::create_dir_all(&root)?;
        Ok(DirStore { root })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    /// Writes one document under the phrase's hash directory and records
    /// the phrase in the manifest.
    pub fn add_document(&self, phrase: &str, name: &str, body: &str) -> Result<()> {
        let dir = self.root.join(phrase_hash(phrase));
        fs::create_dir_all(&dir)?;
        fs::write(dir.join(format!("{name}.txt")), body)?;
        let manifest = self.root.join("manifest.tsv");
        let mut entries: BTreeMap<String, String> = BTreeMap::new();
        if manifest.is_file() {
            for line in fs::read_to_string(&manifest)?.lines() {
                if let Some((h, p)) = line.split_once('\t') {
                    entries.insert(h.to_string(), p.to_string());
                }
            }
        }
        entries.insert(phrase_hash(phrase), normalize_phrase(phrase));
        let mut text = String::new();
        for (h, p) in &entries {
            text.push_str(&format!("{h}\t{p}\n"));
        }
        fs::write(manifest, text)?;
        Ok(())
    }
}

impl Retriever for DirStore {
    fn fetch(&self, phrase: &str, limit: usize) -> Result<Vec<(String, String)>> {
        let dir = self.root.join(phrase_hash(phrase));
        if !dir.is_dir() {
            return Ok(Vec::new());
        }
        let mut names: Vec<String> = fs::read_dir(&dir)?
            .collect::<std::io::Result<Vec<_>>>()?
            .into_iter()
            .filter_map(|e| {
                let name = e.file_name().to_string_lossy().into_owned();
                name.ends_with(".txt").then_some(name)
            })
            .collect();
        names.sort_unstable();
        names.truncate(limit);
        let mut out = Vec::with_capacity(names.len());
        for name in names {
            let body = fs::read_to_string(dir.join(&name))?;
            out.push((name, body));
        }
        Ok(out)
    }
}

/// One substitution-generated training sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratedExample {
    pub sentence: Sentence,
    pub target_index: usize,
    pub sense: SenseId,
}

fn split_sentences(body: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let bytes = body.as_bytes();
    let mut start = 0;
    for (i, &b) in bytes.iter().enumerate() {
        if matches!(b, b'.' | b'!' | b'?') {
            let next = bytes.get(i + 1);
            if next.is_none() || next.is_some_and(|c| c.is_ascii_whitespace()) {
                out.push(&body[start..i]);
                start = i + 1;
            }
        }
    }
    if start < body.len() {
        out.push(&body[start..]);
    }
    out.into_iter().map(str::trim).filter(|s| !s.is_empty()).collect()
}

fn context_token(raw: &str) -> Token {
    let lower = raw.to_lowercase();
    Token {
        surface: lower.clone(),
        lemma: lower,
        pos: UNKNOWN_POS.to_string(),
        coarse_pos: CoarsePos::Other,
        senses: Vec::new(),
    }
}

fn target_token(target: &Word, sense: &SenseId) -> Token {
    Token {
        surface: target.lemma.clone(),
        lemma: target.lemma.clone(),
        pos: target.pos.synthetic_fine_tag().to_string(),
        coarse_pos: target.pos,
        senses: vec![sense.clone()],
    }
}

/// Splits each document body into sentences, finds case-insensitive
/// occurrences of the query phrase, and replaces each whole occurrence with
/// a single target token tagged with the query's sense. Emits one example
/// per matching sentence (the first occurrence is the target) until `cap`
/// is reached; documents are processed in input order.
pub fn generate_examples(
    docs: &[RetrievedDoc],
    target: &Word,
    cap: usize,
) -> Vec<GeneratedExample> {
    let mut out = Vec::new();
    for doc in docs {
        let phrase_words: Vec<String> = normalize_phrase(&doc.query.phrase)
            .split(' ')
            .map(str::to_string)
            .collect();
        if phrase_words.is_empty() {
            continue;
        }
        for sentence_text in split_sentences(&doc.body) {
            if out.len() >= cap {
                return out;
            }
            let raw: Vec<&str> = sentence_text.split_whitespace().collect();
            let lowered: Vec<String> = raw.iter().map(|w| w.to_lowercase()).collect();
            let mut tokens: Vec<Token> = Vec::new();
            let mut target_index: Option<usize> = None;
            let mut i = 0;
            while i < raw.len() {
                let matches_phrase = i + phrase_words.len() <= raw.len()
                    && phrase_words
                        .iter()
                        .zip(&lowered[i..i + phrase_words.len()])
                        .all(|(p, w)| p == w);
                if matches_phrase {
                    target_index.get_or_insert(tokens.len());
                    tokens.push(target_token(target, &doc.query.sense));
                    i += phrase_words.len();
                } else {
                    tokens.push(context_token(raw[i]));
                    i += 1;
                }
            }
            if let Some(target_index) = target_index {
                out.push(GeneratedExample {
                    sentence: Sentence {
                        doc_id: doc.query.sense.to_string(),
                        tokens,
                    },
                    target_index,
                    sense: doc.query.sense.clone(),
                });
            }
        }
    }
    out
}

/// Caps and filters for [`acquire_corpus`].
#[derive(Debug, Clone, PartialEq)]
pub struct AcquireOptions {
    /// Documents fetched per query ("around 100 documents per word sense").
    pub doc_limit: usize,
    /// Generated examples kept per sense.
    pub example_cap: usize,
    /// Bodies outside these byte bounds are discarded as suspicious
    /// (indexes, fragments, dumps).
    pub min_body: usize,
    pub max_body: usize,
}

impl Default for AcquireOptions {
    fn default() -> AcquireOptions {
        AcquireOptions {
            doc_limit: 100,
            example_cap: 100,
            min_body: 200,
            max_body: 200_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcquireOutcome {
    pub corpus: Corpus,
    /// One note per sense that yielded no examples.
    pub warnings: Vec<String>,
}

/// Runs the whole pipeline for each sense of each word and assembles a
/// corpus with one document per sense (doc id = sense id). Senses without
/// retrievable text are omitted with a warning.
pub fn acquire_corpus(
    inventory: &SenseInventory,
    words: &[Word],
    retriever: &dyn Retriever,
    options: &AcquireOptions,
) -> Result<AcquireOutcome> {
    for word in words {
        if inventory.n_senses(word) == 0 {
            return Err(Error::invalid(format!("'{word}' is not in the inventory")));
        }
    }
    let mut senses: Vec<(Word, SenseEntry)> = Vec::new();
    for word in words {
        for entry in inventory.senses(word) {
            senses.push((word.clone(), entry.clone()));
        }
    }
    let per_sense = exec::try_map_ordered(&senses, |(word, entry)| {
        let mut examples: Vec<GeneratedExample> = Vec::new();
        for query in build_queries(entry)? {
            if examples.len() >= options.example_cap {
                break;
            }
            let docs: Vec<RetrievedDoc> = retrieve(&query, retriever, options.doc_limit)?
                .into_iter()
                .filter(|d| (options.min_body..=options.max_body).contains(&d.body.len()))
                .collect();
            examples.extend(generate_examples(
                &docs,
                word,
                options.example_cap - examples.len(),
            ));
        }
        Ok::<_, Error>((entry.id.clone(), examples))
    })?;

    let mut outcome = AcquireOutcome {
        corpus: Corpus::default(),
        warnings: Vec::new(),
    };
    for (sense, examples) in per_sense {
        if examples.is_empty() {
            outcome
                .warnings
                .push(format!("no examples acquired for sense '{sense}'"));
            continue;
        }
        outcome.corpus.documents.push(Document {
            id: sense.to_string(),
            sentences: examples.into_iter().map(|e| e.sentence).collect(),
        });
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::CoarsePos;

    fn church_inventory() -> SenseInventory {
        SenseInventory::parse(
            "church\tnoun\t1\tnoun.group\tchristianity\ta group of christians\n\
             church\tnoun\t2\tnoun.artifact\tchurch building*\ta building for public worship\n",
        )
        .unwrap()
    }

    #[test]
    fn gloss_query_trims_function_words() {
        let inv = church_inventory();
        let entry = &inv.senses(&Word::new("church", CoarsePos::Noun))[0];
        let queries = build_queries(entry).unwrap();
        // No monosemous synonym on sense 1, so the gloss supplies the query.
        assert_eq!(queries.len(), 1);
        assert_eq!(queries[0].phrase, "group of christians");
        assert_eq!(queries[0].source, QuerySource::Gloss);
        assert_eq!(queries[0].rank, 1);
    }

    #[test]
    fn synonym_queries_rank_first() {
        let inv = church_inventory();
        let entry = &inv.senses(&Word::new("church", CoarsePos::Noun))[1];
        let queries = build_queries(entry).unwrap();
        assert_eq!(queries[0].phrase, "church building");
        assert_eq!(queries[0].source, QuerySource::MonosemousSynonym);
        assert_eq!(queries[0].rank, 0);
        assert!(queries[1..].iter().all(|q| q.rank == 1));
    }

    #[test]
    fn two_monosemous_synonyms_in_inventory_order() {
        let inv = SenseInventory::parse(
            "x\tnoun\t1\tnoun.act\tfirst phrase*,second phrase*\t\n",
        )
        .unwrap();
        let entry = &inv.senses(&Word::new("x", CoarsePos::Noun))[0];
        let queries = build_queries(entry).unwrap();
        assert_eq!(queries.len(), 2);
        assert_eq!(queries[0].phrase, "first phrase");
        assert_eq!(queries[1].phrase, "second phrase");
    }

    #[test]
    fn substitution_replaces_phrase_with_target() {
        let sense = SenseId::new("church", CoarsePos::Noun, 2);
        let doc = RetrievedDoc {
            query: Query {
                sense: sense.clone(),
                phrase: "church building".into(),
                source: QuerySource::MonosemousSynonym,
                rank: 0,
            },
            doc_id: "d0".into(),
            body: "The result was a congregation formed at that place, and a church building erected. Unrelated text follows.".into(),
        };
        let target = Word::new("church", CoarsePos::Noun);
        let examples = generate_examples(&[doc], &target, 100);
        assert_eq!(examples.len(), 1);
        let example = &examples[0];
        let token = &example.sentence.tokens[example.target_index];
        assert_eq!(token.surface, "church");
        assert_eq!(token.senses, vec![sense]);
        let text = example
            .sentence
            .tokens
            .iter()
            .map(|t| t.surface.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        assert!(!text.contains("church building"), "{text}");
        assert!(text.ends_with("and a church erected"), "{text}");
    }

    #[test]
    fn absent_phrase_yields_nothing_and_cap_holds() {
        let sense = SenseId::new("church", CoarsePos::Noun, 2);
        let query = Query {
            sense,
            phrase: "church building".into(),
            source: QuerySource::MonosemousSynonym,
            rank: 0,
        };
        let miss = RetrievedDoc {
            query: query.clone(),
            doc_id: "d0".into(),
            body: "No match in here at all.".into(),
        };
        let target = Word::new("church", CoarsePos::Noun);
        assert!(generate_examples(&[miss], &target, 10).is_empty());

        let many = RetrievedDoc {
            query,
            doc_id: "d1".into(),
            body: "A church building here. A church building there. A church building everywhere. Also a church building. And a church building again.".into(),
        };
        let examples = generate_examples(&[many], &target, 2);
        assert_eq!(examples.len(), 2);
    }

    #[test]
    fn dir_store_orders_and_limits() {
        let dir = tempfile::tempdir().unwrap();
        let store = DirStore::create(dir.path()).unwrap();
        for name in ["b", "a", "c"] {
            store
                .add_document("church building", name, &format!("body {name}"))
                .unwrap();
        }
        let docs = store.fetch("Church  Building", 100).unwrap();
        assert_eq!(docs.len(), 3);
        assert_eq!(docs[0].0, "a.txt");
        let one = store.fetch("church building", 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].0, "a.txt");
        assert!(store.fetch("no such phrase", 5).unwrap().is_empty());
        let manifest = std::fs::read_to_string(dir.path().join("manifest.tsv")).unwrap();
        assert!(manifest.contains("church building"));
        assert!(DirStore::open(dir.path().join("missing")).is_err());
    }

    #[test]
    fn limit_caps_a_large_store() {
        let dir = tempfile::tempdir().unwrap();
        let store = DirStore::create(dir.path()).unwrap();
        for i in 0..150 {
            store
                .add_document("church building", &format!("doc{i:03}"), "text")
                .unwrap();
        }
        assert_eq!(store.fetch("church building", 100).unwrap().len(), 100);
    }

    #[test]
    fn acquire_builds_one_document_per_sense() {
        let dir = tempfile::tempdir().unwrap();
        let store = DirStore::create(dir.path()).unwrap();
        let pad = "Context sentence to satisfy the minimum body length filter, repeated. ".repeat(4);
        store
            .add_document(
                "church building",
                "d0",
                &format!("{pad}The result was a congregation formed at that place, and a church building erected."),
            )
            .unwrap();
        store
            .add_document(
                "group of christians",
                "d0",
                &format!("{pad}Why is one group of Christians satisfied and the other oppressed?"),
            )
            .unwrap();
        let inv = church_inventory();
        let words = [Word::new("church", CoarsePos::Noun)];
        let outcome = acquire_corpus(&inv, &words, &store, &AcquireOptions::default()).unwrap();
        assert_eq!(outcome.corpus.documents.len(), 2);
        assert!(outcome.warnings.is_empty());
        assert_eq!(outcome.corpus.documents[0].id, "church.noun.1");
        // Round-trips through the corpus format with target positions intact.
        let text = outcome.corpus.to_text();
        let reparsed = Corpus::parse(&text).unwrap();
        assert_eq!(reparsed, outcome.corpus);

        // A sense with no retrievable text is omitted with a warning.
        let empty_dir = tempfile::tempdir().unwrap();
        let empty = DirStore::create(empty_dir.path()).unwrap();
        let outcome = acquire_corpus(&inv, &words, &empty, &AcquireOptions::default()).unwrap();
        assert!(outcome.corpus.documents.is_empty());
        assert_eq!(outcome.warnings.len(), 2);
    }
}
