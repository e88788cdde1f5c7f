//! Shared test helpers: a seeded random-corpus generator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wsd_core::corpus::{CoarsePos, Corpus, SenseInventory, Word};

pub struct CorpusGen {
    rng: ChaCha8Rng,
}

impl CorpusGen {
    pub fn new(seed: u64) -> CorpusGen {
        CorpusGen {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A corpus of at most 50 sentences over a small vocabulary, with a
    /// target word of at most 4 senses and occasional multi-tagged or
    /// context-tagged tokens.
    pub fn next(&mut self) -> (Corpus, SenseInventory, Word) {
        let rng = &mut self.rng;
        let n_senses: u32 = rng.random_range(2..=4);
        let mut inv_text = String::new();
        for i in 1..=n_senses {
            inv_text.push_str(&format!(
                "zap\tnoun\t{i}\tnoun.file{}\t\tsense {i}\n",
                i % 2
            ));
        }
        for v in 0..12 {
            for i in 1..=2 {
                inv_text.push_str(&format!("w{v:02}\tnoun\t{i}\tnoun.ctx{}\t\tctx\n", v % 3));
            }
        }
        let inv = SenseInventory::parse(&inv_text).unwrap();

        let pos_pool = [
            ("NN", "noun"),
            ("VBD", "verb"),
            ("JJ", "adjective"),
            ("RB", "adverb"),
            ("IN", "other"),
            ("DT", "other"),
        ];
        let n_docs = rng.random_range(1..=3);
        let total_sentences = rng.random_range(1..=50);
        let mut text = String::new();
        for d in 0..n_docs {
            text.push_str(&format!("# doc d{d}\n"));
            let quota = total_sentences / n_docs + usize::from(d < total_sentences % n_docs);
            for _ in 0..quota {
                let len = rng.random_range(1..=10);
                for _ in 0..len {
                    if rng.random_range(0..100) < 20 {
                        let tags = if rng.random_range(0..100) < 25 && n_senses >= 2 {
                            let a = rng.random_range(1..=n_senses);
                            let mut b = rng.random_range(1..=n_senses);
                            if b == a {
                                b = a % n_senses + 1;
                            }
                            format!("zap.noun.{};zap.noun.{}", a.min(b), a.max(b))
                        } else {
                            format!("zap.noun.{}", rng.random_range(1..=n_senses))
                        };
                        text.push_str(&format!("zap\tzap\tNN\tnoun\t{tags}\n"));
                    } else {
                        let v = rng.random_range(0..12);
                        let (pos, coarse) = pos_pool[rng.random_range(0..pos_pool.len())];
                        let tag = if coarse == "noun" && rng.random_range(0..100) < 25 {
                            format!("w{v:02}.noun.{}", rng.random_range(1..=2))
                        } else {
                            "-".to_string()
                        };
                        text.push_str(&format!("w{v:02}\tw{v:02}\t{pos}\t{coarse}\t{tag}\n"));
                    }
                }
                text.push('\n');
            }
        }
        let corpus = Corpus::parse(&text).unwrap();
        corpus.validate_against(&inv).unwrap();
        (corpus, inv, Word::new("zap", CoarsePos::Noun))
    }
}
