//! Decision-list word sense disambiguation.
//!
//! The crate trains weight-ordered decision lists over collocational and
//! bag-of-context features, classifies tagged text, runs the standard
//! evaluation protocols (baselines, cross-validation, learning curves,
//! label noise, coarse senses, all-words holdout, cross-corpus tagging),
//! and acquires training corpora from a document store by monosemous-
//! synonym and gloss substitution.
//!
//! Everything is deterministic given inputs and seeds. Data-parallel inner
//! loops run on rayon under the default `parallel` feature and fall back
//! to plain iterators without it; results are identical either way.

pub mod corpus;
pub mod declist;
pub mod error;
pub mod eval;
pub mod exec;
pub mod features;
pub mod webacq;

pub use error::{Error, Result};
