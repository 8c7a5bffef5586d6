//! Curiosity ordering of training corpora.
//!
//! A corpus is embedded, the embeddings are turned into a dense cosine
//! similarity matrix, and the samples are reordered along an (approximately)
//! minimum-weight open Hamiltonian path through that matrix, so consecutive
//! samples are as semantically different as possible. The crate also scores
//! datasets and orderings with two diversity metrics: the trace of the
//! row-wise softmax of the similarity matrix ("DCScore") and the distinct
//! m-gram ratio.
//!
//! Module map:
//!
//! - [`corpus_io`]: JSON-Lines corpora, `HAMEMB01` embeddings, `HAMSIM01`
//!   similarity caches and JSON order files.
//! - [`similarity`]: cosine similarity matrices and m-gram extraction.
//! - [`ordering`]: path weights, the η-greedy restart heuristic, exact
//!   oracles, diverse subsets and stage partitions.
//! - [`diversity`]: DCScore, m-gram diversity, prefix curves and the
//!   VC-style generalization bound.
//! - [`validation`]: randomized checks against brute-force oracles.
//! - [`cli`]: the `curiosity-order` command-line front end.

pub mod cli;
pub mod corpus_io;
pub mod diversity;
pub mod error;
pub mod ordering;
pub mod similarity;
pub mod validation;

pub use error::{Error, Result};
