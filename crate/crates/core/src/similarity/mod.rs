//! Pairwise cosine similarity and m-gram extraction.

pub mod grams;
pub mod matrix;

pub use grams::{extract_grams, extract_grams_from_texts, GramBag, Tokenizer};
pub use matrix::{build_similarity_matrix, cosine, SimilarityMatrix};
