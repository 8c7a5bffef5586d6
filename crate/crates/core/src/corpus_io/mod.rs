//! Corpora, embeddings, similarity caches and order files on disk.
//!
//! All binary formats are little-endian with `f32` payloads; computation
//! elsewhere in the crate is done in `f64`.

pub mod corpus;
pub mod embeddings;
pub mod order_file;
pub mod sim_cache;

pub use corpus::{load_corpus, parse_corpus, save_corpus, Corpus, FieldMapping, Sample};
pub use embeddings::{read_embeddings, write_embeddings, EmbeddingMatrix};
pub use order_file::{check_permutation, OrderFile, OrderMetadata};
pub use sim_cache::{read_similarity_cache, write_similarity_cache};

use crate::error::Result;

/// The k-th sample of the result is `corpus[indices[k]]`.
pub fn apply_order(corpus: &Corpus, indices: &[usize]) -> Result<Corpus> {
    check_permutation(indices, corpus.len())?;
    corpus.select(indices)
}

/// Inverse permutation: `inverse[indices[k]] == k`.
pub fn invert_permutation(indices: &[usize]) -> Result<Vec<usize>> {
    check_permutation(indices, indices.len())?;
    let mut inverse = vec![0; indices.len()];
    for (k, &i) in indices.iter().enumerate() {
        inverse[i] = k;
    }
    Ok(inverse)
}
