//! `HAMSIM01` similarity caches: 8-byte magic, u32 LE n, then n·n f32 LE
//! values, row-major.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::similarity::SimilarityMatrix;

pub const SIMILARITY_MAGIC: &[u8; 8] = b"HAMSIM01";
const HEADER_LEN: usize = 12;

pub fn similarity_to_bytes(matrix: &SimilarityMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + 4 * matrix.values().len());
    out.extend_from_slice(SIMILARITY_MAGIC);
    out.extend_from_slice(&(matrix.n() as u32).to_le_bytes());
    for &v in matrix.values() {
        out.extend_from_slice(&(v as f32).to_le_bytes());
    }
    out
}

pub fn similarity_from_bytes(bytes: &[u8], path: &Path) -> Result<SimilarityMatrix> {
    if bytes.len() < 8 || &bytes[..8] != SIMILARITY_MAGIC {
        return Err(Error::UnrecognizedFormat {
            path: path.to_path_buf(),
        });
    }
    if bytes.len() < HEADER_LEN {
        return Err(Error::Truncated {
            path: path.to_path_buf(),
            expected: HEADER_LEN as u64,
            actual: bytes.len() as u64,
        });
    }
    let n = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as u64;
    let expected = HEADER_LEN as u64 + 4 * n * n;
    if bytes.len() as u64 != expected {
        return Err(Error::Truncated {
            path: path.to_path_buf(),
            expected,
            actual: bytes.len() as u64,
        });
    }
    let values = bytes[HEADER_LEN..]
        .chunks_exact(4)
        .map(|c| f64::from(f32::from_le_bytes(c.try_into().unwrap())))
        .collect();
    SimilarityMatrix::from_dense(n as usize, values)
}

pub fn write_similarity_cache(matrix: &SimilarityMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, similarity_to_bytes(matrix)).map_err(|e| Error::io(path, e))
}

pub fn read_similarity_cache(path: impl AsRef<Path>) -> Result<SimilarityMatrix> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    similarity_from_bytes(&bytes, path)
}
