//! `HAMEMB01` embedding files.
//!
//! ```text
//! offset  size     field
//! 0       8        ASCII "HAMEMB01"
//! 8       4        n  (u32 LE)
//! 12      4        d  (u32 LE)
//! 16      4*n*d    f32 LE values, row-major
//! ```

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

pub const EMBEDDING_MAGIC: &[u8; 8] = b"HAMEMB01";
const HEADER_LEN: usize = 16;

/// Rows with a Euclidean norm at or below this are rejected.
pub const MIN_ROW_NORM: f64 = 1e-12;

/// Dense n×d matrix of finite `f32` embeddings with non-zero rows.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingMatrix {
    n: usize,
    d: usize,
    values: Vec<f32>,
}

impl EmbeddingMatrix {
    pub fn new(n: usize, d: usize, values: Vec<f32>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCorpus);
        }
        if d == 0 {
            return Err(Error::out_of_range(
                "d",
                "embedding dimension must be positive",
            ));
        }
        if values.len() != n * d {
            return Err(Error::DimensionMismatch {
                expected: n * d,
                found: values.len(),
            });
        }
        for (row, chunk) in values.chunks_exact(d).enumerate() {
            if let Some(col) = chunk.iter().position(|v| !v.is_finite()) {
                return Err(Error::NonFinite { row, col });
            }
            if row_norm(chunk) <= MIN_ROW_NORM {
                return Err(Error::ZeroNorm { row });
            }
        }
        Ok(Self { n, d, values })
    }

    pub fn from_rows(rows: &[Vec<f32>]) -> Result<Self> {
        let n = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        let mut values = Vec::with_capacity(n * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: row.len(),
                });
            }
            values.extend_from_slice(row);
        }
        Self::new(n, d, values)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[f32] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f32] {
        &self.values[i * self.d..(i + 1) * self.d]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, f32> {
        self.values.chunks_exact(self.d)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(HEADER_LEN + 4 * self.values.len());
        out.extend_from_slice(EMBEDDING_MAGIC);
        out.extend_from_slice(&(self.n as u32).to_le_bytes());
        out.extend_from_slice(&(self.d as u32).to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    /// Decodes and validates. `path` is only used in error messages.
    pub fn from_bytes(bytes: &[u8], path: &Path) -> Result<Self> {
        if bytes.len() < 8 || &bytes[..8] != EMBEDDING_MAGIC {
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
        let d = u32::from_le_bytes(bytes[12..16].try_into().unwrap()) as u64;
        let expected = HEADER_LEN as u64 + 4 * n * d;
        if bytes.len() as u64 != expected {
            return Err(Error::Truncated {
                path: path.to_path_buf(),
                expected,
                actual: bytes.len() as u64,
            });
        }
        let values = bytes[HEADER_LEN..]
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Self::new(n as usize, d as usize, values)
    }
}

pub(crate) fn row_norm(row: &[f32]) -> f64 {
    row.iter()
        .map(|&v| f64::from(v) * f64::from(v))
        .sum::<f64>()
        .sqrt()
}

pub fn read_embeddings(path: impl AsRef<Path>) -> Result<EmbeddingMatrix> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    EmbeddingMatrix::from_bytes(&bytes, path)
}

pub fn write_embeddings(embeddings: &EmbeddingMatrix, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, embeddings.to_bytes()).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn decode(bytes: &[u8]) -> Result<EmbeddingMatrix> {
        EmbeddingMatrix::from_bytes(bytes, Path::new("mem"))
    }

    #[test]
    fn two_by_three_round_trip() {
        let e = EmbeddingMatrix::from_rows(&[vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0]]).unwrap();
        let back = decode(&e.to_bytes()).unwrap();
        assert_eq!((back.n(), back.d()), (2, 3));
        assert_eq!(back.values(), &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]);
    }

    #[test]
    fn file_sizes() {
        let e = EmbeddingMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(e.to_bytes().len(), 32);
        let e = EmbeddingMatrix::from_rows(&[vec![1.0]]).unwrap();
        let bytes = e.to_bytes();
        assert_eq!(bytes.len(), 20);
        assert_eq!(&bytes[..8], b"HAMEMB01");
        assert_eq!(&bytes[8..16], &[1, 0, 0, 0, 1, 0, 0, 0]);
        assert_eq!(&bytes[16..], &1.0f32.to_le_bytes());
    }

    #[test]
    fn zero_row_rejected_on_read() {
        let mut bytes = b"HAMEMB01".to_vec();
        bytes.extend_from_slice(&1u32.to_le_bytes());
        bytes.extend_from_slice(&4u32.to_le_bytes());
        bytes.extend_from_slice(&[0u8; 16]);
        assert!(matches!(decode(&bytes), Err(Error::ZeroNorm { row: 0 })));
    }

    #[test]
    fn bad_magic() {
        let mut bytes = EmbeddingMatrix::from_rows(&[vec![1.0]]).unwrap().to_bytes();
        bytes[7] = b'2';
        let err = decode(&bytes).unwrap_err();
        assert!(err.to_string().contains("unrecognized format"));
        assert!(matches!(
            decode(b"HAM"),
            Err(Error::UnrecognizedFormat { .. })
        ));
    }

    #[test]
    fn length_must_match_header() {
        let bytes = EmbeddingMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]])
            .unwrap()
            .to_bytes();
        for cut in [10, 16, 20, 31] {
            let err = decode(&bytes[..cut]).unwrap_err();
            assert!(err.to_string().contains("truncated file"), "{cut}: {err}");
        }
        let mut long = bytes.clone();
        long.push(0);
        assert!(matches!(decode(&long), Err(Error::Truncated { .. })));
    }

    #[test]
    fn non_finite_reports_position() {
        let err = EmbeddingMatrix::new(2, 2, vec![1.0, 0.0, 1.0, f32::NAN]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { row: 1, col: 1 }));
        let err = EmbeddingMatrix::new(1, 2, vec![f32::INFINITY, 0.0]).unwrap_err();
        assert!(matches!(err, Error::NonFinite { row: 0, col: 0 }));
    }
}
