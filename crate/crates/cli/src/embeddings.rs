//! Precomputed face-embedding storage: CSV rows `embedding_id,v0,v1,…`.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{bail, Context, Result};

/// Embeddings keyed by id; all vectors share one dimension and none is
/// all-zero.
#[derive(Debug, Clone)]
pub struct EmbeddingStore {
    dimension: usize,
    vectors: BTreeMap<String, Vec<f64>>,
}

impl EmbeddingStore {
    pub fn load(path: &Path) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_path(path)
            .with_context(|| format!("reading embeddings {}", path.display()))?;

        let mut dimension = None;
        let mut vectors = BTreeMap::new();
        for (line, record) in reader.records().enumerate() {
            let record = record?;
            if record.is_empty() {
                continue;
            }
            let id = record.get(0).unwrap_or_default().to_string();
            // Tolerate the self-describing header row.
            if line == 0 && id == "embedding_id" {
                continue;
            }
            if record.len() < 2 {
                bail!("embedding {id:?} has no components");
            }
            let values: Vec<f64> = record
                .iter()
                .skip(1)
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .with_context(|| format!("embedding {id:?}: bad component {v:?}"))
                })
                .collect::<Result<_>>()?;
            match dimension {
                None => dimension = Some(values.len()),
                Some(d) if d != values.len() => {
                    bail!(
                        "embedding {id:?} has dimension {}, expected {d}",
                        values.len()
                    );
                }
                _ => {}
            }
            if values.iter().all(|&v| v == 0.0) {
                bail!("embedding {id:?} is all-zero");
            }
            if vectors.insert(id.clone(), values).is_some() {
                bail!("duplicate embedding id {id:?}");
            }
        }
        let dimension = dimension.unwrap_or(0);
        Ok(Self { dimension, vectors })
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn get(&self, id: &str) -> Option<&[f64]> {
        self.vectors.get(id).map(Vec::as_slice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_csv(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn loads_two_vectors() {
        let f = write_csv("a,1,0,0,0\nb,0,1,0,0\n");
        let store = EmbeddingStore::load(f.path()).unwrap();
        assert_eq!(store.len(), 2);
        assert_eq!(store.dimension(), 4);
        assert_eq!(store.get("a").unwrap(), &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn header_row_is_tolerated() {
        let f = write_csv("embedding_id,v0,v1\na,1,2\n");
        let store = EmbeddingStore::load(f.path()).unwrap();
        assert_eq!(store.len(), 1);
    }

    #[test]
    fn mixed_dimensions_rejected() {
        let f = write_csv("a,1,2,3,4\nb,1,2,3,4,5\n");
        let err = EmbeddingStore::load(f.path()).unwrap_err();
        assert!(err.to_string().contains("dimension"));
    }

    #[test]
    fn all_zero_vector_rejected() {
        let f = write_csv("a,0,0,0\n");
        let err = EmbeddingStore::load(f.path()).unwrap_err();
        assert!(err.to_string().contains("all-zero"));
    }

    #[test]
    fn duplicate_ids_rejected() {
        let f = write_csv("a,1,2\na,3,4\n");
        let err = EmbeddingStore::load(f.path()).unwrap_err();
        assert!(err.to_string().contains("duplicate embedding id"));
    }
}
