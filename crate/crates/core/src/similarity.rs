//! Sentence embeddings and cosine similarity.

use core::hash::Hasher;

use alloc::vec;
use alloc::vec::Vec;

use fnv::FnvHasher;

use crate::error::{InputError, ScorerError};
use crate::text::word_tokens;

#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector(pub Vec<f64>);

impl EmbeddingVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.0.iter().map(|x| x * x).sum())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| *x == 0.0)
    }
}

impl From<Vec<f64>> for EmbeddingVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

pub trait Embedder: Send + Sync {
    fn name(&self) -> &str;

    fn embed(&self, text: &str) -> Result<EmbeddingVector, ScorerError>;
}

impl<T: Embedder + ?Sized> Embedder for &T {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn embed(&self, text: &str) -> Result<EmbeddingVector, ScorerError> {
        (**self).embed(text)
    }
}

impl<T: Embedder + ?Sized> Embedder for alloc::boxed::Box<T> {
    fn name(&self) -> &str {
        (**self).name()
    }

    fn embed(&self, text: &str) -> Result<EmbeddingVector, ScorerError> {
        (**self).embed(text)
    }
}

/// `dot(a, b) / (|a| |b|)`, or 0 when either vector has zero norm.
pub fn cosine_sim(a: &EmbeddingVector, b: &EmbeddingVector) -> Result<f64, InputError> {
    if a.dim() != b.dim() {
        return Err(InputError::DimensionMismatch {
            left: a.dim(),
            right: b.dim(),
        });
    }
    let (na, nb) = (a.norm(), b.norm());
    if na == 0.0 || nb == 0.0 {
        return Ok(0.0);
    }
    let dot: f64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
    Ok((dot / (na * nb)).clamp(-1.0, 1.0))
}

/// Feature-hashed bag of lowercased word tokens with term-frequency weights, L2-normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HashedBagOfWords {
    dim: usize,
}

impl Default for HashedBagOfWords {
    fn default() -> Self {
        Self { dim: Self::DEFAULT_DIM }
    }
}

impl HashedBagOfWords {
    pub const DEFAULT_DIM: usize = 512;

    pub fn with_dim(dim: usize) -> Self {
        assert!(dim > 0, "embedding dimension must be positive");
        Self { dim }
    }

    fn bucket(&self, token: &str) -> usize {
        let mut hasher = FnvHasher::default();
        hasher.write(token.as_bytes());
        (hasher.finish() % self.dim as u64) as usize
    }

    pub fn vector(&self, text: &str) -> EmbeddingVector {
        let mut values = vec![0.0; self.dim];
        for token in word_tokens(text) {
            values[self.bucket(&token)] += 1.0;
        }
        let norm = libm::sqrt(values.iter().map(|x| x * x).sum());
        if norm > 0.0 {
            values.iter_mut().for_each(|x| *x /= norm);
        }
        EmbeddingVector(values)
    }
}

impl Embedder for HashedBagOfWords {
    fn name(&self) -> &str {
        "hashed-bow"
    }

    fn embed(&self, text: &str) -> Result<EmbeddingVector, ScorerError> {
        Ok(self.vector(text))
    }
}
