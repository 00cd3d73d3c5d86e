//! Semantic language distance from word embeddings.
//!
//! Each dictionary pair is scored by the cosine similarity of its two word
//! vectors; the similarity of a language to English is the mean score over
//! the dictionary and the distance is one minus that mean.

use indexmap::IndexMap;
use log::debug;
use serde::Serialize;
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

use crate::model::LanguageId;
use crate::scalar::Real;
use crate::sum::NeumaierSum;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EmbedError {
    #[error("vector dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty vector")]
    EmptyVector,
    #[error("zero-norm vector{}", word.as_ref().map(|w| format!(" for {w:?}")).unwrap_or_default())]
    ZeroVector { word: Option<String> },
    #[error("non-finite component in vector for {0:?}")]
    NonFinite(String),
    #[error("duplicate word {0:?}")]
    DuplicateWord(String),
    #[error("empty word")]
    EmptyWord,
    #[error("lexicon has no pairs")]
    EmptyLexicon,
    #[error("language mismatch: lexicon expects {expected}, table is {found}")]
    LanguageMismatch { expected: String, found: String },
    #[error("no lexicon pair has both words in vocabulary ({total} pairs)")]
    NoCoveredPairs { total: usize },
}

/// Canonical form used for every vocabulary lookup: trimmed, NFC, lowercase.
pub fn normalize_word(word: &str) -> String {
    let nfc: String = word.trim().nfc().collect();
    nfc.to_lowercase().nfc().collect()
}

/// Word vectors of one language.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingTable<T> {
    language: LanguageId,
    dim: usize,
    entries: IndexMap<String, Vec<T>>,
}

impl<T: Real> EmbeddingTable<T> {
    pub fn new(language: LanguageId, dim: usize) -> Self {
        Self { language, dim, entries: IndexMap::new() }
    }

    /// Adds a word; rejects wrong arity, duplicates (after normalization),
    /// non-finite components and all-zero vectors.
    pub fn insert(&mut self, word: &str, vector: Vec<T>) -> Result<(), EmbedError> {
        let key = normalize_word(word);
        if key.is_empty() {
            return Err(EmbedError::EmptyWord);
        }
        if vector.len() != self.dim {
            return Err(EmbedError::DimensionMismatch { expected: self.dim, found: vector.len() });
        }
        if vector.iter().any(|v| !v.is_finite()) {
            return Err(EmbedError::NonFinite(key));
        }
        if vector.iter().all(|v| v.is_zero()) {
            return Err(EmbedError::ZeroVector { word: Some(key) });
        }
        if self.entries.contains_key(&key) {
            return Err(EmbedError::DuplicateWord(key));
        }
        self.entries.insert(key, vector);
        Ok(())
    }

    pub fn language(&self) -> &LanguageId {
        &self.language
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, word: &str) -> Option<&[T]> {
        self.entries.get(&normalize_word(word)).map(Vec::as_slice)
    }

    /// Entries in insertion order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &[T])> {
        self.entries.iter().map(|(w, v)| (w.as_str(), v.as_slice()))
    }

    pub fn words(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

/// Aligned (source word, English word) dictionary for one language.
#[derive(Debug, Clone, PartialEq)]
pub struct BilingualLexicon {
    source_language: LanguageId,
    target_language: LanguageId,
    pairs: Vec<(String, String)>,
}

impl BilingualLexicon {
    /// Normalizes both sides and collapses duplicate pairs, keeping first occurrences.
    pub fn new<I, S>(source_language: LanguageId, target_language: LanguageId, pairs: I) -> Result<Self, EmbedError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for (s, t) in pairs {
            let pair = (normalize_word(s.as_ref()), normalize_word(t.as_ref()));
            if pair.0.is_empty() || pair.1.is_empty() {
                return Err(EmbedError::EmptyWord);
            }
            if seen.insert(pair.clone()) {
                out.push(pair);
            }
        }
        if out.is_empty() {
            return Err(EmbedError::EmptyLexicon);
        }
        Ok(Self { source_language, target_language, pairs: out })
    }

    /// Lexicon mapping every word of `table` to itself.
    pub fn identity<T: Real>(table: &EmbeddingTable<T>) -> Result<Self, EmbedError> {
        Self::new(
            table.language().clone(),
            table.language().clone(),
            table.words().map(|w| (w, w)),
        )
    }

    pub fn source_language(&self) -> &LanguageId {
        &self.source_language
    }

    pub fn target_language(&self) -> &LanguageId {
        &self.target_language
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Similarity, distance and vocabulary coverage for one language.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SldResult<T> {
    pub language: LanguageId,
    pub sls: T,
    pub sld: T,
    pub pairs_total: usize,
    pub pairs_covered: usize,
    pub coverage: T,
    /// Pairs with at least one out-of-vocabulary word, in lexicon order.
    pub skipped: Vec<(String, String)>,
}

/// Power of two bringing the largest magnitude in `x` near 1; zero for a zero vector.
fn pow2_scale<T: Real>(x: &[T]) -> T {
    let max = x.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if max.is_zero() || !max.is_finite() {
        return T::zero();
    }
    let two = T::lit(2.0);
    two.powi(-max.log2().floor().to_i32().expect("finite exponent"))
}

/// Cosine of the angle between `u` and `v`, clamped to [-1, 1].
pub fn cosine_similarity<T: Real>(u: &[T], v: &[T]) -> Result<T, EmbedError> {
    if u.len() != v.len() {
        return Err(EmbedError::DimensionMismatch { expected: u.len(), found: v.len() });
    }
    if u.is_empty() {
        return Err(EmbedError::EmptyVector);
    }
    // Rescale each vector by a power of two so the squared norms can neither
    // overflow nor underflow; the scaling is exact and cancels in the ratio.
    let (su, sv) = (pow2_scale(u), pow2_scale(v));
    if su.is_zero() || sv.is_zero() {
        return Err(EmbedError::ZeroVector { word: None });
    }
    let mut dot = NeumaierSum::new();
    let mut uu = NeumaierSum::new();
    let mut vv = NeumaierSum::new();
    for (&a, &b) in u.iter().zip(v) {
        let (a, b) = (a * su, b * sv);
        dot.add(a * b);
        uu.add(a * a);
        vv.add(b * b);
    }
    // one root of the product: identical vectors give exactly 1
    let cos = dot.value() / (uu.value() * vv.value()).sqrt();
    Ok(cos.max(-T::one()).min(T::one()))
}

/// Mean cosine similarity over the lexicon pairs whose words are both in vocabulary.
///
/// Out-of-vocabulary pairs are skipped and reported through
/// `pairs_total - pairs_covered`.
pub fn semantic_similarity<T: Real>(
    lexicon: &BilingualLexicon,
    source: &EmbeddingTable<T>,
    target: &EmbeddingTable<T>,
) -> Result<SldResult<T>, EmbedError> {
    if source.language() != lexicon.source_language() {
        return Err(EmbedError::LanguageMismatch {
            expected: lexicon.source_language().code().into(),
            found: source.language().code().into(),
        });
    }
    if target.language() != lexicon.target_language() {
        return Err(EmbedError::LanguageMismatch {
            expected: lexicon.target_language().code().into(),
            found: target.language().code().into(),
        });
    }
    if source.dim() != target.dim() {
        return Err(EmbedError::DimensionMismatch { expected: source.dim(), found: target.dim() });
    }

    let mut total = NeumaierSum::new();
    let mut covered = 0usize;
    let mut skipped = Vec::new();
    for (s, t) in lexicon.pairs() {
        match (source.get(s), target.get(t)) {
            (Some(u), Some(v)) => {
                total.add(cosine_similarity(u, v)?);
                covered += 1;
            }
            _ => {
                debug!("{}: skipping out-of-vocabulary pair ({s}, {t})", source.language());
                skipped.push((s.clone(), t.clone()));
            }
        }
    }
    if covered == 0 {
        return Err(EmbedError::NoCoveredPairs { total: lexicon.len() });
    }
    let sls = total.value() / T::from_count(covered);
    Ok(SldResult {
        language: source.language().clone(),
        sls,
        sld: T::one() - sls,
        pairs_total: lexicon.len(),
        pairs_covered: covered,
        coverage: T::from_count(covered) / T::from_count(lexicon.len()),
        skipped,
    })
}
