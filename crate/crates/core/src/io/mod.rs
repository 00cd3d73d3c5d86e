//! Parsers and serializers for every file format, plus assembly of
//! analysis-ready frames.
//!
//! CSV files share one dialect: UTF-8, comma separated, double-quote
//! escaping, a required header row, and `#` comment lines.

mod classification;
mod country_map;
mod distances;
mod embeddings;
mod format;
mod frame;
mod lexicon;
mod manifest;
mod scores;
mod wordlist;

use std::path::{Path, PathBuf};

use thiserror::Error;

pub use classification::{parse_classifications, parse_classifications_str, write_classifications};
pub use country_map::{parse_country_language_csv, parse_country_language_str, write_country_language, CountryLanguageMap};
pub use distances::{
    parse_distance_rows_str, parse_distance_table, parse_distance_table_str, write_distance_rows, write_distance_table,
};
pub use embeddings::{parse_embedding_file, parse_embedding_str, write_embedding};
pub use format::{format_distance, format_real};
pub use frame::{assemble_frame, AnalysisFrame, Exclusion, ExclusionReason, FrameOptions, FrameRow};
pub use lexicon::{parse_lexicon_file, parse_lexicon_str, write_lexicon};
pub use manifest::{parse_manifest, parse_manifest_str, DistanceSource, Manifest};
pub use scores::{parse_scores_csv, parse_scores_str, write_scores};
pub use wordlist::{parse_wordlist_file, parse_wordlist_str, write_wordlist};

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("line {line}: input is not valid UTF-8")]
    Utf8 { line: usize },
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("missing column {0:?}")]
    MissingColumn(&'static str),
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("no rows left after joining scores, languages and {method} distances ({excluded} excluded)")]
    EmptyFrame { method: crate::model::Method, excluded: usize },
    #[error("{0}")]
    Invalid(String),
}

impl IngestError {
    pub(crate) fn line(line: usize, message: impl std::fmt::Display) -> Self {
        IngestError::Line { line, message: message.to_string() }
    }
}

/// Reads a file as UTF-8, reporting the line of the first invalid byte.
pub fn read_utf8(path: &Path) -> Result<String, IngestError> {
    let bytes = std::fs::read(path).map_err(|source| IngestError::Io { path: path.to_path_buf(), source })?;
    decode_utf8(bytes)
}

pub(crate) fn decode_utf8(bytes: Vec<u8>) -> Result<String, IngestError> {
    String::from_utf8(bytes).map_err(|e| {
        let valid = e.utf8_error().valid_up_to();
        let line = e.as_bytes()[..valid].iter().filter(|&&b| b == b'\n').count() + 1;
        IngestError::Utf8 { line }
    })
}

/// CSV reader in the shared dialect.
pub(crate) fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

pub(crate) fn csv_writer() -> csv::Writer<Vec<u8>> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new())
}

pub(crate) fn finish_csv(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("written from str")
}

/// Maps header names to column positions, failing on any that are absent.
pub(crate) fn column_indices<const N: usize>(
    reader: &mut csv::Reader<&[u8]>,
    names: [&'static str; N],
) -> Result<[usize; N], IngestError> {
    let headers = reader.headers()?.clone();
    let mut out = [0usize; N];
    for (slot, name) in out.iter_mut().zip(names) {
        *slot = headers
            .iter()
            .position(|h| h.trim_start_matches('\u{feff}').eq_ignore_ascii_case(name))
            .ok_or(IngestError::MissingColumn(name))?;
    }
    Ok(out)
}

pub(crate) fn record_line(rec: &csv::StringRecord) -> usize {
    rec.position().map_or(0, |p| p.line() as usize)
}

pub(crate) fn parse_f64(field: &str, line: usize, what: &str) -> Result<f64, IngestError> {
    field
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| IngestError::line(line, format!("invalid {what} {field:?}")))
}
