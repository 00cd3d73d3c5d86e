//! Text embedding format: a `n d` header line, then `n` lines of
//! `word v1 ... vd` separated by spaces.

use std::fmt::Write as _;
use std::path::Path;

use super::{read_utf8, IngestError};
use crate::embed::{EmbedError, EmbeddingTable};
use crate::model::LanguageId;
use crate::scalar::Real;

pub fn parse_embedding_file<T: Real>(path: &Path, language: LanguageId) -> Result<EmbeddingTable<T>, IngestError> {
    parse_embedding_str(&read_utf8(path)?, language)
}

pub fn parse_embedding_str<T: Real>(text: &str, language: LanguageId) -> Result<EmbeddingTable<T>, IngestError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or(IngestError::Empty("embedding file"))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| IngestError::line(1, format!("malformed header {header:?}; expected \"n d\"")))?;
    let [n, dim] = dims[..] else {
        return Err(IngestError::line(1, format!("malformed header {header:?}; expected \"n d\"")));
    };
    if dim == 0 {
        return Err(IngestError::line(1, "dimension must be positive"));
    }

    let mut table = EmbeddingTable::new(language, dim);
    for (lineno, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        if table.len() == n {
            return Err(IngestError::line(lineno, format!("more entries than the {n} declared in the header")));
        }
        let mut tokens = line.split_whitespace();
        let word = tokens.next().expect("non-blank line");
        let vector: Vec<T> = tokens
            .map(|tok| T::from_str_radix(tok, 10).map_err(|_| IngestError::line(lineno, format!("invalid number {tok:?}"))))
            .collect::<Result<_, _>>()?;
        table.insert(word, vector).map_err(|e| match e {
            EmbedError::DimensionMismatch { expected, found } => {
                IngestError::line(lineno, format!("expected {expected} values for {word:?}, found {found}"))
            }
            other => IngestError::line(lineno, other),
        })?;
    }
    if table.len() != n {
        return Err(IngestError::Invalid(format!("header declares {n} entries, file has {}", table.len())));
    }
    Ok(table)
}

pub fn write_embedding<T: Real>(table: &EmbeddingTable<T>) -> String {
    let mut out = format!("{} {}\n", table.len(), table.dim());
    for (word, vector) in table.iter() {
        out.push_str(word);
        for v in vector {
            write!(out, " {v}").expect("write to String");
        }
        out.push('\n');
    }
    out
}
