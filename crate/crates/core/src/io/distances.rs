//! Distance tables.
//!
//! Wide format (one row per language): `language,family,bert,asjp,tree`,
//! where an empty cell is a missing value. Long format (one row per
//! measurement): `language,method,value`, extra columns ignored.

use std::path::Path;

use super::{column_indices, csv_reader, csv_writer, finish_csv, format_distance, parse_f64, read_utf8, record_line, IngestError};
use crate::model::{DistanceRecord, DistanceTable, DistanceValue, LanguageDistances, LanguageId, Method, Quality};

/// Reads either format, chosen from the header.
pub fn parse_distance_table(path: &Path) -> Result<DistanceTable, IngestError> {
    parse_distance_table_str(&read_utf8(path)?)
}

pub fn parse_distance_table_str(text: &str) -> Result<DistanceTable, IngestError> {
    let long = csv_reader(text).headers()?.iter().any(|h| h.eq_ignore_ascii_case("method"));
    if long {
        return table_from_records(parse_distance_rows_str(text)?);
    }
    let mut reader = csv_reader(text);
    let [c_lang, c_family, c_bert, c_asjp, c_tree] =
        column_indices(&mut reader, ["language", "family", "bert", "asjp", "tree"])?;
    let mut languages: Vec<LanguageDistances> = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let line = record_line(&rec);
        let name = &rec[c_lang];
        let id = LanguageId::new(name, name, &rec[c_family]).map_err(|e| IngestError::line(line, e))?;
        if languages.iter().any(|l| l.language == id) {
            return Err(IngestError::line(line, format!("duplicate language {name:?}")));
        }
        let cell = |i: usize, m: Method| parse_cell(&rec[i], &id, m, line);
        languages.push(LanguageDistances {
            embedding: cell(c_bert, Method::Embedding)?,
            asjp: cell(c_asjp, Method::Asjp)?,
            tree: cell(c_tree, Method::Tree)?,
            language: id,
        });
    }
    DistanceTable::new(languages).map_err(|e| IngestError::Invalid(e.to_string()))
}

fn parse_cell(field: &str, language: &LanguageId, method: Method, line: usize) -> Result<DistanceValue, IngestError> {
    if field.is_empty() {
        return Ok(DistanceValue::Missing);
    }
    let value = parse_f64(field, line, method.column())?;
    // zero distance from English is only plausible for English itself
    let quality = if value == 0.0 && !language.is_english() { Quality::Suspect } else { Quality::Ok };
    Ok(DistanceValue::Present { value, quality })
}

fn cell_text(v: DistanceValue) -> String {
    v.get().map(format_distance).unwrap_or_default()
}

pub fn write_distance_table(table: &DistanceTable) -> String {
    let mut w = csv_writer();
    w.write_record(["language", "family", "bert", "asjp", "tree"]).expect("in-memory");
    for l in &table.languages {
        w.write_record([
            l.language.display_name().to_string(),
            l.language.family().to_string(),
            cell_text(l.embedding),
            cell_text(l.asjp),
            cell_text(l.tree),
        ])
        .expect("in-memory");
    }
    finish_csv(w)
}

pub fn parse_distance_rows_str(text: &str) -> Result<Vec<DistanceRecord>, IngestError> {
    let mut reader = csv_reader(text);
    let [c_lang, c_method, c_value] = column_indices(&mut reader, ["language", "method", "value"])?;
    let mut out: Vec<DistanceRecord> = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let line = record_line(&rec);
        let language = LanguageId::from_code(&rec[c_lang]).map_err(|e| IngestError::line(line, e))?;
        let method: Method = rec[c_method].parse().map_err(|e| IngestError::line(line, e))?;
        if out.iter().any(|r| r.language == language && r.method == method) {
            return Err(IngestError::line(line, format!("duplicate {method} value for {language}")));
        }
        let value = parse_cell(&rec[c_value], &language, method, line)?;
        out.push(DistanceRecord { language, method, value });
    }
    Ok(out)
}

pub fn write_distance_rows(records: &[DistanceRecord]) -> String {
    let mut w = csv_writer();
    w.write_record(["language", "method", "value"]).expect("in-memory");
    for r in records {
        w.write_record([r.language.code(), r.method.name(), &cell_text(r.value)]).expect("in-memory");
    }
    finish_csv(w)
}

/// Groups long-format records by language, in first-seen order.
/// Methods without a record are missing.
fn table_from_records(records: Vec<DistanceRecord>) -> Result<DistanceTable, IngestError> {
    let mut languages: Vec<LanguageDistances> = Vec::new();
    for rec in records {
        let idx = match languages.iter().position(|l| l.language == rec.language) {
            Some(i) => i,
            None => {
                languages.push(LanguageDistances {
                    language: rec.language.clone(),
                    embedding: DistanceValue::Missing,
                    asjp: DistanceValue::Missing,
                    tree: DistanceValue::Missing,
                });
                languages.len() - 1
            }
        };
        languages[idx].set(rec.method, rec.value);
    }
    DistanceTable::new(languages).map_err(|e| IngestError::Invalid(e.to_string()))
}
