//! Family-tree classification CSV: `language,path` with `>`-separated path segments.

use std::collections::HashSet;
use std::path::Path;

use super::{column_indices, csv_reader, csv_writer, finish_csv, read_utf8, record_line, IngestError};
use crate::model::LanguageId;
use crate::tree::TreeClassification;

pub fn parse_classifications(path: &Path) -> Result<Vec<TreeClassification>, IngestError> {
    parse_classifications_str(&read_utf8(path)?)
}

pub fn parse_classifications_str(text: &str) -> Result<Vec<TreeClassification>, IngestError> {
    let mut reader = csv_reader(text);
    let [c_lang, c_path] = column_indices(&mut reader, ["language", "path"])?;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for rec in reader.records() {
        let rec = rec?;
        let line = record_line(&rec);
        let name = &rec[c_lang];
        let id = LanguageId::new(name, name, "").map_err(|e| IngestError::line(line, e))?;
        if !seen.insert(id.code().to_string()) {
            return Err(IngestError::line(line, format!("duplicate language {name:?}")));
        }
        let path = &rec[c_path];
        let cls = TreeClassification::new(id, path.split('>')).map_err(|e| IngestError::line(line, e))?;
        out.push(cls);
    }
    if out.is_empty() {
        return Err(IngestError::Empty("classification file"));
    }
    Ok(out)
}

pub fn write_classifications(items: &[TreeClassification]) -> String {
    let mut w = csv_writer();
    w.write_record(["language", "path"]).expect("in-memory");
    for c in items {
        w.write_record([c.language().display_name(), &c.path().join(">")]).expect("in-memory");
    }
    finish_csv(w)
}
