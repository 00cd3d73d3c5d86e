//! ASJP wordlist CSV: `concept_id,form`, one row per synonym.

use std::path::Path;

use super::{column_indices, csv_reader, csv_writer, finish_csv, read_utf8, record_line, IngestError};
use crate::asjp::AsjpWordlist;
use crate::model::LanguageId;

pub fn parse_wordlist_file(path: &Path, language: LanguageId) -> Result<AsjpWordlist, IngestError> {
    parse_wordlist_str(&read_utf8(path)?, language)
}

pub fn parse_wordlist_str(text: &str, language: LanguageId) -> Result<AsjpWordlist, IngestError> {
    let mut reader = csv_reader(text);
    let [c_concept, c_form] = column_indices(&mut reader, ["concept_id", "form"])?;
    let mut list = AsjpWordlist::new(language);
    for rec in reader.records() {
        let rec = rec?;
        let line = record_line(&rec);
        let concept: u32 = rec[c_concept]
            .parse()
            .map_err(|_| IngestError::line(line, format!("invalid concept id {:?}", &rec[c_concept])))?;
        list.insert(concept, &rec[c_form]).map_err(|e| IngestError::line(line, e))?;
    }
    if list.is_empty() {
        return Err(IngestError::Empty("wordlist"));
    }
    Ok(list)
}

pub fn write_wordlist(list: &AsjpWordlist) -> String {
    let mut w = csv_writer();
    w.write_record(["concept_id", "form"]).expect("in-memory");
    for (concept, form) in list.iter() {
        w.write_record([concept.to_string().as_str(), form]).expect("in-memory");
    }
    finish_csv(w)
}
