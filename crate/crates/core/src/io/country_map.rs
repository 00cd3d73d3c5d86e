//! Country to official-language map: `country,language_code`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use super::{column_indices, csv_reader, csv_writer, finish_csv, read_utf8, record_line, IngestError};
use crate::model::{DistanceTable, LanguageId};

/// One official language per country.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CountryLanguageMap {
    entries: BTreeMap<String, LanguageId>,
}

impl CountryLanguageMap {
    pub fn insert(&mut self, country: &str, language: LanguageId) -> Result<(), IngestError> {
        if self.entries.contains_key(country) {
            return Err(IngestError::Invalid(format!("duplicate country {country:?}")));
        }
        self.entries.insert(country.to_string(), language);
        Ok(())
    }

    pub fn get(&self, country: &str) -> Option<&LanguageId> {
        self.entries.get(country)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &LanguageId)> {
        self.entries.iter().map(|(c, l)| (c.as_str(), l))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Countries whose language has no entry in `distances`.
    pub fn unresolved(&self, distances: &DistanceTable) -> Vec<(&str, &LanguageId)> {
        self.iter().filter(|(_, l)| !distances.knows(l.code())).collect()
    }
}

pub fn parse_country_language_csv(path: &Path) -> Result<CountryLanguageMap, IngestError> {
    parse_country_language_str(&read_utf8(path)?)
}

pub fn parse_country_language_str(text: &str) -> Result<CountryLanguageMap, IngestError> {
    let mut reader = csv_reader(text);
    let [c_country, c_lang] = column_indices(&mut reader, ["country", "language_code"])?;
    let mut map = CountryLanguageMap::default();
    for rec in reader.records() {
        let rec = rec?;
        let line = record_line(&rec);
        let (country, code) = (&rec[c_country], &rec[c_lang]);
        if country.is_empty() || code.is_empty() {
            return Err(IngestError::line(line, "empty field"));
        }
        let id = LanguageId::from_code(code).map_err(|e| IngestError::line(line, e))?;
        map.insert(country, id).map_err(|e| IngestError::line(line, e))?;
    }
    Ok(map)
}

pub fn write_country_language(map: &CountryLanguageMap) -> String {
    let mut w = csv_writer();
    w.write_record(["country", "language_code"]).expect("in-memory");
    for (country, lang) in map.iter() {
        w.write_record([country, lang.code()]).expect("in-memory");
    }
    finish_csv(w)
}
