//! Shared domain types: languages, distance records, score tables and CEFR bands.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid language code {0:?}: must be non-empty ASCII")]
    InvalidLanguageCode(String),
    #[error("{method} distance for {language} is missing")]
    MissingValue { language: String, method: Method },
    #[error("{skill} score {score} outside [0, {max}]")]
    ScoreOutOfRange { skill: Skill, score: f64, max: f64 },
    #[error("duplicate country {0:?} in score table")]
    DuplicateCountry(String),
    #[error("unknown {kind} {value:?}")]
    Unknown { kind: &'static str, value: String },
    #[error("{method} distance {value} for {language} outside its valid range")]
    DistanceOutOfRange { language: String, method: Method, value: f64 },
}

/// Language families appearing in the bundled distance table.
pub const KNOWN_FAMILIES: [&str; 10] = [
    "Indo-European",
    "Afro Asiatic",
    "Sino Tibetan",
    "Uralic",
    "Austronesian",
    "Japonic",
    "Koreanic",
    "Tai Kadai",
    "Turkic",
    "Austroasiatic",
];

/// Code of the reference language every distance is measured against.
pub const ENGLISH: &str = "english";

/// A language identified by a lowercase ASCII code.
///
/// Equality, ordering and hashing look at `code` only.
#[derive(Debug, Clone, Serialize)]
pub struct LanguageId {
    code: String,
    display_name: String,
    family: String,
}

impl LanguageId {
    pub fn new(code: &str, display_name: &str, family: &str) -> Result<Self, ModelError> {
        let code = normalize_code(code)?;
        Ok(Self { code, display_name: display_name.trim().to_string(), family: family.trim().to_string() })
    }

    /// Builds an id from a bare code; the display name defaults to the code.
    pub fn from_code(code: &str) -> Result<Self, ModelError> {
        let code = normalize_code(code)?;
        Ok(Self { display_name: code.clone(), code, family: String::new() })
    }

    pub fn english() -> Self {
        Self { code: ENGLISH.into(), display_name: "English".into(), family: "Indo-European".into() }
    }

    pub fn code(&self) -> &str {
        &self.code
    }

    pub fn display_name(&self) -> &str {
        &self.display_name
    }

    pub fn family(&self) -> &str {
        &self.family
    }

    pub fn is_english(&self) -> bool {
        self.code == ENGLISH
    }

    pub fn has_known_family(&self) -> bool {
        KNOWN_FAMILIES.contains(&self.family.as_str())
    }
}

fn normalize_code(code: &str) -> Result<String, ModelError> {
    let trimmed = code.trim();
    if trimmed.is_empty() || !trimmed.is_ascii() {
        return Err(ModelError::InvalidLanguageCode(code.to_string()));
    }
    Ok(trimmed.to_ascii_lowercase())
}

impl PartialEq for LanguageId {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for LanguageId {}

impl Hash for LanguageId {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for LanguageId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LanguageId {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code.cmp(&other.code)
    }
}

impl fmt::Display for LanguageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code)
    }
}

/// Distance measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Embedding,
    Asjp,
    Tree,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Embedding, Method::Asjp, Method::Tree];

    /// Short name used on the command line and in long-format distance files.
    pub fn name(self) -> &'static str {
        match self {
            Method::Embedding => "embed",
            Method::Asjp => "asjp",
            Method::Tree => "tree",
        }
    }

    /// Column header in the wide distance table.
    pub fn column(self) -> &'static str {
        match self {
            Method::Embedding => "bert",
            Method::Asjp => "asjp",
            Method::Tree => "tree",
        }
    }

    /// Group A / group B cutline used when none is supplied.
    pub fn default_cutline(self) -> f64 {
        match self {
            Method::Embedding => 0.19,
            Method::Asjp | Method::Tree => 0.83,
        }
    }

    fn accepts(self, value: f64) -> bool {
        if !value.is_finite() || value < 0.0 {
            return false;
        }
        match self {
            Method::Embedding => value <= 2.0,
            Method::Tree => value <= 1.0,
            Method::Asjp => true,
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "embed" | "embedding" | "bert" | "sld" => Ok(Method::Embedding),
            "asjp" | "ldnd" => Ok(Method::Asjp),
            "tree" => Ok(Method::Tree),
            _ => Err(ModelError::Unknown { kind: "method", value: s.to_string() }),
        }
    }
}

/// Data-quality annotation on a present distance value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Quality {
    Ok,
    /// Printed in the source data but implausible (e.g. exactly zero distance
    /// from a language other than English).
    Suspect,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum DistanceValue {
    Present { value: f64, quality: Quality },
    Missing,
}

impl DistanceValue {
    pub fn present(value: f64) -> Self {
        DistanceValue::Present { value, quality: Quality::Ok }
    }

    pub fn is_missing(&self) -> bool {
        matches!(self, DistanceValue::Missing)
    }

    pub fn is_flagged(&self) -> bool {
        matches!(self, DistanceValue::Present { quality: Quality::Suspect, .. })
    }

    /// The raw value, or `None` when missing.
    pub fn get(&self) -> Option<f64> {
        match *self {
            DistanceValue::Present { value, .. } => Some(value),
            DistanceValue::Missing => None,
        }
    }
}

/// One (language, method) distance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceRecord {
    pub language: LanguageId,
    pub method: Method,
    pub value: DistanceValue,
}

impl DistanceRecord {
    /// Numeric value; arithmetic on a missing record is an error.
    pub fn value(&self) -> Result<f64, ModelError> {
        self.value.get().ok_or_else(|| ModelError::MissingValue {
            language: self.language.code().to_string(),
            method: self.method,
        })
    }
}

/// All three distances for one language.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LanguageDistances {
    pub language: LanguageId,
    pub embedding: DistanceValue,
    pub asjp: DistanceValue,
    pub tree: DistanceValue,
}

impl LanguageDistances {
    pub fn get(&self, method: Method) -> DistanceValue {
        match method {
            Method::Embedding => self.embedding,
            Method::Asjp => self.asjp,
            Method::Tree => self.tree,
        }
    }

    pub fn set(&mut self, method: Method, value: DistanceValue) {
        match method {
            Method::Embedding => self.embedding = value,
            Method::Asjp => self.asjp = value,
            Method::Tree => self.tree = value,
        }
    }

    pub fn records(&self) -> impl Iterator<Item = DistanceRecord> + '_ {
        Method::ALL.into_iter().map(move |method| DistanceRecord {
            language: self.language.clone(),
            method,
            value: self.get(method),
        })
    }
}

/// Distances to English grouped by language, in file order.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DistanceTable {
    pub languages: Vec<LanguageDistances>,
}

impl DistanceTable {
    pub fn new(languages: Vec<LanguageDistances>) -> Result<Self, ModelError> {
        for entry in &languages {
            for method in Method::ALL {
                if let Some(v) = entry.get(method).get() {
                    if !method.accepts(v) {
                        return Err(ModelError::DistanceOutOfRange {
                            language: entry.language.code().to_string(),
                            method,
                            value: v,
                        });
                    }
                }
            }
        }
        Ok(Self { languages })
    }

    pub fn len(&self) -> usize {
        self.languages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.languages.is_empty()
    }

    pub fn get(&self, code: &str) -> Option<&LanguageDistances> {
        let code = code.trim().to_ascii_lowercase();
        self.languages.iter().find(|l| l.language.code() == code)
    }

    /// Whether `code` names a language with a distance entry (English always resolves).
    pub fn knows(&self, code: &str) -> bool {
        code.eq_ignore_ascii_case(ENGLISH) || self.get(code).is_some()
    }

    /// Distance of `code` under `method`; English is always present at 0.
    pub fn lookup(&self, code: &str, method: Method) -> Option<DistanceValue> {
        if code.eq_ignore_ascii_case(ENGLISH) && self.get(code).is_none() {
            return Some(DistanceValue::present(0.0));
        }
        self.get(code).map(|l| l.get(method))
    }

    pub fn records(&self) -> impl Iterator<Item = DistanceRecord> + '_ {
        self.languages.iter().flat_map(|l| l.records())
    }
}

/// Test section, or the total score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Skill {
    Reading,
    Listening,
    Speaking,
    Writing,
    Total,
}

impl Skill {
    /// Table column order.
    pub const ALL: [Skill; 5] = [Skill::Reading, Skill::Listening, Skill::Speaking, Skill::Writing, Skill::Total];
    pub const SECTIONS: [Skill; 4] = [Skill::Reading, Skill::Listening, Skill::Speaking, Skill::Writing];

    pub fn max_score(self) -> f64 {
        match self {
            Skill::Total => 120.0,
            _ => 30.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Skill::Reading => "reading",
            Skill::Listening => "listening",
            Skill::Speaking => "speaking",
            Skill::Writing => "writing",
            Skill::Total => "total",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            Skill::Reading => "Reading",
            Skill::Listening => "Listening",
            Skill::Speaking => "Speaking",
            Skill::Writing => "Writing",
            Skill::Total => "Total",
        }
    }

    fn check(self, score: f64) -> Result<(), ModelError> {
        if score.is_finite() && (0.0..=self.max_score()).contains(&score) {
            Ok(())
        } else {
            Err(ModelError::ScoreOutOfRange { skill: self, score, max: self.max_score() })
        }
    }
}

impl fmt::Display for Skill {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Skill {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "reading" => Ok(Skill::Reading),
            "listening" => Ok(Skill::Listening),
            "speaking" => Ok(Skill::Speaking),
            "writing" => Ok(Skill::Writing),
            "total" => Ok(Skill::Total),
            _ => Err(ModelError::Unknown { kind: "skill", value: s.to_string() }),
        }
    }
}

/// Section and total means of one country. Sections need not sum to the total.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreRow {
    pub country: String,
    pub reading: f64,
    pub listening: f64,
    pub speaking: f64,
    pub writing: f64,
    pub total: f64,
}

impl ScoreRow {
    pub fn get(&self, skill: Skill) -> f64 {
        match skill {
            Skill::Reading => self.reading,
            Skill::Listening => self.listening,
            Skill::Speaking => self.speaking,
            Skill::Writing => self.writing,
            Skill::Total => self.total,
        }
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        Skill::ALL.into_iter().try_for_each(|s| s.check(self.get(s)))
    }
}

/// Per-country score means for one year.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScoreTable {
    pub year: i32,
    rows: Vec<ScoreRow>,
}

impl ScoreTable {
    pub fn new(year: i32, rows: Vec<ScoreRow>) -> Result<Self, ModelError> {
        let mut seen = std::collections::HashSet::new();
        for row in &rows {
            row.validate()?;
            if !seen.insert(row.country.as_str()) {
                return Err(ModelError::DuplicateCountry(row.country.clone()));
            }
        }
        Ok(Self { year, rows })
    }

    pub fn rows(&self) -> &[ScoreRow] {
        &self.rows
    }

    pub fn get(&self, country: &str) -> Option<&ScoreRow> {
        self.rows.iter().find(|r| r.country == country)
    }

    pub fn column(&self, skill: Skill) -> Vec<f64> {
        self.rows.iter().map(|r| r.get(skill)).collect()
    }
}

/// CEFR proficiency level, ordered from lowest to highest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum CefrLevel {
    BelowA2,
    A2,
    B1,
    B2,
    C1,
    C2,
}

impl CefrLevel {
    /// Highest first.
    pub const BANDS: [CefrLevel; 5] = [CefrLevel::C2, CefrLevel::C1, CefrLevel::B2, CefrLevel::B1, CefrLevel::A2];

    pub fn label(self) -> &'static str {
        match self {
            CefrLevel::BelowA2 => "below A2",
            CefrLevel::A2 => "A2",
            CefrLevel::B1 => "B1",
            CefrLevel::B2 => "B2",
            CefrLevel::C1 => "C1",
            CefrLevel::C2 => "C2",
        }
    }
}

impl fmt::Display for CefrLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Minimum scores per level and skill; `None` where a level does not apply.
#[derive(Debug, Clone, PartialEq)]
pub struct CefrBands {
    /// Indexed `[level in BANDS order][skill in Skill::ALL order]`.
    cuts: [[Option<f64>; 5]; 5],
}

impl CefrBands {
    /// ETS mapping of TOEFL iBT scores to CEFR levels.
    pub fn toefl_ibt() -> Self {
        // columns: reading, listening, speaking, writing, total
        Self {
            cuts: [
                [Some(29.0), Some(28.0), Some(28.0), Some(29.0), Some(114.0)],
                [Some(24.0), Some(22.0), Some(25.0), Some(24.0), Some(95.0)],
                [Some(18.0), Some(17.0), Some(20.0), Some(17.0), Some(72.0)],
                [Some(4.0), Some(9.0), Some(16.0), Some(13.0), Some(42.0)],
                [None, None, Some(10.0), Some(7.0), None],
            ],
        }
    }

    pub fn cut(&self, level: CefrLevel, skill: Skill) -> Option<f64> {
        let li = CefrLevel::BANDS.iter().position(|&l| l == level)?;
        let si = Skill::ALL.iter().position(|&s| s == skill)?;
        self.cuts[li][si]
    }

    /// Highest level whose cut score is at or below `score`.
    pub fn level(&self, skill: Skill, score: f64) -> Result<CefrLevel, ModelError> {
        skill.check(score)?;
        Ok(CefrLevel::BANDS
            .into_iter()
            .find(|&level| self.cut(level, skill).is_some_and(|cut| cut <= score))
            .unwrap_or(CefrLevel::BelowA2))
    }
}

impl Default for CefrBands {
    fn default() -> Self {
        Self::toefl_ibt()
    }
}

/// CEFR level of a TOEFL iBT score under the standard ETS mapping.
pub fn cefr_level(skill: Skill, score: f64) -> Result<CefrLevel, ModelError> {
    CefrBands::toefl_ibt().level(skill, score)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn language_codes_are_normalized() {
        let id = LanguageId::new(" German ", "German", "Indo-European").unwrap();
        assert_eq!(id.code(), "german");
        assert!(id.has_known_family());
        assert_eq!(id, LanguageId::from_code("GERMAN").unwrap());
        assert!(LanguageId::from_code("").is_err());
        assert!(LanguageId::from_code("deutsch\u{e4}").is_err());
    }

    #[test]
    fn cefr_examples() {
        assert_eq!(cefr_level(Skill::Total, 114.0).unwrap(), CefrLevel::C2);
        assert_eq!(cefr_level(Skill::Speaking, 9.0).unwrap(), CefrLevel::BelowA2);
        assert_eq!(cefr_level(Skill::Reading, 0.0).unwrap(), CefrLevel::BelowA2);
        assert_eq!(cefr_level(Skill::Total, 95.0).unwrap(), CefrLevel::C1);
        assert_eq!(cefr_level(Skill::Writing, 7.0).unwrap(), CefrLevel::A2);
        assert_eq!(cefr_level(Skill::Listening, 8.0).unwrap(), CefrLevel::BelowA2);
        assert_eq!(cefr_level(Skill::Reading, 4.0).unwrap(), CefrLevel::B1);
        assert_eq!(cefr_level(Skill::Total, 41.9).unwrap(), CefrLevel::BelowA2);
    }

    #[test]
    fn cefr_rejects_out_of_range() {
        assert!(cefr_level(Skill::Reading, 31.0).is_err());
        assert!(cefr_level(Skill::Total, -1.0).is_err());
        assert!(cefr_level(Skill::Writing, f64::NAN).is_err());
        assert!(cefr_level(Skill::Total, 120.0).is_ok());
    }

    #[test]
    fn cefr_cuts_strictly_decrease() {
        let bands = CefrBands::toefl_ibt();
        for skill in Skill::ALL {
            let cuts: Vec<f64> = CefrLevel::BANDS.iter().filter_map(|&l| bands.cut(l, skill)).collect();
            assert!(cuts.windows(2).all(|w| w[0] > w[1]), "{skill}: {cuts:?}");
        }
        assert_eq!(bands.cut(CefrLevel::A2, Skill::Total), None);
        assert_eq!(bands.cut(CefrLevel::A2, Skill::Reading), None);
        assert_eq!(bands.cut(CefrLevel::A2, Skill::Speaking), Some(10.0));
    }

    #[test]
    fn missing_distance_is_an_error() {
        let rec = DistanceRecord {
            language: LanguageId::from_code("burmese").unwrap(),
            method: Method::Asjp,
            value: DistanceValue::Missing,
        };
        assert!(matches!(rec.value(), Err(ModelError::MissingValue { .. })));
    }

    #[test]
    fn score_table_validation() {
        let row = |c: &str, r: f64| ScoreRow {
            country: c.into(),
            reading: r,
            listening: 20.0,
            speaking: 20.0,
            writing: 20.0,
            total: 80.0,
        };
        assert!(ScoreTable::new(2019, vec![row("A", 20.0), row("B", 21.0)]).is_ok());
        assert!(matches!(
            ScoreTable::new(2019, vec![row("A", 31.0)]),
            Err(ModelError::ScoreOutOfRange { skill: Skill::Reading, .. })
        ));
        assert!(matches!(
            ScoreTable::new(2019, vec![row("A", 20.0), row("A", 21.0)]),
            Err(ModelError::DuplicateCountry(_))
        ));
    }

    #[test]
    fn distance_ranges_enforced() {
        let entry = |m: Method, v: f64| {
            let mut e = LanguageDistances {
                language: LanguageId::from_code("x").unwrap(),
                embedding: DistanceValue::Missing,
                asjp: DistanceValue::Missing,
                tree: DistanceValue::Missing,
            };
            e.set(m, DistanceValue::present(v));
            e
        };
        assert!(DistanceTable::new(vec![entry(Method::Asjp, 1.04)]).is_ok());
        assert!(DistanceTable::new(vec![entry(Method::Tree, 1.04)]).is_err());
        assert!(DistanceTable::new(vec![entry(Method::Embedding, 2.5)]).is_err());
        assert!(DistanceTable::new(vec![entry(Method::Asjp, -0.1)]).is_err());
    }

    #[test]
    fn method_parsing() {
        assert_eq!("embed".parse::<Method>().unwrap(), Method::Embedding);
        assert_eq!("BERT".parse::<Method>().unwrap(), Method::Embedding);
        assert_eq!("tree".parse::<Method>().unwrap(), Method::Tree);
        assert!("wals".parse::<Method>().is_err());
    }
}
