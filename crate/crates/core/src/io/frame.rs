//! Joins score tables, the country map and distances into analysis frames.

use std::fmt;

use serde::Serialize;

use super::{CountryLanguageMap, IngestError};
use crate::model::{DistanceTable, DistanceValue, LanguageId, Method, ScoreRow, ScoreTable, Skill};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FrameOptions {
    /// Drop distances carrying a suspect-quality flag.
    pub exclude_flagged: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameRow {
    pub country: String,
    pub language: LanguageId,
    pub distance: f64,
    pub scores: ScoreRow,
}

/// Analysis-ready rows for one year and method, sorted by country.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalysisFrame {
    pub year: i32,
    pub method: Method,
    pub rows: Vec<FrameRow>,
}

impl AnalysisFrame {
    pub fn distances(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.distance).collect()
    }

    pub fn column(&self, skill: Skill) -> Vec<f64> {
        self.rows.iter().map(|r| r.scores.get(skill)).collect()
    }

    /// Score table restricted to the frame's countries.
    pub fn score_table(&self) -> ScoreTable {
        ScoreTable::new(self.year, self.rows.iter().map(|r| r.scores.clone()).collect())
            .expect("rows come from a validated table")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionReason {
    NoLanguageMapping,
    UnknownLanguage(String),
    MissingDistance,
    FlaggedDistance,
}

impl fmt::Display for ExclusionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExclusionReason::NoLanguageMapping => f.write_str("no language mapping"),
            ExclusionReason::UnknownLanguage(code) => write!(f, "unknown language {code}"),
            ExclusionReason::MissingDistance => f.write_str("missing distance"),
            ExclusionReason::FlaggedDistance => f.write_str("flagged distance"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Exclusion {
    pub country: String,
    pub reason: ExclusionReason,
}

/// Inner join of `scores` with `distances` through `map`.
///
/// Every score row ends up either in the frame or in the returned exclusion
/// list, which is sorted by country.
pub fn assemble_frame(
    scores: &ScoreTable,
    map: &CountryLanguageMap,
    distances: &DistanceTable,
    method: Method,
    opts: FrameOptions,
) -> Result<(AnalysisFrame, Vec<Exclusion>), IngestError> {
    let mut rows = Vec::new();
    let mut excluded = Vec::new();
    for score in scores.rows() {
        let exclude = |reason| Exclusion { country: score.country.clone(), reason };
        let Some(lang) = map.get(&score.country) else {
            excluded.push(exclude(ExclusionReason::NoLanguageMapping));
            continue;
        };
        match distances.lookup(lang.code(), method) {
            None => excluded.push(exclude(ExclusionReason::UnknownLanguage(lang.code().to_string()))),
            Some(DistanceValue::Missing) => excluded.push(exclude(ExclusionReason::MissingDistance)),
            Some(v) if opts.exclude_flagged && v.is_flagged() => excluded.push(exclude(ExclusionReason::FlaggedDistance)),
            Some(v) => {
                let language = distances.get(lang.code()).map_or_else(
                    || if lang.is_english() { LanguageId::english() } else { lang.clone() },
                    |d| d.language.clone(),
                );
                rows.push(FrameRow {
                    country: score.country.clone(),
                    language,
                    distance: v.get().expect("present"),
                    scores: score.clone(),
                });
            }
        }
    }
    rows.sort_by(|a, b| a.country.cmp(&b.country));
    excluded.sort_by(|a, b| a.country.cmp(&b.country));
    if rows.is_empty() {
        return Err(IngestError::EmptyFrame { method, excluded: excluded.len() });
    }
    Ok((AnalysisFrame { year: scores.year, method, rows }, excluded))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundled::bundled_table1;
    use crate::io::{parse_country_language_str, parse_scores_str};

    fn inputs() -> (ScoreTable, CountryLanguageMap) {
        let scores = parse_scores_str(
            "country,year,reading,listening,speaking,writing,total\n\
             Germany,2019,24,26,25,24,98\nMyanmar,2019,15,17,19,18,69\nSerbia,2019,22,23,23,22,90\n\
             Australia,2019,25,27,26,25,103\nNowhere,2019,20,20,20,20,80\nAtlantis,2019,20,20,20,20,80\n",
        )
        .unwrap();
        let map = parse_country_language_str(
            "country,language_code\nGermany,german\nMyanmar,burmese\nSerbia,serbian\nAustralia,english\nAtlantis,xx\n",
        )
        .unwrap();
        (scores, map)
    }

    #[test]
    fn exclusions_and_english() {
        let (scores, map) = inputs();
        let table = bundled_table1();
        let (frame, excl) = assemble_frame(&scores, &map, &table, Method::Asjp, FrameOptions::default()).unwrap();
        let countries: Vec<&str> = frame.rows.iter().map(|r| r.country.as_str()).collect();
        assert_eq!(countries, ["Australia", "Germany", "Serbia"]);
        assert_eq!(frame.rows[0].distance, 0.0);
        assert_eq!(frame.rows[0].language.display_name(), "English");
        let reasons: Vec<(&str, &ExclusionReason)> = excl.iter().map(|e| (e.country.as_str(), &e.reason)).collect();
        assert_eq!(
            reasons,
            [
                ("Atlantis", &ExclusionReason::UnknownLanguage("xx".into())),
                ("Myanmar", &ExclusionReason::MissingDistance),
                ("Nowhere", &ExclusionReason::NoLanguageMapping),
            ]
        );
        assert_eq!(frame.rows.len() + excl.len(), scores.rows().len());

        let (frame, excl) =
            assemble_frame(&scores, &map, &table, Method::Asjp, FrameOptions { exclude_flagged: true }).unwrap();
        assert_eq!(frame.rows.len(), 2);
        assert!(excl.iter().any(|e| e.country == "Serbia" && e.reason == ExclusionReason::FlaggedDistance));
    }

    #[test]
    fn order_independent() {
        let (scores, map) = inputs();
        let mut rows = scores.rows().to_vec();
        rows.reverse();
        let reversed = ScoreTable::new(2019, rows).unwrap();
        let table = bundled_table1();
        for m in Method::ALL {
            let a = assemble_frame(&scores, &map, &table, m, FrameOptions::default()).unwrap();
            let b = assemble_frame(&reversed, &map, &table, m, FrameOptions::default()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn empty_frame_is_an_error() {
        let scores = parse_scores_str("country,year,reading,listening,speaking,writing,total\nMyanmar,2019,15,17,19,18,69\n").unwrap();
        let map = parse_country_language_str("country,language_code\nMyanmar,burmese\n").unwrap();
        let e = assemble_frame(&scores, &map, &bundled_table1(), Method::Asjp, FrameOptions::default()).unwrap_err();
        assert!(matches!(e, IngestError::EmptyFrame { method: Method::Asjp, excluded: 1 }));
    }
}
