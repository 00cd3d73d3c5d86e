//! Score summary CSV: `country,year,reading,listening,speaking,writing,total`.

use std::path::Path;

use super::{column_indices, csv_reader, csv_writer, finish_csv, format_real, parse_f64, read_utf8, record_line, IngestError};
use crate::model::{ScoreRow, ScoreTable};

const COLUMNS: [&str; 7] = ["country", "year", "reading", "listening", "speaking", "writing", "total"];

pub fn parse_scores_csv(path: &Path) -> Result<ScoreTable, IngestError> {
    parse_scores_str(&read_utf8(path)?)
}

/// Parses one year of score means. Files mixing years are rejected.
pub fn parse_scores_str(text: &str) -> Result<ScoreTable, IngestError> {
    let mut reader = csv_reader(text);
    let cols = column_indices(&mut reader, COLUMNS)?;
    let mut year: Option<i32> = None;
    let mut rows: Vec<ScoreRow> = Vec::new();
    for rec in reader.records() {
        let rec = rec?;
        let line = record_line(&rec);
        let country = rec[cols[0]].to_string();
        if country.is_empty() {
            return Err(IngestError::line(line, "empty country"));
        }
        let y: i32 = rec[cols[1]]
            .parse()
            .map_err(|_| IngestError::line(line, format!("invalid year {:?}", &rec[cols[1]])))?;
        match year {
            None => year = Some(y),
            Some(prev) if prev != y => {
                return Err(IngestError::line(line, format!("year {y} differs from {prev}; one year per file")))
            }
            _ => {}
        }
        let num = |i: usize| parse_f64(&rec[cols[i]], line, COLUMNS[i]);
        let row = ScoreRow {
            country,
            reading: num(2)?,
            listening: num(3)?,
            speaking: num(4)?,
            writing: num(5)?,
            total: num(6)?,
        };
        row.validate().map_err(|e| IngestError::line(line, e))?;
        if rows.iter().any(|r| r.country == row.country) {
            return Err(IngestError::line(line, format!("duplicate country {:?} for {y}", row.country)));
        }
        rows.push(row);
    }
    let year = year.ok_or(IngestError::Empty("score table"))?;
    ScoreTable::new(year, rows).map_err(|e| IngestError::Invalid(e.to_string()))
}

pub fn write_scores(table: &ScoreTable) -> String {
    let mut w = csv_writer();
    w.write_record(COLUMNS).expect("in-memory");
    for r in table.rows() {
        let vals = [r.reading, r.listening, r.speaking, r.writing, r.total].map(format_real);
        let year = table.year.to_string();
        let mut rec = vec![r.country.as_str(), year.as_str()];
        rec.extend(vals.iter().map(String::as_str));
        w.write_record(rec).expect("in-memory");
    }
    finish_csv(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Skill;

    const SCORES_2019: &str = "country,year,reading,listening,speaking,writing,total\n\
        Germany,2019,24,26,25,24,98\n\
        Hungary,2019,23,24,23,22,92\n\
        Ukraine,2019,20,22,22,21,86\n\
        Turkey,2019,20,21,20,20,80\n\
        Saudi Arabia,2019,16,20,21,18,74\n";

    #[test]
    fn parses_score_rows() {
        let t = parse_scores_str(SCORES_2019).unwrap();
        assert_eq!(t.year, 2019);
        let de = t.get("Germany").unwrap();
        assert_eq!([de.reading, de.listening, de.speaking, de.writing, de.total], [24.0, 26.0, 25.0, 24.0, 98.0]);
        let sa = t.get("Saudi Arabia").unwrap();
        assert_eq!(Skill::ALL.map(|s| sa.get(s)), [16.0, 20.0, 21.0, 18.0, 74.0]);
        assert_eq!(write_scores(&t), SCORES_2019);
    }

    #[test]
    fn rejects_bad_rows() {
        let e = parse_scores_str("country,year,reading,listening,speaking,writing,total\nX,2019,31,20,20,20,80\n").unwrap_err();
        assert!(matches!(e, IngestError::Line { line: 2, .. }), "{e}");
        let e = parse_scores_str(
            "country,year,reading,listening,speaking,writing,total\nX,2019,20,20,20,20,80\nX,2019,21,20,20,20,80\n",
        )
        .unwrap_err();
        assert!(matches!(e, IngestError::Line { line: 3, .. }), "{e}");
        let e = parse_scores_str("country,year,reading,listening,speaking,writing\nX,2019,20,20,20,20\n").unwrap_err();
        assert!(matches!(e, IngestError::MissingColumn("total")));
        let e = parse_scores_str(
            "country,year,reading,listening,speaking,writing,total\nX,2019,20,20,20,20,80\nY,2018,21,20,20,20,80\n",
        )
        .unwrap_err();
        assert!(matches!(e, IngestError::Line { line: 3, .. }), "{e}");
        let e = parse_scores_str("country,year,reading,listening,speaking,writing,total\nX,2019,20,20,20,20,121\n").unwrap_err();
        assert!(matches!(e, IngestError::Line { .. }));
    }

    #[test]
    fn fractional_means_ingest() {
        let t = parse_scores_str("country,year,reading,listening,speaking,writing,total\nX,2017,20.56,21.96,22.31,21.41,86.19\n").unwrap();
        assert_eq!(t.rows()[0].total, 86.19);
        assert_eq!(parse_scores_str(&write_scores(&t)).unwrap(), t);
    }
}
