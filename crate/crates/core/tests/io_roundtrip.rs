//! write -> read -> write is bit-stable for every file format, and frame
//! assembly accounts for every score row.

use std::path::Path;

use langdist::asjp::AsjpWordlist;
use langdist::bundled::bundled_table1;
use langdist::embed::BilingualLexicon;
use langdist::io::{
    assemble_frame, parse_classifications_str, parse_country_language_str, parse_distance_rows_str, parse_distance_table,
    parse_distance_table_str, parse_lexicon_str, parse_manifest_str, parse_scores_csv, parse_scores_str, parse_wordlist_str,
    write_classifications, write_country_language, write_distance_rows, write_distance_table, write_lexicon, write_scores,
    write_wordlist, CountryLanguageMap, FrameOptions, IngestError,
};
use langdist::model::{
    DistanceRecord, DistanceTable, DistanceValue, LanguageDistances, LanguageId, Method, Quality, ScoreRow, ScoreTable,
};
use langdist::tree::TreeClassification;
use proptest::prelude::*;

fn lang(code: &str) -> LanguageId {
    LanguageId::from_code(code).unwrap()
}

fn distance_value(max: f64) -> impl Strategy<Value = DistanceValue> {
    prop_oneof![
        1 => Just(DistanceValue::Missing),
        4 => (0u32..=100).prop_map(move |c| DistanceValue::present(f64::from(c) / 100.0 * max)),
        2 => (0.0..max).prop_map(DistanceValue::present),
    ]
    .prop_map(|v| match v {
        // the parser derives the flag from the value
        DistanceValue::Present { value, .. } if value == 0.0 => DistanceValue::Present { value, quality: Quality::Suspect },
        other => other,
    })
}

fn score_row() -> impl Strategy<Value = ScoreRow> {
    ("[A-Z][a-z]{2,8}( [A-Z][a-z]{2,6})?", 0.0f64..=30.0, 0u8..=30, 0u8..=30, 0.0f64..=30.0, 0u8..=120).prop_map(
        |(country, reading, l, s, writing, t)| ScoreRow {
            country,
            reading,
            listening: l.into(),
            speaking: s.into(),
            writing,
            total: t.into(),
        },
    )
}

proptest! {
    #[test]
    fn wide_distance_table(rows in prop::collection::btree_map("[a-z]{3,10}", (distance_value(2.0), distance_value(1.5), distance_value(1.0)), 1..20)) {
        let languages: Vec<LanguageDistances> = rows
            .into_iter()
            .map(|(name, (e, a, t))| LanguageDistances {
                language: LanguageId::new(&name, &name, "Indo-European").unwrap(),
                embedding: e,
                asjp: a,
                tree: t,
            })
            .collect();
        let table = DistanceTable::new(languages).unwrap();
        let text = write_distance_table(&table);
        let back = parse_distance_table_str(&text).unwrap();
        prop_assert_eq!(&back, &table);
        prop_assert_eq!(write_distance_table(&back), text);
    }

    #[test]
    fn long_distance_rows(values in prop::collection::btree_map(("[a-z]{3,8}", 0usize..3), distance_value(1.0), 1..30)) {
        let records: Vec<DistanceRecord> = values
            .into_iter()
            .map(|((l, m), value)| DistanceRecord { language: lang(&l), method: Method::ALL[m], value })
            .collect();
        let text = write_distance_rows(&records);
        let back = parse_distance_rows_str(&text).unwrap();
        prop_assert_eq!(&back, &records);
        prop_assert_eq!(write_distance_rows(&back), text);
    }

    #[test]
    fn scores(rows in prop::collection::btree_map("[A-Z][a-z]{2,8}", score_row(), 1..20), year in 2000i32..2100) {
        let rows: Vec<ScoreRow> = rows.into_iter().map(|(c, mut r)| { r.country = c; r }).collect();
        let table = ScoreTable::new(year, rows).unwrap();
        let text = write_scores(&table);
        let back = parse_scores_str(&text).unwrap();
        prop_assert_eq!(&back, &table);
        prop_assert_eq!(write_scores(&back), text);
    }

    #[test]
    fn country_map(entries in prop::collection::btree_map("[A-Z][a-z]{2,8}(, [A-Z][a-z]{2,5})?", "[a-z]{3,9}", 1..20)) {
        let mut map = CountryLanguageMap::default();
        for (c, l) in &entries {
            map.insert(c, lang(l)).unwrap();
        }
        let text = write_country_language(&map);
        let back = parse_country_language_str(&text).unwrap();
        prop_assert_eq!(&back, &map);
        prop_assert_eq!(write_country_language(&back), text);
    }

    #[test]
    fn wordlists(items in prop::collection::vec((1u32..=40, "[a-zA-Z3-5!][a-z*\"~$]{0,6}"), 1..50)) {
        let list = AsjpWordlist::from_items(lang("xx"), items.iter().map(|(c, f)| (*c, f.as_str()))).unwrap();
        let text = write_wordlist(&list);
        let back = parse_wordlist_str(&text, lang("xx")).unwrap();
        prop_assert_eq!(&back, &list);
        prop_assert_eq!(write_wordlist(&back), text);
    }

    #[test]
    fn lexicons(pairs in prop::collection::vec(("[a-zäöüß]{1,8}", "[a-z]{1,8}"), 1..30)) {
        let lex = BilingualLexicon::new(lang("german"), LanguageId::english(), pairs.iter().map(|(a, b)| (a.as_str(), b.as_str()))).unwrap();
        let text = write_lexicon(&lex);
        let back = parse_lexicon_str(&text, lang("german"), LanguageId::english()).unwrap();
        prop_assert_eq!(back.pairs(), lex.pairs());
        prop_assert_eq!(write_lexicon(&back), text);
    }

    #[test]
    fn classifications(paths in prop::collection::btree_map("[A-Z][a-z]{2,8}", prop::collection::vec("[A-Z][a-z]{1,6}", 1..6), 1..15)) {
        let items: Vec<TreeClassification> = paths
            .iter()
            .filter_map(|(l, p)| TreeClassification::new(LanguageId::new(l, l, "").ok()?, p).ok())
            .collect();
        prop_assume!(!items.is_empty());
        let text = write_classifications(&items);
        let back = parse_classifications_str(&text).unwrap();
        prop_assert_eq!(write_classifications(&back), text);
        prop_assert_eq!(back.len(), items.len());
    }

    #[test]
    fn frame_accounts_for_every_row(
        rows in prop::collection::btree_map("[A-Z][a-z]{2,8}", score_row(), 1..25),
        langs in prop::collection::vec(prop::option::of(prop::sample::select(vec!["german", "burmese", "serbian", "english", "klingon", "japanese"])), 25),
        method in prop::sample::select(Method::ALL.to_vec()),
        exclude_flagged in any::<bool>(),
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let rows: Vec<ScoreRow> = rows.into_iter().map(|(c, mut r)| { r.country = c; r }).collect();
        let mut map = CountryLanguageMap::default();
        for (row, l) in rows.iter().zip(&langs) {
            if let Some(l) = l {
                map.insert(&row.country, lang(l)).unwrap();
            }
        }
        let mut shuffled = rows.clone();
        shuffled.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let opts = FrameOptions { exclude_flagged };
        let table = bundled_table1();
        let first = assemble_frame(&ScoreTable::new(2019, rows.clone()).unwrap(), &map, &table, method, opts);
        let second = assemble_frame(&ScoreTable::new(2019, shuffled).unwrap(), &map, &table, method, opts);
        match (first, second) {
            (Ok((frame, excluded)), Ok((frame2, excluded2))) => {
                prop_assert_eq!(frame.rows.len() + excluded.len(), rows.len());
                prop_assert_eq!(&frame, &frame2);
                prop_assert_eq!(&excluded, &excluded2);
                for r in &frame.rows {
                    if r.language.is_english() {
                        prop_assert_eq!(r.distance, 0.0);
                    }
                }
            }
            (Err(IngestError::EmptyFrame { excluded, .. }), Err(_)) => prop_assert_eq!(excluded, rows.len()),
            (a, b) => prop_assert!(false, "{:?} / {:?}", a.map(|x| x.1), b.map(|x| x.1)),
        }
    }
}

#[test]
fn manifest_round_trip() {
    let text = "scores.2017 = a.csv\nscores.2019 = b.csv\ncountry_map = m.csv\ndistances = d.csv\ncutline.asjp = 0.8\nexclude_flagged = true\n";
    let m = parse_manifest_str(text, Path::new("")).unwrap();
    assert_eq!(m.to_text(), text);
    assert_eq!(parse_manifest_str(&m.to_text(), Path::new("")).unwrap(), m);
}

#[test]
fn files_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("t.csv");
    std::fs::write(&p, langdist::bundled::TABLE1_CSV).unwrap();
    assert_eq!(parse_distance_table(&p).unwrap(), bundled_table1());

    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, b"country,year,reading,listening,speaking,writing,total\nX\xff,2019,1,1,1,1,4\n").unwrap();
    assert!(matches!(parse_scores_csv(&bad), Err(IngestError::Utf8 { line: 2 })));
    assert!(matches!(parse_scores_csv(&dir.path().join("absent.csv")), Err(IngestError::Io { .. })));
}
