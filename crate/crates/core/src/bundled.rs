//! Reference data shipped with the crate.

use crate::io::{
    parse_classifications_str, parse_country_language_str, parse_distance_table_str, parse_scores_str, CountryLanguageMap,
};
use crate::model::{DistanceTable, ScoreTable};
use crate::tree::TreeClassification;

/// Distances of 33 languages to English (embedding, ASJP, tree), wide CSV.
pub const TABLE1_CSV: &str = include_str!("../data/table1.csv");
/// Family-tree paths chosen to reproduce the tree column of [`TABLE1_CSV`].
pub const TREE_CLASSIFICATIONS_CSV: &str = include_str!("../data/tree_classifications.csv");
/// Five-country 2019 score example.
pub const DEMO_SCORES_2019_CSV: &str = include_str!("../data/scores_2019_demo.csv");
/// Official languages of the demo countries.
pub const DEMO_COUNTRY_MAP_CSV: &str = include_str!("../data/country_language_demo.csv");

/// Every bundled asset as `(file name, contents)`.
pub const FILES: [(&str, &str); 7] = [
    ("table1.csv", TABLE1_CSV),
    ("tree_classifications.csv", TREE_CLASSIFICATIONS_CSV),
    ("scores_2019_demo.csv", DEMO_SCORES_2019_CSV),
    ("country_language_demo.csv", DEMO_COUNTRY_MAP_CSV),
    ("continents_2017.csv", include_str!("../data/continents_2017.csv")),
    ("continents_2018.csv", include_str!("../data/continents_2018.csv")),
    ("continents_2019.csv", include_str!("../data/continents_2019.csv")),
];

/// Manifest tying the demo files together, relative to the export directory.
pub const DEMO_MANIFEST: &str = "\
# demo analysis over the bundled five-country 2019 example
scores.2019 = scores_2019_demo.csv
country_map = country_language_demo.csv
distances = table1.csv
exclude_flagged = false
";

pub fn bundled_table1() -> DistanceTable {
    parse_distance_table_str(TABLE1_CSV).expect("bundled table parses")
}

pub fn bundled_classifications() -> Vec<TreeClassification> {
    parse_classifications_str(TREE_CLASSIFICATIONS_CSV).expect("bundled classifications parse")
}

pub fn bundled_demo_scores() -> ScoreTable {
    parse_scores_str(DEMO_SCORES_2019_CSV).expect("bundled scores parse")
}

pub fn bundled_demo_country_map() -> CountryLanguageMap {
    parse_country_language_str(DEMO_COUNTRY_MAP_CSV).expect("bundled map parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::write_distance_table;
    use crate::model::{Method, Quality, DistanceValue};

    #[test]
    fn table1_contents() {
        let t = bundled_table1();
        assert_eq!(t.len(), 33);
        let de = t.get("german").unwrap();
        assert_eq!([de.embedding.get(), de.asjp.get(), de.tree.get()], [Some(0.16), Some(0.69), Some(0.55)]);
        let vi = t.get("vietnamese").unwrap();
        assert_eq!([vi.embedding.get(), vi.asjp.get(), vi.tree.get()], [Some(0.22), Some(1.04), Some(1.0)]);
        let my = t.get("burmese").unwrap();
        assert_eq!(my.embedding.get(), Some(0.33));
        assert!(my.asjp.is_missing());
        let sr = t.get("serbian").unwrap();
        assert_eq!(sr.asjp, DistanceValue::Present { value: 0.0, quality: Quality::Suspect });
        assert!(sr.tree.is_missing());
        assert!(t.languages.iter().all(|l| l.language.has_known_family()));
        let missing: usize = t.records().filter(|r| r.value.is_missing()).count();
        assert_eq!(missing, 2);
        assert_eq!(t.records().filter(|r| r.method == Method::Tree).count(), 33);
    }

    #[test]
    fn table1_round_trips_bit_exactly() {
        assert_eq!(write_distance_table(&bundled_table1()), TABLE1_CSV);
    }

    #[test]
    fn demo_files_parse() {
        assert_eq!(bundled_demo_scores().rows().len(), 5);
        assert_eq!(bundled_demo_country_map().len(), 5);
        assert_eq!(bundled_classifications().len(), 33);
    }
}
