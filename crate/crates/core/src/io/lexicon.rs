//! Bilingual lexicon: UTF-8 TSV with `source_word<TAB>target_word` rows.

use std::path::Path;

use super::{read_utf8, IngestError};
use crate::embed::BilingualLexicon;
use crate::model::LanguageId;

pub fn parse_lexicon_file(path: &Path, source: LanguageId, target: LanguageId) -> Result<BilingualLexicon, IngestError> {
    parse_lexicon_str(&read_utf8(path)?, source, target)
}

pub fn parse_lexicon_str(text: &str, source: LanguageId, target: LanguageId) -> Result<BilingualLexicon, IngestError> {
    let mut pairs = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        match cols[..] {
            [s, t] if !s.trim().is_empty() && !t.trim().is_empty() => pairs.push((s.trim(), t.trim())),
            _ => return Err(IngestError::line(i + 1, "expected two tab-separated non-empty columns")),
        }
    }
    if pairs.is_empty() {
        return Err(IngestError::Empty("lexicon"));
    }
    BilingualLexicon::new(source, target, pairs).map_err(|e| IngestError::Invalid(e.to_string()))
}

pub fn write_lexicon(lexicon: &BilingualLexicon) -> String {
    lexicon.pairs().iter().map(|(s, t)| format!("{s}\t{t}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_dedups() {
        let src = LanguageId::from_code("german").unwrap();
        let tgt = LanguageId::english();
        let lex = parse_lexicon_str("# de-en\nHaus\thouse\nhaus\tHouse\n\nBaum\ttree\n", src.clone(), tgt.clone()).unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(write_lexicon(&lex), "haus\thouse\nbaum\ttree\n");
        let err = parse_lexicon_str("Haus house\n", src.clone(), tgt.clone()).unwrap_err();
        assert!(matches!(err, IngestError::Line { line: 1, .. }));
        assert!(matches!(parse_lexicon_str("# only\n", src, tgt), Err(IngestError::Empty(_))));
    }
}
