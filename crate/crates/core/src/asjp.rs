//! ASJP phonetic distance: Levenshtein distance over ASJP-coded word forms,
//! normalized per word pair (LDN) and divided by the mean distance between
//! unrelated concepts (LDND).

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::model::LanguageId;
use crate::scalar::Real;
use crate::sum::NeumaierSum;

/// Size of the ASJP concept inventory; concept ids run from 1 to this value.
pub const CONCEPT_COUNT: u8 = 40;

/// Characters that modify the preceding symbol. A modifier is folded into
/// the unit before it, and the combined unit counts as one symbol.
pub const ASJP_MODIFIERS: [char; 4] = ['*', '"', '~', '$'];

/// Non-letter base symbols of the ASJP code (the letters are all ASCII letters).
pub const ASJP_EXTRA_SYMBOLS: [char; 6] = ['3', '4', '5', '7', '8', '!'];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AsjpError {
    #[error("both forms are empty")]
    BothEmpty,
    #[error("concept id {0} outside 1..=40")]
    ConceptOutOfRange(u32),
    #[error("empty form for concept {0}")]
    EmptyForm(u8),
    #[error("invalid ASJP symbol {symbol:?} in form {form:?}")]
    InvalidSymbol { form: String, symbol: char },
    #[error("form {0:?} starts with a modifier")]
    LeadingModifier(String),
    #[error("{required} shared concept(s) required, found {found}")]
    TooFewSharedConcepts { required: usize, found: usize },
    #[error("global divergence is zero; wordlists are degenerate")]
    ZeroGlobalDivergence,
}

pub fn is_modifier(c: char) -> bool {
    ASJP_MODIFIERS.contains(&c)
}

pub fn is_base_symbol(c: char) -> bool {
    c.is_ascii_alphabetic() || ASJP_EXTRA_SYMBOLS.contains(&c)
}

/// Splits a form into symbol units, attaching modifiers to the preceding unit.
///
/// Never fails: a leading modifier becomes a unit of its own. Use
/// [`validate_form`] to reject such input.
pub fn fold_symbols(form: &str) -> Vec<&str> {
    let mut units: Vec<&str> = Vec::with_capacity(form.len());
    let mut start: Option<usize> = None;
    for (i, c) in form.char_indices() {
        if is_modifier(c) && start.is_some() {
            continue;
        }
        if let Some(s) = start {
            units.push(&form[s..i]);
        }
        start = Some(i);
    }
    if let Some(s) = start {
        units.push(&form[s..]);
    }
    units
}

/// Checks that `form` is non-empty ASJP code.
pub fn validate_form(form: &str) -> Result<(), AsjpError> {
    let mut chars = form.chars();
    match chars.next() {
        None => return Err(AsjpError::EmptyForm(0)),
        Some(c) if is_modifier(c) => return Err(AsjpError::LeadingModifier(form.to_string())),
        _ => {}
    }
    if let Some(bad) = form.chars().find(|&c| !is_base_symbol(c) && !is_modifier(c)) {
        return Err(AsjpError::InvalidSymbol { form: form.to_string(), symbol: bad });
    }
    Ok(())
}

/// Unit-cost edit distance between two symbol sequences.
pub fn edit_distance<S: PartialEq>(a: &[S], b: &[S]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return long.len();
    }
    let mut prev: Vec<usize> = (0..=short.len()).collect();
    let mut cur = vec![0usize; short.len() + 1];
    for (i, x) in long.iter().enumerate() {
        cur[0] = i + 1;
        for (j, y) in short.iter().enumerate() {
            let sub = prev[j] + usize::from(x != y);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[short.len()]
}

/// Levenshtein distance between two ASJP forms, counted in folded symbol units.
pub fn levenshtein(a: &str, b: &str) -> usize {
    edit_distance(&fold_symbols(a), &fold_symbols(b))
}

fn ldn_units<T: Real>(a: &[&str], b: &[&str]) -> Result<T, AsjpError> {
    let longest = a.len().max(b.len());
    if longest == 0 {
        return Err(AsjpError::BothEmpty);
    }
    Ok(T::from_count(edit_distance(a, b)) / T::from_count(longest))
}

/// Levenshtein distance divided by the length of the longer form.
pub fn ldn_pair<T: Real>(a: &str, b: &str) -> Result<T, AsjpError> {
    ldn_units(&fold_symbols(a), &fold_symbols(b))
}

/// How concepts with several recorded synonyms are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum SynonymPolicy {
    /// Minimum distance over all synonym combinations.
    #[default]
    Minimum,
    /// Only the first recorded form of each concept.
    FirstForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct AsjpOptions {
    pub synonyms: SynonymPolicy,
}

/// 40-concept ASJP word list of one language.
#[derive(Debug, Clone, PartialEq)]
pub struct AsjpWordlist {
    language: LanguageId,
    items: BTreeMap<u8, Vec<String>>,
}

impl AsjpWordlist {
    pub fn new(language: LanguageId) -> Self {
        Self { language, items: BTreeMap::new() }
    }

    /// Adds a form (appended as a synonym when the concept already has one).
    pub fn insert(&mut self, concept: u32, form: &str) -> Result<(), AsjpError> {
        if !(1..=u32::from(CONCEPT_COUNT)).contains(&concept) {
            return Err(AsjpError::ConceptOutOfRange(concept));
        }
        let concept = concept as u8;
        let form = form.trim();
        validate_form(form).map_err(|e| match e {
            AsjpError::EmptyForm(_) => AsjpError::EmptyForm(concept),
            other => other,
        })?;
        self.items.entry(concept).or_default().push(form.to_string());
        Ok(())
    }

    pub fn from_items<'a, I>(language: LanguageId, items: I) -> Result<Self, AsjpError>
    where
        I: IntoIterator<Item = (u32, &'a str)>,
    {
        let mut list = Self::new(language);
        for (c, f) in items {
            list.insert(c, f)?;
        }
        Ok(list)
    }

    pub fn language(&self) -> &LanguageId {
        &self.language
    }

    pub fn forms(&self, concept: u8) -> Option<&[String]> {
        self.items.get(&concept).map(Vec::as_slice)
    }

    /// Concepts with at least one form, ascending.
    pub fn concepts(&self) -> impl Iterator<Item = u8> + '_ {
        self.items.keys().copied()
    }

    /// Concept ids of the inventory with no recorded form.
    pub fn absent_concepts(&self) -> Vec<u8> {
        (1..=CONCEPT_COUNT).filter(|c| !self.items.contains_key(c)).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u8, &str)> {
        self.items.iter().flat_map(|(&c, fs)| fs.iter().map(move |f| (c, f.as_str())))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsjpResult<T> {
    pub language_a: LanguageId,
    pub language_b: LanguageId,
    pub ldn: T,
    pub global_divergence: T,
    pub ldnd: T,
    pub concepts_used: usize,
}

/// Folded forms of the concepts shared by both lists, aligned by position.
struct SharedForms<'a> {
    a: Vec<Vec<Vec<&'a str>>>,
    b: Vec<Vec<Vec<&'a str>>>,
}

impl<'a> SharedForms<'a> {
    fn new(list_a: &'a AsjpWordlist, list_b: &'a AsjpWordlist, opts: &AsjpOptions) -> Self {
        let pick = |forms: &'a [String]| -> Vec<Vec<&'a str>> {
            let take = match opts.synonyms {
                SynonymPolicy::Minimum => forms.len(),
                SynonymPolicy::FirstForm => 1,
            };
            forms.iter().take(take).map(|f| fold_symbols(f)).collect()
        };
        let (mut a, mut b) = (Vec::new(), Vec::new());
        for (concept, forms_a) in &list_a.items {
            if let Some(forms_b) = list_b.items.get(concept) {
                a.push(pick(forms_a));
                b.push(pick(forms_b));
            }
        }
        Self { a, b }
    }

    fn len(&self) -> usize {
        self.a.len()
    }

    /// Smallest LDN over the synonym combinations of concept `i` in A and concept `j` in B.
    fn distance<T: Real>(&self, i: usize, j: usize) -> T {
        let mut best: Option<T> = None;
        for fa in &self.a[i] {
            for fb in &self.b[j] {
                // forms are validated non-empty
                let d: T = ldn_units(fa, fb).expect("non-empty forms");
                best = Some(best.map_or(d, |b: T| b.min(d)));
            }
        }
        best.expect("every shared concept has a form")
    }

    fn local<T: Real>(&self) -> Result<T, AsjpError> {
        let m = self.len();
        if m == 0 {
            return Err(AsjpError::TooFewSharedConcepts { required: 1, found: 0 });
        }
        let sum: NeumaierSum<T> = (0..m).map(|i| self.distance(i, i)).collect();
        Ok(sum.value() / T::from_count(m))
    }

    fn global<T: Real>(&self) -> Result<T, AsjpError> {
        let m = self.len();
        if m < 2 {
            return Err(AsjpError::TooFewSharedConcepts { required: 2, found: m });
        }
        let mut sum = NeumaierSum::new();
        for i in 0..m {
            let row: NeumaierSum<T> = (0..m).filter(|&j| j != i).map(|j| self.distance(i, j)).collect();
            sum.merge(&row);
        }
        Ok(sum.value() / T::from_count(m * (m - 1)))
    }
}

/// Mean LDN over concepts present in both lists, with the number of concepts used.
pub fn ldn<T: Real>(a: &AsjpWordlist, b: &AsjpWordlist) -> Result<(T, usize), AsjpError> {
    ldn_with(a, b, &AsjpOptions::default())
}

pub fn ldn_with<T: Real>(a: &AsjpWordlist, b: &AsjpWordlist, opts: &AsjpOptions) -> Result<(T, usize), AsjpError> {
    let shared = SharedForms::new(a, b, opts);
    Ok((shared.local()?, shared.len()))
}

/// Mean LDN between forms of different shared concepts, over all ordered
/// pairs `i != j`.
pub fn global_divergence<T: Real>(a: &AsjpWordlist, b: &AsjpWordlist) -> Result<T, AsjpError> {
    global_divergence_with(a, b, &AsjpOptions::default())
}

pub fn global_divergence_with<T: Real>(a: &AsjpWordlist, b: &AsjpWordlist, opts: &AsjpOptions) -> Result<T, AsjpError> {
    SharedForms::new(a, b, opts).global()
}

/// LDN divided by the global divergence.
pub fn ldnd<T: Real>(a: &AsjpWordlist, b: &AsjpWordlist) -> Result<AsjpResult<T>, AsjpError> {
    ldnd_with(a, b, &AsjpOptions::default())
}

pub fn ldnd_with<T: Real>(a: &AsjpWordlist, b: &AsjpWordlist, opts: &AsjpOptions) -> Result<AsjpResult<T>, AsjpError> {
    let shared = SharedForms::new(a, b, opts);
    let ldn: T = shared.local()?;
    let global: T = shared.global()?;
    if global <= T::zero() {
        return Err(AsjpError::ZeroGlobalDivergence);
    }
    Ok(AsjpResult {
        language_a: a.language().clone(),
        language_b: b.language().clone(),
        ldn,
        global_divergence: global,
        ldnd: ldn / global,
        concepts_used: shared.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(code: &str, items: &[(u32, &str)]) -> AsjpWordlist {
        AsjpWordlist::from_items(LanguageId::from_code(code).unwrap(), items.iter().copied()).unwrap()
    }

    #[test]
    fn levenshtein_examples() {
        assert_eq!(levenshtein("abc", "abc"), 0);
        assert_eq!(levenshtein("", "abc"), 3);
        assert_eq!(levenshtein("abc", ""), 3);
        assert_eq!(levenshtein("Ei", "wataSi"), 5);
        assert_eq!(levenshtein("kitten", "sitting"), 3);
    }

    #[test]
    fn modifiers_fold_into_one_unit() {
        assert_eq!(fold_symbols("ta*k"), vec!["t", "a*", "k"]);
        assert_eq!(fold_symbols("t\"s~a"), vec!["t\"", "s~", "a"]);
        assert_eq!(fold_symbols("*a"), vec!["*", "a"]);
        // a nasalized vowel is one substitution away from the plain vowel
        assert_eq!(levenshtein("ta*", "ta"), 1);
        assert_eq!(levenshtein("ta*", "to"), 1);
        assert_eq!(ldn_pair::<f64>("ta*", "ta").unwrap(), 0.5);
    }

    #[test]
    fn ldn_pair_examples() {
        assert_eq!(ldn_pair::<f64>("abc", "abc").unwrap(), 0.0);
        assert!((ldn_pair::<f64>("Ei", "wataSi").unwrap() - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(ldn_pair::<f64>("a", "b").unwrap(), 1.0);
        assert_eq!(ldn_pair::<f64>("", "b").unwrap(), 1.0);
        assert_eq!(ldn_pair::<f64>("", ""), Err(AsjpError::BothEmpty));
    }

    #[test]
    fn validation() {
        let mut l = AsjpWordlist::new(LanguageId::from_code("x").unwrap());
        assert_eq!(l.insert(0, "a"), Err(AsjpError::ConceptOutOfRange(0)));
        assert_eq!(l.insert(41, "a"), Err(AsjpError::ConceptOutOfRange(41)));
        assert_eq!(l.insert(3, ""), Err(AsjpError::EmptyForm(3)));
        assert!(matches!(l.insert(3, "a b"), Err(AsjpError::InvalidSymbol { symbol: ' ', .. })));
        assert!(matches!(l.insert(3, "~a"), Err(AsjpError::LeadingModifier(_))));
        l.insert(3, "wataSi").unwrap();
        l.insert(3, "boku").unwrap();
        l.insert(7, "7a!8\"").unwrap();
        assert_eq!(l.forms(3).unwrap().len(), 2);
        assert_eq!(l.absent_concepts().len(), 38);
    }

    #[test]
    fn ldn_single_and_two_concepts() {
        let (v, used) = ldn::<f64>(&list("en", &[(1, "Ei")]), &list("ja", &[(1, "wataSi")])).unwrap();
        assert!((v - 5.0 / 6.0).abs() < 1e-15);
        assert_eq!(used, 1);

        // concept 1: ldn(Ei, wataSi) = 5/6; concept 2: ldn(nos, nez) = 2/3; concept 3 only in A
        let a = list("a", &[(1, "Ei"), (2, "nos"), (3, "hEnd")]);
        let b = list("b", &[(1, "wataSi"), (2, "nez")]);
        let (v, used) = ldn::<f64>(&a, &b).unwrap();
        assert_eq!(used, 2);
        assert!((v - (5.0 / 6.0 + 2.0 / 3.0) / 2.0).abs() < 1e-15);
    }

    #[test]
    fn synonym_policies() {
        let a = list("a", &[(1, "xyz"), (1, "Ei")]);
        let b = list("b", &[(1, "Ei")]);
        let min = ldn::<f64>(&a, &b).unwrap().0;
        assert_eq!(min, 0.0);
        let first = ldn_with::<f64>(&a, &b, &AsjpOptions { synonyms: SynonymPolicy::FirstForm }).unwrap().0;
        assert_eq!(first, 1.0);
    }

    #[test]
    fn global_divergence_examples() {
        let a = list("a", &[(1, "ab"), (2, "cd")]);
        assert_eq!(global_divergence::<f64>(&a, &a).unwrap(), 1.0);
        let single = list("s", &[(1, "ab")]);
        assert_eq!(
            global_divergence::<f64>(&single, &single),
            Err(AsjpError::TooFewSharedConcepts { required: 2, found: 1 })
        );
    }

    #[test]
    fn degenerate_lists_fail_ldnd() {
        let a = list("a", &[(1, "a"), (2, "a"), (3, "a")]);
        assert_eq!(global_divergence::<f64>(&a, &a).unwrap(), 0.0);
        assert_eq!(ldnd::<f64>(&a, &a), Err(AsjpError::ZeroGlobalDivergence));
    }

    #[test]
    fn ldnd_identity_and_errors() {
        let a = list("a", &[(1, "Ei"), (2, "yu"), (3, "wi"), (4, "wan")]);
        let r = ldnd::<f64>(&a, &a).unwrap();
        assert_eq!(r.ldnd, 0.0);
        assert_eq!(r.concepts_used, 4);
        assert!(r.global_divergence > 0.0);

        let b = list("b", &[(5, "Ei"), (6, "yu")]);
        assert_eq!(ldnd::<f64>(&a, &b), Err(AsjpError::TooFewSharedConcepts { required: 1, found: 0 }));
    }

    #[test]
    fn ldnd_is_symmetric_and_generic() {
        let a = list("a", &[(1, "Ei"), (2, "yu"), (3, "wi"), (4, "wan"), (5, "tu")]);
        let b = list("b", &[(1, "wataSi"), (2, "anata"), (3, "wataSitaCi"), (4, "iCi"), (6, "ni")]);
        let ab = ldnd::<f64>(&a, &b).unwrap();
        let ba = ldnd::<f64>(&b, &a).unwrap();
        assert!((ab.ldnd - ba.ldnd).abs() < 1e-12);
        assert_eq!(ab.ldnd, ab.ldn / ab.global_divergence);
        let ab32 = ldnd::<f32>(&a, &b).unwrap();
        assert!((f64::from(ab32.ldnd) - ab.ldnd).abs() < 1e-5);
    }
}
