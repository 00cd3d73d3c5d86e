//! Family-tree distance: one minus a proximity index keyed on the number of
//! classification branches two languages share.

use serde::Serialize;
use thiserror::Error;

use crate::model::LanguageId;
use crate::scalar::Real;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("classification path for {0} is empty")]
    EmptyPath(String),
    #[error("empty branch name in path for {0}")]
    EmptyBranch(String),
    #[error("branch {branch:?} repeated consecutively in path for {language}")]
    RepeatedBranch { language: String, branch: String },
    #[error("proximity scale must be strictly increasing within [0, 1) with proximity(0) = 0")]
    InvalidScale,
}

/// Ordered branch names from the family root toward one language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeClassification {
    language: LanguageId,
    path: Vec<String>,
}

impl TreeClassification {
    pub fn new<I, S>(language: LanguageId, path: I) -> Result<Self, TreeError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let path: Vec<String> = path.into_iter().map(|s| s.as_ref().trim().to_string()).collect();
        if path.is_empty() {
            return Err(TreeError::EmptyPath(language.code().into()));
        }
        if path.iter().any(String::is_empty) {
            return Err(TreeError::EmptyBranch(language.code().into()));
        }
        if let Some(w) = path.windows(2).find(|w| w[0] == w[1]) {
            return Err(TreeError::RepeatedBranch { language: language.code().into(), branch: w[0].clone() });
        }
        Ok(Self { language, path })
    }

    pub fn language(&self) -> &LanguageId {
        &self.language
    }

    pub fn path(&self) -> &[String] {
        &self.path
    }
}

/// Length of the longest common prefix of the two paths.
pub fn shared_branches(a: &TreeClassification, b: &TreeClassification) -> usize {
    a.path.iter().zip(&b.path).take_while(|(x, y)| x == y).count()
}

/// Proximity per shared-branch count; 1 is reserved for the same language.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProximityScale<T> {
    /// `by_shared[k]` is the proximity for `k` shared branches. Counts past
    /// the end use the last entry.
    by_shared: Vec<T>,
}

impl<T: Real> ProximityScale<T> {
    pub fn new(by_shared: Vec<T>) -> Result<Self, TreeError> {
        let valid = by_shared.first().is_some_and(|p| p.is_zero())
            && by_shared.windows(2).all(|w| w[0] < w[1])
            && by_shared.last().is_some_and(|&p| p < T::one());
        if !valid {
            return Err(TreeError::InvalidScale);
        }
        Ok(Self { by_shared })
    }

    /// 0, 0.1, 0.25, 0.45, 0.7 for 0..=4 shared branches.
    pub fn standard() -> Self {
        Self { by_shared: [0.0, 0.1, 0.25, 0.45, 0.7].into_iter().map(T::lit).collect() }
    }

    pub fn proximity(&self, shared: usize) -> T {
        self.by_shared[shared.min(self.by_shared.len() - 1)]
    }
}

impl<T: Real> Default for ProximityScale<T> {
    fn default() -> Self {
        Self::standard()
    }
}

/// `1 - proximity`; zero for the same language.
pub fn tree_distance<T: Real>(a: &TreeClassification, b: &TreeClassification, scale: &ProximityScale<T>) -> T {
    if a.language == b.language {
        return T::zero();
    }
    T::one() - scale.proximity(shared_branches(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(code: &str, path: &str) -> TreeClassification {
        TreeClassification::new(LanguageId::from_code(code).unwrap(), path.split('>')).unwrap()
    }

    #[test]
    fn shared_branch_examples() {
        let a = cls("a", "IE>Germanic>West>X>Y");
        assert_eq!(shared_branches(&a, &cls("b", "IE>Germanic>West>X>Y")), 5);
        assert_eq!(shared_branches(&a, &cls("c", "Uralic>Finnic")), 0);
        assert_eq!(shared_branches(&cls("d", "IE>Germanic>West"), &cls("e", "IE>Germanic>North")), 2);
    }

    #[test]
    fn distance_examples() {
        let s = ProximityScale::<f64>::standard();
        let en = cls("english", "Indo-European>Germanic>Northwest Germanic>Anglic>English");
        let de = cls("german", "Indo-European>Germanic>Northwest Germanic>Continental West Germanic>German");
        let ar = cls("arabic", "Afro Asiatic>Semitic>Arabic");
        assert_eq!(tree_distance(&en, &en, &s), 0.0);
        assert_eq!(tree_distance(&en, &ar, &s), 1.0);
        assert_eq!(tree_distance(&en, &de, &s), 0.55);
        assert_eq!(tree_distance(&de, &en, &s), 0.55);
    }

    #[test]
    fn deep_sharing_clamps_to_last_band() {
        let s = ProximityScale::<f64>::standard();
        let a = cls("a", "1>2>3>4>5>6>a");
        let b = cls("b", "1>2>3>4>5>6>b");
        assert_eq!(shared_branches(&a, &b), 6);
        assert!((tree_distance(&a, &b, &s) - 0.3).abs() < 1e-15);
        // identical paths, distinct languages
        let c = cls("c", "1>2>3");
        let d = cls("d", "1>2>3");
        assert!((tree_distance(&c, &d, &s) - 0.55).abs() < 1e-15);
    }

    #[test]
    fn invalid_paths_and_scales() {
        let id = LanguageId::from_code("x").unwrap();
        assert!(matches!(TreeClassification::new(id.clone(), Vec::<&str>::new()), Err(TreeError::EmptyPath(_))));
        assert!(matches!(TreeClassification::new(id.clone(), ["a", ""]), Err(TreeError::EmptyBranch(_))));
        assert!(matches!(TreeClassification::new(id, ["a", "a"]), Err(TreeError::RepeatedBranch { .. })));
        assert!(ProximityScale::new(vec![0.0, 0.5, 0.4]).is_err());
        assert!(ProximityScale::new(vec![0.1, 0.5]).is_err());
        assert!(ProximityScale::new(vec![0.0, 1.0]).is_err());
        assert!(ProximityScale::new(vec![0.0f32, 0.5]).is_ok());
    }
}
