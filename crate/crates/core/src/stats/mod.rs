//! Statistics used to relate language distances to proficiency scores.

mod anova;
mod correlation;
mod descriptive;
mod groups;
mod linalg;
mod qq;
pub mod special;

pub use anova::{anova_f, levene, manova, AnovaResult, LeveneResult, ManovaResult, VariableEffect, WilksLambda};
pub use correlation::{pearson, significance_stars, PearsonResult};
pub use descriptive::{descriptives, Descriptives};
pub use groups::{split_groups, Group, GroupAssignment};
pub use qq::qq_data;

use thiserror::Error;

use self::special::SpecialError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("empty input")]
    Empty,
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("at least {required} observations required, got {found}")]
    TooFew { required: usize, found: usize },
    #[error("{0} input is constant")]
    Constant(&'static str),
    #[error("non-finite value in input")]
    NonFinite,
    #[error("F statistic undefined: zero variance within and between groups")]
    UndefinedF,
    #[error("country {0:?} has no score row")]
    MissingCountry(String),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

fn check_finite<T: crate::Real>(values: &[T]) -> Result<(), StatsError> {
    if values.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(StatsError::NonFinite)
    }
}
