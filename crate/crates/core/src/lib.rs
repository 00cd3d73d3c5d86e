//! Inter-language distance measures and the statistics used to relate them
//! to country-level English proficiency scores.
//!
//! * [`embed`]: semantic distance from word embeddings and a bilingual lexicon
//! * [`asjp`]: Levenshtein-based phonetic distance (LDN / LDND)
//! * [`tree`]: family-tree distance from shared classification branches
//! * [`stats`]: descriptives, Pearson correlation, two-group (M)ANOVA, Levene, Q-Q data
//! * [`io`]: file formats and frame assembly
//! * [`bundled`]: reference distance table and demo data
//!
//! Numeric routines are generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases.

pub mod asjp;
pub mod bundled;
pub mod embed;
pub mod io;
pub mod model;
pub mod scalar;
pub mod stats;
pub mod sum;
pub mod tree;

pub use bundled::bundled_table1;
pub use model::{
    cefr_level, CefrBands, CefrLevel, DistanceRecord, DistanceTable, DistanceValue, LanguageId, Method, Quality,
    ScoreRow, ScoreTable, Skill,
};
pub use scalar::Real;

pub type EmbeddingTableF64 = embed::EmbeddingTable<f64>;
pub type EmbeddingTableF32 = embed::EmbeddingTable<f32>;
pub type SldResultF64 = embed::SldResult<f64>;
pub type SldResultF32 = embed::SldResult<f32>;
pub type AsjpResultF64 = asjp::AsjpResult<f64>;
pub type AsjpResultF32 = asjp::AsjpResult<f32>;
pub type ProximityScaleF64 = tree::ProximityScale<f64>;
pub type PearsonResultF64 = stats::PearsonResult<f64>;
pub type AnovaResultF64 = stats::AnovaResult<f64>;
pub type ManovaResultF64 = stats::ManovaResult<f64>;
pub type DescriptivesF64 = stats::Descriptives<f64>;
pub type GroupAssignmentF64 = stats::GroupAssignment<f64>;
