//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use langdist::model::{Method, Skill};

#[derive(Debug, Parser)]
#[command(name = "langdist", version, about = "Language distances to English and their relation to proficiency scores")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute distances to a reference language.
    Dist {
        #[command(subcommand)]
        kind: DistKind,
    },
    /// Relate distances to score tables named by a manifest.
    Analyze {
        #[command(subcommand)]
        kind: AnalyzeKind,
    },
    /// Map a TOEFL iBT score to its CEFR level.
    Cefr(CefrArgs),
    /// Write the bundled data files and a demo manifest.
    ExportBundled(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Markdown,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the artifact here instead of standard output.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum DistKind {
    /// Semantic distance (1 - mean cosine similarity over a bilingual lexicon).
    Embed(EmbedArgs),
    /// ASJP LDND against a reference wordlist.
    Asjp(AsjpArgs),
    /// Family-tree distance from a classification file.
    Tree(TreeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct EmbedArgs {
    /// Source language code, its embedding file and its lexicon into the target language.
    #[arg(long = "source", num_args = 3, value_names = ["LANG", "EMBEDDINGS", "LEXICON"], action = clap::ArgAction::Append, required = true)]
    pub sources: Vec<String>,
    /// Embedding file of the target language.
    #[arg(long, value_name = "EMBEDDINGS")]
    pub target: PathBuf,
    #[arg(long, default_value = "english", value_name = "LANG")]
    pub target_language: String,
    /// Fail when a lexicon covers fewer than this fraction of its pairs.
    #[arg(long, value_name = "FRACTION")]
    pub min_coverage: Option<f64>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Synonyms {
    /// Smallest distance over all synonym combinations.
    Min,
    /// First recorded form only.
    First,
}

#[derive(Debug, Clone, Args)]
pub struct AsjpArgs {
    /// Wordlist of the reference language.
    #[arg(long, value_name = "WORDLIST")]
    pub reference: PathBuf,
    #[arg(long, default_value = "english", value_name = "LANG")]
    pub reference_language: String,
    #[arg(long, value_enum, default_value_t = Synonyms::Min)]
    pub synonyms: Synonyms,
    /// Wordlists to compare, as LANG=PATH.
    #[arg(required = true, value_name = "LANG=PATH")]
    pub wordlists: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct TreeArgs {
    /// Classification CSV; the bundled file when omitted.
    #[arg(long, value_name = "FILE")]
    pub classifications: Option<PathBuf>,
    #[arg(long, default_value = "english", value_name = "LANG")]
    pub reference: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
pub enum AnalyzeKind {
    /// Pearson correlation of distance with each score column.
    Corr(AnalyzeArgs),
    /// Group A / group B comparison of the score profiles.
    Manova(AnalyzeArgs),
    /// Means and standard deviations of the score columns.
    Describe(AnalyzeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    #[arg(long, value_name = "FILE")]
    pub manifest: PathBuf,
    /// Restrict to these methods (repeatable); all three by default.
    #[arg(long, value_parser = parse_method)]
    pub method: Vec<Method>,
    /// Group cutline; needs exactly one --method.
    #[arg(long)]
    pub cutline: Option<f64>,
    /// Drop distances flagged as suspect.
    #[arg(long)]
    pub exclude_flagged: bool,
    /// Restrict to one score year.
    #[arg(long)]
    pub year: Option<i32>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CefrArgs {
    #[arg(value_parser = parse_skill)]
    pub skill: Skill,
    #[arg(allow_negative_numbers = true)]
    pub score: f64,
    /// Print a table instead of the bare level.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    /// Directory to write into; the bundled distance table goes to standard output when omitted.
    #[arg(long, value_name = "DIR")]
    pub out: Option<PathBuf>,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e| format!("{e}"))
}

fn parse_skill(s: &str) -> Result<Skill, String> {
    s.parse().map_err(|e| format!("{e}"))
}
