//! Command-line front end: argument grammar, subcommands and report rendering.

pub mod args;
pub mod commands;
pub mod report;

use std::path::PathBuf;

use anyhow::{Context, Result};
use langdist::bundled::TABLE1_CSV;

use crate::args::{AnalyzeKind, Cli, Command, DistKind, OutputArgs};
use crate::report::render;

/// JSON schema every `--format json` artifact validates against.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Where a run's output goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Output {
    Stdout(String),
    File { path: PathBuf, text: String },
    Written(Vec<PathBuf>),
}

impl Output {
    fn new(text: String, out: &Option<PathBuf>) -> Self {
        match out {
            Some(path) => Output::File { path: path.clone(), text },
            None => Output::Stdout(text),
        }
    }

    /// Writes file output; returns what belongs on standard output.
    pub fn commit(self) -> Result<String> {
        match self {
            Output::Stdout(text) => Ok(text),
            Output::File { path, text } => {
                std::fs::write(&path, text).with_context(|| format!("{}", path.display()))?;
                Ok(String::new())
            }
            Output::Written(_) => Ok(String::new()),
        }
    }
}

fn rendered(artifact: report::Artifact, output: &OutputArgs) -> Output {
    Output::new(render(&artifact, output.format), &output.out)
}

/// Runs one command to completion without touching standard output.
pub fn execute(cli: &Cli) -> Result<Output> {
    Ok(match &cli.command {
        Command::Dist { kind } => match kind {
            DistKind::Embed(a) => rendered(commands::dist_embed(a)?, &a.output),
            DistKind::Asjp(a) => rendered(commands::dist_asjp(a)?, &a.output),
            DistKind::Tree(a) => rendered(commands::dist_tree(a)?, &a.output),
        },
        Command::Analyze { kind } => match kind {
            AnalyzeKind::Corr(a) => rendered(commands::analyze_corr(a)?, &a.output),
            AnalyzeKind::Manova(a) => rendered(commands::analyze_manova(a)?, &a.output),
            AnalyzeKind::Describe(a) => rendered(commands::analyze_describe(a)?, &a.output),
        },
        Command::Cefr(a) => {
            let artifact = commands::cefr(a)?;
            match a.format {
                None => {
                    let report::Artifact::Cefr(c) = &artifact else { unreachable!() };
                    Output::Stdout(format!("{}\n", c.level))
                }
                Some(f) => Output::Stdout(render(&artifact, f)),
            }
        }
        Command::ExportBundled(a) => match &a.out {
            Some(dir) => Output::Written(commands::export_bundled(dir)?),
            None => Output::Stdout(TABLE1_CSV.to_string()),
        },
    })
}

/// Formats an error chain on one line.
pub fn error_line(err: &anyhow::Error) -> String {
    let msg = format!("{err:#}");
    msg.split_whitespace().collect::<Vec<_>>().join(" ")
}

