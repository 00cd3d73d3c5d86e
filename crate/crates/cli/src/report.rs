//! Output artifacts and their CSV, Markdown and JSON renderings.
//!
//! CSV carries full precision, Markdown rounds to report precision (r to three
//! places with significance stars), JSON carries the raw values. Non-finite
//! numbers become `null` in JSON.

use std::fmt::Write as _;

use langdist::io::{format_distance, format_real};
use langdist::stats::{significance_stars, WilksLambda};
use serde::Serialize;

use crate::args::Format;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Artifact {
    Distances(DistanceReport),
    Correlations(CorrelationReport),
    Manova(ManovaReport),
    Describe(DescribeReport),
    Cefr(CefrReport),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    pub method: &'static str,
    pub reference: String,
    pub rows: Vec<DistanceRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceRow {
    pub language: String,
    pub method: &'static str,
    pub value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coverage: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs_covered: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairs_total: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ldn: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub global_divergence: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub concepts_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shared_branches: Option<usize>,
}

impl DistanceRow {
    pub fn new(language: String, method: &'static str, value: f64) -> Self {
        Self {
            language,
            method,
            value,
            coverage: None,
            pairs_covered: None,
            pairs_total: None,
            ldn: None,
            global_divergence: None,
            concepts_used: None,
            shared_branches: None,
        }
    }
}

/// A score row left out of an analysis, and why.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExcludedRow {
    pub year: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<&'static str>,
    pub country: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    pub rows: Vec<CorrelationRow>,
    pub excluded: Vec<ExcludedRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationRow {
    pub year: i32,
    pub method: &'static str,
    pub skill: &'static str,
    pub n: usize,
    pub r: f64,
    pub t: f64,
    pub p: f64,
    pub stars: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManovaReport {
    pub blocks: Vec<ManovaBlock>,
    pub excluded: Vec<ExcludedRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManovaBlock {
    pub year: i32,
    pub method: &'static str,
    pub cutline: f64,
    pub n_a: usize,
    pub n_b: usize,
    pub group_a: Vec<String>,
    pub group_b: Vec<String>,
    pub variables: Vec<ManovaVariable>,
    /// Supplementary; absent when the pooled covariance is singular.
    pub wilks: Option<WilksLambda<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ManovaVariable {
    pub skill: &'static str,
    pub mean_a: f64,
    pub mean_b: f64,
    pub f: f64,
    pub p: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescribeReport {
    pub rows: Vec<DescribeRow>,
    pub excluded: Vec<ExcludedRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DescribeRow {
    pub year: i32,
    pub skill: &'static str,
    pub n: usize,
    pub mean: f64,
    pub sd: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CefrReport {
    pub skill: &'static str,
    pub score: f64,
    pub level: &'static str,
}

pub fn render(artifact: &Artifact, format: Format) -> String {
    match format {
        Format::Csv => render_csv(artifact),
        Format::Markdown => render_markdown(artifact),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(artifact).expect("artifacts serialize");
            s.push('\n');
            s
        }
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn opt_real(v: Option<f64>) -> String {
    v.map(format_real).unwrap_or_default()
}

fn csv_table(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(header).expect("in-memory");
    for row in rows {
        w.write_record(row).expect("in-memory");
    }
    String::from_utf8(w.into_inner().expect("in-memory")).expect("utf-8 fields")
}

fn render_csv(artifact: &Artifact) -> String {
    match artifact {
        Artifact::Distances(d) => {
            let embed = d.rows.iter().any(|r| r.coverage.is_some());
            let mut header = vec!["language", "method", "value"];
            if embed {
                header.extend(["coverage", "pairs_covered", "pairs_total"]);
            }
            let rows = d
                .rows
                .iter()
                .map(|r| {
                    // exact two-decimal text when possible so the file re-ingests bit for bit
                    let mut row = vec![r.language.clone(), r.method.to_string(), format_distance(r.value)];
                    if embed {
                        row.extend([opt_real(r.coverage), opt(r.pairs_covered), opt(r.pairs_total)]);
                    }
                    row
                })
                .collect();
            csv_table(&header, rows)
        }
        Artifact::Correlations(c) => csv_table(
            &["year", "method", "skill", "n", "r", "t", "p", "stars"],
            c.rows
                .iter()
                .map(|r| {
                    vec![
                        r.year.to_string(),
                        r.method.into(),
                        r.skill.into(),
                        r.n.to_string(),
                        format_real(r.r),
                        format_real(r.t),
                        format_real(r.p),
                        r.stars.into(),
                    ]
                })
                .collect(),
        ),
        Artifact::Manova(m) => {
            let mut rows = Vec::new();
            for b in &m.blocks {
                for v in &b.variables {
                    rows.push(vec![
                        b.year.to_string(),
                        b.method.into(),
                        format_real(b.cutline),
                        b.n_a.to_string(),
                        b.n_b.to_string(),
                        v.skill.into(),
                        format_real(v.mean_a),
                        format_real(v.mean_b),
                        format_real(v.f),
                        format_real(v.p),
                    ]);
                }
            }
            csv_table(&["year", "method", "cutline", "n_a", "n_b", "skill", "mean_a", "mean_b", "f", "p"], rows)
        }
        Artifact::Describe(d) => csv_table(
            &["year", "skill", "n", "mean", "sd"],
            d.rows
                .iter()
                .map(|r| vec![r.year.to_string(), r.skill.into(), r.n.to_string(), format_real(r.mean), opt_real(r.sd)])
                .collect(),
        ),
        Artifact::Cefr(c) => csv_table(&["skill", "score", "level"], vec![vec![c.skill.into(), format_real(c.score), c.level.into()]]),
    }
}

fn fixed(v: f64, decimals: usize) -> String {
    if v.is_finite() {
        let s = format!("{v:.decimals$}");
        // no "-0.000"
        if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
            s.trim_start_matches('-').to_string()
        } else {
            s
        }
    } else {
        format_real(v)
    }
}

fn md_table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    writeln!(out, "| {} |", header.join(" | ")).unwrap();
    writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
    for row in rows {
        writeln!(out, "| {} |", row.join(" | ")).unwrap();
    }
}

fn render_markdown(artifact: &Artifact) -> String {
    let mut out = String::new();
    match artifact {
        Artifact::Distances(d) => {
            let embed = d.rows.iter().any(|r| r.coverage.is_some());
            let mut header = vec!["Language", "Method", "Distance"];
            if embed {
                header.push("Coverage");
            }
            let rows: Vec<Vec<String>> = d
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.language.clone(), r.method.into(), fixed(r.value, 2)];
                    if embed {
                        row.push(r.coverage.map(|c| fixed(c, 3)).unwrap_or_default());
                    }
                    row
                })
                .collect();
            writeln!(out, "Distance to {} ({})\n", d.reference, d.method).unwrap();
            md_table(&mut out, &header, &rows);
        }
        Artifact::Correlations(c) => {
            let rows: Vec<Vec<String>> = c
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.year.to_string(),
                        r.method.into(),
                        r.skill.into(),
                        r.n.to_string(),
                        format!("{}{}", fixed(r.r, 3), r.stars),
                        fixed(r.p, 3),
                    ]
                })
                .collect();
            md_table(&mut out, &["Year", "Method", "Score", "n", "r", "Sig."], &rows);
            out.push_str("\n\\* p < 0.05, \\*\\* p < 0.01, \\*\\*\\* p < 0.001 (two-tailed)\n");
        }
        Artifact::Manova(m) => {
            for (i, b) in m.blocks.iter().enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                writeln!(
                    out,
                    "### {} {} (cutline {}; group A n = {}, group B n = {})\n",
                    b.year,
                    b.method,
                    format_real(b.cutline),
                    b.n_a,
                    b.n_b
                )
                .unwrap();
                let rows: Vec<Vec<String>> = b
                    .variables
                    .iter()
                    .map(|v| vec![v.skill.into(), fixed(v.mean_a, 2), fixed(v.mean_b, 2), fixed(v.f, 3), fixed(v.p, 3)])
                    .collect();
                md_table(&mut out, &["Score", "Group A mean", "Group B mean", "F", "Sig."], &rows);
                if let Some(w) = &b.wilks {
                    writeln!(
                        out,
                        "\nWilks' lambda = {}, F({}, {}) = {}, Sig. = {}{}",
                        fixed(w.wilks_lambda, 3),
                        w.df1,
                        w.df2,
                        fixed(w.f_approx, 3),
                        fixed(w.p, 3),
                        significance_stars(w.p)
                    )
                    .unwrap();
                }
            }
        }
        Artifact::Describe(d) => {
            let rows: Vec<Vec<String>> = d
                .rows
                .iter()
                .map(|r| {
                    vec![r.year.to_string(), r.skill.into(), r.n.to_string(), fixed(r.mean, 2), r.sd.map(|s| fixed(s, 3)).unwrap_or_default()]
                })
                .collect();
            md_table(&mut out, &["Year", "Score", "n", "Mean", "SD"], &rows);
        }
        Artifact::Cefr(c) => md_table(&mut out, &["Score", "Value", "CEFR"], &[vec![c.skill.into(), format_real(c.score), c.level.into()]]),
    }
    out
}
