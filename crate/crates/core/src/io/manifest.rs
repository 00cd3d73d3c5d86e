//! Analysis manifest: a `key = value` text file naming the inputs of a run.
//!
//! ```text
//! # comment
//! scores.2019 = scores_2019.csv     # one line per year
//! country_map = countries.csv
//! distances = bundled               # or a path to a distance CSV
//! cutline.embed = 0.19              # optional overrides
//! exclude_flagged = true
//! ```
//!
//! Relative paths resolve against the manifest's directory.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::{read_utf8, IngestError};
use crate::model::Method;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DistanceSource {
    Bundled,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Manifest {
    pub scores: BTreeMap<i32, PathBuf>,
    pub country_map: PathBuf,
    pub distances: DistanceSource,
    pub cutlines: BTreeMap<Method, f64>,
    pub exclude_flagged: bool,
}

impl Manifest {
    pub fn cutline(&self, method: Method) -> f64 {
        self.cutlines.get(&method).copied().unwrap_or_else(|| method.default_cutline())
    }

    /// Fails on the first referenced file that does not exist.
    pub fn check_paths(&self) -> Result<(), IngestError> {
        let mut paths: Vec<&Path> = self.scores.values().map(PathBuf::as_path).collect();
        paths.push(&self.country_map);
        if let DistanceSource::File(p) = &self.distances {
            paths.push(p);
        }
        match paths.into_iter().find(|p| !p.is_file()) {
            Some(p) => Err(IngestError::Io {
                path: p.to_path_buf(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "referenced by manifest"),
            }),
            None => Ok(()),
        }
    }

    /// Serializes with paths written as given (relative paths stay relative).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (year, path) in &self.scores {
            writeln!(out, "scores.{year} = {}", path.display()).unwrap();
        }
        writeln!(out, "country_map = {}", self.country_map.display()).unwrap();
        match &self.distances {
            DistanceSource::Bundled => writeln!(out, "distances = bundled").unwrap(),
            DistanceSource::File(p) => writeln!(out, "distances = {}", p.display()).unwrap(),
        }
        for (method, cut) in &self.cutlines {
            writeln!(out, "cutline.{} = {cut}", method.name()).unwrap();
        }
        writeln!(out, "exclude_flagged = {}", self.exclude_flagged).unwrap();
        out
    }
}

pub fn parse_manifest(path: &Path) -> Result<Manifest, IngestError> {
    let base = path.parent().unwrap_or(Path::new("."));
    parse_manifest_str(&read_utf8(path)?, base)
}

pub fn parse_manifest_str(text: &str, base_dir: &Path) -> Result<Manifest, IngestError> {
    let resolve = |v: &str| {
        let p = Path::new(v);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            base_dir.join(p)
        }
    };
    let mut scores = BTreeMap::new();
    let mut country_map = None;
    let mut distances = DistanceSource::Bundled;
    let mut cutlines = BTreeMap::new();
    let mut exclude_flagged = false;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split_once(" #").map_or(raw, |(l, _)| l).trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| IngestError::line(line_no, "expected key = value"))?;
        if value.is_empty() {
            return Err(IngestError::line(line_no, format!("empty value for {key}")));
        }
        if let Some(year) = key.strip_prefix("scores.") {
            let year: i32 = year.parse().map_err(|_| IngestError::line(line_no, format!("invalid year in {key}")))?;
            if scores.insert(year, resolve(value)).is_some() {
                return Err(IngestError::line(line_no, format!("duplicate {key}")));
            }
        } else if let Some(method) = key.strip_prefix("cutline.") {
            let method: Method = method.parse().map_err(|e| IngestError::line(line_no, e))?;
            let cut: f64 = value
                .parse()
                .ok()
                .filter(|c: &f64| c.is_finite())
                .ok_or_else(|| IngestError::line(line_no, format!("invalid cutline {value:?}")))?;
            cutlines.insert(method, cut);
        } else {
            match key {
                "country_map" => country_map = Some(resolve(value)),
                "distances" if value.eq_ignore_ascii_case("bundled") => distances = DistanceSource::Bundled,
                "distances" => distances = DistanceSource::File(resolve(value)),
                "exclude_flagged" => {
                    exclude_flagged = value
                        .parse()
                        .map_err(|_| IngestError::line(line_no, format!("expected true or false, got {value:?}")))?
                }
                _ => return Err(IngestError::line(line_no, format!("unknown key {key:?}"))),
            }
        }
    }
    if scores.is_empty() {
        return Err(IngestError::Invalid("manifest names no score files".into()));
    }
    let country_map = country_map.ok_or_else(|| IngestError::Invalid("manifest has no country_map".into()))?;
    Ok(Manifest { scores, country_map, distances, cutlines, exclude_flagged })
}
