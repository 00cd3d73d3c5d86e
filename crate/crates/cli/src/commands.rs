//! Subcommand implementations. Each returns an artifact; nothing here
//! writes to standard output.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::{anyhow, bail, ensure, Context, Result};
use langdist::asjp::{ldnd_with, AsjpOptions, SynonymPolicy};
use langdist::bundled::{bundled_classifications, bundled_table1, DEMO_MANIFEST, FILES};
use langdist::embed::semantic_similarity;
use langdist::io::{
    assemble_frame, parse_classifications, parse_country_language_csv, parse_distance_table, parse_embedding_file,
    parse_lexicon_file, parse_manifest, parse_scores_csv, parse_wordlist_file, CountryLanguageMap, DistanceSource,
    Exclusion, FrameOptions, Manifest,
};
use langdist::model::{cefr_level, DistanceTable, LanguageId, Method, ScoreTable, Skill};
use langdist::stats::{descriptives, manova, pearson, significance_stars, split_groups, Group};
use langdist::tree::{shared_branches, tree_distance, ProximityScale};
use log::{info, warn};

use crate::args::{AnalyzeArgs, AsjpArgs, CefrArgs, EmbedArgs, Synonyms, TreeArgs};
use crate::report::{
    Artifact, CefrReport, CorrelationReport, CorrelationRow, DescribeReport, DescribeRow, DistanceReport, DistanceRow,
    ExcludedRow, ManovaBlock, ManovaReport, ManovaVariable,
};

fn language(code: &str) -> Result<LanguageId> {
    LanguageId::from_code(code).with_context(|| format!("language {code:?}"))
}

pub fn dist_embed(args: &EmbedArgs) -> Result<Artifact> {
    if let Some(min) = args.min_coverage {
        ensure!((0.0..=1.0).contains(&min), "--min-coverage must lie in [0, 1], got {min}");
    }
    let target_language = language(&args.target_language)?;
    let target = parse_embedding_file::<f64>(&args.target, target_language.clone())
        .with_context(|| format!("{}", args.target.display()))?;
    let mut rows: Vec<DistanceRow> = Vec::new();
    for source in args.sources.chunks(3) {
        let [code, emb_path, lex_path] = source else { unreachable!("clap takes three values per --source") };
        let lang = language(code)?;
        ensure!(!rows.iter().any(|r| r.language == lang.code()), "language {lang} given twice");
        let emb_path = Path::new(emb_path);
        let lex_path = Path::new(lex_path);
        let table = parse_embedding_file::<f64>(emb_path, lang.clone()).with_context(|| format!("{}", emb_path.display()))?;
        let lexicon = parse_lexicon_file(lex_path, lang.clone(), target_language.clone())
            .with_context(|| format!("{}", lex_path.display()))?;
        let res = semantic_similarity(&lexicon, &table, &target).with_context(|| format!("{lang}"))?;
        if !res.skipped.is_empty() {
            warn!("{lang}: {} of {} lexicon pairs out of vocabulary", res.skipped.len(), res.pairs_total);
        }
        if let Some(min) = args.min_coverage {
            ensure!(
                res.coverage >= min,
                "{lang}: lexicon coverage {} below --min-coverage {min}",
                res.coverage
            );
        }
        let mut row = DistanceRow::new(lang.code().to_string(), Method::Embedding.name(), res.sld);
        row.coverage = Some(res.coverage);
        row.pairs_covered = Some(res.pairs_covered);
        row.pairs_total = Some(res.pairs_total);
        rows.push(row);
    }
    Ok(Artifact::Distances(DistanceReport { method: Method::Embedding.name(), reference: target_language.code().into(), rows }))
}

pub fn dist_asjp(args: &AsjpArgs) -> Result<Artifact> {
    let opts = AsjpOptions {
        synonyms: match args.synonyms {
            Synonyms::Min => SynonymPolicy::Minimum,
            Synonyms::First => SynonymPolicy::FirstForm,
        },
    };
    let ref_lang = language(&args.reference_language)?;
    let reference = parse_wordlist_file(&args.reference, ref_lang.clone()).with_context(|| format!("{}", args.reference.display()))?;
    let mut rows: Vec<DistanceRow> = Vec::new();
    for item in &args.wordlists {
        let (code, path) = item.split_once('=').ok_or_else(|| anyhow!("expected LANG=PATH, got {item:?}"))?;
        let lang = language(code)?;
        ensure!(!rows.iter().any(|r| r.language == lang.code()), "language {lang} given twice");
        let path = Path::new(path);
        let list = parse_wordlist_file(path, lang.clone()).with_context(|| format!("{}", path.display()))?;
        let absent = list.absent_concepts();
        if !absent.is_empty() {
            info!("{lang}: {} of 40 concepts absent", absent.len());
        }
        let res = ldnd_with::<f64>(&list, &reference, &opts).with_context(|| format!("{lang} vs {ref_lang}"))?;
        let mut row = DistanceRow::new(lang.code().to_string(), Method::Asjp.name(), res.ldnd);
        row.ldn = Some(res.ldn);
        row.global_divergence = Some(res.global_divergence);
        row.concepts_used = Some(res.concepts_used);
        rows.push(row);
    }
    Ok(Artifact::Distances(DistanceReport { method: Method::Asjp.name(), reference: ref_lang.code().into(), rows }))
}

pub fn dist_tree(args: &TreeArgs) -> Result<Artifact> {
    let classes = match &args.classifications {
        Some(p) => parse_classifications(p).with_context(|| format!("{}", p.display()))?,
        None => bundled_classifications(),
    };
    let ref_lang = language(&args.reference)?;
    let reference = classes
        .iter()
        .find(|c| c.language() == &ref_lang)
        .ok_or_else(|| anyhow!("reference language {ref_lang} not in the classification file"))?;
    let scale = ProximityScale::<f64>::standard();
    let rows = classes
        .iter()
        .filter(|c| c.language() != &ref_lang)
        .map(|c| {
            let mut row = DistanceRow::new(c.language().display_name().to_string(), Method::Tree.name(), tree_distance(reference, c, &scale));
            row.shared_branches = Some(shared_branches(reference, c));
            row
        })
        .collect();
    Ok(Artifact::Distances(DistanceReport { method: Method::Tree.name(), reference: ref_lang.code().into(), rows }))
}

/// Inputs resolved from a manifest and the command-line overrides.
struct Analysis {
    manifest: Manifest,
    scores: BTreeMap<i32, ScoreTable>,
    map: CountryLanguageMap,
    distances: DistanceTable,
    methods: Vec<Method>,
    cutline: Option<f64>,
    frame_opts: FrameOptions,
}

impl Analysis {
    fn load(args: &AnalyzeArgs) -> Result<Self> {
        let manifest = parse_manifest(&args.manifest).with_context(|| format!("{}", args.manifest.display()))?;
        manifest.check_paths().context("manifest")?;
        let distances = match &manifest.distances {
            DistanceSource::Bundled => bundled_table1(),
            DistanceSource::File(p) => parse_distance_table(p).with_context(|| format!("{}", p.display()))?,
        };
        let map = parse_country_language_csv(&manifest.country_map).with_context(|| format!("{}", manifest.country_map.display()))?;
        for (country, lang) in map.unresolved(&distances) {
            warn!("{country}: language {lang} has no distance entry");
        }
        if let Some(y) = args.year {
            ensure!(manifest.scores.contains_key(&y), "manifest has no scores for {y}");
        }
        let mut scores = BTreeMap::new();
        for (&year, path) in manifest.scores.iter().filter(|(y, _)| args.year.is_none_or(|want| want == **y)) {
            let table = parse_scores_csv(path).with_context(|| format!("{}", path.display()))?;
            ensure!(table.year == year, "{}: holds {} scores, manifest key says {year}", path.display(), table.year);
            scores.insert(year, table);
        }
        ensure!(!scores.is_empty(), "manifest names no score files");

        let mut methods = if args.method.is_empty() { Method::ALL.to_vec() } else { args.method.clone() };
        methods.sort();
        methods.dedup();
        if let Some(c) = args.cutline {
            ensure!(methods.len() == 1, "--cutline needs exactly one --method");
            ensure!(c.is_finite(), "--cutline must be finite");
        }
        let frame_opts = FrameOptions { exclude_flagged: args.exclude_flagged || manifest.exclude_flagged };
        Ok(Self { manifest, scores, map, distances, methods, cutline: args.cutline, frame_opts })
    }

    fn cutline(&self, method: Method) -> f64 {
        self.cutline.unwrap_or_else(|| self.manifest.cutline(method))
    }

    /// Runs `f` on every (year, method) frame, collecting exclusions.
    fn each_frame<R>(
        &self,
        excluded: &mut Vec<ExcludedRow>,
        mut f: impl FnMut(i32, Method, &langdist::io::AnalysisFrame) -> Result<R>,
    ) -> Result<Vec<R>> {
        let mut out = Vec::new();
        for (&year, table) in &self.scores {
            for &method in &self.methods {
                let (frame, dropped) = assemble_frame(table, &self.map, &self.distances, method, self.frame_opts)
                    .with_context(|| format!("{year} {method}"))?;
                note_exclusions(excluded, year, Some(method), &dropped);
                out.push(f(year, method, &frame).with_context(|| format!("{year} {method}"))?);
            }
        }
        Ok(out)
    }
}

fn note_exclusions(into: &mut Vec<ExcludedRow>, year: i32, method: Option<Method>, dropped: &[Exclusion]) {
    for e in dropped {
        let m = method.map_or(String::new(), |m| format!(" {m}"));
        info!("{year}{m}: excluding {} ({})", e.country, e.reason);
        into.push(ExcludedRow { year, method: method.map(Method::name), country: e.country.clone(), reason: e.reason.to_string() });
    }
}

pub fn analyze_corr(args: &AnalyzeArgs) -> Result<Artifact> {
    let a = Analysis::load(args)?;
    let mut excluded = Vec::new();
    let blocks = a.each_frame(&mut excluded, |year, method, frame| {
        let x = frame.distances();
        Skill::ALL
            .into_iter()
            .map(|skill| {
                let r = pearson(&x, &frame.column(skill)).with_context(|| format!("{skill}: distance vs score correlation"))?;
                Ok(CorrelationRow {
                    year,
                    method: method.name(),
                    skill: skill.name(),
                    n: r.n,
                    r: r.r,
                    t: r.t_stat,
                    p: r.p_two_tailed,
                    stars: significance_stars(r.p_two_tailed),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(Artifact::Correlations(CorrelationReport { rows: blocks.into_iter().flatten().collect(), excluded }))
}

pub fn analyze_manova(args: &AnalyzeArgs) -> Result<Artifact> {
    let a = Analysis::load(args)?;
    let mut excluded = Vec::new();
    let blocks = a.each_frame(&mut excluded, |year, method, frame| {
        let cutline = a.cutline(method);
        let pairs: Vec<(String, f64)> = frame.rows.iter().map(|r| (r.country.clone(), r.distance)).collect();
        let groups = split_groups(method, &pairs, cutline)?;
        let (n_a, n_b) = groups.counts;
        ensure!(
            n_a >= 2 && n_b >= 2,
            "cutline {cutline} leaves {n_a} countries in group A and {n_b} in group B; each group needs at least 2"
        );
        let res = manova(&groups, &frame.score_table()).with_context(|| format!("cutline {cutline}: group comparison"))?;
        if res.overall.is_none() {
            warn!("{year} {method}: Wilks' lambda unavailable (singular pooled covariance or too few countries)");
        }
        Ok(ManovaBlock {
            year,
            method: method.name(),
            cutline,
            n_a: res.n_a,
            n_b: res.n_b,
            group_a: groups.members(Group::A).map(String::from).collect(),
            group_b: groups.members(Group::B).map(String::from).collect(),
            variables: res
                .variables
                .iter()
                .map(|v| ManovaVariable { skill: v.skill.name(), mean_a: v.mean_a, mean_b: v.mean_b, f: v.f, p: v.p })
                .collect(),
            wilks: res.overall,
        })
    })?;
    Ok(Artifact::Manova(ManovaReport { blocks, excluded }))
}

/// Describes every score row whose country has a language mapping.
pub fn analyze_describe(args: &AnalyzeArgs) -> Result<Artifact> {
    let a = Analysis::load(args)?;
    let mut rows = Vec::new();
    let mut excluded = Vec::new();
    for (&year, table) in &a.scores {
        let (kept, dropped): (Vec<_>, Vec<_>) = table.rows().iter().partition(|r| a.map.get(&r.country).is_some());
        let dropped: Vec<Exclusion> = dropped
            .into_iter()
            .map(|r| Exclusion { country: r.country.clone(), reason: langdist::io::ExclusionReason::NoLanguageMapping })
            .collect();
        note_exclusions(&mut excluded, year, None, &dropped);
        ensure!(!kept.is_empty(), "{year}: no score rows with a language mapping");
        for skill in Skill::ALL {
            let values: Vec<f64> = kept.iter().map(|r| r.get(skill)).collect();
            let d = descriptives(&values).with_context(|| format!("{year} {skill}"))?;
            rows.push(DescribeRow { year, skill: skill.name(), n: d.n, mean: d.mean, sd: d.sd });
        }
    }
    Ok(Artifact::Describe(DescribeReport { rows, excluded }))
}

pub fn cefr(args: &CefrArgs) -> Result<Artifact> {
    let level = cefr_level(args.skill, args.score)?;
    Ok(Artifact::Cefr(CefrReport { skill: args.skill.name(), score: args.score, level: level.label() }))
}

/// Writes the bundled files and `manifest.txt` into `dir`, returning the paths written.
pub fn export_bundled(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir).with_context(|| format!("{}", dir.display()))?;
    let files: Vec<(std::path::PathBuf, &str)> =
        FILES.iter().copied().chain([("manifest.txt", DEMO_MANIFEST)]).map(|(name, text)| (dir.join(name), text)).collect();
    // refuse before writing anything
    if let Some((path, _)) = files.iter().find(|(p, _)| p.exists()) {
        bail!("{} already exists", path.display());
    }
    for (path, text) in &files {
        std::fs::write(path, text).with_context(|| format!("{}", path.display()))?;
    }
    Ok(files.into_iter().map(|(p, _)| p).collect())
}
