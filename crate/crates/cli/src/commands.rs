use std::path::Path;

use capote::corpus::{read_annotations, read_corpus, serialize_debate, validate_corpus, AnnotationSet, DateRange};
use capote::crowdtruth::{descriptive_report, worker_quality, worker_quality_csv};
use capote::model::{fit_from_annotations, score_corpus, scored_csv, PAPER_MODEL_NAME};
use capote::stats::format_p;
use capote::{Aspect, CapoteModel, Execution, Gazetteer, Lexicon, Resources, ScorerConfig};
use serde_json::json;

use crate::error::{self, CliError, ExitKind};
use crate::manifest::{sidecar, with_suffix, RunManifest};

fn read_input(m: &mut RunManifest, path: &Path) -> Result<Vec<u8>, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::io(path, e))?;
    m.input(path, &bytes);
    Ok(bytes)
}

fn create_dir(dir: &Path) -> Result<(), CliError> {
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Validates a corpus, writes the well-formed debates in canonical form and
/// a JSON report of every rejected line. Fails after writing if any line
/// was rejected.
pub fn ingest(m: &mut RunManifest, corpus: &Path, out: &Path) -> Result<String, CliError> {
    let bytes = read_input(m, corpus)?;
    let v = validate_corpus(bytes.as_slice());
    let mut body = String::new();
    for d in &v.debates {
        body.push_str(&serialize_debate(d));
        body.push('\n');
    }
    m.write_output(out, body.as_bytes())?;

    let report = json!({
        "input": corpus.display().to_string(),
        "lines": v.lines,
        "debates": v.debates.len(),
        "errors": v.errors.iter().map(|e| json!({"line": e.line, "message": e.message})).collect::<Vec<_>>(),
    });
    let mut report_text = serde_json::to_string_pretty(&report).expect("report serializes");
    report_text.push('\n');
    m.write_output(&with_suffix(out, ".report.json"), report_text.as_bytes())?;
    m.finish(&sidecar(out))?;

    let summary = format!("{} debates, {} errors", v.debates.len(), v.errors.len());
    if v.is_ok() {
        return Ok(summary);
    }
    let mut msg = summary;
    for e in &v.errors {
        msg.push_str(&format!("\nline {}: {}", e.line, e.message));
    }
    Err(CliError::new(ExitKind::Validation, msg))
}

pub struct ScoreArgs<'a> {
    pub corpus: &'a Path,
    pub lexicon: &'a Path,
    pub gazetteer: &'a Path,
    pub config: Option<&'a Path>,
    pub overrides: Vec<(&'static str, String)>,
    pub model: &'a str,
    pub out: &'a Path,
}

pub fn score(m: &mut RunManifest, args: ScoreArgs<'_>, exec: Execution) -> Result<String, CliError> {
    let lex_bytes = read_input(m, args.lexicon)?;
    let lexicon = Lexicon::parse_tsv(&utf8(args.lexicon, lex_bytes)?).map_err(error::from_aspect)?;
    let gaz_bytes = read_input(m, args.gazetteer)?;
    let gazetteer = Gazetteer::parse(&utf8(args.gazetteer, gaz_bytes)?).map_err(error::from_aspect)?;
    m.resources.insert("lexicon".into(), lexicon.checksum().to_string());
    m.resources.insert("gazetteer".into(), gazetteer.checksum().to_string());

    let mut cfg = match args.config {
        Some(path) => {
            let bytes = read_input(m, path)?;
            ScorerConfig::parse(&utf8(path, bytes)?).map_err(error::from_aspect)?
        }
        None => ScorerConfig::default(),
    };
    for (key, value) in &args.overrides {
        cfg.set(key, value).map_err(|e| CliError::config(format!("--{}: {e}", key.replace('_', "-"))))?;
    }
    cfg.validate().map_err(error::from_aspect)?;
    m.config = cfg.snapshot().into_iter().map(|(k, v)| (k.to_string(), v)).collect();

    let model = load_model(m, args.model)?;
    m.resources.insert("model".into(), model.provenance.label());

    let bytes = read_input(m, args.corpus)?;
    let debates = read_corpus(bytes.as_slice()).map_err(|e| error::from_corpus(args.corpus, e))?;
    let res = Resources { lexicon, gazetteer };
    let scored = score_corpus(&debates, &res, &model, &cfg, exec).map_err(error::from_model)?;
    m.write_output(args.out, scored_csv(&scored).as_bytes())?;
    m.finish(&sidecar(args.out))?;
    Ok(format!("{} debates scored", scored.len()))
}

/// The built-in model by name, otherwise a model file path.
fn load_model(m: &mut RunManifest, spec: &str) -> Result<CapoteModel, CliError> {
    if spec == PAPER_MODEL_NAME {
        return Ok(CapoteModel::paper());
    }
    let path = Path::new(spec);
    if !path.is_file() {
        return Err(CliError::config(format!("unknown model `{spec}`: not `{PAPER_MODEL_NAME}` and not a model file")));
    }
    let bytes = read_input(m, path)?;
    CapoteModel::parse(&utf8(path, bytes)?).map_err(|e| CliError::config(format!("{}: {e}", path.display())))
}

fn utf8(path: &Path, bytes: Vec<u8>) -> Result<String, CliError> {
    String::from_utf8(bytes).map_err(|_| CliError::config(format!("{}: not valid UTF-8", path.display())))
}

fn read_annotation_file(m: &mut RunManifest, path: &Path) -> Result<Vec<AnnotationSet>, CliError> {
    let bytes = read_input(m, path)?;
    read_annotations(bytes.as_slice()).map_err(|e| error::from_corpus(path, e))
}

pub fn fit(m: &mut RunManifest, annotations: &Path, out_dir: &Path, exec: Execution) -> Result<String, CliError> {
    let sets = read_annotation_file(m, annotations)?;
    let report = fit_from_annotations(&sets, exec).map_err(error::from_model)?;
    let fitted = CapoteModel::from_regression(&report.fit_all5).map_err(error::from_model)?;

    create_dir(out_dir)?;
    m.write_output(&out_dir.join("descriptive.csv"), report.descriptive.to_csv().as_bytes())?;
    m.write_output(&out_dir.join("correlations.csv"), report.correlations.to_csv().as_bytes())?;
    m.write_output(&out_dir.join("fit_all5.csv"), report.fit_all5.to_csv().as_bytes())?;
    for (aspect, fit) in &report.fits_4of5 {
        m.write_output(&out_dir.join(format!("fit_omit_{aspect}.csv")), fit.to_csv().as_bytes())?;
    }
    m.write_output(
        &out_dir.join("article_scores.csv"),
        capote::crowdtruth::article_scores_csv(&report.article_scores).as_bytes(),
    )?;
    m.write_output(&out_dir.join("model.txt"), fitted.to_text().as_bytes())?;
    m.write_output(&out_dir.join("report.txt"), report.to_text().as_bytes())?;
    m.finish(&out_dir.join("manifest.json"))?;

    let fit = &report.fit_all5;
    let mut summary = format!(
        "{} articles, R² = {:.4}, adjusted R² = {:.4}",
        fit.n_observations, fit.r_squared, fit.adj_r_squared
    );
    for a in Aspect::ALL {
        let without = &report.fits_4of5[&a];
        summary.push_str(&format!("\nwithout {a}: adjusted R² = {:.4}", without.adj_r_squared));
    }
    for (term, p) in fit.term_names().zip(&fit.p_values) {
        summary.push_str(&format!("\np({term}) = {}", format_p(*p)));
    }
    Ok(summary)
}

/// Writes only the human-readable analysis report.
pub fn report(m: &mut RunManifest, annotations: &Path, out: &Path, exec: Execution) -> Result<String, CliError> {
    let sets = read_annotation_file(m, annotations)?;
    let report = fit_from_annotations(&sets, exec).map_err(error::from_model)?;
    let text = report.to_text();
    m.write_output(out, text.as_bytes())?;
    m.finish(&sidecar(out))?;
    Ok(format!("report written to {}", out.display()))
}

pub fn crowdtruth(m: &mut RunManifest, annotations: &Path, out_dir: &Path, exec: Execution) -> Result<String, CliError> {
    let sets = read_annotation_file(m, annotations)?;
    let clarity = descriptive_report(&sets, exec).map_err(error::from_crowd)?;
    let quality = worker_quality(&sets, exec);
    create_dir(out_dir)?;
    m.write_output(&out_dir.join("clarity.csv"), clarity.to_csv().as_bytes())?;
    m.write_output(&out_dir.join("worker_quality.csv"), worker_quality_csv(&quality).as_bytes())?;
    m.finish(&out_dir.join("manifest.json"))?;
    Ok(format!(
        "{} annotations, {} articles, {} workers",
        clarity.n_annotations, clarity.n_articles, clarity.n_workers
    ))
}

pub fn fetch(m: &mut RunManifest, base_url: &str, query: &str, range: DateRange, max: usize, out: &Path) -> Result<String, CliError> {
    let debates = capote::corpus::fetch_articles(base_url, query, range, max).map_err(|e| error::from_corpus(Path::new(base_url), e))?;
    let mut body = String::new();
    for d in &debates {
        body.push_str(&serialize_debate(d));
        body.push('\n');
    }
    m.config.insert("base_url".into(), base_url.to_string());
    m.config.insert("query".into(), query.to_string());
    m.config.insert("from".into(), range.from.to_string());
    m.config.insert("to".into(), range.to.to_string());
    m.config.insert("max".into(), max.to_string());
    m.write_output(out, body.as_bytes())?;
    m.finish(&sidecar(out))?;
    Ok(format!("{} articles fetched", debates.len()))
}
