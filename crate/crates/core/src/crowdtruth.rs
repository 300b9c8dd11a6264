//! Crowd-annotation aggregation with CrowdTruth-style cosine metrics.
//!
//! Each article gets a count vector per question; per-question clarity is
//! the cosine between that (yes, no) vector and its majority axis, and
//! worker agreement is the cosine between a worker's one-hot answers and
//! the pooled answers of the other workers on the same article.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::aspects::AspectScores;
use crate::corpus::{AnnotationSet, Question};
use crate::exec::Execution;

#[derive(Debug, Error, PartialEq)]
pub enum CrowdError {
    #[error("no annotations")]
    Empty,
    #[error("article `{0}` has no workers")]
    NoWorkers(String),
}

/// Answer counts for one article.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArticleVector {
    pub article_id: String,
    pub yes: [u32; 6],
    pub no: [u32; 6],
}

impl ArticleVector {
    pub fn empty(article_id: impl Into<String>) -> Self {
        ArticleVector { article_id: article_id.into(), yes: [0; 6], no: [0; 6] }
    }

    pub fn add(&mut self, answers: &[bool; 6]) {
        for (i, &a) in answers.iter().enumerate() {
            if a {
                self.yes[i] += 1;
            } else {
                self.no[i] += 1;
            }
        }
    }

    pub fn yes_count(&self, q: Question) -> u32 {
        self.yes[q.index()]
    }

    pub fn no_count(&self, q: Question) -> u32 {
        self.no[q.index()]
    }

    pub fn workers(&self) -> u32 {
        self.yes[0] + self.no[0]
    }

    pub fn yes_fraction(&self, q: Question) -> f64 {
        f64::from(self.yes_count(q)) / f64::from(self.workers())
    }
}

/// One vector per distinct article, sorted by article id.
pub fn build_article_vectors(annotations: &[AnnotationSet]) -> Result<Vec<ArticleVector>, CrowdError> {
    if annotations.is_empty() {
        return Err(CrowdError::Empty);
    }
    let mut by_article: BTreeMap<&str, ArticleVector> = BTreeMap::new();
    for a in annotations {
        by_article
            .entry(a.article_id.as_str())
            .or_insert_with(|| ArticleVector::empty(a.article_id.as_str()))
            .add(&a.answers);
    }
    Ok(by_article.into_values().collect())
}

/// `max(yes, no) / sqrt(yes² + no²)`: 1 at unanimity, 1/√2 at a tie.
pub fn question_clarity(v: &ArticleVector, q: Question) -> Result<f64, CrowdError> {
    clarity(v.yes_count(q), v.no_count(q)).ok_or_else(|| CrowdError::NoWorkers(v.article_id.clone()))
}

fn clarity(yes: u32, no: u32) -> Option<f64> {
    if yes + no == 0 {
        return None;
    }
    let (y, n) = (f64::from(yes), f64::from(no));
    Some(y.max(n) / y.hypot(n))
}

#[derive(Debug, Clone, PartialEq)]
pub struct WorkerQuality {
    pub worker_id: String,
    pub mean_agreement: f64,
    /// Articles that contributed to the mean.
    pub n_articles: usize,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct WorkerQualityReport {
    /// Sorted by worker id.
    pub workers: Vec<WorkerQuality>,
    pub warnings: Vec<String>,
}

/// Per-worker mean cosine agreement with the leave-one-out pool of peers.
///
/// Articles annotated by a single worker are skipped, and workers left
/// with no eligible article are dropped; both produce warnings.
pub fn worker_quality(annotations: &[AnnotationSet], exec: Execution) -> WorkerQualityReport {
    let mut by_article: BTreeMap<&str, Vec<&AnnotationSet>> = BTreeMap::new();
    for a in annotations {
        by_article.entry(a.article_id.as_str()).or_default().push(a);
    }
    let groups: Vec<(&str, Vec<&AnnotationSet>)> = by_article.into_iter().collect();

    let per_article = exec.map(&groups, |(_, sets)| {
        if sets.len() < 2 {
            return Vec::new();
        }
        let mut total = ArticleVector::empty("");
        for s in sets {
            total.add(&s.answers);
        }
        sets.iter().map(|s| (s.worker_id.as_str(), loo_cosine(&total, &s.answers))).collect()
    });

    let mut report = WorkerQualityReport::default();
    let mut acc: BTreeMap<&str, (f64, usize)> = BTreeMap::new();
    for ((article, sets), scores) in groups.iter().zip(per_article) {
        if sets.len() < 2 {
            report
                .warnings
                .push(format!("article `{article}` has a single worker; excluded from agreement"));
            acc.entry(sets[0].worker_id.as_str()).or_insert((0.0, 0));
            continue;
        }
        for (worker, cos) in scores {
            let e = acc.entry(worker).or_insert((0.0, 0));
            e.0 += cos;
            e.1 += 1;
        }
    }
    for (worker, (sum, count)) in acc {
        if count == 0 {
            report.warnings.push(format!("worker `{worker}` has no article shared with other workers; excluded"));
            continue;
        }
        report.workers.push(WorkerQuality {
            worker_id: worker.to_string(),
            mean_agreement: (sum / count as f64).clamp(0.0, 1.0),
            n_articles: count,
        });
    }
    for w in &report.warnings {
        log::warn!("{w}");
    }
    report
}

/// Cosine between a worker's 12-dimensional one-hot answer vector and the
/// article totals with that worker removed.
fn loo_cosine(total: &ArticleVector, answers: &[bool; 6]) -> f64 {
    let mut dot = 0.0;
    let mut others_sq = 0.0;
    for (i, &a) in answers.iter().enumerate() {
        let (mut y, mut n) = (f64::from(total.yes[i]), f64::from(total.no[i]));
        if a {
            y -= 1.0;
            dot += y;
        } else {
            n -= 1.0;
            dot += n;
        }
        others_sq += y * y + n * n;
    }
    if others_sq == 0.0 {
        return 0.0;
    }
    dot / (6f64.sqrt() * others_sq.sqrt())
}

/// Per-article mean yes-fraction for every question, controversy included.
pub fn aspect_scores_from_annotations(annotations: &[AnnotationSet]) -> BTreeMap<String, AspectScores> {
    let Ok(vectors) = build_article_vectors(annotations) else {
        return BTreeMap::new();
    };
    vectors.iter().map(|v| (v.article_id.clone(), scores_of(v))).collect()
}

pub(crate) fn scores_of(v: &ArticleVector) -> AspectScores {
    AspectScores {
        actors: v.yes_fraction(Question::Actors),
        polarity: v.yes_fraction(Question::Polarity),
        openness: v.yes_fraction(Question::Openness),
        time: v.yes_fraction(Question::Time),
        emotion: v.yes_fraction(Question::Emotion),
        controversy: Some(v.yes_fraction(Question::Controversy)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuestionStats {
    pub question: Question,
    /// Yes answers over all answers, pooled across articles.
    pub ratio_of_yes: f64,
    /// Fraction of articles with strictly more yes than no (ties are no).
    pub majority_vote_yes: f64,
    pub mean_clarity: f64,
}

/// Descriptive statistics per question, in `Question::ALL` order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClarityReport {
    pub rows: Vec<QuestionStats>,
    pub n_articles: usize,
    pub n_workers: usize,
    pub n_annotations: usize,
}

impl ClarityReport {
    pub fn row(&self, q: Question) -> &QuestionStats {
        &self.rows[q.index()]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("question,ratio_of_yes,majority_vote_yes,mean_clarity\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{:.4},{:.4},{:.4}\n",
                r.question, r.ratio_of_yes, r.majority_vote_yes, r.mean_clarity
            ));
        }
        out
    }
}

pub fn descriptive_report(annotations: &[AnnotationSet], exec: Execution) -> Result<ClarityReport, CrowdError> {
    let vectors = build_article_vectors(annotations)?;
    Ok(report_from_vectors(&vectors, annotations, exec))
}

pub(crate) fn report_from_vectors(
    vectors: &[ArticleVector],
    annotations: &[AnnotationSet],
    exec: Execution,
) -> ClarityReport {
    let n_articles = vectors.len() as f64;
    let per_article: Vec<[f64; 6]> = exec.map(vectors, |v| {
        let mut c = [0.0; 6];
        for q in Question::ALL {
            c[q.index()] = clarity(v.yes_count(q), v.no_count(q)).expect("every article has a worker");
        }
        c
    });
    let rows = Question::ALL
        .iter()
        .map(|&q| {
            let yes: u64 = vectors.iter().map(|v| u64::from(v.yes_count(q))).sum();
            let answers: u64 = vectors.iter().map(|v| u64::from(v.workers())).sum();
            let majority = vectors.iter().filter(|v| v.yes_count(q) > v.no_count(q)).count();
            let clarity_sum: f64 = per_article.iter().map(|c| c[q.index()]).sum();
            QuestionStats {
                question: q,
                ratio_of_yes: yes as f64 / answers as f64,
                majority_vote_yes: majority as f64 / n_articles,
                mean_clarity: clarity_sum / n_articles,
            }
        })
        .collect();
    let mut workers: Vec<&str> = annotations.iter().map(|a| a.worker_id.as_str()).collect();
    workers.sort_unstable();
    workers.dedup();
    ClarityReport {
        rows,
        n_articles: vectors.len(),
        n_workers: workers.len(),
        n_annotations: annotations.len(),
    }
}

/// `article_id,controversy,actors,polarity,openness,time,emotion` with four
/// decimals.
pub fn article_scores_csv(scores: &BTreeMap<String, AspectScores>) -> String {
    let mut out = String::from("article_id,controversy,actors,polarity,openness,time,emotion\n");
    for (id, s) in scores {
        out.push_str(&format!(
            "{id},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4}\n",
            s.controversy.unwrap_or(f64::NAN),
            s.actors,
            s.polarity,
            s.openness,
            s.time,
            s.emotion
        ));
    }
    out
}

pub fn worker_quality_csv(report: &WorkerQualityReport) -> String {
    let mut out = String::from("worker_id,mean_agreement,n_articles\n");
    for w in &report.workers {
        out.push_str(&format!("{},{:.4},{}\n", w.worker_id, w.mean_agreement, w.n_articles));
    }
    out
}
