//! The five-aspect linear controversy model and the full annotation
//! analysis built around it (descriptive statistics, correlations, the
//! all-aspect regression and every leave-one-aspect-out regression).

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub use crate::aspects::Aspect;
use crate::aspects::{score_all, sha256_hex, AspectScores, Resources, ScorerConfig};
use crate::corpus::{AnnotationSet, Debate, Question};
use crate::crowdtruth::{self, ClarityReport, CrowdError};
use crate::exec::Execution;
use crate::kv::{self, parse_value, KvError};
use crate::stats::{correlation_matrix, format_p, ols_fit, CorrelationMatrix, RegressionResult, StatsError};

pub const PAPER_MODEL_NAME: &str = "paper-table-3";

/// Smallest article count that leaves a residual degree of freedom for the
/// five-predictor fit.
pub const MIN_ARTICLES: usize = 7;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error(transparent)]
    Crowd(#[from] CrowdError),
    #[error("need at least {MIN_ARTICLES} articles for the regression degrees of freedom, got {0}")]
    TooFewArticles(usize),
    #[error("aspect `{0}` is missing from the scores")]
    MissingAspect(Aspect),
    #[error("model file: {0}")]
    Kv(#[from] KvError),
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("regression predictors must be exactly the five aspects, got [{0}]")]
    NotAnAspectFit(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Where a model's parameters came from.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    Published,
    Fitted { n_observations: usize, r_squared: f64, adj_r_squared: f64 },
    File { sha256: String },
}

impl Provenance {
    pub fn label(&self) -> String {
        match self {
            Provenance::Published => PAPER_MODEL_NAME.to_string(),
            Provenance::Fitted { n_observations, .. } => format!("fitted(n={n_observations})"),
            Provenance::File { sha256 } => format!("file(sha256={sha256})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CapoteModel {
    pub intercept: f64,
    /// Indexed in `Aspect::ALL` order.
    pub weights: [f64; 5],
    pub provenance: Provenance,
}

/// Raw linear prediction and its clamp to [0, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub raw: f64,
    pub clamped: f64,
}

impl CapoteModel {
    /// The published all-aspect fit on crowd scores.
    pub fn paper() -> Self {
        CapoteModel {
            intercept: -0.15386,
            weights: [0.00787, 0.30629, 0.10345, 0.21832, 0.47036],
            provenance: Provenance::Published,
        }
    }

    /// Built-in models by name.
    pub fn named(name: &str) -> Result<Self, ModelError> {
        match name {
            PAPER_MODEL_NAME => Ok(Self::paper()),
            other => Err(ModelError::UnknownModel(other.to_string())),
        }
    }

    pub fn weight(&self, a: Aspect) -> f64 {
        self.weights[a as usize]
    }

    pub fn from_regression(fit: &RegressionResult) -> Result<Self, ModelError> {
        let expected: Vec<&str> = Aspect::ALL.iter().map(|a| a.name()).collect();
        if fit.predictor_names != expected {
            return Err(ModelError::NotAnAspectFit(fit.predictor_names.join(", ")));
        }
        let mut weights = [0.0; 5];
        weights.copy_from_slice(&fit.coefficients[1..]);
        Ok(CapoteModel {
            intercept: fit.intercept(),
            weights,
            provenance: Provenance::Fitted {
                n_observations: fit.n_observations,
                r_squared: fit.r_squared,
                adj_r_squared: fit.adj_r_squared,
            },
        })
    }

    /// `intercept + Σ weight · score`, and its clamp to [0, 1].
    pub fn predict(&self, s: &AspectScores) -> Result<Prediction, ModelError> {
        let mut raw = self.intercept;
        for a in Aspect::ALL {
            let v = s.get(a);
            if !v.is_finite() {
                return Err(ModelError::MissingAspect(a));
            }
            raw += self.weight(a) * v;
        }
        Ok(Prediction { raw, clamped: raw.clamp(0.0, 1.0) })
    }

    /// Parses `intercept = …` plus one `weight.<aspect> = …` per aspect.
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let mut map = kv::parse(text)?;
        let mut take = |key: &str| -> Result<f64, KvError> {
            let v = map.remove(key).ok_or_else(|| KvError::MissingKey(key.to_string()))?;
            let x: f64 = parse_value(key, &v)?;
            if x.is_finite() {
                Ok(x)
            } else {
                Err(KvError::InvalidValue { key: key.to_string(), value: v })
            }
        };
        let intercept = take("intercept")?;
        let mut weights = [0.0; 5];
        for (i, a) in Aspect::ALL.iter().enumerate() {
            weights[i] = take(&format!("weight.{a}"))?;
        }
        if let Some(extra) = map.keys().next() {
            return Err(KvError::UnknownKey(extra.clone()).into());
        }
        Ok(CapoteModel { intercept, weights, provenance: Provenance::File { sha256: sha256_hex(text.as_bytes()) } })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| ModelError::Io { path: path.into(), source: e })?;
        Self::parse(&text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("# provenance: {}\nintercept = {}\n", self.provenance.label(), self.intercept);
        for a in Aspect::ALL {
            let _ = writeln!(out, "weight.{a} = {}", self.weight(a));
        }
        out
    }
}

/// The all-aspect fit plus one fit per omitted aspect.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionSuite {
    pub fit_all5: RegressionResult,
    pub fits_4of5: BTreeMap<Aspect, RegressionResult>,
}

/// Regresses controversy on the aspect scores, first on all five aspects
/// and then on each four-aspect subset.
pub fn fit_regressions(scores: &[AspectScores], exec: Execution) -> Result<RegressionSuite, ModelError> {
    if scores.len() < MIN_ARTICLES {
        return Err(ModelError::TooFewArticles(scores.len()));
    }
    let y: Vec<f64> = scores
        .iter()
        .map(|s| s.controversy.unwrap_or(f64::NAN))
        .collect();
    let columns: Vec<Vec<f64>> = Aspect::ALL.iter().map(|&a| scores.iter().map(|s| s.get(a)).collect()).collect();
    let fit = |omit: Option<Aspect>| {
        let predictors: Vec<(&str, &[f64])> = Aspect::ALL
            .iter()
            .zip(&columns)
            .filter(|(a, _)| Some(**a) != omit)
            .map(|(a, c)| (a.name(), c.as_slice()))
            .collect();
        ols_fit(&y, &predictors)
    };
    let variants: Vec<Option<Aspect>> = std::iter::once(None).chain(Aspect::ALL.map(Some)).collect();
    let mut fits = exec.try_map(&variants, |&omit| fit(omit))?.into_iter();
    let fit_all5 = fits.next().expect("all-aspect fit");
    let fits_4of5 = Aspect::ALL.into_iter().zip(fits).collect();
    Ok(RegressionSuite { fit_all5, fits_4of5 })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub descriptive: ClarityReport,
    pub correlations: CorrelationMatrix,
    pub fit_all5: RegressionResult,
    pub fits_4of5: BTreeMap<Aspect, RegressionResult>,
    /// Per-article crowd scores the regressions ran on.
    pub article_scores: BTreeMap<String, AspectScores>,
}

/// Aggregates annotations to per-article scores and runs the descriptive
/// report, the 6×6 correlation matrix and the regression suite.
pub fn fit_from_annotations(annotations: &[AnnotationSet], exec: Execution) -> Result<AnalysisReport, ModelError> {
    let vectors = crowdtruth::build_article_vectors(annotations)?;
    if vectors.len() < MIN_ARTICLES {
        return Err(ModelError::TooFewArticles(vectors.len()));
    }
    let descriptive = crowdtruth::report_from_vectors(&vectors, annotations, exec);
    let article_scores: BTreeMap<String, AspectScores> =
        vectors.iter().map(|v| (v.article_id.clone(), crowdtruth::scores_of(v))).collect();
    let rows: Vec<AspectScores> = article_scores.values().copied().collect();

    let columns: Vec<Vec<f64>> = Question::ALL
        .iter()
        .map(|&q| rows.iter().map(|s| s.question(q).expect("crowd scores carry controversy")).collect())
        .collect();
    let named: Vec<(&str, &[f64])> = Question::ALL.iter().zip(&columns).map(|(q, c)| (q.name(), c.as_slice())).collect();
    let correlations = correlation_matrix(&named)?;

    let RegressionSuite { fit_all5, fits_4of5 } = fit_regressions(&rows, exec)?;
    Ok(AnalysisReport { descriptive, correlations, fit_all5, fits_4of5, article_scores })
}

impl AnalysisReport {
    /// The built-in published model applied to the pooled yes-ratios of the five aspects.
    pub fn mean_ratio_prediction(&self, model: &CapoteModel) -> Prediction {
        let s = AspectScores::from_aspects(Aspect::ALL.map(|a| self.descriptive.row(a.question()).ratio_of_yes));
        model.predict(&s).expect("ratios are finite")
    }

    pub fn to_text(&self) -> String {
        let d = &self.descriptive;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "Crowd annotations: {} annotations, {} articles, {} workers\n",
            d.n_annotations, d.n_articles, d.n_workers
        );
        let header: String = Question::ALL.iter().map(|q| format!("{:>12}", q.name())).collect();
        let _ = writeln!(out, "{:<22}{header}", "");
        let line = |label: &str, f: &dyn Fn(Question) -> String| {
            let cells: String = Question::ALL.iter().map(|&q| format!("{:>12}", f(q))).collect();
            format!("{label:<22}{cells}\n")
        };
        out += &line("ratio of yes", &|q| format!("{:.2}", d.row(q).ratio_of_yes));
        out += &line("majority vote yes", &|q| format!("{:.2}", d.row(q).majority_vote_yes));
        out += &line("relation clarity", &|q| format!("{:.3}", d.row(q).mean_clarity));
        out.push('\n');
        for (i, q) in Question::ALL.iter().enumerate() {
            out += &line(&format!("corr {}", q.name()), &|r| format!("{:.4}", self.correlations.values[i][r.index()]));
        }

        let _ = writeln!(out, "\nAll 5 aspects\n{}", self.fit_all5.to_text());
        let insignificant: Vec<&str> = self
            .fit_all5
            .term_names()
            .enumerate()
            .filter(|&(i, _)| !self.fit_all5.is_significant(i))
            .map(|(_, n)| n)
            .collect();
        let _ = writeln!(
            out,
            "non-significant terms (p >= 0.05): {}\n",
            if insignificant.is_empty() { "none".to_string() } else { insignificant.join(", ") }
        );
        for (aspect, fit) in &self.fits_4of5 {
            let _ = writeln!(out, "4 of 5 (without {aspect})\n{}", fit.to_text());
        }

        let published = CapoteModel::paper();
        let pred = self.mean_ratio_prediction(&published);
        let _ = writeln!(
            out,
            "{PAPER_MODEL_NAME} applied to the aspect yes-ratios: {:.4} (observed controversy ratio {:.4})",
            pred.raw,
            d.row(Question::Controversy).ratio_of_yes
        );
        out
    }

    /// Regression p-values for every term of the all-aspect fit, rendered.
    pub fn p_value_summary(&self) -> Vec<(String, String)> {
        self.fit_all5
            .term_names()
            .zip(&self.fit_all5.p_values)
            .map(|(n, &p)| (n.to_string(), format_p(p)))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScoredDebate {
    pub debate_id: String,
    pub scores: AspectScores,
    pub prediction: Prediction,
}

/// Scores every debate and applies `model`; output is sorted by debate id.
pub fn score_corpus(
    debates: &[Debate],
    res: &Resources,
    model: &CapoteModel,
    cfg: &ScorerConfig,
    exec: Execution,
) -> Result<Vec<ScoredDebate>, ModelError> {
    let mut out = exec.try_map(debates, |d| {
        let scores = score_all(d, res, cfg);
        Ok::<_, ModelError>(ScoredDebate { debate_id: d.id.clone(), prediction: model.predict(&scores)?, scores })
    })?;
    out.sort_by(|a, b| a.debate_id.cmp(&b.debate_id));
    Ok(out)
}

/// `debate_id,actors,polarity,openness,time,emotion,controversy_raw,controversy`.
pub fn scored_csv(scored: &[ScoredDebate]) -> String {
    let mut out = String::from("debate_id,actors,polarity,openness,time,emotion,controversy_raw,controversy\n");
    for s in scored {
        let c = &s.scores;
        let _ = writeln!(
            out,
            "{},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4},{:.4}",
            s.debate_id, c.actors, c.polarity, c.openness, c.time, c.emotion, s.prediction.raw, s.prediction.clamped
        );
    }
    out
}
