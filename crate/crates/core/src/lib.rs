//! Controversy analytics over debates: five aspect scorers (actors,
//! polarization, openness, time persistence, emotions), crowd-annotation
//! aggregation with CrowdTruth-style cosine metrics, and the linear model
//! that combines aspect scores into a controversy score.
//!
//! Per-debate and per-article work fans out over rayon when the `parallel`
//! feature is enabled (default); every parallel path has a sequential twin
//! selected through [`Execution`].

pub mod aspects;
pub mod corpus;
pub mod crowdtruth;
pub mod exec;
pub mod kv;
pub mod model;
pub mod stats;

pub use aspects::{AspectScores, Gazetteer, Lexicon, Resources, ScorerConfig};
pub use corpus::{AnnotationSet, Comment, Debate, Question};
pub use exec::Execution;
pub use model::{AnalysisReport, Aspect, CapoteModel};
pub use stats::RegressionResult;
