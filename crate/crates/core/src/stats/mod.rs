//! Statistics core: Pearson correlation, ordinary least squares with full
//! coefficient diagnostics, and Student-t tail probabilities.

mod ols;
mod pearson;
mod table;
mod tdist;

use thiserror::Error;

pub use ols::{adj_r_squared, ols_fit, RegressionResult, INTERCEPT};
pub use pearson::{correlation_matrix, pearson, CorrelationMatrix};
pub use table::{format_p, SIGNIFICANCE_LEVEL};
pub use tdist::{t_sf, two_sided_p};

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("series `{name}` has length {found}, expected {expected}")]
    LengthMismatch { name: String, expected: usize, found: usize },
    #[error("need more than {required} observations, got {n}")]
    TooFewObservations { n: usize, required: usize },
    #[error("series `{0}` has zero variance")]
    ZeroVariance(String),
    #[error("collinear design columns: {}", columns.join(", "))]
    Collinear { columns: Vec<String> },
    #[error("series `{0}` contains non-finite values")]
    NonFinite(String),
}
