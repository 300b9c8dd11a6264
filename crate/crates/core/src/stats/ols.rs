use super::tdist::two_sided_p;
use super::StatsError;

pub const INTERCEPT: &str = "(intercept)";

/// Columns whose residual norm after projection onto the preceding columns
/// falls below this fraction of their own norm are treated as collinear.
const RANK_TOLERANCE: f64 = 1e-10;

/// Ordinary least squares fit with intercept. Every per-term vector is
/// ordered intercept first, then predictors in input order.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionResult {
    pub predictor_names: Vec<String>,
    pub coefficients: Vec<f64>,
    pub std_errors: Vec<f64>,
    pub t_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub r_squared: f64,
    pub adj_r_squared: f64,
    pub n_observations: usize,
    pub residual_df: usize,
    pub residuals: Vec<f64>,
}

impl RegressionResult {
    pub fn intercept(&self) -> f64 {
        self.coefficients[0]
    }

    /// Term names, intercept first.
    pub fn term_names(&self) -> impl Iterator<Item = &str> {
        std::iter::once(INTERCEPT).chain(self.predictor_names.iter().map(String::as_str))
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.term_names().position(|n| n == name)
    }

    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.index_of(name).map(|i| self.coefficients[i])
    }

    pub fn std_error(&self, name: &str) -> Option<f64> {
        self.index_of(name).map(|i| self.std_errors[i])
    }

    pub fn p_value(&self, name: &str) -> Option<f64> {
        self.index_of(name).map(|i| self.p_values[i])
    }
}

/// `1 − (1 − r²)(n − 1)/(n − p − 1)`.
pub fn adj_r_squared(r2: f64, n: usize, p: usize) -> Result<f64, StatsError> {
    if n <= p + 1 {
        return Err(StatsError::TooFewObservations { n, required: p + 1 });
    }
    Ok(1.0 - (1.0 - r2) * (n - 1) as f64 / (n - p - 1) as f64)
}

/// Fits `y ~ 1 + predictors` by Householder QR of the design matrix.
///
/// Standard errors use the unbiased residual variance and `(XᵀX)⁻¹ =
/// R⁻¹R⁻ᵀ`; p-values are two-sided Student-t with `n − p − 1` degrees of
/// freedom.
pub fn ols_fit(y: &[f64], predictors: &[(&str, &[f64])]) -> Result<RegressionResult, StatsError> {
    let n = y.len();
    let p = predictors.len();
    let m = p + 1;
    if n <= m {
        return Err(StatsError::TooFewObservations { n, required: m });
    }
    if y.iter().any(|v| !v.is_finite()) {
        return Err(StatsError::NonFinite("response".into()));
    }
    for &(name, col) in predictors {
        if col.len() != n {
            return Err(StatsError::LengthMismatch { name: name.into(), expected: n, found: col.len() });
        }
        if col.iter().any(|v| !v.is_finite()) {
            return Err(StatsError::NonFinite(name.into()));
        }
    }
    let names: Vec<&str> = std::iter::once(INTERCEPT).chain(predictors.iter().map(|(n, _)| *n)).collect();

    // column-major design matrix, reduced in place to R
    let mut a: Vec<Vec<f64>> = std::iter::once(vec![1.0; n])
        .chain(predictors.iter().map(|(_, c)| c.to_vec()))
        .collect();
    let col_norms: Vec<f64> = a.iter().map(|c| norm(c)).collect();
    let mut qty = y.to_vec();

    for k in 0..m {
        let tail_norm = norm(&a[k][k..]);
        if col_norms[k] == 0.0 || tail_norm <= RANK_TOLERANCE * col_norms[k] {
            return Err(StatsError::Collinear { columns: dependent_set(&a, k, &names) });
        }
        let alpha = if a[k][k] > 0.0 { -tail_norm } else { tail_norm };
        let mut v = a[k][k..].to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        let reflect = |col: &mut [f64]| {
            let s = 2.0 * dot(&v, col) / vv;
            col.iter_mut().zip(&v).for_each(|(c, vi)| *c -= s * vi);
        };
        for col in a.iter_mut().skip(k + 1) {
            reflect(&mut col[k..]);
        }
        reflect(&mut qty[k..]);
        a[k][k] = alpha;
        a[k][k + 1..].iter_mut().for_each(|x| *x = 0.0);
    }

    let r = |i: usize, j: usize| a[j][i];
    let mut beta = vec![0.0; m];
    for i in (0..m).rev() {
        let s: f64 = (i + 1..m).map(|j| r(i, j) * beta[j]).sum();
        beta[i] = (qty[i] - s) / r(i, i);
    }

    let residuals: Vec<f64> = (0..n)
        .map(|row| {
            let fitted = beta[0] + predictors.iter().zip(&beta[1..]).map(|((_, c), b)| c[row] * b).sum::<f64>();
            y[row] - fitted
        })
        .collect();
    let ssr: f64 = residuals.iter().map(|e| e * e).sum();
    let mean_y = y.iter().sum::<f64>() / n as f64;
    let sst: f64 = y.iter().map(|v| (v - mean_y).powi(2)).sum();
    if sst == 0.0 {
        return Err(StatsError::ZeroVariance("response".into()));
    }
    let r_squared = (1.0 - ssr / sst).clamp(0.0, 1.0);
    let df = n - m;
    let sigma2 = ssr / df as f64;

    // R⁻¹ (upper triangular), column by column
    let mut rinv = vec![vec![0.0; m]; m];
    for j in 0..m {
        rinv[j][j] = 1.0 / r(j, j);
        for i in (0..j).rev() {
            let s: f64 = (i + 1..=j).map(|k| r(i, k) * rinv[k][j]).sum();
            rinv[i][j] = -s / r(i, i);
        }
    }
    let std_errors: Vec<f64> = (0..m)
        .map(|i| (sigma2 * rinv[i][i..].iter().map(|x| x * x).sum::<f64>()).sqrt())
        .collect();
    let t_values: Vec<f64> = beta
        .iter()
        .zip(&std_errors)
        .map(|(&b, &se)| {
            if se > 0.0 {
                b / se
            } else if b == 0.0 {
                0.0
            } else {
                b.signum() * f64::INFINITY
            }
        })
        .collect();
    let p_values = t_values.iter().map(|&t| two_sided_p(t, df as u64)).collect();

    Ok(RegressionResult {
        predictor_names: predictors.iter().map(|(n, _)| n.to_string()).collect(),
        coefficients: beta,
        std_errors,
        t_values,
        p_values,
        r_squared,
        adj_r_squared: adj_r_squared(r_squared, n, p)?,
        n_observations: n,
        residual_df: df,
        residuals,
    })
}

/// Names column `k` together with the earlier columns it depends on, by
/// solving the leading triangular system for its projection coefficients.
fn dependent_set(a: &[Vec<f64>], k: usize, names: &[&str]) -> Vec<String> {
    let mut c = vec![0.0; k];
    for i in (0..k).rev() {
        let s: f64 = (i + 1..k).map(|j| a[j][i] * c[j]).sum();
        c[i] = (a[k][i] - s) / a[i][i];
    }
    let scale = c.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut cols: Vec<String> = (0..k)
        .filter(|&i| scale > 0.0 && c[i].abs() > 1e-8 * scale)
        .map(|i| names[i].to_string())
        .collect();
    cols.push(names[k].to_string());
    cols
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
