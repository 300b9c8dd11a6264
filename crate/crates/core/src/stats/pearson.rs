use super::StatsError;

/// Sample Pearson correlation, computed from centered sums.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<f64, StatsError> {
    pearson_named(("x", x), ("y", y))
}

fn pearson_named((xn, x): (&str, &[f64]), (yn, y): (&str, &[f64])) -> Result<f64, StatsError> {
    if x.len() != y.len() {
        return Err(StatsError::LengthMismatch { name: yn.into(), expected: x.len(), found: y.len() });
    }
    if x.len() < 2 {
        return Err(StatsError::TooFewObservations { n: x.len(), required: 1 });
    }
    check_series(xn, x)?;
    check_series(yn, y)?;
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (&a, &b) in x.iter().zip(y) {
        let (da, db) = (a - mx, b - my);
        sxy += da * db;
        sxx += da * da;
        syy += db * db;
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

fn check_series(name: &str, v: &[f64]) -> Result<(), StatsError> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(StatsError::NonFinite(name.into()));
    }
    if v.iter().all(|&x| x == v[0]) {
        return Err(StatsError::ZeroVariance(name.into()));
    }
    Ok(())
}

/// Symmetric matrix of pairwise Pearson correlations with unit diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub names: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

impl CorrelationMatrix {
    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        let i = self.names.iter().position(|n| n == a)?;
        let j = self.names.iter().position(|n| n == b)?;
        Some(self.values[i][j])
    }

    pub fn to_csv(&self) -> String {
        let mut out = format!(",{}\n", self.names.join(","));
        for (name, row) in self.names.iter().zip(&self.values) {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:.4}")).collect();
            out.push_str(&format!("{name},{}\n", cells.join(",")));
        }
        out
    }
}

pub fn correlation_matrix(columns: &[(&str, &[f64])]) -> Result<CorrelationMatrix, StatsError> {
    let k = columns.len();
    let mut values = vec![vec![1.0; k]; k];
    if let Some((_, first)) = columns.first() {
        for &(name, col) in columns {
            if col.len() != first.len() {
                return Err(StatsError::LengthMismatch { name: name.into(), expected: first.len(), found: col.len() });
            }
            if col.len() >= 2 {
                check_series(name, col)?;
            }
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            let r = pearson_named(columns[i], columns[j])?;
            values[i][j] = r;
            values[j][i] = r;
        }
    }
    Ok(CorrelationMatrix { names: columns.iter().map(|(n, _)| n.to_string()).collect(), values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_correlations() {
        assert!((pearson(&[1.0, 2.0, 3.0], &[2.0, 4.0, 6.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson(&[1.0, 2.0, 3.0], &[3.0, 2.0, 1.0]).unwrap() + 1.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(pearson(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0]), Err(StatsError::ZeroVariance("x".into())));
        assert!(matches!(pearson(&[0.1; 3], &[1.0, 2.0, 3.0]), Err(StatsError::ZeroVariance(_))));
        assert!(matches!(pearson(&[1.0, 2.0], &[1.0]), Err(StatsError::LengthMismatch { .. })));
        assert!(matches!(pearson(&[1.0], &[1.0]), Err(StatsError::TooFewObservations { .. })));
        assert!(matches!(pearson(&[1.0, f64::NAN], &[1.0, 2.0]), Err(StatsError::NonFinite(_))));
    }

    #[test]
    fn known_value() {
        // x=(1,2,3,4), y=(1,3,2,4): sxy=4, sxx=syy=5
        let r = pearson(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0]).unwrap();
        assert!((r - 0.8).abs() < 1e-15);
    }

    #[test]
    fn matrix_structure() {
        let a = [1.0, 2.0, 3.0, 5.0];
        let b = [2.0, 1.0, 4.0, 3.0];
        let m = correlation_matrix(&[("a", &a[..]), ("b", &b[..]), ("a2", &a[..])]).unwrap();
        for i in 0..3 {
            assert_eq!(m.values[i][i], 1.0);
            for j in 0..3 {
                assert_eq!(m.values[i][j], m.values[j][i]);
            }
        }
        assert!((m.get("a", "a2").unwrap() - 1.0).abs() < 1e-15);
        assert!(m.to_csv().starts_with(",a,b,a2\na,1.0000,"));
    }

    #[test]
    fn matrix_rejects_constant_column() {
        let a = [1.0, 2.0, 3.0];
        let c = [4.0; 3];
        let err = correlation_matrix(&[("a", &a[..]), ("c", &c[..])]).unwrap_err();
        assert_eq!(err, StatsError::ZeroVariance("c".into()));
    }
}
