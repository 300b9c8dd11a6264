use statrs::function::beta::beta_reg;

/// Upper tail `P(T > t)` of Student's t with `df` degrees of freedom, via
/// the regularized incomplete beta function.
pub fn t_sf(t: f64, df: u64) -> f64 {
    assert!(df >= 1, "t_sf requires df >= 1");
    if t.is_nan() {
        return f64::NAN;
    }
    let v = df as f64;
    // P(|T| > |t|) = I_{v/(v+t²)}(v/2, 1/2)
    let x = if t.is_infinite() { 0.0 } else { v / (v + t * t) };
    let half_tail = 0.5 * beta_reg(v / 2.0, 0.5, x);
    if t >= 0.0 {
        half_tail
    } else {
        1.0 - half_tail
    }
}

/// Two-sided p-value `2 · P(T > |t|)`.
pub fn two_sided_p(t: f64, df: u64) -> f64 {
    (2.0 * t_sf(t.abs(), df)).min(1.0)
}
