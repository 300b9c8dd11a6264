use super::ols::RegressionResult;

/// Coefficients with p below this are marked significant.
pub const SIGNIFICANCE_LEVEL: f64 = 0.05;

const P_FLOOR: f64 = 1e-15;

/// Renders p-values the way regression tables usually print them;
/// anything below 1e-15 becomes `< 1e-15`.
pub fn format_p(p: f64) -> String {
    if p < P_FLOOR {
        "< 1e-15".to_string()
    } else if p < 1e-3 {
        format!("{p:.2e}")
    } else {
        format!("{p:.4}")
    }
}

impl RegressionResult {
    pub fn is_significant(&self, term: usize) -> bool {
        self.p_values[term] < SIGNIFICANCE_LEVEL
    }

    /// `term,coefficient,std_error,t,p,significant` rows followed by
    /// r_squared, adj_r_squared and n footer rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("term,coefficient,std_error,t,p,significant\n");
        for (i, name) in self.term_names().enumerate() {
            out.push_str(&format!(
                "{name},{:.5},{:.5},{:.4},{:e},{}\n",
                self.coefficients[i],
                self.std_errors[i],
                self.t_values[i],
                self.p_values[i],
                if self.is_significant(i) { "*" } else { "" }
            ));
        }
        out.push_str(&format!("r_squared,{:.4},,,,\n", self.r_squared));
        out.push_str(&format!("adj_r_squared,{:.4},,,,\n", self.adj_r_squared));
        out.push_str(&format!("n,{},,,,\n", self.n_observations));
        out
    }

    /// Fixed-width text table, one column per term.
    pub fn to_text(&self) -> String {
        let names: Vec<&str> = self.term_names().collect();
        let width = names.iter().map(|n| n.len()).max().unwrap_or(0).max(11) + 2;
        let row = |label: &str, cells: Vec<String>| {
            let mut line = format!("{label:<14}");
            for c in cells {
                line.push_str(&format!("{c:>width$}"));
            }
            line.push('\n');
            line
        };
        let mut out = row("", names.iter().map(|s| s.to_string()).collect());
        out.push_str(&row("coefficient", self.coefficients.iter().map(|c| format!("{c:.5}")).collect()));
        out.push_str(&row("std error", self.std_errors.iter().map(|c| format!("{c:.5}")).collect()));
        out.push_str(&row("p-value", self.p_values.iter().map(|&p| format_p(p)).collect()));
        out.push_str(&row(
            "significant",
            (0..names.len()).map(|i| if self.is_significant(i) { "*".into() } else { String::new() }).collect(),
        ));
        out.push_str(&format!("{:<14}{:.4}\n", "R²", self.r_squared));
        out.push_str(&format!("{:<14}{:.4}\n", "adjusted R²", self.adj_r_squared));
        out.push_str(&format!("{:<14}{}\n", "n", self.n_observations));
        out
    }
}
