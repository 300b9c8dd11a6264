use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::Debate;

use super::config::ScorerConfig;
use super::AspectError;

const SECONDS_PER_DAY: i64 = 86_400;

/// Source diversity and comment openness across the debates of one topic:
/// `0.7 · min(1, sources / source_ref_count) + 0.3 · public fraction`.
/// Empty source strings do not count as sources.
pub fn score_openness(debates_of_topic: &[Debate], cfg: &ScorerConfig) -> Result<f64, AspectError> {
    if debates_of_topic.is_empty() {
        return Err(AspectError::EmptyTopic);
    }
    let sources: BTreeSet<&str> = debates_of_topic
        .iter()
        .map(|d| d.source.as_str())
        .filter(|s| !s.is_empty())
        .collect();
    let public = debates_of_topic.iter().filter(|d| d.comments_public).count();
    let diversity = (sources.len() as f64 / f64::from(cfg.source_ref_count)).min(1.0);
    let openness = public as f64 / debates_of_topic.len() as f64;
    Ok((0.7 * diversity + 0.3 * openness).clamp(0.0, 1.0))
}

/// Daily activity profile of a debate.
#[derive(Debug, Clone, PartialEq)]
pub struct DailyActivity {
    /// Days between the first and last active UTC day.
    pub span_days: i64,
    /// Days whose volume exceeds `mean + burst_sigma · stddev`.
    pub bursts: usize,
}

/// Buckets timestamps into UTC days over the full first..=last range
/// (inactive days count as zero volume) and counts burst days. `None` for
/// fewer than two timestamps.
pub fn daily_activity(d: &Debate, burst_sigma: f64) -> Option<DailyActivity> {
    let mut volume: BTreeMap<i64, u64> = BTreeMap::new();
    let mut total = 0u64;
    for ts in d.timestamps() {
        *volume.entry(ts.div_euclid(SECONDS_PER_DAY)).or_default() += 1;
        total += 1;
    }
    if total < 2 {
        return None;
    }
    let first = *volume.keys().next()?;
    let last = *volume.keys().next_back()?;
    let span_days = last - first;
    let days = (span_days + 1) as f64;
    let mean = total as f64 / days;
    let idle_days = days - volume.len() as f64;
    let sq: f64 = volume.values().map(|&c| (c as f64 - mean).powi(2)).sum::<f64>() + idle_days * mean * mean;
    let sd = (sq / days).sqrt();
    let threshold = mean + burst_sigma * sd;
    let bursts = volume.values().filter(|&&c| c as f64 > threshold).count();
    Some(DailyActivity { span_days, bursts })
}

/// `min(1, ln(1+span)/ln(1+span_ref_days)) · (0.5 + 0.5·min(1, bursts/burst_ref_count))`.
pub fn score_time_persistence(d: &Debate, cfg: &ScorerConfig) -> f64 {
    let Some(act) = daily_activity(d, cfg.burst_sigma) else {
        return 0.0;
    };
    let span = ((act.span_days as f64).ln_1p() / f64::from(cfg.span_ref_days).ln_1p()).min(1.0);
    let burst = (act.bursts as f64 / f64::from(cfg.burst_ref_count)).min(1.0);
    (span * (0.5 + 0.5 * burst)).clamp(0.0, 1.0)
}
