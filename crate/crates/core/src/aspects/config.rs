use std::collections::BTreeMap;
use std::path::Path;

use crate::kv::{self, parse_value, KvError};

use super::AspectError;

/// Scaling constants for the aspect scorers.
#[derive(Debug, Clone, PartialEq)]
pub struct ScorerConfig {
    /// Actor count at which the actor score saturates.
    pub actor_ref_count: u32,
    /// Comments with |sentiment| above this join a camp.
    pub sentiment_threshold: f64,
    /// Multiplier on per-token emotional intensity.
    pub emotion_gain: f64,
    /// Distinct sources at which the source-diversity term saturates.
    pub source_ref_count: u32,
    /// Activity span, in days, at which the span term saturates.
    pub span_ref_days: u32,
    /// Burst count at which the burst term saturates.
    pub burst_ref_count: u32,
    /// A burst day exceeds the mean daily volume by this many standard
    /// deviations.
    pub burst_sigma: f64,
}

impl Default for ScorerConfig {
    fn default() -> Self {
        ScorerConfig {
            actor_ref_count: 100,
            sentiment_threshold: 0.1,
            emotion_gain: 10.0,
            source_ref_count: 5,
            span_ref_days: 365,
            burst_ref_count: 5,
            burst_sigma: 2.0,
        }
    }
}

impl ScorerConfig {
    pub const KEYS: [&'static str; 7] = [
        "actor_ref_count",
        "sentiment_threshold",
        "emotion_gain",
        "source_ref_count",
        "span_ref_days",
        "burst_ref_count",
        "burst_sigma",
    ];

    /// Sets one field from its textual value. Does not validate ranges.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), KvError> {
        match key {
            "actor_ref_count" => self.actor_ref_count = parse_value(key, value)?,
            "sentiment_threshold" => self.sentiment_threshold = parse_value(key, value)?,
            "emotion_gain" => self.emotion_gain = parse_value(key, value)?,
            "source_ref_count" => self.source_ref_count = parse_value(key, value)?,
            "span_ref_days" => self.span_ref_days = parse_value(key, value)?,
            "burst_ref_count" => self.burst_ref_count = parse_value(key, value)?,
            "burst_sigma" => self.burst_sigma = parse_value(key, value)?,
            other => return Err(KvError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    /// Defaults overridden by the keys present in a `key = value` file body.
    pub fn parse(text: &str) -> Result<Self, AspectError> {
        let mut cfg = ScorerConfig::default();
        for (k, v) in kv::parse(text)? {
            cfg.set(&k, &v)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AspectError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| AspectError::Io { path: path.into(), source: e })?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), AspectError> {
        let bad = |field: &str, why: &str| Err(AspectError::Config(format!("{field} {why}")));
        if self.actor_ref_count == 0 {
            return bad("actor_ref_count", "must be positive");
        }
        if !(self.sentiment_threshold > 0.0 && self.sentiment_threshold < 1.0) {
            return bad("sentiment_threshold", "must lie in (0, 1)");
        }
        if !(self.emotion_gain > 0.0 && self.emotion_gain.is_finite()) {
            return bad("emotion_gain", "must be positive");
        }
        if self.source_ref_count == 0 {
            return bad("source_ref_count", "must be positive");
        }
        if self.span_ref_days == 0 {
            return bad("span_ref_days", "must be positive");
        }
        if self.burst_ref_count == 0 {
            return bad("burst_ref_count", "must be positive");
        }
        if !(self.burst_sigma > 0.0 && self.burst_sigma.is_finite()) {
            return bad("burst_sigma", "must be positive");
        }
        Ok(())
    }

    /// Field values as strings, in `KEYS` order.
    pub fn snapshot(&self) -> BTreeMap<&'static str, String> {
        BTreeMap::from([
            ("actor_ref_count", self.actor_ref_count.to_string()),
            ("sentiment_threshold", self.sentiment_threshold.to_string()),
            ("emotion_gain", self.emotion_gain.to_string()),
            ("source_ref_count", self.source_ref_count.to_string()),
            ("span_ref_days", self.span_ref_days.to_string()),
            ("burst_ref_count", self.burst_ref_count.to_string()),
            ("burst_sigma", self.burst_sigma.to_string()),
        ])
    }

    pub fn to_text(&self) -> String {
        self.snapshot().iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }
}
