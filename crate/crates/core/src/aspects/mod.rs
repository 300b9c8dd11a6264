//! Automated aspect scorers. Each maps a debate (or a topic group, for
//! openness) to a value in [0, 1]; all are pure functions of their inputs.

mod activity;
mod actors;
mod config;
mod resources;
mod sentiment;
pub mod text;

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::{Debate, Question};
use crate::kv::KvError;

pub use activity::{daily_activity, score_openness, score_time_persistence, DailyActivity};
pub use actors::{capitalized_runs, extract_actors, score_actors};
pub use config::ScorerConfig;
pub use resources::{sha256_hex, Gazetteer, LexEntry, Lexicon};
pub use sentiment::{doc_sentiment, document_emotion, score_emotion, score_polarization};

#[derive(Debug, Error)]
pub enum AspectError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
    #[error("gazetteer line {line}: {message}")]
    Gazetteer { line: usize, message: String },
    #[error("invalid scorer config: {0}")]
    Config(String),
    #[error(transparent)]
    Kv(#[from] KvError),
    #[error("openness needs at least one debate in the topic group")]
    EmptyTopic,
}

/// The five model aspects (the crowd questions minus controversy).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Aspect {
    Actors,
    Polarity,
    Openness,
    Time,
    Emotion,
}

impl Aspect {
    pub const ALL: [Aspect; 5] = [Aspect::Actors, Aspect::Polarity, Aspect::Openness, Aspect::Time, Aspect::Emotion];

    pub fn name(self) -> &'static str {
        self.question().name()
    }

    pub fn question(self) -> Question {
        match self {
            Aspect::Actors => Question::Actors,
            Aspect::Polarity => Question::Polarity,
            Aspect::Openness => Question::Openness,
            Aspect::Time => Question::Time,
            Aspect::Emotion => Question::Emotion,
        }
    }

    pub fn from_name(name: &str) -> Option<Aspect> {
        Aspect::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Aspect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-debate scores in [0, 1]. `controversy` is filled by crowd
/// aggregation, never by the text scorers.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct AspectScores {
    pub actors: f64,
    pub polarity: f64,
    pub openness: f64,
    pub time: f64,
    pub emotion: f64,
    pub controversy: Option<f64>,
}

impl AspectScores {
    pub fn get(&self, a: Aspect) -> f64 {
        match a {
            Aspect::Actors => self.actors,
            Aspect::Polarity => self.polarity,
            Aspect::Openness => self.openness,
            Aspect::Time => self.time,
            Aspect::Emotion => self.emotion,
        }
    }

    pub fn set(&mut self, a: Aspect, v: f64) {
        match a {
            Aspect::Actors => self.actors = v,
            Aspect::Polarity => self.polarity = v,
            Aspect::Openness => self.openness = v,
            Aspect::Time => self.time = v,
            Aspect::Emotion => self.emotion = v,
        }
    }

    pub fn question(&self, q: Question) -> Option<f64> {
        match q {
            Question::Controversy => self.controversy,
            Question::Actors => Some(self.actors),
            Question::Polarity => Some(self.polarity),
            Question::Openness => Some(self.openness),
            Question::Time => Some(self.time),
            Question::Emotion => Some(self.emotion),
        }
    }

    pub fn from_aspects(values: [f64; 5]) -> Self {
        let mut s = AspectScores::default();
        for (a, v) in Aspect::ALL.into_iter().zip(values) {
            s.set(a, v);
        }
        s
    }

    pub fn in_unit_range(&self) -> bool {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        Aspect::ALL.iter().all(|&a| unit(self.get(a))) && self.controversy.is_none_or(unit)
    }
}

/// Read-only term resources shared by the scorers.
#[derive(Debug, Clone)]
pub struct Resources {
    pub lexicon: Lexicon,
    pub gazetteer: Gazetteer,
}

/// Runs all five scorers, with openness over the singleton group `[d]`.
pub fn score_all(d: &Debate, res: &Resources, cfg: &ScorerConfig) -> AspectScores {
    score_with_openness(d, res, cfg, score_openness(std::slice::from_ref(d), cfg).expect("non-empty group"))
}

/// Runs all five scorers with openness computed over `topic`.
pub fn score_all_in_topic(
    d: &Debate,
    topic: &[Debate],
    res: &Resources,
    cfg: &ScorerConfig,
) -> Result<AspectScores, AspectError> {
    Ok(score_with_openness(d, res, cfg, score_openness(topic, cfg)?))
}

fn score_with_openness(d: &Debate, res: &Resources, cfg: &ScorerConfig, openness: f64) -> AspectScores {
    AspectScores {
        actors: score_actors(extract_actors(d, &res.gazetteer).len(), cfg),
        polarity: score_polarization(d, &res.lexicon, cfg),
        openness,
        time: score_time_persistence(d, cfg),
        emotion: score_emotion(d, &res.lexicon, cfg),
        controversy: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resources() -> Resources {
        Resources {
            lexicon: Lexicon::from_entries([("great", 1, 0.8)]).unwrap(),
            gazetteer: Gazetteer::empty(),
        }
    }

    #[test]
    fn empty_debate_scores_only_openness() {
        let d = Debate::empty("e", "guardian", 0);
        let s = score_all(&d, &resources(), &ScorerConfig::default());
        assert_eq!(
            s,
            AspectScores { openness: 0.7 * 0.2, ..AspectScores::default() }
        );
    }

    #[test]
    fn scoring_is_deterministic() {
        let mut d = Debate::empty("e", "guardian", 0);
        d.body = "A great Day for Jane Doe".into();
        let cfg = ScorerConfig::default();
        let res = resources();
        assert_eq!(score_all(&d, &res, &cfg), score_all(&d, &res, &cfg));
    }

    #[test]
    fn topic_openness_uses_group() {
        let cfg = ScorerConfig::default();
        let group: Vec<Debate> = (0..5).map(|i| Debate::empty(format!("d{i}"), format!("s{i}"), 0)).collect();
        let s = score_all_in_topic(&group[0], &group, &resources(), &cfg).unwrap();
        assert!((s.openness - 0.7).abs() < 1e-15);
        assert!(score_all_in_topic(&group[0], &[], &resources(), &cfg).is_err());
    }

    #[test]
    fn aspect_names_round_trip() {
        for a in Aspect::ALL {
            assert_eq!(Aspect::from_name(a.name()), Some(a));
        }
        assert_eq!(Aspect::from_name("controversy"), None);
    }
}
