use crate::corpus::Debate;

use super::config::ScorerConfig;
use super::resources::Lexicon;
use super::text::lower_tokens;

/// Mean signed intensity over lexicon hits, in [−1, 1]; 0 without hits.
pub fn doc_sentiment(text: &str, lex: &Lexicon) -> f64 {
    let (sum, hits) = lower_tokens(text)
        .iter()
        .filter_map(|t| lex.get(t))
        .fold((0.0, 0usize), |(s, n), e| (s + e.signed(), n + 1));
    if hits == 0 {
        0.0
    } else {
        (sum / hits as f64).clamp(-1.0, 1.0)
    }
}

/// Camp bimodality of comment sentiment: `4 · pos · neg`, where `pos`
/// and `neg` are the fractions of comments beyond ±τ. Equals 1 exactly for
/// two equal opposing camps.
pub fn score_polarization(d: &Debate, lex: &Lexicon, cfg: &ScorerConfig) -> f64 {
    let n = d.comments.len();
    if n < 2 {
        return 0.0;
    }
    let tau = cfg.sentiment_threshold;
    let (mut pos, mut neg) = (0usize, 0usize);
    for c in &d.comments {
        let s = doc_sentiment(&c.text, lex);
        if s > tau {
            pos += 1;
        } else if s < -tau {
            neg += 1;
        }
    }
    camp_product(pos, neg, n)
}

pub(crate) fn camp_product(pos: usize, neg: usize, n: usize) -> f64 {
    let (p, q) = (pos as f64 / n as f64, neg as f64 / n as f64);
    (4.0 * p * q).clamp(0.0, 1.0)
}

/// Emotional density of one document: `min(1, k · Σ intensity / tokens)`.
/// `None` for documents without tokens.
pub fn document_emotion(text: &str, lex: &Lexicon, cfg: &ScorerConfig) -> Option<f64> {
    let toks = lower_tokens(text);
    if toks.is_empty() {
        return None;
    }
    // folded from +0.0: an empty float `sum()` yields -0.0
    let intensity = toks.iter().filter_map(|t| lex.get(t)).fold(0.0, |acc, e| acc + e.intensity);
    Some((cfg.emotion_gain * intensity / toks.len() as f64).min(1.0))
}

/// Mean document emotion over the body and every comment. Documents
/// without tokens are skipped; 0 when nothing remains.
pub fn score_emotion(d: &Debate, lex: &Lexicon, cfg: &ScorerConfig) -> f64 {
    let mut per_doc: Vec<f64> = std::iter::once(d.body.as_str())
        .chain(d.comments.iter().map(|c| c.text.as_str()))
        .filter_map(|t| document_emotion(t, lex, cfg))
        .collect();
    if per_doc.is_empty() {
        return 0.0;
    }
    // summation order fixed so the result does not depend on comment order
    per_doc.sort_by(f64::total_cmp);
    per_doc.iter().sum::<f64>() / per_doc.len() as f64
}
