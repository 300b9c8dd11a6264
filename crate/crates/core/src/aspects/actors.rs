use std::collections::{BTreeSet, HashSet};

use crate::corpus::Debate;

use super::config::ScorerConfig;
use super::resources::Gazetteer;
use super::text::{tokenize, Token};

/// Capitalized words that commonly open a sentence without naming anyone.
const SENTENCE_STOPWORDS: &[&str] = &[
    "a", "after", "all", "also", "an", "and", "as", "at", "before", "but", "by", "during", "for",
    "from", "he", "her", "his", "however", "i", "if", "in", "it", "its", "last", "many", "meanwhile",
    "most", "my", "no", "not", "of", "on", "one", "or", "our", "she", "so", "some", "that", "the",
    "their", "then", "there", "these", "they", "this", "those", "today", "under", "we", "what",
    "when", "while", "with", "yesterday", "you",
];

/// Participating actors: named comment authors, gazetteer hits anywhere in
/// the debate, and runs of two or more capitalized words in the body.
/// Names are deduplicated case-insensitively; the first spelling seen wins
/// (authors, then gazetteer hits, then capitalized runs).
pub fn extract_actors(d: &Debate, gazetteer: &Gazetteer) -> BTreeSet<String> {
    let mut keys = HashSet::new();
    let mut out = BTreeSet::new();
    let mut add = |name: &str| {
        if !name.is_empty() && keys.insert(name.to_lowercase()) {
            out.insert(name.to_string());
        }
    };

    for c in &d.comments {
        add(&c.author);
    }
    for text in std::iter::once(&d.title)
        .chain(std::iter::once(&d.body))
        .chain(d.comments.iter().map(|c| &c.text))
    {
        for hit in gazetteer.find_in(text) {
            add(hit);
        }
    }
    for run in capitalized_runs(&d.body) {
        add(run);
    }
    out
}

/// Maximal runs of ≥2 capitalized tokens separated only by whitespace. A
/// stopword opening a sentence is dropped from the front of its run.
pub fn capitalized_runs(text: &str) -> Vec<&str> {
    let toks = tokenize(text);
    let mut runs = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        if !toks[i].is_capitalized() {
            i += 1;
            continue;
        }
        let mut j = i + 1;
        while j < toks.len() && toks[j].is_capitalized() && gap_is_space(text, &toks[j - 1], &toks[j]) {
            j += 1;
        }
        let mut start = i;
        if sentence_initial(text, &toks, i) && SENTENCE_STOPWORDS.contains(&toks[i].lower().as_str()) {
            start += 1;
        }
        if j - start >= 2 {
            runs.push(&text[toks[start].start..toks[j - 1].end]);
        }
        i = j;
    }
    runs
}

fn gap_is_space(text: &str, a: &Token, b: &Token) -> bool {
    text[a.end..b.start].chars().all(char::is_whitespace)
}

fn sentence_initial(text: &str, toks: &[Token], i: usize) -> bool {
    let before = if i == 0 { &text[..toks[0].start] } else { &text[toks[i - 1].end..toks[i].start] };
    i == 0 || before.contains(['.', '!', '?', '\n'])
}

/// `min(1, ln(1+n) / ln(1+actor_ref_count))`.
pub fn score_actors(n_actors: usize, cfg: &ScorerConfig) -> f64 {
    let reference = f64::from(cfg.actor_ref_count);
    ((n_actors as f64).ln_1p() / reference.ln_1p()).min(1.0)
}
