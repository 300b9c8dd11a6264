//! Lexicon and gazetteer resources. Each carries the SHA-256 of the bytes it
//! was parsed from so that scoring runs can record exactly which resource
//! versions were used.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use sha2::{Digest, Sha256};

use super::text::{lower_tokens, tokenize};
use super::AspectError;

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LexEntry {
    /// −1 or +1.
    pub polarity: i8,
    /// In (0, 1].
    pub intensity: f64,
}

impl LexEntry {
    pub fn signed(&self) -> f64 {
        f64::from(self.polarity) * self.intensity
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lexicon {
    entries: HashMap<String, LexEntry>,
    checksum: String,
}

impl Lexicon {
    /// Builds a lexicon from in-memory entries. The checksum is taken over
    /// the equivalent TSV rendering in sorted term order.
    pub fn from_entries<I, S>(entries: I) -> Result<Self, AspectError>
    where
        I: IntoIterator<Item = (S, i8, f64)>,
        S: Into<String>,
    {
        let mut map = HashMap::new();
        for (term, polarity, intensity) in entries {
            let term = term.into();
            validate_entry(&term, polarity, intensity).map_err(|m| AspectError::Lexicon { line: 0, message: m })?;
            if map.insert(term.clone(), LexEntry { polarity, intensity }).is_some() {
                return Err(AspectError::Lexicon { line: 0, message: format!("duplicate term `{term}`") });
            }
        }
        let mut terms: Vec<_> = map.iter().collect();
        terms.sort_by(|a, b| a.0.cmp(b.0));
        let canonical: String = terms
            .iter()
            .map(|(t, e)| format!("{t}\t{:+}\t{}\n", e.polarity, e.intensity))
            .collect();
        Ok(Lexicon { entries: map, checksum: sha256_hex(canonical.as_bytes()) })
    }

    /// Parses `term<TAB>polarity<TAB>intensity` lines; `#` lines and blank
    /// lines are skipped.
    pub fn parse_tsv(text: &str) -> Result<Self, AspectError> {
        let mut entries = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |message: String| AspectError::Lexicon { line, message };
            if raw.trim().is_empty() || raw.trim_start().starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = raw.split('\t').map(str::trim).collect();
            if cols.len() != 3 {
                return Err(err(format!("expected 3 tab-separated columns, found {}", cols.len())));
            }
            let polarity: i8 = match cols[1] {
                "+1" | "1" => 1,
                "-1" => -1,
                other => return Err(err(format!("polarity must be +1 or -1, found `{other}`"))),
            };
            let intensity: f64 = cols[2]
                .parse()
                .map_err(|_| err(format!("invalid intensity `{}`", cols[2])))?;
            validate_entry(cols[0], polarity, intensity).map_err(err)?;
            if entries.insert(cols[0].to_string(), LexEntry { polarity, intensity }).is_some() {
                return Err(err(format!("duplicate term `{}`", cols[0])));
            }
        }
        Ok(Lexicon { entries, checksum: sha256_hex(text.as_bytes()) })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AspectError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| AspectError::Io { path: path.into(), source: e })?;
        Self::parse_tsv(&text)
    }

    pub fn get(&self, lower_term: &str) -> Option<LexEntry> {
        self.entries.get(lower_term).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    /// The same lexicon with every polarity negated.
    pub fn flipped(&self) -> Lexicon {
        let entries = self
            .entries
            .iter()
            .map(|(t, e)| (t.clone(), LexEntry { polarity: -e.polarity, intensity: e.intensity }))
            .collect();
        Lexicon { entries, checksum: format!("flipped:{}", self.checksum) }
    }
}

fn validate_entry(term: &str, polarity: i8, intensity: f64) -> Result<(), String> {
    if term.is_empty() {
        return Err("empty term".into());
    }
    if term.to_lowercase() != term {
        return Err(format!("term `{term}` is not lowercase"));
    }
    if lower_tokens(term) != [term] {
        return Err(format!("term `{term}` is not a single alphanumeric token"));
    }
    if polarity != 1 && polarity != -1 {
        return Err(format!("term `{term}`: polarity must be +1 or -1"));
    }
    if !(intensity > 0.0 && intensity <= 1.0) {
        return Err(format!("term `{term}`: intensity {intensity} outside (0, 1]"));
    }
    Ok(())
}

/// Known actor names, matched case-insensitively on token boundaries.
#[derive(Debug, Clone, PartialEq)]
pub struct Gazetteer {
    /// Lowercased token sequences, grouped by first token.
    by_first: HashMap<String, Vec<Vec<String>>>,
    len: usize,
    checksum: String,
}

impl Gazetteer {
    pub fn from_names<I, S>(names: I) -> Result<Self, AspectError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let names: Vec<String> = names.into_iter().map(|s| s.as_ref().to_string()).collect();
        let text = names.join("\n");
        Self::build(names.iter().map(String::as_str).enumerate(), sha256_hex(text.as_bytes()))
    }

    /// One name per line; blank lines are skipped, case-insensitive
    /// duplicates collapse to one entry.
    pub fn parse(text: &str) -> Result<Self, AspectError> {
        Self::build(text.lines().enumerate(), sha256_hex(text.as_bytes()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, AspectError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|e| AspectError::Io { path: path.into(), source: e })?;
        Self::parse(&text)
    }

    pub fn empty() -> Self {
        Gazetteer { by_first: HashMap::new(), len: 0, checksum: sha256_hex(b"") }
    }

    fn build<'a>(lines: impl Iterator<Item = (usize, &'a str)>, checksum: String) -> Result<Self, AspectError> {
        let mut seen = HashSet::new();
        let mut by_first: HashMap<String, Vec<Vec<String>>> = HashMap::new();
        for (i, raw) in lines {
            let name = raw.trim();
            if name.is_empty() {
                continue;
            }
            let toks = lower_tokens(name);
            if toks.is_empty() {
                return Err(AspectError::Gazetteer {
                    line: i + 1,
                    message: format!("name `{name}` has no alphanumeric tokens"),
                });
            }
            if seen.insert(toks.clone()) {
                by_first.entry(toks[0].clone()).or_default().push(toks);
            }
        }
        for seqs in by_first.values_mut() {
            // longest match first
            seqs.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        }
        Ok(Gazetteer { len: seen.len(), by_first, checksum })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn checksum(&self) -> &str {
        &self.checksum
    }

    /// Surface forms (as written in `text`) of every gazetteer hit.
    pub fn find_in<'t>(&self, text: &'t str) -> Vec<&'t str> {
        let toks = tokenize(text);
        let lower: Vec<String> = toks.iter().map(|t| t.lower()).collect();
        let mut hits = Vec::new();
        for i in 0..toks.len() {
            let Some(cands) = self.by_first.get(&lower[i]) else { continue };
            for seq in cands {
                let end = i + seq.len();
                if end <= toks.len() && lower[i..end] == seq[..] {
                    hits.push(&text[toks[i].start..toks[end - 1].end]);
                    break;
                }
            }
        }
        hits
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_tsv_with_comments() {
        let lex = Lexicon::parse_tsv("# v1\ngood\t+1\t0.8\nbad\t-1\t0.6\n\n").unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.get("bad").unwrap().signed(), -0.6);
        assert_eq!(lex.checksum().len(), 64);
    }

    #[test]
    fn rejects_invalid_entries() {
        for bad in ["Good\t+1\t0.5", "good\t0\t0.5", "good\t+1\t0", "good\t+1\t1.5", "a b\t+1\t0.5", "x\t+1"] {
            assert!(Lexicon::parse_tsv(bad).is_err(), "{bad}");
        }
        assert!(Lexicon::parse_tsv("a\t+1\t0.5\na\t-1\t0.5").is_err());
    }

    #[test]
    fn lexicon_error_names_line() {
        let err = Lexicon::parse_tsv("# c\ngood\t+1\t2").unwrap_err();
        assert!(err.to_string().starts_with("lexicon line 2"), "{err}");
    }

    #[test]
    fn checksum_tracks_bytes() {
        let a = Lexicon::parse_tsv("good\t+1\t0.8\n").unwrap();
        let b = Lexicon::parse_tsv("good\t+1\t0.9\n").unwrap();
        assert_ne!(a.checksum(), b.checksum());
    }

    #[test]
    fn gazetteer_dedups_case_insensitively() {
        let g = Gazetteer::parse("NHS\nnhs\nAngela Merkel\n\n").unwrap();
        assert_eq!(g.len(), 2);
    }

    #[test]
    fn gazetteer_matches_surface_forms() {
        let g = Gazetteer::from_names(["nhs", "angela merkel"]).unwrap();
        assert_eq!(g.find_in("the NHS budget"), ["NHS"]);
        assert_eq!(g.find_in("ANGELA  Merkel spoke"), ["ANGELA  Merkel"]);
        assert!(g.find_in("angela spoke").is_empty());
        assert!(g.find_in("nhsx").is_empty());
    }
}
