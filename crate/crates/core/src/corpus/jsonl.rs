use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use chrono::{DateTime, SecondsFormat};
use serde_json::{json, Map, Value};

use super::{Comment, CorpusError, Debate, Timestamp};

/// Parses an RFC 3339 timestamp to Unix seconds; sub-second digits are
/// truncated.
pub fn parse_timestamp(s: &str) -> Option<Timestamp> {
    DateTime::parse_from_rfc3339(s).ok().map(|t| t.timestamp())
}

/// Formats Unix seconds as `YYYY-MM-DDTHH:MM:SSZ`.
pub fn format_timestamp(ts: Timestamp) -> String {
    DateTime::from_timestamp(ts, 0)
        .expect("timestamp within chrono range")
        .to_rfc3339_opts(SecondsFormat::Secs, true)
}

/// A per-line validation failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineError {
    pub line: usize,
    pub message: String,
}

impl LineError {
    fn into_error(self) -> CorpusError {
        CorpusError::Line { line: self.line, message: self.message }
    }
}

/// Outcome of lenient corpus reading: every well-formed debate plus every
/// line error, both in file order.
#[derive(Debug, Default)]
pub struct CorpusValidation {
    pub debates: Vec<Debate>,
    pub errors: Vec<LineError>,
    /// Number of non-blank lines examined.
    pub lines: usize,
}

impl CorpusValidation {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }
}

/// Reads a corpus, failing on the first malformed line or duplicate id.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<Vec<Debate>, CorpusError> {
    let mut seen = HashSet::new();
    let mut debates = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| CorpusError::Line { line: lineno, message: e.to_string() })?;
        if line.trim().is_empty() {
            continue;
        }
        let debate = decode_line(&line).map_err(|message| LineError { line: lineno, message }.into_error())?;
        if !seen.insert(debate.id.clone()) {
            return Err(CorpusError::DuplicateId { line: lineno, id: debate.id });
        }
        debates.push(debate);
    }
    Ok(debates)
}

pub fn load_corpus(path: impl AsRef<Path>) -> Result<Vec<Debate>, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| CorpusError::io(path, e))?;
    let debates = read_corpus(BufReader::new(file))?;
    log::info!("{}: loaded {} debates", path.display(), debates.len());
    Ok(debates)
}

/// Reads a corpus collecting all line errors instead of stopping at the
/// first one. Duplicate ids are reported as line errors and the later
/// record is dropped.
pub fn validate_corpus<R: BufRead>(reader: R) -> CorpusValidation {
    let mut out = CorpusValidation::default();
    let mut seen = HashSet::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = match line {
            Ok(l) => l,
            Err(e) => {
                out.lines += 1;
                out.errors.push(LineError { line: lineno, message: e.to_string() });
                continue;
            }
        };
        if line.trim().is_empty() {
            continue;
        }
        out.lines += 1;
        match decode_line(&line) {
            Ok(d) if !seen.insert(d.id.clone()) => out.errors.push(LineError {
                line: lineno,
                message: format!("duplicate debate id `{}`", d.id),
            }),
            Ok(d) => out.debates.push(d),
            Err(message) => out.errors.push(LineError { line: lineno, message }),
        }
    }
    out
}

/// Canonical single-line JSON for one debate (no trailing newline).
pub fn serialize_debate(d: &Debate) -> String {
    let comments: Vec<Value> = d
        .comments
        .iter()
        .map(|c| {
            json!({
                "author": c.author,
                "text": c.text,
                "created_at": format_timestamp(c.created_at),
                "reply_to": c.reply_to,
            })
        })
        .collect();
    // serde_json's default map is ordered by key, which fixes the byte layout.
    json!({
        "id": d.id,
        "title": d.title,
        "body": d.body,
        "published_at": format_timestamp(d.published_at),
        "source": d.source,
        "comments_public": d.comments_public,
        "comments": comments,
    })
    .to_string()
}

pub fn write_corpus<W: Write>(mut w: W, debates: &[Debate]) -> std::io::Result<()> {
    for d in debates {
        writeln!(w, "{}", serialize_debate(d))?;
    }
    Ok(())
}

fn decode_line(line: &str) -> Result<Debate, String> {
    let value: Value = serde_json::from_str(line).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = value.as_object().ok_or("expected a JSON object")?;

    let id = req_str(obj, "id", "")?;
    if id.is_empty() {
        return Err("field id: must be non-empty".into());
    }
    let title = req_str(obj, "title", "")?;
    let body = req_str(obj, "body", "")?;
    let published_at = req_time(obj, "published_at", "")?;
    let source = req_str(obj, "source", "")?;
    let comments_public = match obj.get("comments_public") {
        None => return Err("missing field comments_public".into()),
        Some(v) => v.as_bool().ok_or("field comments_public: expected a boolean")?,
    };
    let raw_comments = match obj.get("comments") {
        None => return Err("missing field comments".into()),
        Some(v) => v.as_array().ok_or("field comments: expected an array")?,
    };

    let mut comments = Vec::with_capacity(raw_comments.len());
    for (i, c) in raw_comments.iter().enumerate() {
        let prefix = format!("comments[{i}].");
        let c = c
            .as_object()
            .ok_or_else(|| format!("field comments[{i}]: expected an object"))?;
        let reply_to = match c.get("reply_to") {
            None | Some(Value::Null) => None,
            Some(v) => {
                let idx = v
                    .as_u64()
                    .ok_or_else(|| format!("field {prefix}reply_to: expected a non-negative integer or null"))?;
                if idx as usize >= i {
                    return Err(format!(
                        "field {prefix}reply_to: {idx} does not reference an earlier comment"
                    ));
                }
                Some(idx as usize)
            }
        };
        comments.push(Comment {
            author: req_str(c, "author", &prefix)?,
            text: req_str(c, "text", &prefix)?,
            created_at: req_time(c, "created_at", &prefix)?,
            reply_to,
        });
    }

    Ok(Debate { id, title, body, published_at, source, comments, comments_public })
}

fn req_str(obj: &Map<String, Value>, key: &str, prefix: &str) -> Result<String, String> {
    match obj.get(key) {
        None => Err(format!("missing field {prefix}{key}")),
        Some(Value::String(s)) => Ok(s.clone()),
        Some(_) => Err(format!("field {prefix}{key}: expected a string")),
    }
}

fn req_time(obj: &Map<String, Value>, key: &str, prefix: &str) -> Result<Timestamp, String> {
    let s = req_str(obj, key, prefix)?;
    parse_timestamp(&s).ok_or_else(|| format!("field {prefix}{key}: invalid RFC 3339 timestamp `{s}`"))
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOOD: &str = r#"{"id":"a1","title":"T","body":"B","published_at":"2016-03-01T12:00:00Z","source":"theguardian","comments_public":true,"comments":[{"author":"x","text":"hi","created_at":"2016-03-01T13:00:00+01:00","reply_to":null},{"author":"","text":"yo","created_at":"2016-03-02T00:00:00Z","reply_to":0}]}"#;

    fn without(field: &str) -> String {
        let mut v: Value = serde_json::from_str(GOOD).unwrap();
        v.as_object_mut().unwrap().remove(field);
        v.to_string()
    }

    #[test]
    fn parses_two_lines() {
        let second = GOOD.replace("\"a1\"", "\"a2\"");
        let text = format!("{GOOD}\n{second}\n");
        let ds = read_corpus(text.as_bytes()).unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds[0].comments.len(), 2);
        assert_eq!(ds[0].comments[1].reply_to, Some(0));
        // +01:00 offset normalizes to UTC
        assert_eq!(ds[0].comments[0].created_at, ds[0].published_at);
        assert!(ds[0].comments[1].author.is_empty());
    }

    #[test]
    fn empty_file_is_empty_corpus() {
        assert!(read_corpus(&b""[..]).unwrap().is_empty());
    }

    #[test]
    fn missing_id_names_line_and_field() {
        let a2 = GOOD.replace("\"a1\"", "\"a2\"");
        let text = format!("{GOOD}\n{a2}\n{}\n", without("id"));
        let err = read_corpus(text.as_bytes()).unwrap_err();
        assert_eq!(err.to_string(), "line 3: missing field id");
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let text = format!("{GOOD}\n{GOOD}\n");
        let err = read_corpus(text.as_bytes()).unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateId { line: 2, ref id } if id == "a1"));
    }

    #[test]
    fn forward_reply_is_rejected() {
        let bad = GOOD.replace("\"reply_to\":0", "\"reply_to\":1");
        let err = read_corpus(bad.as_bytes()).unwrap_err().to_string();
        assert!(err.contains("comments[1].reply_to"), "{err}");
    }

    #[test]
    fn bad_timestamp_is_rejected() {
        let bad = GOOD.replace("2016-03-01T12:00:00Z", "yesterday");
        let err = read_corpus(bad.as_bytes()).unwrap_err().to_string();
        assert!(err.starts_with("line 1: field published_at"), "{err}");
    }

    #[test]
    fn validation_collects_every_error() {
        let text = format!("{GOOD}\nnot json\n{}\n{GOOD}\n", without("comments"));
        let v = validate_corpus(text.as_bytes());
        assert_eq!(v.debates.len(), 1);
        let lines: Vec<usize> = v.errors.iter().map(|e| e.line).collect();
        assert_eq!(lines, vec![2, 3, 4]);
        assert_eq!(v.lines, 4);
    }

    #[test]
    fn serialization_round_trips() {
        let ds = read_corpus(GOOD.as_bytes()).unwrap();
        let line = serialize_debate(&ds[0]);
        let again = read_corpus(line.as_bytes()).unwrap();
        assert_eq!(ds, again);
        assert_eq!(serialize_debate(&again[0]), line);
    }

    #[test]
    fn timestamps_format_in_utc() {
        assert_eq!(format_timestamp(0), "1970-01-01T00:00:00Z");
        assert_eq!(parse_timestamp("1970-01-02T00:00:00.999Z"), Some(86_400));
    }
}
