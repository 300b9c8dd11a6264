//! Flat `key = value` text files, used for scorer configs and model files.

use std::collections::BTreeMap;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum KvError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: duplicate key `{key}`")]
    Duplicate { line: usize, key: String },
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("missing key `{0}`")]
    MissingKey(String),
    #[error("key `{key}`: invalid value `{value}`")]
    InvalidValue { key: String, value: String },
}

/// Parses `key = value` lines. Blank lines and lines starting with `#` are
/// ignored; trailing `# ...` comments are not supported.
pub fn parse(text: &str) -> Result<BTreeMap<String, String>, KvError> {
    let mut out = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or(KvError::Syntax { line: i + 1 })?;
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() || v.is_empty() {
            return Err(KvError::Syntax { line: i + 1 });
        }
        if out.insert(k.to_string(), v.to_string()).is_some() {
            return Err(KvError::Duplicate { line: i + 1, key: k.to_string() });
        }
    }
    Ok(out)
}

pub(crate) fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, KvError> {
    value.parse().map_err(|_| KvError::InvalidValue {
        key: key.to_string(),
        value: value.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_whitespace() {
        let m = parse("# header\n\n a = 1\nb=two  \n").unwrap();
        assert_eq!(m["a"], "1");
        assert_eq!(m["b"], "two");
    }

    #[test]
    fn rejects_bad_lines() {
        assert_eq!(parse("a 1"), Err(KvError::Syntax { line: 1 }));
        assert_eq!(
            parse("a = 1\na = 2"),
            Err(KvError::Duplicate { line: 2, key: "a".into() })
        );
    }
}
