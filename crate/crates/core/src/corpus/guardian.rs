//! Article retrieval from a Guardian-compatible content API.
//!
//! Only articles are fetched; comment threads enter through corpus files.

use chrono::NaiveDate;
use serde_json::Value;
use url::Url;

use super::{parse_timestamp, CorpusError, Debate};

pub const API_KEY_ENV: &str = "CAPOTE_GUARDIAN_KEY";
pub const DEFAULT_BASE_URL: &str = "https://content.guardianapis.com";
const MAX_PAGE_SIZE: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HttpResponse {
    pub status: u16,
    pub body: String,
}

/// Minimal blocking GET transport, replaceable by fixtures in tests.
pub trait HttpGet {
    /// Returns the response for any status; only connection-level failures
    /// are errors.
    fn get(&self, url: &Url) -> Result<HttpResponse, CorpusError>;
}

#[cfg(feature = "http")]
pub struct UreqTransport {
    agent: ureq::Agent,
}

#[cfg(feature = "http")]
impl Default for UreqTransport {
    fn default() -> Self {
        let agent = ureq::Agent::config_builder()
            .http_status_as_error(false)
            .build()
            .into();
        UreqTransport { agent }
    }
}

#[cfg(feature = "http")]
impl HttpGet for UreqTransport {
    fn get(&self, url: &Url) -> Result<HttpResponse, CorpusError> {
        let transport = |e: ureq::Error| CorpusError::Transport { status: None, message: e.to_string() };
        let mut resp = self.agent.get(url.as_str()).call().map_err(transport)?;
        let status = resp.status().as_u16();
        let body = resp.body_mut().read_to_string().map_err(transport)?;
        Ok(HttpResponse { status, body })
    }
}

/// Inclusive publication-date window.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DateRange {
    pub from: NaiveDate,
    pub to: NaiveDate,
}

pub struct GuardianClient<H> {
    base_url: Url,
    api_key: String,
    http: H,
}

impl<H: HttpGet> GuardianClient<H> {
    pub fn new(base_url: &str, api_key: impl Into<String>, http: H) -> Result<Self, CorpusError> {
        let base_url = Url::parse(base_url)
            .map_err(|e| CorpusError::Config(format!("invalid base URL `{base_url}`: {e}")))?;
        let api_key = api_key.into();
        if api_key.is_empty() {
            return Err(CorpusError::Config(format!("{API_KEY_ENV} is empty")));
        }
        Ok(GuardianClient { base_url, api_key, http })
    }

    /// Reads the API key from `CAPOTE_GUARDIAN_KEY`.
    pub fn from_env(base_url: &str, http: H) -> Result<Self, CorpusError> {
        let key = std::env::var(API_KEY_ENV)
            .map_err(|_| CorpusError::Config(format!("environment variable {API_KEY_ENV} is not set")))?;
        Self::new(base_url, key, http)
    }

    fn search_url(&self, query: &str, range: DateRange, page: usize, page_size: usize) -> Url {
        let mut url = self.base_url.clone();
        url.path_segments_mut()
            .expect("http base URL")
            .pop_if_empty()
            .push("search");
        url.query_pairs_mut()
            .append_pair("q", query)
            .append_pair("from-date", &range.from.format("%Y-%m-%d").to_string())
            .append_pair("to-date", &range.to.format("%Y-%m-%d").to_string())
            .append_pair("api-key", &self.api_key)
            .append_pair("show-fields", "body")
            .append_pair("page-size", &page_size.to_string())
            .append_pair("page", &page.to_string());
        url
    }

    /// Fetches up to `max` articles matching `query`, following result
    /// pages. Records that cannot be mapped are skipped with a warning.
    pub fn fetch_articles(&self, query: &str, range: DateRange, max: usize) -> Result<Vec<Debate>, CorpusError> {
        let mut debates = Vec::new();
        let mut page = 1;
        while debates.len() < max {
            let page_size = (max - debates.len()).min(MAX_PAGE_SIZE);
            let url = self.search_url(query, range, page, page_size);
            let resp = self.http.get(&url)?;
            if !(200..300).contains(&resp.status) {
                return Err(CorpusError::Transport {
                    status: Some(resp.status),
                    message: format!("search request failed: {}", truncate(&resp.body, 200)),
                });
            }
            let json: Value = serde_json::from_str(&resp.body)
                .map_err(|e| CorpusError::Response(e.to_string()))?;
            let response = json
                .get("response")
                .ok_or_else(|| CorpusError::Response("missing `response` object".into()))?;
            let results = response
                .get("results")
                .and_then(Value::as_array)
                .ok_or_else(|| CorpusError::Response("missing `response.results` array".into()))?;

            for record in results {
                if debates.len() == max {
                    break;
                }
                match map_record(record) {
                    Ok(d) => debates.push(d),
                    Err(why) => log::warn!("skipping API record: {why}"),
                }
            }

            let pages = response.get("pages").and_then(Value::as_u64).unwrap_or(1) as usize;
            if results.is_empty() || page >= pages {
                break;
            }
            page += 1;
        }
        Ok(debates)
    }
}

/// Fetches articles using the key from the environment and the default
/// transport. `max = 0` returns immediately without touching the network
/// or the environment.
#[cfg(feature = "http")]
pub fn fetch_articles(base_url: &str, query: &str, range: DateRange, max: usize) -> Result<Vec<Debate>, CorpusError> {
    if max == 0 {
        return Ok(Vec::new());
    }
    GuardianClient::from_env(base_url, UreqTransport::default())?.fetch_articles(query, range, max)
}

#[cfg(not(feature = "http"))]
pub fn fetch_articles(_base_url: &str, _query: &str, _range: DateRange, max: usize) -> Result<Vec<Debate>, CorpusError> {
    if max == 0 {
        return Ok(Vec::new());
    }
    Err(CorpusError::Config("built without the `http` feature".into()))
}

fn map_record(record: &Value) -> Result<Debate, String> {
    let field = |name: &str| {
        record
            .get(name)
            .and_then(Value::as_str)
            .ok_or_else(|| format!("missing `{name}`"))
    };
    let id = field("id")?;
    if id.is_empty() {
        return Err("empty `id`".into());
    }
    let title = field("webTitle")?;
    let date = field("webPublicationDate")?;
    let published_at = parse_timestamp(date).ok_or_else(|| format!("{id}: bad webPublicationDate `{date}`"))?;
    let body = record
        .get("fields")
        .and_then(|f| f.get("body"))
        .and_then(Value::as_str)
        .ok_or_else(|| format!("{id}: missing `fields.body`"))?;
    Ok(Debate {
        id: id.to_string(),
        title: title.to_string(),
        body: strip_tags(body),
        published_at,
        source: "theguardian".to_string(),
        comments: Vec::new(),
        comments_public: false,
    })
}

/// Removes markup tags, decodes the common character entities and collapses
/// whitespace.
pub fn strip_tags(html: &str) -> String {
    let mut text = String::with_capacity(html.len());
    let mut in_tag = false;
    for ch in html.chars() {
        match ch {
            '<' => in_tag = true,
            '>' if in_tag => {
                in_tag = false;
                text.push(' ');
            }
            _ if !in_tag => text.push(ch),
            _ => {}
        }
    }
    let decoded = text
        .replace("&nbsp;", " ")
        .replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&#39;", "'")
        .replace("&#x27;", "'")
        .replace("&amp;", "&");
    decoded.split_whitespace().collect::<Vec<_>>().join(" ")
}

fn truncate(s: &str, n: usize) -> &str {
    match s.char_indices().nth(n) {
        Some((i, _)) => &s[..i],
        None => s,
    }
}
