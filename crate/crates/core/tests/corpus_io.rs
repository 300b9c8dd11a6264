use std::cell::RefCell;
use std::io::Write;

use capote::corpus::{
    load_annotations, load_corpus, read_corpus, serialize_debate, validate_corpus, write_annotations, write_corpus,
    AnnotationSet, Comment, CorpusError, DateRange, Debate, GuardianClient, HttpGet, HttpResponse, API_KEY_ENV,
};
use chrono::NaiveDate;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use url::Url;

/// Replays canned responses and records every requested URL.
struct Replay {
    responses: RefCell<Vec<HttpResponse>>,
    requests: RefCell<Vec<Url>>,
}

impl Replay {
    fn new(responses: Vec<HttpResponse>) -> Self {
        Replay { responses: RefCell::new(responses), requests: RefCell::new(Vec::new()) }
    }
}

impl HttpGet for &Replay {
    fn get(&self, url: &Url) -> Result<HttpResponse, CorpusError> {
        self.requests.borrow_mut().push(url.clone());
        Ok(self.responses.borrow_mut().remove(0))
    }
}

struct NoNetwork;

impl HttpGet for NoNetwork {
    fn get(&self, url: &Url) -> Result<HttpResponse, CorpusError> {
        panic!("unexpected request to {url}");
    }
}

fn range() -> DateRange {
    DateRange {
        from: NaiveDate::from_ymd_opt(2016, 1, 1).unwrap(),
        to: NaiveDate::from_ymd_opt(2016, 1, 31).unwrap(),
    }
}

fn fixture(name: &str, status: u16) -> HttpResponse {
    let path = format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    HttpResponse { status, body: std::fs::read_to_string(path).unwrap() }
}

#[test]
fn replayed_search_maps_three_articles() {
    let replay = Replay::new(vec![fixture("guardian_search_3.json", 200)]);
    let client = GuardianClient::new("https://api.example.test/", "k3y", &replay).unwrap();
    let debates = client.fetch_articles("gun control", range(), 10).unwrap();
    assert_eq!(debates.len(), 3);
    let first = &debates[0];
    assert_eq!(first.id, "us-news/2016/jan/05/obama-gun-control-executive-action");
    assert_eq!(first.title, "Obama unveils gun control measures");
    assert_eq!(first.body, "Barack Obama on Tuesday announced measures & reforms. The NRA objected.");
    assert_eq!(first.source, "theguardian");
    assert!(serialize_debate(first).contains("\"published_at\":\"2016-01-05T17:30:18Z\""));
    assert!(first.comments.is_empty());

    let requests = replay.requests.borrow();
    assert_eq!(requests.len(), 1);
    let url = &requests[0];
    assert_eq!(url.path(), "/search");
    let q: Vec<(String, String)> = url.query_pairs().into_owned().collect();
    for (k, v) in [("q", "gun control"), ("from-date", "2016-01-01"), ("to-date", "2016-01-31"), ("api-key", "k3y"), ("show-fields", "body")] {
        assert!(q.contains(&(k.to_string(), v.to_string())), "missing {k}={v} in {url}");
    }
}

#[test]
fn max_limits_results() {
    let replay = Replay::new(vec![fixture("guardian_search_3.json", 200)]);
    let client = GuardianClient::new("https://api.example.test", "k", &replay).unwrap();
    assert_eq!(client.fetch_articles("guns", range(), 2).unwrap().len(), 2);
}

#[test]
fn unauthorized_is_transport_error_with_status() {
    let replay = Replay::new(vec![fixture("guardian_401.json", 401)]);
    let client = GuardianClient::new("https://api.example.test", "bad", &replay).unwrap();
    let err = client.fetch_articles("guns", range(), 5).unwrap_err();
    assert!(matches!(err, CorpusError::Transport { status: Some(401), .. }), "{err}");
}

#[test]
fn unmappable_records_are_skipped() {
    let body = r#"{"response":{"pages":1,"results":[{"id":"ok","webTitle":"t","webPublicationDate":"2016-01-01T00:00:00Z","fields":{"body":"b"}},{"id":"nobody","webTitle":"t","webPublicationDate":"2016-01-01T00:00:00Z"},{"webTitle":"noid"}]}}"#;
    let replay = Replay::new(vec![HttpResponse { status: 200, body: body.into() }]);
    let client = GuardianClient::new("https://api.example.test", "k", &replay).unwrap();
    let ds = client.fetch_articles("x", range(), 10).unwrap();
    assert_eq!(ds.iter().map(|d| d.id.as_str()).collect::<Vec<_>>(), ["ok"]);
}

#[test]
fn pages_are_followed() {
    let page = |n: u32, ids: &[&str]| {
        let results: Vec<String> = ids
            .iter()
            .map(|id| format!(r#"{{"id":"{id}","webTitle":"t","webPublicationDate":"2016-01-01T00:00:00Z","fields":{{"body":"b"}}}}"#))
            .collect();
        HttpResponse {
            status: 200,
            body: format!(r#"{{"response":{{"pages":2,"currentPage":{n},"results":[{}]}}}}"#, results.join(",")),
        }
    };
    let replay = Replay::new(vec![page(1, &["a", "b"]), page(2, &["c"])]);
    let client = GuardianClient::new("https://api.example.test", "k", &replay).unwrap();
    assert_eq!(client.fetch_articles("x", range(), 60).unwrap().len(), 3);
    assert_eq!(replay.requests.borrow().len(), 2);
}

#[test]
fn zero_max_makes_no_request() {
    let client = GuardianClient::new("https://api.example.test", "k", NoNetwork).unwrap();
    assert!(client.fetch_articles("x", range(), 0).unwrap().is_empty());
    // the env-driven entry point short-circuits before reading the key
    assert!(capote::corpus::fetch_articles("http://127.0.0.1:9", "x", range(), 0).unwrap().is_empty());
}

#[test]
fn missing_key_is_configuration_error() {
    std::env::remove_var(API_KEY_ENV);
    let err = GuardianClient::from_env("https://api.example.test", NoNetwork).err().unwrap();
    assert!(matches!(err, CorpusError::Config(_)));
    let err = capote::corpus::fetch_articles("https://api.example.test", "x", range(), 3).unwrap_err();
    assert!(matches!(err, CorpusError::Config(_)));
}

fn arb_debate() -> impl Strategy<Value = Debate> {
    let comment = ("\\PC{0,12}", "\\PC{0,40}", -2_000_000_000i64..4_000_000_000, any::<bool>());
    (
        "[a-z0-9-]{1,12}",
        "\\PC{0,30}",
        "\\PC{0,80}",
        -2_000_000_000i64..4_000_000_000,
        "\\PC{0,10}",
        prop::collection::vec(comment, 0..5),
        any::<bool>(),
    )
        .prop_map(|(id, title, body, published_at, source, comments, comments_public)| Debate {
            id,
            title,
            body,
            published_at,
            source,
            comments_public,
            comments: comments
                .into_iter()
                .enumerate()
                .map(|(i, (author, text, t, reply))| Comment {
                    author,
                    text,
                    created_at: t,
                    reply_to: if reply && i > 0 { Some(i - 1) } else { None },
                })
                .collect(),
        })
}

proptest! {
    #[test]
    fn corpus_round_trips(debates in prop::collection::btree_map("[a-z]{1,8}", arb_debate(), 0..6)) {
        let debates: Vec<Debate> = debates.into_iter().map(|(id, mut d)| { d.id = id; d }).collect();
        let mut buf = Vec::new();
        write_corpus(&mut buf, &debates).unwrap();
        let back = read_corpus(buf.as_slice()).unwrap();
        prop_assert_eq!(&back, &debates);
        let mut again = Vec::new();
        write_corpus(&mut again, &back).unwrap();
        prop_assert_eq!(buf, again);
    }

    #[test]
    fn annotation_pairs_are_unique(rows in prop::collection::vec((0u8..4, 0u8..4, any::<[bool; 6]>()), 0..30)) {
        let sets: Vec<AnnotationSet> = rows.iter().map(|(w, a, ans)| AnnotationSet::new(format!("w{w}"), format!("a{a}"), *ans)).collect();
        let mut buf = Vec::new();
        write_annotations(&mut buf, &sets).unwrap();
        match capote::corpus::read_annotations(buf.as_slice()) {
            Ok(parsed) => {
                let mut keys: Vec<_> = parsed.iter().map(|s| (&s.worker_id, &s.article_id)).collect();
                let n = keys.len();
                keys.sort();
                keys.dedup();
                prop_assert_eq!(keys.len(), n);
            }
            Err(e) => {
                let duplicate = matches!(e, CorpusError::DuplicateAnnotation { .. });
                prop_assert!(duplicate);
            }
        }
    }
}

#[test]
fn corpus_file_loading() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let d = Debate::empty("only", "theguardian", 1_451_606_400);
    std::fs::write(&path, format!("{}\n\n", serialize_debate(&d))).unwrap();
    assert_eq!(load_corpus(&path).unwrap(), vec![d]);
    assert!(matches!(load_corpus(dir.path().join("missing")), Err(CorpusError::Io { .. })));
    let v = validate_corpus(std::fs::read(&path).unwrap().as_slice());
    assert!(v.is_ok());
}

#[test]
fn published_scale_annotation_file() {
    // 5 048 articles, 1 659 workers, 31 888 rows: 1 624 articles get 7 workers, the rest 6
    let (articles, workers, rows) = (5_048usize, 1_659usize, 31_888usize);
    let extra = rows - 6 * articles;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31_888);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("annotations.csv");
    let mut f = std::io::BufWriter::new(std::fs::File::create(&path).unwrap());
    writeln!(f, "worker_id,article_id,controversy,actors,polarity,openness,time,emotion").unwrap();
    let mut slot = 0usize;
    for a in 0..articles {
        let k = if a < extra { 7 } else { 6 };
        for _ in 0..k {
            let w = slot % workers;
            slot += 1;
            let bits: Vec<&str> = (0..6).map(|_| if rng.random_bool(0.5) { "1" } else { "0" }).collect();
            writeln!(f, "w{w},a{a},{}", bits.join(",")).unwrap();
        }
    }
    drop(f);
    let sets = load_annotations(&path).unwrap();
    assert_eq!(sets.len(), rows);
    let mut arts: Vec<&str> = sets.iter().map(|s| s.article_id.as_str()).collect();
    arts.sort_unstable();
    arts.dedup();
    let mut ws: Vec<&str> = sets.iter().map(|s| s.worker_id.as_str()).collect();
    ws.sort_unstable();
    ws.dedup();
    assert_eq!((arts.len(), ws.len()), (articles, workers));
}
