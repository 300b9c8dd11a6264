#![allow(dead_code)]

use capote::aspects::{Gazetteer, Lexicon, Resources};
use capote::corpus::{AnnotationSet, Comment, Debate};
use rand::seq::IndexedRandom;
use rand::{Rng, RngCore};

/// Solves XᵀX β = Xᵀy (intercept prepended) by Gaussian elimination with
/// partial pivoting.
pub fn normal_equations(y: &[f64], cols: &[Vec<f64>]) -> Vec<f64> {
    let n = y.len();
    let mut x: Vec<Vec<f64>> = vec![vec![1.0; n]];
    x.extend(cols.iter().cloned());
    let m = x.len();
    let mut a = vec![vec![0.0; m + 1]; m];
    for i in 0..m {
        for j in 0..m {
            a[i][j] = (0..n).map(|r| x[i][r] * x[j][r]).sum();
        }
        a[i][m] = (0..n).map(|r| x[i][r] * y[r]).sum();
    }
    for k in 0..m {
        let piv = (k..m).max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs())).unwrap();
        a.swap(k, piv);
        for i in k + 1..m {
            let f = a[i][k] / a[k][k];
            for j in k..=m {
                a[i][j] -= f * a[k][j];
            }
        }
    }
    let mut beta = vec![0.0; m];
    for i in (0..m).rev() {
        let s: f64 = (i + 1..m).map(|j| a[i][j] * beta[j]).sum();
        beta[i] = (a[i][m] - s) / a[i][i];
    }
    beta
}

/// Pearson r from raw sums, as written in textbooks.
pub fn pearson_definition(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sx: f64 = x.iter().sum();
    let sy: f64 = y.iter().sum();
    let sxx: f64 = x.iter().map(|v| v * v).sum();
    let syy: f64 = y.iter().map(|v| v * v).sum();
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / ((n * sxx - sx * sx).sqrt() * (n * syy - sy * sy).sqrt())
}

/// `P(T > t)` by composite Simpson integration of the Student-t density
/// over [0, t], added to 1/2 and subtracted from 1.
pub fn t_sf_quadrature(t: f64, df: f64) -> f64 {
    let ln_c = ln_gamma((df + 1.0) / 2.0) - ln_gamma(df / 2.0) - 0.5 * (df * std::f64::consts::PI).ln();
    let pdf = |x: f64| (ln_c - (df + 1.0) / 2.0 * (1.0 + x * x / df).ln()).exp();
    let steps = 20_000;
    let h = t / steps as f64;
    let mut s = pdf(0.0) + pdf(t);
    for i in 1..steps {
        s += pdf(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    0.5 - s * h / 3.0
}

/// Lanczos approximation (g = 7, n = 9).
fn ln_gamma(x: f64) -> f64 {
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    let x = x - 1.0;
    let mut a = C[0];
    let t = x + 7.5;
    for (i, c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

pub const POSITIVE: [(&str, f64); 6] =
    [("love", 0.9), ("support", 0.5), ("safe", 0.4), ("hope", 0.7), ("fair", 0.3), ("great", 1.0)];
pub const NEGATIVE: [(&str, f64); 6] =
    [("hate", 0.8), ("outrage", 1.0), ("dangerous", 0.6), ("fear", 0.7), ("unfair", 0.3), ("awful", 0.9)];

pub fn lexicon() -> Lexicon {
    Lexicon::from_entries(
        POSITIVE
            .iter()
            .map(|&(t, i)| (t, 1i8, i))
            .chain(NEGATIVE.iter().map(|&(t, i)| (t, -1i8, i))),
    )
    .unwrap()
}

pub fn resources() -> Resources {
    Resources { lexicon: lexicon(), gazetteer: Gazetteer::from_names(["NRA", "Congress", "European Union"]).unwrap() }
}

const FILLER: [&str; 14] = [
    "the", "a", "plan", "vote", "streets", "we", "should", "never", "policy", "city", "and", "is", "this", "nra",
];
const NAMES: [&str; 8] = ["Barack", "Obama", "Angela", "Merkel", "Congress", "The", "European", "Union"];
const PUNCT: [&str; 5] = [" ", " ", " ", ". ", ", "];

fn random_text<R: RngCore>(rng: &mut R, max_words: usize) -> String {
    let n = rng.random_range(0..=max_words);
    let mut s = String::new();
    for _ in 0..n {
        let word = match rng.random_range(0..10) {
            0..=1 => POSITIVE.choose(rng).unwrap().0,
            2..=3 => NEGATIVE.choose(rng).unwrap().0,
            4..=5 => NAMES.choose(rng).unwrap(),
            _ => FILLER.choose(rng).unwrap(),
        };
        s.push_str(word);
        s.push_str(PUNCT.choose(rng).unwrap());
    }
    s
}

/// A random well-formed debate with up to 12 comments spread over up to
/// two years.
pub fn random_debate<R: RngCore>(rng: &mut R, id: usize) -> Debate {
    let start: i64 = 1_400_000_000 + rng.random_range(0..100_000_000);
    let n_comments = rng.random_range(0..=12);
    let horizon = *[1i64, 3_600, 86_400 * 3, 86_400 * 40, 86_400 * 730].choose(rng).unwrap();
    let comments = (0..n_comments)
        .map(|i| Comment {
            author: ["", "al", "bo", "cy", "Dee", "AL"].choose(rng).unwrap().to_string(),
            text: random_text(rng, 25),
            created_at: start + rng.random_range(0..horizon),
            reply_to: if i > 0 && rng.random_bool(0.3) { Some(rng.random_range(0..i)) } else { None },
        })
        .collect();
    Debate {
        id: format!("debate-{id:05}"),
        title: random_text(rng, 6),
        body: random_text(rng, 60),
        published_at: start,
        source: ["theguardian", "bbc", "", "nyt"].choose(rng).unwrap().to_string(),
        comments,
        comments_public: rng.random_bool(0.5),
    }
}

/// Binary crowd answers for `n_articles` articles, `workers` answers per
/// article drawn from a pool of `pool` worker ids. Each article has latent
/// yes-probabilities for the five aspects; the controversy answer is drawn
/// with probability `controversy(fractions)` where `fractions` are the
/// article's realized aspect yes-fractions.
pub fn planted_annotations<R: RngCore>(
    rng: &mut R,
    n_articles: usize,
    workers: usize,
    pool: usize,
    controversy: impl Fn([f64; 5]) -> f64,
) -> Vec<AnnotationSet> {
    let mut out = Vec::with_capacity(n_articles * workers);
    for a in 0..n_articles {
        let latent: [f64; 5] = std::array::from_fn(|_| rng.random::<f64>());
        let ids = rand::seq::index::sample(rng, pool, workers);
        let mut answers: Vec<[bool; 6]> = ids.iter().map(|_| [false; 6]).collect();
        let mut yes = [0usize; 5];
        for ans in answers.iter_mut() {
            for q in 0..5 {
                ans[q + 1] = rng.random_bool(latent[q]);
                yes[q] += usize::from(ans[q + 1]);
            }
        }
        let fractions = yes.map(|y| y as f64 / workers as f64);
        let p = controversy(fractions).clamp(0.0, 1.0);
        for ans in answers.iter_mut() {
            ans[0] = rng.random_bool(p);
        }
        for (w, ans) in ids.iter().zip(answers) {
            out.push(AnnotationSet::new(format!("w{w:04}"), format!("a{a:05}"), ans));
        }
    }
    out
}
