//! OEIS search client with a recorded-response fixture mode.
//!
//! Fixtures are raw response bodies stored as `<sha256(query)>.json`.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::Args;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::{matrix_arg, selector_arg, table, Failure};

pub const DEFAULT_ENDPOINT: &str = "https://oeis.org/search";
const AGENT: &str = concat!("coltrees/", env!("CARGO_PKG_VERSION"), " (colored plane tree enumeration)");

#[derive(Args)]
pub struct OeisArgs {
    /// Comma-separated terms, e.g. "1,2,6,22,90".
    terms: Option<String>,
    /// Take the terms from this matrix instead.
    #[arg(long, conflicts_with = "terms")]
    matrix: Option<String>,
    /// With --matrix: "total" or "color=i".
    #[arg(long, default_value = "total")]
    series: String,
    /// With --matrix: number of terms.
    #[arg(long = "n", default_value_t = 10)]
    n: usize,
    /// Drop the first term (with --matrix, only when it equals m).
    #[arg(long)]
    skip_first: bool,
    /// Answer from recorded responses only.
    #[arg(long, env = "COLTREES_OFFLINE", value_parser = clap::builder::FalseyValueParser::new())]
    offline: bool,
    #[arg(long, env = "COLTREES_OEIS_FIXTURES")]
    fixtures: Option<PathBuf>,
    /// Save live responses into the fixtures directory.
    #[arg(long, requires = "fixtures")]
    record: bool,
    #[arg(long, env = "COLTREES_OEIS_URL", default_value = DEFAULT_ENDPOINT)]
    endpoint: String,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    Live,
    Fixture,
}

#[derive(Debug, Serialize)]
pub struct OeisQueryResult {
    pub query: Vec<String>,
    pub ids: Vec<String>,
    pub source: Source,
}

pub fn query_key(query: &str) -> String {
    hex::encode(Sha256::digest(query.as_bytes()))
}

fn fixture_path(dir: &Path, query: &str) -> PathBuf {
    dir.join(format!("{}.json", query_key(query)))
}

/// Sequence ids from a search response. Accepts the bare array form, the
/// older `{"results": [...]}` form, and `null` for no hits.
pub fn parse_ids(body: &str) -> Result<Vec<String>, String> {
    let v: serde_json::Value = serde_json::from_str(body).map_err(|e| format!("response is not JSON: {e}"))?;
    let hits = match &v {
        serde_json::Value::Object(o) => o.get("results").cloned().unwrap_or(serde_json::Value::Null),
        other => other.clone(),
    };
    match hits {
        serde_json::Value::Null => Ok(Vec::new()),
        serde_json::Value::Array(items) => items
            .iter()
            .map(|it| {
                it.get("number")
                    .and_then(|n| n.as_u64())
                    .map(|n| format!("A{n:06}"))
                    .ok_or_else(|| "result without a sequence number".to_string())
            })
            .collect(),
        _ => Err("unexpected response shape".into()),
    }
}

fn terms_of(args: &OeisArgs) -> Result<Vec<String>, Failure> {
    let mut terms: Vec<String> = match (&args.terms, &args.matrix) {
        (Some(t), None) => {
            let ts: Vec<String> = t.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            if let Some(bad) = ts.iter().find(|s| s.parse::<num_bigint::BigInt>().is_err()) {
                return Err(Failure::Usage(format!("not an integer term: {bad:?}")));
            }
            if args.skip_first && !ts.is_empty() {
                ts[1..].to_vec()
            } else {
                ts
            }
        }
        (None, Some(m)) => {
            let a = matrix_arg(m)?;
            let sel = selector_arg(&args.series, a.size())?;
            let t = table(&a, args.n)?;
            let row = match sel {
                coltrees::SeriesSelector::Total => t.total().to_vec(),
                coltrees::SeriesSelector::Color(i) => t.color(i).to_vec(),
            };
            let skip = args.skip_first && row.first().is_some_and(|v| *v == num_bigint::BigUint::from(a.size()));
            row.iter().skip(usize::from(skip)).map(|v| v.to_string()).collect()
        }
        _ => return Err(Failure::Usage("give either terms or --matrix".into())),
    };
    terms.retain(|s| !s.is_empty());
    if terms.is_empty() {
        return Err(Failure::Usage("no terms to search for".into()));
    }
    Ok(terms)
}

fn fetch(endpoint: &str, query: &str) -> Result<String, Failure> {
    let net = |e: String| Failure::Resource(format!("network error: {e}"));
    let client = reqwest::blocking::Client::builder()
        .user_agent(AGENT)
        .timeout(Duration::from_secs(30))
        .build()
        .map_err(|e| net(e.to_string()))?;
    let resp = client
        .get(endpoint)
        .query(&[("q", query), ("fmt", "json")])
        .send()
        .map_err(|e| net(e.to_string()))?;
    let status = resp.status();
    if !status.is_success() {
        return Err(net(format!("HTTP {status}")));
    }
    resp.text().map_err(|e| net(e.to_string()))
}

pub fn lookup(args: &OeisArgs) -> Result<OeisQueryResult, Failure> {
    let terms = terms_of(args)?;
    let query = terms.join(",");
    let (body, source) = if args.offline {
        let body = args
            .fixtures
            .as_deref()
            .map(|d| fixture_path(d, &query))
            .filter(|p| p.exists())
            .map(|p| fs::read_to_string(&p).map_err(|e| Failure::Resource(format!("{}: {e}", p.display()))))
            .transpose()?;
        (body, Source::Fixture)
    } else {
        let body = fetch(&args.endpoint, &query)?;
        if args.record {
            let dir = args.fixtures.as_deref().expect("clap enforces --fixtures");
            let io = |e: std::io::Error| Failure::Resource(format!("{}: {e}", dir.display()));
            fs::create_dir_all(dir).map_err(io)?;
            fs::write(fixture_path(dir, &query), &body).map_err(io)?;
        }
        (Some(body), Source::Live)
    };
    let ids = match body {
        None => Vec::new(),
        Some(b) => parse_ids(&b).map_err(|e| Failure::Resource(format!("bad OEIS response: {e}")))?,
    };
    Ok(OeisQueryResult { query: terms, ids, source })
}

pub fn run(args: OeisArgs) -> Result<(), Failure> {
    let r = lookup(&args)?;
    if args.json {
        println!("{}", serde_json::to_string_pretty(&r).expect("serializable"));
    } else {
        let src = match r.source {
            Source::Live => "live",
            Source::Fixture => "fixture",
        };
        println!("query: {} ({src})", r.query.join(","));
        if r.ids.is_empty() {
            println!("no match");
        } else {
            println!("matches: {}", r.ids.join(" "));
        }
    }
    Ok(())
}
