// SPDX-License-Identifier: Apache-2.0

//! SPARQL Protocol client: loads the benchmark dataset into a system under
//! test, runs queries and turns every response, good or bad, into a
//! [`QueryOutcome`].

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use geobench_core::dataset::{emit, RdfFormat};
use geobench_core::results::{parse_results, ErrorCategory, QueryOutcome, RESULTS_JSON, RESULTS_XML};
use oxrdf::{NamedNode, Triple};
use reqwest::blocking::{Client, RequestBuilder, Response};
use reqwest::StatusCode;
use url::Url;

pub use url;

/// Default per-request timeout.
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(30);
/// Largest number of triples sent in one `INSERT DATA` request.
pub const INSERT_BATCH_SIZE: usize = 500;

const SPARQL_QUERY: &str = "application/sparql-query";
const SPARQL_UPDATE: &str = "application/sparql-update";
const MAX_ERROR_BODY: usize = 500;

#[derive(Clone, PartialEq, Eq)]
pub struct Credentials {
    pub username: String,
    pub password: String,
}

impl fmt::Debug for Credentials {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Credentials")
            .field("username", &self.username)
            .field("password", &"***")
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointConfig {
    pub query_url: Url,
    pub update_url: Option<Url>,
    pub graph_store_url: Option<Url>,
    pub auth: Option<Credentials>,
    pub timeout: Duration,
    /// Graph the dataset is loaded into; the default graph when absent.
    pub target_graph: Option<NamedNode>,
    /// Maximum number of requests in flight.
    pub parallelism: usize,
}

impl EndpointConfig {
    pub fn new(query_url: Url) -> EndpointConfig {
        EndpointConfig {
            query_url,
            update_url: None,
            graph_store_url: None,
            auth: None,
            timeout: DEFAULT_TIMEOUT,
            target_graph: None,
            parallelism: 1,
        }
    }

    /// Parses every URL up front.
    pub fn from_urls(
        query: &str,
        update: Option<&str>,
        graph_store: Option<&str>,
    ) -> Result<EndpointConfig, LoadError> {
        let parse = |what: &str, u: &str| {
            Url::parse(u).map_err(|e| LoadError::Configuration(format!("invalid {what} URL {u:?}: {e}")))
        };
        let mut config = EndpointConfig::new(parse("query", query)?);
        config.update_url = update.map(|u| parse("update", u)).transpose()?;
        config.graph_store_url = graph_store.map(|u| parse("graph store", u)).transpose()?;
        Ok(config)
    }

    /// Loading needs a graph store or an update endpoint.
    pub fn check_loadable(&self) -> Result<(), LoadError> {
        if self.update_url.is_none() && self.graph_store_url.is_none() {
            return Err(LoadError::Configuration(
                "loading requires a graph store URL or an update URL".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("connection error: {0}")]
    Connection(String),
    #[error("timeout: {0}")]
    Timeout(String),
    #[error("HTTP {status}: {body}")]
    Http { status: u16, body: String },
    #[error("batch {index} failed: {source}")]
    Batch { index: usize, source: Box<LoadError> },
    #[error("could not serialize dataset: {0}")]
    Serialization(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoadMethod {
    GraphStorePut,
    Update { batches: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadReport {
    pub method: LoadMethod,
    pub triples: usize,
}

/// One executed query, tagged with the caller's key.
#[derive(Debug, Clone, PartialEq)]
pub struct Execution<K> {
    pub key: K,
    pub outcome: QueryOutcome,
    pub elapsed: Duration,
}

/// A blocking client; cheap to share between threads.
#[derive(Debug, Clone)]
pub struct SparqlClient {
    config: EndpointConfig,
    http: Client,
}

enum Transport {
    Connection(String),
    Timeout(String),
}

impl SparqlClient {
    pub fn new(config: EndpointConfig) -> Result<SparqlClient, LoadError> {
        if config.parallelism == 0 {
            return Err(LoadError::Configuration("parallelism must be at least 1".into()));
        }
        let http = Client::builder()
            .timeout(config.timeout)
            .build()
            .map_err(|e| LoadError::Configuration(e.to_string()))?;
        Ok(SparqlClient { config, http })
    }

    pub fn config(&self) -> &EndpointConfig {
        &self.config
    }

    fn with_auth(&self, request: RequestBuilder) -> RequestBuilder {
        match &self.config.auth {
            Some(c) => request.basic_auth(&c.username, Some(&c.password)),
            None => request,
        }
    }

    /// Sends a request, retrying once when the connection fails.
    fn send(&self, build: impl Fn() -> RequestBuilder) -> Result<Response, Transport> {
        let mut retried = false;
        loop {
            match self.with_auth(build()).send() {
                Ok(r) => return Ok(r),
                Err(e) if e.is_timeout() => return Err(Transport::Timeout(e.to_string())),
                Err(e) if e.is_connect() && !retried => {
                    tracing::debug!("retrying after connection error: {e}");
                    retried = true;
                }
                Err(e) => return Err(Transport::Connection(error_chain(&e))),
            }
        }
    }

    /// Runs one query. Failures of any kind come back as error outcomes.
    pub fn execute(&self, query: &str) -> QueryOutcome {
        if query.trim().is_empty() {
            return QueryOutcome::error(ErrorCategory::Configuration, "empty query");
        }
        let response = self.send(|| {
            self.http
                .post(self.config.query_url.clone())
                .header(reqwest::header::CONTENT_TYPE, SPARQL_QUERY)
                .header(reqwest::header::ACCEPT, format!("{RESULTS_JSON}, {RESULTS_XML};q=0.9"))
                .body(query.to_owned())
        });
        let response = match response {
            Ok(r) => r,
            Err(Transport::Timeout(m)) => return QueryOutcome::error(ErrorCategory::Timeout, m),
            Err(Transport::Connection(m)) => return QueryOutcome::error(ErrorCategory::Connection, m),
        };
        let status = response.status();
        let content_type = response
            .headers()
            .get(reqwest::header::CONTENT_TYPE)
            .and_then(|v| v.to_str().ok())
            .unwrap_or("")
            .to_owned();
        let body = match response.bytes() {
            Ok(b) => b,
            Err(e) if e.is_timeout() => return QueryOutcome::error(ErrorCategory::Timeout, e.to_string()),
            Err(e) => return QueryOutcome::error(ErrorCategory::Connection, error_chain(&e)),
        };
        if !status.is_success() {
            return QueryOutcome::error(ErrorCategory::Protocol, http_message(status, &body));
        }
        parse_results(&body, &content_type)
    }

    /// Runs queries with at most `parallelism` in flight. Results come back
    /// in input order.
    pub fn execute_all<K: Clone + Send + Sync>(&self, queries: &[(K, String)]) -> Vec<Execution<K>> {
        let workers = self.config.parallelism.min(queries.len()).max(1);
        let next = AtomicUsize::new(0);
        let slots: Mutex<Vec<Option<Execution<K>>>> = Mutex::new(vec![None; queries.len()]);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    let Some((key, query)) = queries.get(i) else { break };
                    let start = Instant::now();
                    let outcome = self.execute(query);
                    let done = Execution {
                        key: key.clone(),
                        outcome,
                        elapsed: start.elapsed(),
                    };
                    slots.lock().expect("result slots")[i] = Some(done);
                });
            }
        });
        slots
            .into_inner()
            .expect("result slots")
            .into_iter()
            .map(|e| e.expect("every query executed"))
            .collect()
    }

    fn graph_store_target(&self, base: &Url) -> Url {
        let mut url = base.clone();
        match &self.config.target_graph {
            Some(g) => url.query_pairs_mut().append_pair("graph", g.as_str()),
            None => url.query_pairs_mut().append_key_only("default"),
        };
        url
    }

    fn check_status(response: Result<Response, Transport>) -> Result<(), LoadError> {
        match response {
            Err(Transport::Timeout(m)) => Err(LoadError::Timeout(m)),
            Err(Transport::Connection(m)) => Err(LoadError::Connection(m)),
            Ok(r) if r.status().is_success() => Ok(()),
            Ok(r) => {
                let status = r.status();
                let body = r.bytes().unwrap_or_default();
                Err(LoadError::Http {
                    status: status.as_u16(),
                    body: truncate(&String::from_utf8_lossy(&body)),
                })
            }
        }
    }

    fn update(&self, url: &Url, text: String) -> Result<(), LoadError> {
        Self::check_status(self.send(|| {
            self.http
                .post(url.clone())
                .header(reqwest::header::CONTENT_TYPE, SPARQL_UPDATE)
                .body(text.clone())
        }))
    }

    fn graph_clause(&self) -> (String, String) {
        match &self.config.target_graph {
            Some(g) => (format!("GRAPH {g} {{ "), " }".into()),
            None => (String::new(), String::new()),
        }
    }

    /// Replaces the target graph with `triples`. A graph store PUT is tried
    /// first; the update endpoint is the fallback.
    pub fn load_dataset(&self, triples: &[Triple]) -> Result<LoadReport, LoadError> {
        self.config.check_loadable()?;
        if let Some(base) = &self.config.graph_store_url {
            let body = emit(triples, RdfFormat::Turtle).map_err(|e| LoadError::Serialization(e.to_string()))?;
            let url = self.graph_store_target(base);
            let put = Self::check_status(self.send(|| {
                self.http
                    .put(url.clone())
                    .header(reqwest::header::CONTENT_TYPE, RdfFormat::Turtle.media_type())
                    .body(body.clone())
            }));
            match put {
                Ok(()) => {
                    return Ok(LoadReport {
                        method: LoadMethod::GraphStorePut,
                        triples: triples.len(),
                    })
                }
                Err(e) if self.config.update_url.is_none() => return Err(e),
                Err(e) => tracing::warn!("graph store PUT failed ({e}); falling back to SPARQL Update"),
            }
        }
        let url = self.config.update_url.as_ref().expect("checked by check_loadable");
        self.update(url, self.drop_statement())?;
        let (open, close) = self.graph_clause();
        let mut batches = 0;
        for (index, chunk) in triples.chunks(INSERT_BATCH_SIZE).enumerate() {
            let body: String = chunk.iter().map(|t| format!("{t} .\n")).collect();
            self.update(url, format!("INSERT DATA {{ {open}\n{body}{close} }}"))
                .map_err(|e| LoadError::Batch {
                    index,
                    source: Box::new(e),
                })?;
            batches += 1;
        }
        Ok(LoadReport {
            method: LoadMethod::Update { batches },
            triples: triples.len(),
        })
    }

    fn drop_statement(&self) -> String {
        match &self.config.target_graph {
            Some(g) => format!("DROP SILENT GRAPH {g}"),
            None => "DROP SILENT DEFAULT".into(),
        }
    }

    /// Removes the loaded dataset again.
    pub fn drop_dataset(&self) -> Result<(), LoadError> {
        self.config.check_loadable()?;
        if let Some(base) = &self.config.graph_store_url {
            let url = self.graph_store_target(base);
            match self.send(|| self.http.delete(url.clone())) {
                Ok(r) if r.status().is_success() || r.status() == StatusCode::NOT_FOUND => return Ok(()),
                other if self.config.update_url.is_none() => return Self::check_status(other),
                _ => {}
            }
        }
        let url = self.config.update_url.as_ref().expect("checked by check_loadable");
        self.update(url, self.drop_statement())
    }
}

fn error_chain(e: &dyn std::error::Error) -> String {
    let mut message = e.to_string();
    let mut source = e.source();
    while let Some(s) = source {
        message.push_str(": ");
        message.push_str(&s.to_string());
        source = s.source();
    }
    message
}

fn truncate(text: &str) -> String {
    let text = text.trim();
    if text.len() <= MAX_ERROR_BODY {
        return text.to_owned();
    }
    let cut = (0..=MAX_ERROR_BODY)
        .rev()
        .find(|&i| text.is_char_boundary(i))
        .unwrap_or(0);
    format!("{}…", &text[..cut])
}

fn http_message(status: StatusCode, body: &[u8]) -> String {
    let body = truncate(&String::from_utf8_lossy(body));
    if body.is_empty() {
        format!("HTTP {}", status.as_u16())
    } else {
        format!("HTTP {}: {body}", status.as_u16())
    }
}
