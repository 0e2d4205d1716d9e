// SPDX-License-Identifier: Apache-2.0

//! HTTP routes: `/sparql`, `/data` and `/update`.

use std::io;
use std::net::{Ipv4Addr, SocketAddr};
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{RawQuery, State};
use axum::http::{header, HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use geobench_core::dataset::{emit, parse_rdf, RdfFormat};
use geobench_core::results::{render_results, ResultsFormat};
use oxrdf::{GraphName, NamedNode, Triple};
use spargebra::algebra::GraphTarget;
use spargebra::term::GraphName as QueryGraphName;
use spargebra::{GraphUpdateOperation, SparqlParser};
use tokio::net::TcpListener;
use tokio::sync::oneshot;

use crate::eval::evaluate;
use crate::store::{Snapshot, Store};
use crate::{EndpointUrls, Profile};

struct Inner {
    store: Store,
    snapshot: Arc<Snapshot>,
}

#[derive(Clone)]
struct Shared {
    profile: Arc<Profile>,
    inner: Arc<RwLock<Inner>>,
}

impl Shared {
    fn snapshot(&self) -> Arc<Snapshot> {
        self.inner.read().expect("store lock").snapshot.clone()
    }

    /// Applies a mutation and rebuilds the snapshot while holding the write lock.
    fn mutate<T>(&self, f: impl FnOnce(&mut Store) -> T) -> T {
        let mut inner = self.inner.write().expect("store lock");
        let out = f(&mut inner.store);
        inner.snapshot = Arc::new(inner.store.snapshot(&self.profile));
        out
    }
}

/// The endpoint's routes over a fresh, empty store.
pub fn router(profile: Profile) -> Router {
    let shared = Shared {
        inner: Arc::new(RwLock::new(Inner {
            store: Store::new(),
            snapshot: Arc::new(Snapshot::default()),
        })),
        profile: Arc::new(profile),
    };
    Router::new()
        .route("/sparql", get(query_get).post(query_post))
        .route("/data", get(graph_get).put(graph_put).delete(graph_delete))
        .route("/update", post(update))
        .with_state(shared)
}

/// Serves the endpoint on an already-bound listener until `shutdown` resolves.
pub async fn serve(
    profile: Profile,
    listener: TcpListener,
    shutdown: impl std::future::Future<Output = ()> + Send + 'static,
) -> io::Result<()> {
    axum::serve(listener, router(profile))
        .with_graceful_shutdown(shutdown)
        .await
}

/// An endpoint running on a background thread with its own runtime.
pub struct FixtureServer {
    addr: SocketAddr,
    shutdown: Option<oneshot::Sender<()>>,
    thread: Option<std::thread::JoinHandle<io::Result<()>>>,
}

impl FixtureServer {
    /// Binds `127.0.0.1:port` (0 picks a free port) and starts serving.
    pub fn start(profile: Profile, port: u16) -> io::Result<FixtureServer> {
        let std_listener = std::net::TcpListener::bind((Ipv4Addr::LOCALHOST, port))?;
        std_listener.set_nonblocking(true)?;
        let addr = std_listener.local_addr()?;
        let (tx, rx) = oneshot::channel::<()>();
        let thread = std::thread::Builder::new()
            .name(format!("fixture-{}", profile.name))
            .spawn(move || {
                let runtime = tokio::runtime::Builder::new_multi_thread()
                    .worker_threads(2)
                    .enable_all()
                    .build()?;
                runtime.block_on(async move {
                    let listener = TcpListener::from_std(std_listener)?;
                    serve(profile, listener, async {
                        let _ = rx.await;
                    })
                    .await
                })
            })?;
        Ok(FixtureServer {
            addr,
            shutdown: Some(tx),
            thread: Some(thread),
        })
    }

    pub fn addr(&self) -> SocketAddr {
        self.addr
    }

    pub fn urls(&self) -> EndpointUrls {
        EndpointUrls::for_addr(self.addr)
    }

    /// Stops the server and waits for its thread.
    pub fn stop(mut self) -> io::Result<()> {
        self.shutdown_now()
    }

    fn shutdown_now(&mut self) -> io::Result<()> {
        if let Some(tx) = self.shutdown.take() {
            let _ = tx.send(());
        }
        match self.thread.take() {
            Some(t) => t
                .join()
                .unwrap_or_else(|_| Err(io::Error::other("fixture thread panicked"))),
            None => Ok(()),
        }
    }
}

impl Drop for FixtureServer {
    fn drop(&mut self) {
        let _ = self.shutdown_now();
    }
}

fn params(raw: Option<&str>) -> Vec<(String, String)> {
    raw.map(|q| url::form_urlencoded::parse(q.as_bytes()).into_owned().collect())
        .unwrap_or_default()
}

fn param<'a>(params: &'a [(String, String)], key: &str) -> Option<&'a str> {
    params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

fn media_type(headers: &HeaderMap) -> String {
    headers
        .get(header::CONTENT_TYPE)
        .and_then(|v| v.to_str().ok())
        .and_then(|v| v.split(';').next())
        .map(|v| v.trim().to_ascii_lowercase())
        .unwrap_or_default()
}

fn bad_request(message: impl Into<String>) -> Response {
    (StatusCode::BAD_REQUEST, message.into()).into_response()
}

/// Picks the results format with the highest `q` in the Accept header; JSON
/// when neither is mentioned.
fn negotiate(headers: &HeaderMap) -> ResultsFormat {
    let Some(accept) = headers.get(header::ACCEPT).and_then(|v| v.to_str().ok()) else {
        return ResultsFormat::Json;
    };
    let mut best: Option<(f32, ResultsFormat)> = None;
    for item in accept.split(',') {
        let mut parts = item.split(';');
        let media = parts.next().unwrap_or("").trim().to_ascii_lowercase();
        let q = parts
            .filter_map(|p| p.trim().strip_prefix("q="))
            .find_map(|q| q.parse::<f32>().ok())
            .unwrap_or(1.0);
        let format = match media.as_str() {
            "application/sparql-results+json" | "application/json" => ResultsFormat::Json,
            "application/sparql-results+xml" | "application/xml" | "text/xml" => ResultsFormat::Xml,
            _ => continue,
        };
        if best.is_none_or(|(bq, _)| q > bq) {
            best = Some((q, format));
        }
    }
    best.map_or(ResultsFormat::Json, |(_, f)| f)
}

async fn run_query(shared: Shared, headers: HeaderMap, query: String) -> Response {
    if query.trim().is_empty() {
        return bad_request("missing query");
    }
    let format = negotiate(&headers);
    let snapshot = shared.snapshot();
    let profile = shared.profile.clone();
    let outcome = tokio::task::spawn_blocking(move || evaluate(&snapshot, &profile, &query)).await;
    match outcome {
        Ok(Ok(outcome)) => match render_results(&outcome, format) {
            Some(body) => ([(header::CONTENT_TYPE, format.media_type())], body).into_response(),
            None => (StatusCode::INTERNAL_SERVER_ERROR, "unrenderable outcome").into_response(),
        },
        // Unknown functions, syntax outside the subset and parse errors alike.
        Ok(Err(e)) => bad_request(e.to_string()),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

async fn query_get(State(shared): State<Shared>, RawQuery(raw): RawQuery, headers: HeaderMap) -> Response {
    let params = params(raw.as_deref());
    match param(&params, "query") {
        Some(q) => run_query(shared, headers, q.to_owned()).await,
        None => bad_request("missing query parameter"),
    }
}

async fn query_post(State(shared): State<Shared>, headers: HeaderMap, body: Bytes) -> Response {
    let text = String::from_utf8_lossy(&body).into_owned();
    match media_type(&headers).as_str() {
        "application/sparql-query" => run_query(shared, headers, text).await,
        "application/x-www-form-urlencoded" => match param(&params(Some(&text)), "query") {
            Some(q) => run_query(shared, headers.clone(), q.to_owned()).await,
            None => bad_request("missing query parameter"),
        },
        other => (
            StatusCode::UNSUPPORTED_MEDIA_TYPE,
            format!("unsupported content type {other:?}"),
        )
            .into_response(),
    }
}

#[allow(clippy::result_large_err)]
fn target_graph(raw: Option<&str>) -> Result<GraphName, Response> {
    let params = params(raw);
    match (param(&params, "graph"), params.iter().any(|(k, _)| k == "default")) {
        (Some(iri), false) => NamedNode::new(iri)
            .map(GraphName::from)
            .map_err(|e| bad_request(format!("invalid graph IRI: {e}"))),
        (None, true) => Ok(GraphName::DefaultGraph),
        _ => Err(bad_request("expected exactly one of ?graph=IRI or ?default")),
    }
}

async fn graph_get(State(shared): State<Shared>, RawQuery(raw): RawQuery) -> Response {
    let graph = match target_graph(raw.as_deref()) {
        Ok(g) => g,
        Err(r) => return r,
    };
    let triples = shared.inner.read().expect("store lock").store.graph(&graph);
    match triples {
        None => (StatusCode::NOT_FOUND, "no such graph").into_response(),
        Some(triples) => match emit(&triples, RdfFormat::Turtle) {
            Ok(body) => ([(header::CONTENT_TYPE, RdfFormat::Turtle.media_type())], body).into_response(),
            Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
        },
    }
}

async fn graph_put(State(shared): State<Shared>, RawQuery(raw): RawQuery, headers: HeaderMap, body: Bytes) -> Response {
    let graph = match target_graph(raw.as_deref()) {
        Ok(g) => g,
        Err(r) => return r,
    };
    let media = media_type(&headers);
    let format = match media.as_str() {
        "application/n-triples" => RdfFormat::Turtle,
        m => match RdfFormat::from_media_type(m) {
            Some(f) => f,
            None => {
                return (
                    StatusCode::UNSUPPORTED_MEDIA_TYPE,
                    format!("unsupported content type {media:?}"),
                )
                    .into_response()
            }
        },
    };
    let triples = match tokio::task::spawn_blocking(move || parse_rdf(&body, format)).await {
        Ok(Ok(t)) => t,
        Ok(Err(e)) => return bad_request(e.to_string()),
        Err(e) => return (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    };
    let existed = tokio::task::spawn_blocking(move || shared.mutate(|s| s.replace_graph(graph, triples)))
        .await
        .unwrap_or(true);
    if existed {
        StatusCode::NO_CONTENT.into_response()
    } else {
        StatusCode::CREATED.into_response()
    }
}

async fn graph_delete(State(shared): State<Shared>, RawQuery(raw): RawQuery) -> Response {
    let graph = match target_graph(raw.as_deref()) {
        Ok(g) => g,
        Err(r) => return r,
    };
    if shared.mutate(|s| s.drop_graph(&graph)) {
        StatusCode::NO_CONTENT.into_response()
    } else {
        (StatusCode::NOT_FOUND, "no such graph").into_response()
    }
}

async fn update(State(shared): State<Shared>, headers: HeaderMap, body: Bytes) -> Response {
    let text = String::from_utf8_lossy(&body).into_owned();
    let text = match media_type(&headers).as_str() {
        "application/sparql-update" => text,
        "application/x-www-form-urlencoded" => match param(&params(Some(&text)), "update") {
            Some(u) => u.to_owned(),
            None => return bad_request("missing update parameter"),
        },
        other => {
            return (
                StatusCode::UNSUPPORTED_MEDIA_TYPE,
                format!("unsupported content type {other:?}"),
            )
                .into_response()
        }
    };
    let parsed = match SparqlParser::new().parse_update(&text) {
        Ok(u) => u,
        Err(e) => return bad_request(format!("syntax error: {e}")),
    };
    let mut ops = Vec::new();
    for op in parsed.operations {
        match op {
            GraphUpdateOperation::InsertData { data } => {
                for q in data {
                    ops.push(Op::Insert(
                        graph_name(&q.graph_name),
                        Triple::new(q.subject, q.predicate, q.object),
                    ));
                }
            }
            GraphUpdateOperation::DeleteData { data } => {
                for q in data {
                    let object: oxrdf::Term = match q.object {
                        spargebra::term::GroundTerm::NamedNode(n) => n.into(),
                        spargebra::term::GroundTerm::Literal(l) => l.into(),
                    };
                    ops.push(Op::Delete(
                        graph_name(&q.graph_name),
                        Triple::new(q.subject, q.predicate, object),
                    ));
                }
            }
            GraphUpdateOperation::Drop { silent, graph } | GraphUpdateOperation::Clear { silent, graph } => {
                ops.push(Op::Drop(graph, silent))
            }
            GraphUpdateOperation::Create { .. } => {}
            _ => return bad_request("unsupported update operation"),
        }
    }
    let result = shared.mutate(|store| {
        for op in ops {
            match op {
                Op::Insert(g, t) => store.insert(g, [t]),
                Op::Delete(g, t) => store.remove(&g, &[t]),
                Op::Drop(GraphTarget::NamedNode(n), silent) => {
                    if !store.drop_graph(&n.into()) && !silent {
                        return Err("no such graph");
                    }
                }
                Op::Drop(GraphTarget::DefaultGraph, _) => {
                    store.drop_graph(&GraphName::DefaultGraph);
                }
                Op::Drop(GraphTarget::NamedGraphs, _) => {
                    for g in store.graph_names() {
                        if g != GraphName::DefaultGraph {
                            store.drop_graph(&g);
                        }
                    }
                }
                Op::Drop(GraphTarget::AllGraphs, _) => store.clear(),
            }
        }
        Ok(())
    });
    match result {
        Ok(()) => StatusCode::NO_CONTENT.into_response(),
        Err(message) => (StatusCode::NOT_FOUND, message).into_response(),
    }
}

enum Op {
    Insert(GraphName, Triple),
    Delete(GraphName, Triple),
    Drop(GraphTarget, bool),
}

fn graph_name(g: &QueryGraphName) -> GraphName {
    match g {
        QueryGraphName::NamedNode(n) => n.clone().into(),
        QueryGraphName::DefaultGraph => GraphName::DefaultGraph,
    }
}
