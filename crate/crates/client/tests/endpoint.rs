// SPDX-License-Identifier: Apache-2.0

use std::io::{Read, Write};
use std::net::TcpListener;

use geobench_client::{EndpointConfig, LoadError, LoadMethod, SparqlClient};
use geobench_core::dataset::build_dataset;
use geobench_core::results::{ErrorCategory, QueryOutcome};
use geobench_core::vocab::{sparql_prologue, WKT_LITERAL};
use geobench_fixture::{FixtureServer, Profile};
use oxrdf::{NamedNode, Term};

fn config(server: &FixtureServer, graph_store: bool, update: bool) -> EndpointConfig {
    let urls = server.urls();
    EndpointConfig::from_urls(
        &urls.query,
        update.then_some(urls.update.as_str()),
        graph_store.then_some(urls.graph_store.as_str()),
    )
    .unwrap()
}

fn count(client: &SparqlClient) -> usize {
    let outcome = client.execute("SELECT (COUNT(*) AS ?n) WHERE { ?s ?p ?o }");
    let QueryOutcome::Solutions(s) = outcome else {
        panic!("{outcome:?}")
    };
    match s.get(0, "n") {
        Some(Term::Literal(l)) => l.value().parse().unwrap(),
        other => panic!("{other:?}"),
    }
}

#[test]
fn put_then_count() {
    // Without entailment the store holds exactly what was loaded.
    let server = FixtureServer::start(Profile::baseline_no_rdfs(), 0).unwrap();
    let client = SparqlClient::new(config(&server, true, false)).unwrap();
    let triples = build_dataset().all_triples();
    let report = client.load_dataset(&triples).unwrap();
    assert_eq!(report.method, LoadMethod::GraphStorePut);
    assert_eq!(count(&client), triples.len());
    assert_eq!(client.execute("ASK {}"), QueryOutcome::Boolean(true));

    client.drop_dataset().unwrap();
    assert_eq!(count(&client), 0);
    let outcome = client.execute("SELECT ?s WHERE { ?s ?p ?o }");
    let QueryOutcome::Solutions(s) = outcome else { panic!() };
    assert!(s.rows.is_empty());
}

#[test]
fn update_fallback_loads_in_batches() {
    let server = FixtureServer::start(Profile::baseline_no_rdfs(), 0).unwrap();
    let mut cfg = config(&server, false, true);
    cfg.target_graph = Some(NamedNode::new("http://example.org/bench").unwrap());
    let client = SparqlClient::new(cfg).unwrap();
    let triples = build_dataset().all_triples();
    let report = client.load_dataset(&triples).unwrap();
    assert_eq!(
        report.method,
        LoadMethod::Update {
            batches: triples.len().div_ceil(500)
        }
    );
    assert_eq!(count(&client), triples.len());
    // Loading twice replaces rather than duplicates.
    client.load_dataset(&triples).unwrap();
    assert_eq!(count(&client), triples.len());
    client.drop_dataset().unwrap();
    assert_eq!(count(&client), 0);
}

#[test]
fn missing_load_urls_fail_before_any_request() {
    // Nothing listens on port 9 of a documentation address; a request would time out.
    let cfg = EndpointConfig::from_urls("http://192.0.2.1:9/sparql", None, None).unwrap();
    let client = SparqlClient::new(cfg).unwrap();
    let start = std::time::Instant::now();
    assert!(matches!(client.load_dataset(&[]), Err(LoadError::Configuration(_))));
    assert!(start.elapsed().as_millis() < 100);
}

fn closed_port() -> u16 {
    let l = TcpListener::bind("127.0.0.1:0").unwrap();
    l.local_addr().unwrap().port()
}

#[test]
fn unreachable_host_is_a_connection_error() {
    let port = closed_port();
    let cfg = EndpointConfig::from_urls(
        &format!("http://127.0.0.1:{port}/sparql"),
        None,
        Some(&format!("http://127.0.0.1:{port}/data")),
    )
    .unwrap();
    let client = SparqlClient::new(cfg).unwrap();
    match client.execute("ASK {}") {
        QueryOutcome::Error(e) => assert_eq!(e.category, ErrorCategory::Connection),
        other => panic!("{other:?}"),
    }
    assert!(matches!(client.load_dataset(&[]), Err(LoadError::Connection(_))));
}

/// Answers every request with the given status line and body.
fn canned_server(status: &'static str, body: &'static str) -> u16 {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = listener.local_addr().unwrap().port();
    std::thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(mut stream) = stream else { continue };
            let mut buf = [0u8; 65536];
            let _ = stream.read(&mut buf);
            let response = format!(
                "HTTP/1.1 {status}\r\nContent-Type: text/plain\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            let _ = stream.write_all(response.as_bytes());
        }
    });
    port
}

#[test]
fn http_errors_become_protocol_outcomes() {
    let port = canned_server("500 Internal Server Error", "boom");
    let cfg = EndpointConfig::from_urls(&format!("http://127.0.0.1:{port}/sparql"), None, None).unwrap();
    let client = SparqlClient::new(cfg).unwrap();
    match client.execute("ASK {}") {
        QueryOutcome::Error(e) => {
            assert_eq!(e.category, ErrorCategory::Protocol);
            assert_eq!(e.message, "HTTP 500: boom");
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn unparseable_bodies_are_malformed_results() {
    let port = canned_server("200 OK", "this is not a result document");
    let cfg = EndpointConfig::from_urls(&format!("http://127.0.0.1:{port}/sparql"), None, None).unwrap();
    let client = SparqlClient::new(cfg).unwrap();
    match client.execute("ASK {}") {
        QueryOutcome::Error(e) => assert_eq!(e.category, ErrorCategory::MalformedResults),
        other => panic!("{other:?}"),
    }
}

#[test]
fn results_keep_datatypes_and_unknown_functions_fail() {
    let server = FixtureServer::start(Profile::baseline(), 0).unwrap();
    let client = SparqlClient::new(config(&server, true, false)).unwrap();
    client.load_dataset(&build_dataset().all_triples()).unwrap();
    let q = format!("{}SELECT ?w WHERE {{ my:AExactGeom geo:asWKT ?w }}", sparql_prologue());
    let QueryOutcome::Solutions(s) = client.execute(&q) else {
        panic!()
    };
    match s.get(0, "w") {
        Some(Term::Literal(l)) => assert_eq!(l.datatype().as_str(), WKT_LITERAL),
        other => panic!("{other:?}"),
    }
    let q = format!(
        "{}SELECT (geof:sfEquals(?a, ?a) AS ?r) WHERE {{ my:AExactGeom geo:asWKT ?a }}",
        sparql_prologue()
    );
    match client.execute(&q) {
        QueryOutcome::Error(e) => {
            assert_eq!(e.category, ErrorCategory::Protocol);
            assert!(e.message.starts_with("HTTP 400"), "{}", e.message);
            assert!(e.message.contains("unknown function"), "{}", e.message);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn parallel_execution_keeps_input_order() {
    let server = FixtureServer::start(Profile::full(), 0).unwrap();
    let mut cfg = config(&server, true, false);
    cfg.parallelism = 4;
    let client = SparqlClient::new(cfg).unwrap();
    client.load_dataset(&build_dataset().all_triples()).unwrap();
    let queries: Vec<(usize, String)> = (0..20)
        .map(|i| (i, format!("SELECT ?n WHERE {{ BIND({i} AS ?n) }}")))
        .collect();
    let out = client.execute_all(&queries);
    for (i, e) in out.iter().enumerate() {
        assert_eq!(e.key, i);
        let QueryOutcome::Solutions(s) = &e.outcome else {
            panic!()
        };
        match s.get(0, "n") {
            Some(Term::Literal(l)) => assert_eq!(l.value(), i.to_string()),
            other => panic!("{other:?}"),
        }
    }
}

#[test]
fn empty_query_is_rejected_locally() {
    let cfg = EndpointConfig::from_urls("http://192.0.2.1:9/sparql", None, None).unwrap();
    let client = SparqlClient::new(cfg).unwrap();
    match client.execute("  ") {
        QueryOutcome::Error(e) => assert_eq!(e.category, ErrorCategory::Configuration),
        other => panic!("{other:?}"),
    }
}
