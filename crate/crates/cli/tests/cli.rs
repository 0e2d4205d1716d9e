// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

use geobench_client::{EndpointConfig, SparqlClient};
use geobench_core::results::QueryOutcome;
use geobench_core::scoring::ComplianceReport;
use geobench_fixture::{FixtureServer, Profile};

fn geobench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geobench"))
        .args(args)
        .output()
        .unwrap()
}

fn run_against(server: &FixtureServer, dir: &Path, extra: &[&str]) -> Output {
    let urls = server.urls();
    let mut args = vec![
        "run",
        "--endpoint",
        &urls.query,
        "--graph-store",
        &urls.graph_store,
        "--output-dir",
        dir.to_str().unwrap(),
    ];
    args.extend_from_slice(extra);
    geobench(&args)
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// The JSON report with run-dependent fields blanked.
fn stable_json(dir: &Path) -> String {
    let mut report = ComplianceReport::from_json(&std::fs::read_to_string(dir.join("report.json")).unwrap()).unwrap();
    report.timestamp.clear();
    for t in report.requirements.iter_mut().flat_map(|r| &mut r.tests) {
        t.elapsed_ms = 0;
    }
    report.to_json()
}

#[test]
fn topology_vocabulary_selection_is_fully_correct() {
    let server = FixtureServer::start(Profile::full(), 0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let out = run_against(&server, dir.path(), &["--requirements", "21-24"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(stdout(&out).lines().next(), Some("100/100, 100.00%"));
    assert!(dir.path().join("report.md").exists());
}

#[test]
fn baseline_run_exits_one_and_repeats_identically() {
    let server = FixtureServer::start(Profile::baseline(), 0).unwrap();
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = run_against(&server, a.path(), &["--parallelism", "3"]);
    let second = run_against(&server, b.path(), &[]);
    for out in [&first, &second] {
        assert_eq!(out.status.code(), Some(1));
        assert_eq!(stdout(out).lines().next(), Some("46/206, 56.67%"));
    }
    assert!(stdout(&first).contains("GEOEXT Partial"));
    assert_eq!(stable_json(a.path()), stable_json(b.path()));
}

#[test]
fn selections_do_not_change_verdicts() {
    let server = FixtureServer::start(Profile::baseline(), 0).unwrap();
    let (all, some) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    run_against(&server, all.path(), &["--format", "json"]);
    run_against(
        &server,
        some.path(),
        &["--extensions", "GEOEXT,RDFSE", "--format", "json"],
    );
    assert!(!some.path().join("report.md").exists());
    let read =
        |d: &Path| ComplianceReport::from_json(&std::fs::read_to_string(d.join("report.json")).unwrap()).unwrap();
    let full = read(all.path());
    let subset = read(some.path());
    assert_eq!(subset.totals.total, 49 + 6);
    for r in &subset.requirements {
        let same = full.requirements.iter().find(|f| f.id == r.id).unwrap();
        let verdicts =
            |s: &geobench_core::scoring::RequirementScore| s.tests.iter().map(|t| t.verdict).collect::<Vec<_>>();
        assert_eq!(verdicts(r), verdicts(same), "requirement {}", r.id);
    }
}

#[test]
fn keep_data_leaves_the_dataset_loaded() {
    let server = FixtureServer::start(Profile::baseline_no_rdfs(), 0).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let client = SparqlClient::new(EndpointConfig::from_urls(&server.urls().query, None, None).unwrap()).unwrap();
    let loaded = || client.execute("ASK { ?s ?p ?o }");
    run_against(&server, dir.path(), &["--requirements", "1", "--keep-data"]);
    assert_eq!(loaded(), QueryOutcome::Boolean(true));
    run_against(&server, dir.path(), &["--requirements", "1"]);
    assert_eq!(loaded(), QueryOutcome::Boolean(false));
}

#[test]
fn load_failure_exits_two() {
    let port = std::net::TcpListener::bind("127.0.0.1:0")
        .unwrap()
        .local_addr()
        .unwrap()
        .port();
    let dir = tempfile::tempdir().unwrap();
    let endpoint = format!("http://127.0.0.1:{port}/sparql");
    let graph_store = format!("http://127.0.0.1:{port}/data");
    let out = geobench(&[
        "run",
        "--endpoint",
        &endpoint,
        "--graph-store",
        &graph_store,
        "--output-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dataset load failed"));
    assert!(!dir.path().join("report.json").exists());

    let out = geobench(&["run", "--endpoint", &endpoint]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_selections_exit_two() {
    let out = geobench(&[
        "run",
        "--endpoint",
        "http://127.0.0.1:9/sparql",
        "--graph-store",
        "http://127.0.0.1:9/data",
        "--requirements",
        "17",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("requirement 17 has no tests"));
}

#[test]
fn catalog_commands() {
    let out = geobench(&["catalog", "validate"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "catalog ok: 206 tests\n");
    let out = geobench(&["catalog", "list", "--extension", "GTOP"]);
    assert_eq!(stdout(&out).lines().count(), 100);
    let out = geobench(&["catalog", "list"]);
    let listing = stdout(&out);
    assert_eq!(listing.lines().count(), 206);
    assert!(listing
        .lines()
        .any(|l| l.contains(" 1/54 ") && l.ends_with("req19-distance-wkt-gml")));
    assert_eq!(
        geobench(&["catalog", "list", "--extension", "NOPE"]).status.code(),
        Some(2)
    );
}

#[test]
fn dataset_emit_parses_back() {
    use geobench_core::dataset::{build_dataset, parse_rdf, RdfFormat};
    let expected = build_dataset().all_triples().len();
    for (flag, format) in [("ttl", RdfFormat::Turtle), ("rdfxml", RdfFormat::RdfXml)] {
        let out = geobench(&["dataset", "emit", "--format", flag]);
        assert!(out.status.success());
        assert_eq!(parse_rdf(&out.stdout, format).unwrap().len(), expected, "{flag}");
    }
}
