// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance checks. Each criterion prints one PASS or FAIL line;
//! the process fails if any criterion fails.

use std::collections::BTreeMap;
use std::io::{BufRead, BufReader, Read, Write};
use std::net::TcpListener;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;

use geobench_cli::{run_benchmark, RunConfig};
use geobench_client::EndpointConfig;
use geobench_core::catalog::{builtin_catalog, validate_catalog, RequirementId};
use geobench_core::checker::{normalize_gml, normalize_wkt, TestResult, Verdict};
use geobench_core::dataset::{dataset_geometries, GeometryRole};
use geobench_core::geometry::{
    geometry_equals, relate_matrix, serialize, Geometry, GeometryLiteral, Serialization, TopologicalRelation,
};
use geobench_core::results::{parse_results, render_results, ResultsFormat};
use geobench_core::scoring::{score, ComplianceReport};
use geobench_fixture::{FixtureServer, Profile};
use geobench_testkit::oracle::sample_all_pairs;
use geobench_testkit::strategies::{any_geometry, outcome};
use num_rational::Ratio;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, TestRunner};

type R = Ratio<i64>;

/// Tests per requirement, 1 through 30.
const COUNTS: [usize; 30] = [
    1, 1, 1, 8, 8, 8, 1, 2, 6, 1, 1, 1, 2, 1, 1, 2, 0, 1, 28, 2, 4, 32, 32, 32, 3, 2, 1, 8, 8, 8,
];

fn criterion_1() {
    let catalog = builtin_catalog().unwrap();
    assert!(validate_catalog(&catalog).is_empty());
    assert_eq!(catalog.len(), 206);
    assert_eq!(COUNTS.iter().sum::<usize>(), 206);
    for (i, &expected) in COUNTS.iter().enumerate() {
        let r = RequirementId::new(u8::try_from(i + 1).unwrap()).unwrap();
        assert_eq!(catalog.tests_for(r).count(), expected, "requirement {r}");
    }
    let r19 = catalog.tests_for(RequirementId::new(19).unwrap()).count();
    assert_eq!(r19, 28);
}

fn fixture_run(profile: Profile, dir: &std::path::Path) -> ComplianceReport {
    let server = FixtureServer::start(profile, 0).unwrap();
    let urls = server.urls();
    let endpoint = EndpointConfig::from_urls(&urls.query, Some(&urls.update), Some(&urls.graph_store)).unwrap();
    let mut config = RunConfig::new(endpoint, dir);
    config.endpoint.parallelism = 4;
    run_benchmark(&config).unwrap()
}

fn criterion_2() {
    let dir = tempfile::tempdir().unwrap();
    let expected = [
        (Profile::full(), "206/206, 100.00%", 0),
        (Profile::baseline(), "46/206, 56.67%", 1),
        (Profile::baseline_no_rdfs(), "40/206, 46.67%", 1),
    ];
    for (profile, line, exit) in expected {
        let name = profile.name;
        let report = fixture_run(profile, dir.path());
        assert_eq!(report.summary(), line, "{name}");
        assert_eq!(report.exit_code(), exit, "{name}");
        let json: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
        let totals = &json["totals"];
        assert_eq!(
            format!(
                "{}/{}, {}%",
                totals["correct"],
                totals["total"],
                totals["compliance_percent"].as_str().unwrap()
            ),
            line
        );
    }
}

fn criterion_3() {
    let catalog = builtin_catalog().unwrap();
    let results: Vec<TestResult> = catalog
        .tests
        .iter()
        .map(|t| TestResult {
            test_id: t.id.clone(),
            verdict: if t.id == "req04-sfEquals" {
                Verdict::Correct
            } else {
                Verdict::Incorrect
            },
            matched_alternative: None,
            received: serde_json::Value::Null,
            elapsed_ms: 0,
        })
        .collect();
    let report = score(&catalog, &results, "single").unwrap();
    // One of eight req-4 tests, plus the credit for the requirement without tests.
    let expected = R::new(1, 30) * R::new(1, 8) + R::new(1, 30);
    assert_eq!(expected, R::new(3, 80));
    assert_eq!(report.totals.compliance, expected);
    assert_eq!(report.totals.compliance_percent, "3.75");
}

fn criterion_4() {
    const SUFFIXES: [(&str, (i64, i64)); 4] = [
        ("-wkt-wkt", (1, 3)),
        ("-gml-gml", (1, 3)),
        ("-wkt-gml", (1, 6)),
        ("-gml-wkt", (1, 6)),
    ];
    let catalog = builtin_catalog().unwrap();
    let mut groups: BTreeMap<&str, Vec<(&str, R)>> = BTreeMap::new();
    for t in &catalog.tests {
        for (suffix, _) in SUFFIXES {
            if let Some(base) = t.id.strip_suffix(suffix) {
                groups.entry(base).or_default().push((suffix, t.weight));
            }
        }
    }
    assert!(groups.len() >= 4 + 24, "{} groups", groups.len());
    for (base, members) in &groups {
        assert_eq!(members.len(), 4, "{base}");
        let total: R = members.iter().map(|(_, w)| *w).sum();
        for (suffix, (n, d)) in SUFFIXES {
            let w = members.iter().find(|(s, _)| *s == suffix).unwrap().1;
            assert_eq!(w / total, R::new(n, d), "{base}{suffix}");
        }
    }
}

fn criterion_5() {
    let geoms = dataset_geometries();
    let exact = |f: &str| {
        geoms
            .iter()
            .find(|g| g.feature == f && g.role == GeometryRole::Exact)
            .unwrap()
    };
    let parse = |f: &str, s: Serialization| GeometryLiteral::parse(s, exact(f).literal(s)).unwrap().parsed;
    for s in [Serialization::Wkt, Serialization::Gml] {
        assert!(geometry_equals(&parse("J", s), &parse("K", s), 0.0), "J K {s:?}");
        assert!(geometry_equals(&parse("L", s), &parse("M", s), 0.0), "L M {s:?}");
        assert!(geometry_equals(&parse("H", s), &parse("I", s), 0.0), "H I {s:?}");
    }
    assert_eq!(exact("H").wkt, "");
    assert_eq!(exact("I").wkt, "LineString EMPTY");
}

fn criterion_6() {
    use TopologicalRelation::*;
    let geometries: Vec<Geometry> = dataset_geometries()
        .into_iter()
        .map(|g| g.geometry)
        .filter(|g| !g.is_empty())
        .collect();
    let mut pairs = 0;
    for (i, j, oracle) in sample_all_pairs(&geometries) {
        let (a, b) = (&geometries[i], &geometries[j]);
        assert_eq!(
            relate_matrix(a, b).unwrap().to_string(),
            oracle.unwrap(),
            "pair {i} {j}"
        );
        let holds = |r: TopologicalRelation, x: &Geometry, y: &Geometry| r.holds(x, y).unwrap();
        for (r, converse) in [(SfContains, SfWithin), (EhCovers, EhCoveredBy), (Rcc8Tppi, Rcc8Tpp)] {
            assert_eq!(holds(r, a, b), holds(converse, b, a), "{r:?} pair {i} {j}");
        }
        assert_eq!(holds(SfDisjoint, a, b), !holds(SfIntersects, a, b), "pair {i} {j}");
        pairs += 1;
    }
    assert_eq!(pairs, geometries.len() * geometries.len());
}

fn round_trip(g: &Geometry) {
    for s in [Serialization::Wkt, Serialization::Gml] {
        let text = serialize(g, s, true);
        assert_eq!(&GeometryLiteral::parse(s, &text).unwrap().parsed, g, "{text}");
    }
}

fn idempotent(wkt: &str, gml: &str) {
    let w = normalize_wkt(wkt);
    assert_eq!(normalize_wkt(&w), w);
    let g = normalize_gml(gml).unwrap();
    assert_eq!(normalize_gml(&g).unwrap(), g);
}

fn criterion_7() {
    for d in dataset_geometries() {
        for s in [Serialization::Wkt, Serialization::Gml] {
            let parsed = GeometryLiteral::parse(s, d.literal(s)).unwrap().parsed;
            assert!(geometry_equals(&parsed, &d.geometry, 0.0), "{} {s:?}", d.local_name());
        }
        round_trip(&d.geometry);
        if !d.gml.is_empty() {
            idempotent(&d.wkt, &d.gml);
        }
    }
    let mut runner = TestRunner::deterministic();
    let strategy = any_geometry();
    for _ in 0..200 {
        let g = strategy.new_tree(&mut runner).unwrap().current();
        round_trip(&g);
        idempotent(
            &serialize(&g, Serialization::Wkt, true),
            &serialize(&g, Serialization::Gml, true),
        );
    }
}

fn criterion_8() {
    let mut runner = TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(100)
    });
    runner
        .run(&outcome(), |o| {
            for format in [ResultsFormat::Xml, ResultsFormat::Json] {
                let body = render_results(&o, format).unwrap();
                proptest::prop_assert_eq!(&parse_results(body.as_bytes(), format.media_type()), &o, "{}", body);
            }
            Ok(())
        })
        .unwrap();
}

/// Accepts graph store writes and answers every query with HTTP 500.
fn failing_endpoint() -> u16 {
    let listener = TcpListener::bind("127.0.0.1:0").unwrap();
    let port = listener.local_addr().unwrap().port();
    std::thread::spawn(move || {
        for stream in listener.incoming() {
            let Ok(stream) = stream else { continue };
            let mut reader = BufReader::new(stream);
            let mut head = String::new();
            let mut length = 0usize;
            loop {
                let mut line = String::new();
                if reader.read_line(&mut line).unwrap_or(0) == 0 || line == "\r\n" {
                    break;
                }
                if let Some(v) = line.to_ascii_lowercase().strip_prefix("content-length:") {
                    length = v.trim().parse().unwrap_or(0);
                }
                head.push_str(&line);
            }
            let mut body = vec![0u8; length];
            let _ = reader.read_exact(&mut body);
            let status = if head.starts_with("POST /sparql") {
                "500 Internal Server Error"
            } else {
                "204 No Content"
            };
            let body = if status.starts_with("500") {
                "internal error"
            } else {
                ""
            };
            let response = format!(
                "HTTP/1.1 {status}\r\nContent-Type: text/plain\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
                body.len()
            );
            let _ = reader.get_mut().write_all(response.as_bytes());
        }
    });
    port
}

fn criterion_9() {
    let port = failing_endpoint();
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_geobench"))
        .args([
            "run",
            "--endpoint",
            &format!("http://127.0.0.1:{port}/sparql"),
            "--graph-store",
            &format!("http://127.0.0.1:{port}/data"),
            "--output-dir",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert_eq!(
        out.status.code(),
        Some(1),
        "{stdout}{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout.lines().next(), Some("0/206, 0.00%"));
    let report =
        ComplianceReport::from_json(&std::fs::read_to_string(dir.path().join("report.json")).unwrap()).unwrap();
    assert_eq!(report.totals.correct, 0);
    let verdicts: Vec<Verdict> = report
        .requirements
        .iter()
        .flat_map(|r| &r.tests)
        .map(|t| t.verdict)
        .collect();
    assert_eq!(verdicts.len(), 206);
    assert!(verdicts.iter().all(|v| *v == Verdict::Error));
}

fn main() {
    let criteria: [(&str, fn()); 9] = [
        (
            "catalog has 206 tests with the expected per-requirement counts",
            criterion_1,
        ),
        (
            "score lines over HTTP: full 206/100.00, baseline 46/56.67, no-rdfs 40/46.67",
            criterion_2,
        ),
        ("a single req-4 test scores exactly 3/80, rendered 3.75%", criterion_3),
        ("binary function groups split 1/3, 1/3, 1/6, 1/6", criterion_4),
        ("J=K, L=M and the empty H/I pairs are equal in WKT and GML", criterion_5),
        (
            "DE-9IM oracle agreement and converse identities on dataset pairs",
            criterion_6,
        ),
        ("WKT and GML round trips and normalization idempotence", criterion_7),
        (
            "100 random outcomes round-trip through XML and JSON results",
            criterion_8,
        ),
        (
            "an endpoint failing every query scores 0/206, 0.00%, exit 1",
            criterion_9,
        ),
    ];
    std::panic::set_hook(Box::new(|info| eprintln!("    {info}")));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let ok = catch_unwind(AssertUnwindSafe(check)).is_ok();
        println!("criterion {}: {} ... {}", i + 1, name, if ok { "PASS" } else { "FAIL" });
        failed += usize::from(!ok);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
