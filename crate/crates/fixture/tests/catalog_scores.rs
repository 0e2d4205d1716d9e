// SPDX-License-Identifier: Apache-2.0

use geobench_core::catalog::builtin_catalog;
use geobench_core::checker::check;
use geobench_core::dataset::build_dataset;
use geobench_core::results::{ErrorCategory, QueryOutcome};
use geobench_core::scoring::{score, ComplianceReport};
use geobench_fixture::{evaluate, Profile, Snapshot};

fn run(profile: Profile) -> ComplianceReport {
    let catalog = builtin_catalog().unwrap();
    let snapshot = Snapshot::build(build_dataset().all_triples(), &profile);
    let results: Vec<_> = catalog
        .tests
        .iter()
        .map(|t| {
            let outcome = evaluate(&snapshot, &profile, &t.query)
                .unwrap_or_else(|e| QueryOutcome::error(ErrorCategory::Protocol, e.to_string()));
            check(t, &outcome)
        })
        .collect();
    score(&catalog, &results, profile.name.as_str()).unwrap()
}

fn failures(report: &ComplianceReport) -> Vec<String> {
    report
        .requirements
        .iter()
        .flat_map(|r| &r.tests)
        .filter(|t| !t.is_correct())
        .map(|t| format!("{} {}", t.test_id, t.received))
        .collect()
}

#[test]
fn full_profile_answers_everything() {
    let r = run(Profile::full());
    assert_eq!(r.summary(), "206/206, 100.00%", "{:#?}", failures(&r));
}

#[test]
fn baseline_profiles_match_the_score_lines() {
    let r = run(Profile::baseline());
    assert_eq!(r.summary(), "46/206, 56.67%", "{:#?}", failures(&r));
    let r = run(Profile::baseline_no_rdfs());
    assert_eq!(r.summary(), "40/206, 46.67%", "{:#?}", failures(&r));
}

#[test]
fn evaluation_is_deterministic() {
    let catalog = builtin_catalog().unwrap();
    let profile = Profile::full();
    let a = Snapshot::build(build_dataset().all_triples(), &profile);
    let b = Snapshot::build(build_dataset().all_triples(), &profile);
    for t in &catalog.tests {
        assert_eq!(
            evaluate(&a, &profile, &t.query),
            evaluate(&b, &profile, &t.query),
            "{}",
            t.id
        );
    }
}
