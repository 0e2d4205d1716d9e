// SPDX-License-Identifier: Apache-2.0

use std::fs;

use geobench_core::catalog::{
    builtin_catalog, expected_test_count, load_catalog, select, validate_catalog, CatalogError, CheckerKind,
    ExpectedAnswer, Extension, RequirementId, Selection, MANIFEST,
};
use geobench_core::checker::{check, Verdict};
use geobench_core::results::{QueryOutcome, Solutions};
use num_rational::Ratio;
use oxrdf::{Literal, NamedNode, Term};

fn builtin_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog")
}

#[test]
fn builtin_catalog_is_valid() {
    let c = builtin_catalog().unwrap();
    assert_eq!(c.len(), 206);
    assert_eq!(validate_catalog(&c), Vec::<String>::new());
    for r in RequirementId::all() {
        assert_eq!(c.tests_for(r).count(), expected_test_count(r), "requirement {r}");
    }
    assert_eq!(c.tests_for(RequirementId::new(19).unwrap()).count(), 28);
    assert_eq!(load_catalog(builtin_dir()).unwrap(), c);
}

#[test]
fn documented_weights() {
    let c = builtin_catalog().unwrap();
    let w = |id: &str| c.get(id).unwrap_or_else(|| panic!("{id}")).weight;
    assert_eq!(w("req19-distance-wkt-gml"), Ratio::new(1, 9) * Ratio::new(1, 6));
    assert_eq!(w("req19-distance-wkt-wkt"), Ratio::new(1, 27));
    assert_eq!(w("req19-buffer-gml"), Ratio::new(1, 18));
    assert_eq!(w("req04-sfEquals"), Ratio::new(1, 8));
    assert_eq!(w("req21-relate-gml-wkt"), Ratio::new(1, 6));
}

#[test]
fn selections() {
    let c = builtin_catalog().unwrap();
    let gtop = select(&c, &Selection::parse_extensions("GTOP").unwrap()).unwrap();
    assert_eq!(gtop.len(), 100);
    let r22 = select(&c, &Selection::parse_requirements("22").unwrap()).unwrap();
    assert_eq!(r22.len(), 32);
    assert_eq!(
        select(&c, &Selection::parse_extensions("core").unwrap()).unwrap().len(),
        3
    );
    let err = select(&c, &Selection::parse_requirements("17").unwrap()).unwrap_err();
    assert_eq!(err.to_string(), "requirement 17 has no tests");
    // Order is preserved.
    let ids: Vec<&str> = r22.tests.iter().map(|t| t.id.as_str()).collect();
    let full: Vec<&str> = c
        .tests
        .iter()
        .filter(|t| t.requirement.number() == 22)
        .map(|t| t.id.as_str())
        .collect();
    assert_eq!(ids, full);
    assert!(gtop.tests.iter().all(|t| t.extension() == Extension::Gtop));
}

fn copy_builtin() -> tempfile::TempDir {
    let tmp = tempfile::tempdir().unwrap();
    fs::create_dir(tmp.path().join("queries")).unwrap();
    for entry in fs::read_dir(builtin_dir().join("queries")).unwrap() {
        let entry = entry.unwrap();
        fs::copy(entry.path(), tmp.path().join("queries").join(entry.file_name())).unwrap();
    }
    fs::copy(builtin_dir().join(MANIFEST), tmp.path().join(MANIFEST)).unwrap();
    tmp
}

fn edit_manifest(dir: &std::path::Path, edit: impl FnOnce(&mut Vec<serde_json::Value>)) {
    let path = dir.join(MANIFEST);
    let mut doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    edit(doc["tests"].as_array_mut().unwrap());
    fs::write(&path, serde_json::to_string(&doc).unwrap()).unwrap();
}

#[test]
fn removing_a_test_breaks_the_weight_sum() {
    let tmp = copy_builtin();
    edit_manifest(tmp.path(), |tests| tests.retain(|t| t["id"] != "req04-sfEquals"));
    let err = load_catalog(tmp.path()).unwrap_err();
    assert!(matches!(err, CatalogError::WeightSum { .. }));
    assert!(err.to_string().contains("weights sum to 7/8"), "{err}");
}

#[test]
fn duplicate_ids_and_missing_queries_are_rejected() {
    let tmp = copy_builtin();
    edit_manifest(tmp.path(), |tests| {
        let first = tests[0].clone();
        tests.push(first);
    });
    assert!(matches!(load_catalog(tmp.path()), Err(CatalogError::DuplicateId(_))));

    let tmp = copy_builtin();
    fs::remove_file(tmp.path().join("queries/req10-wkt-literal.rq")).unwrap();
    assert!(matches!(load_catalog(tmp.path()), Err(CatalogError::MissingQuery(_))));
}

#[test]
fn every_alternative_checks_correct() {
    let c = builtin_catalog().unwrap();
    for t in &c.tests {
        for (i, alt) in t.alternatives.iter().enumerate() {
            let r = check(t, &alt.to_outcome(&t.variables));
            assert_eq!(r.verdict, Verdict::Correct, "{} alternative {i}", t.id);
        }
    }
}

fn negate(t: &geobench_core::catalog::TestCase) -> QueryOutcome {
    let ExpectedAnswer::Boolean(lexical) = &t.alternatives[0] else {
        panic!("boolean test without boolean answer")
    };
    let value = geobench_core::catalog::boolean_lexical(lexical).unwrap();
    QueryOutcome::Boolean(!value)
}

#[test]
fn negated_booleans_are_incorrect() {
    let c = builtin_catalog().unwrap();
    let mut n = 0;
    for t in c.tests.iter().filter(|t| t.checker == CheckerKind::Boolean) {
        assert_eq!(check(t, &negate(t)).verdict, Verdict::Incorrect, "{}", t.id);
        let lexical = if matches!(negate(t), QueryOutcome::Boolean(true)) {
            "1"
        } else {
            "0"
        };
        let row = QueryOutcome::Solutions(Solutions {
            variables: t.variables.clone(),
            rows: vec![vec![Some(Term::from(Literal::new_typed_literal(
                lexical,
                NamedNode::new_unchecked(geobench_core::vocab::XSD_BOOLEAN),
            )))]],
        });
        assert_eq!(check(t, &row).verdict, Verdict::Incorrect, "{}", t.id);
        n += 1;
    }
    assert!(n > 100);
}

#[test]
fn query_files_parse_as_sparql_text() {
    let c = builtin_catalog().unwrap();
    for t in &c.tests {
        assert!(t.query.contains("SELECT"), "{}", t.id);
        assert!(t.query.contains("PREFIX geo:"), "{}", t.id);
        assert_eq!(t.query_file, format!("queries/{}.rq", t.id));
    }
}
