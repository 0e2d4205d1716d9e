// SPDX-License-Identifier: Apache-2.0

//! Answer normalization and per-test verdicts.

use std::collections::BTreeMap;

use oxrdf::{Literal, Term};
use serde::{Deserialize, Serialize};

use crate::catalog::{boolean_lexical, CheckerKind, ExpectedAnswer, TermSpec, TestCase};
use crate::geometry::{geometry_equals, GeometryLiteral, Serialization, CRS84, GML_NAMESPACE};
use crate::results::QueryOutcome;
use crate::vocab::{geometry_serialization, GML_LITERAL, WKT_LITERAL, XSD, XSD_BOOLEAN};
use crate::xml::{escape_text, parse_element, Element, Node, XmlError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Correct,
    Incorrect,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    #[serde(rename = "id")]
    pub test_id: String,
    pub verdict: Verdict,
    pub matched_alternative: Option<usize>,
    pub received: serde_json::Value,
    pub elapsed_ms: u64,
}

impl TestResult {
    pub fn is_correct(&self) -> bool {
        self.verdict == Verdict::Correct
    }
}

/// Whitespace-normalized WKT with upper-case keywords. A leading CRS84 IRI
/// is dropped since it is the default; other CRS IRIs are kept.
pub fn normalize_wkt(text: &str) -> String {
    let text = text.trim();
    let (crs, body) = match text.strip_prefix('<').and_then(|r| r.split_once('>')) {
        Some((iri, rest)) => (Some(iri.trim()), rest),
        None => (None, text),
    };
    let mut out = String::with_capacity(body.len());
    for token in body.split_whitespace() {
        let joins = out.ends_with(['(', ')', ',']) || token.starts_with(['(', ')', ',']);
        if !out.is_empty() && !joins {
            out.push(' ');
        }
        out.push_str(token);
    }
    let out = out.replace(" (", "(").replace(" )", ")").replace(" ,", ",");
    let body = out.to_ascii_uppercase();
    match crs {
        Some(iri) if iri != CRS84 => {
            if body.is_empty() {
                format!("<{iri}>")
            } else {
                format!("<{iri}> {body}")
            }
        }
        _ => body,
    }
}

fn collapse(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Canonical XML for a GML literal: fixed prefixes (`gml` for GML), sorted
/// attributes, namespace declarations on the root, whitespace between
/// elements dropped and text whitespace collapsed.
pub fn normalize_gml(text: &str) -> Result<String, XmlError> {
    if text.trim().is_empty() {
        return Ok(String::new());
    }
    let root = parse_element(text)?;
    let mut prefixes: BTreeMap<String, String> = BTreeMap::new();
    collect_namespaces(&root, &mut prefixes);
    let mut out = String::new();
    write_element(&root, &prefixes, true, &mut out);
    Ok(out)
}

fn collect_namespaces(e: &Element, prefixes: &mut BTreeMap<String, String>) {
    let mut add = |ns: &str| {
        if !prefixes.contains_key(ns) {
            let prefix = if ns == GML_NAMESPACE {
                "gml".to_owned()
            } else {
                format!("ns{}", prefixes.len() + 1)
            };
            prefixes.insert(ns.to_owned(), prefix);
        }
    };
    if let Some(ns) = &e.namespace {
        add(ns);
    }
    for a in &e.attributes {
        if let Some(ns) = &a.namespace {
            add(ns);
        }
    }
    for c in e.child_elements() {
        collect_namespaces(c, prefixes);
    }
}

fn qualified(ns: Option<&str>, local: &str, prefixes: &BTreeMap<String, String>) -> String {
    match ns.and_then(|n| prefixes.get(n)) {
        Some(p) => format!("{p}:{local}"),
        None => local.to_owned(),
    }
}

fn write_element(e: &Element, prefixes: &BTreeMap<String, String>, root: bool, out: &mut String) {
    let name = qualified(e.namespace.as_deref(), &e.local, prefixes);
    out.push('<');
    out.push_str(&name);
    if root {
        let mut decls: Vec<(&String, &String)> = prefixes.iter().map(|(ns, p)| (p, ns)).collect();
        decls.sort();
        for (p, ns) in decls {
            out.push_str(&format!(" xmlns:{p}=\"{}\"", escape_text(ns)));
        }
    }
    let mut attrs: Vec<(String, &str)> = e
        .attributes
        .iter()
        .map(|a| (qualified(a.namespace.as_deref(), &a.local, prefixes), a.value.as_str()))
        .collect();
    attrs.sort();
    for (k, v) in attrs {
        out.push_str(&format!(" {k}=\"{}\"", escape_text(v)));
    }
    out.push('>');
    let has_elements = e.child_elements().next().is_some();
    for child in &e.children {
        match child {
            Node::Element(c) => write_element(c, prefixes, false, out),
            Node::Text(t) if !has_elements => out.push_str(&escape_text(&collapse(t))),
            Node::Text(t) if !t.trim().is_empty() => out.push_str(&escape_text(&collapse(t))),
            Node::Text(_) => {}
        }
    }
    out.push_str("</");
    out.push_str(&name);
    out.push('>');
}

const NUMERIC_TYPES: [&str; 13] = [
    "integer",
    "decimal",
    "double",
    "float",
    "int",
    "long",
    "short",
    "byte",
    "nonNegativeInteger",
    "positiveInteger",
    "negativeInteger",
    "nonPositiveInteger",
    "unsignedInt",
];

fn is_numeric_datatype(dt: &str) -> bool {
    dt.strip_prefix(XSD).is_some_and(|local| NUMERIC_TYPES.contains(&local))
}

/// Lexical form used for comparison, by datatype.
fn normalized_lexical(l: &Literal) -> String {
    let dt = l.datatype().as_str();
    let v = l.value();
    match dt {
        WKT_LITERAL => normalize_wkt(v),
        GML_LITERAL => normalize_gml(v).unwrap_or_else(|_| v.trim().to_owned()),
        XSD_BOOLEAN => match boolean_lexical(v) {
            Some(b) => b.to_string(),
            None => v.to_owned(),
        },
        _ if is_numeric_datatype(dt) => match v.trim().parse::<f64>() {
            Ok(n) => format!("{n:e}"),
            Err(_) => v.to_owned(),
        },
        _ => v.to_owned(),
    }
}

/// Term equality after literal normalization; datatypes must agree.
pub fn terms_equivalent(received: &Term, expected: &Term) -> bool {
    match (received, expected) {
        (Term::NamedNode(a), Term::NamedNode(b)) => a == b,
        (Term::BlankNode(_), Term::BlankNode(_)) => true,
        (Term::Literal(a), Term::Literal(b)) => match (a.language(), b.language()) {
            (Some(x), Some(y)) => x.eq_ignore_ascii_case(y) && a.value() == b.value(),
            (None, None) => a.datatype() == b.datatype() && normalized_lexical(a) == normalized_lexical(b),
            _ => false,
        },
        _ => false,
    }
}

fn parse_geometry_term(term: &Term) -> Option<GeometryLiteral> {
    let Term::Literal(l) = term else { return None };
    match geometry_serialization(l.datatype().as_str()) {
        Some(s) => GeometryLiteral::parse(s, l.value()).ok(),
        None => GeometryLiteral::parse(Serialization::Wkt, l.value())
            .or_else(|_| GeometryLiteral::parse(Serialization::Gml, l.value()))
            .ok(),
    }
}

fn literal_number(term: &Term) -> Option<f64> {
    match term {
        Term::Literal(l) => l.value().trim().parse().ok(),
        _ => None,
    }
}

fn same_variables(test: &TestCase, received: &[String]) -> bool {
    let mut a: Vec<&str> = test.variables.iter().map(String::as_str).collect();
    let mut b: Vec<&str> = received.iter().map(String::as_str).collect();
    a.sort_unstable();
    b.sort_unstable();
    a == b
}

/// Received rows projected onto the test's variables, or `None` when the
/// variables differ.
fn projected_rows(test: &TestCase, outcome: &QueryOutcome) -> Option<Vec<Vec<Option<Term>>>> {
    let QueryOutcome::Solutions(s) = outcome else {
        return None;
    };
    if !same_variables(test, &s.variables) {
        return None;
    }
    let columns: Vec<usize> = test
        .variables
        .iter()
        .map(|v| s.variables.iter().position(|x| x == v).expect("same variables"))
        .collect();
    Some(
        s.rows
            .iter()
            .map(|row| columns.iter().map(|&c| row.get(c).cloned().flatten()).collect())
            .collect(),
    )
}

fn single_value(test: &TestCase, outcome: &QueryOutcome) -> Option<Term> {
    let rows = projected_rows(test, outcome)?;
    match rows.as_slice() {
        [row] if row.len() == 1 => row[0].clone(),
        _ => None,
    }
}

fn row_matches(received: &[Option<Term>], expected: &[Option<TermSpec>]) -> bool {
    received.len() == expected.len()
        && received.iter().zip(expected).all(|(r, e)| match (r, e) {
            (Some(r), Some(e)) => terms_equivalent(r, &e.to_term()),
            (None, None) => true,
            _ => false,
        })
}

fn unordered_match(received: &[Vec<Option<Term>>], expected: &[Vec<Option<TermSpec>>]) -> bool {
    if received.len() != expected.len() {
        return false;
    }
    let mut used = vec![false; received.len()];
    expected.iter().all(|e| {
        let hit = received
            .iter()
            .enumerate()
            .position(|(i, r)| !used[i] && row_matches(r, e));
        hit.map(|i| used[i] = true).is_some()
    })
}

fn received_boolean(test: &TestCase, outcome: &QueryOutcome) -> Option<bool> {
    match outcome {
        QueryOutcome::Boolean(b) => Some(*b),
        _ => match single_value(test, outcome)? {
            Term::Literal(l) => boolean_lexical(l.value()),
            _ => None,
        },
    }
}

fn alternative_matches(test: &TestCase, outcome: &QueryOutcome, expected: &ExpectedAnswer) -> bool {
    match (&test.checker, expected) {
        (CheckerKind::Boolean, ExpectedAnswer::Boolean(lexical)) => {
            boolean_lexical(lexical).is_some() && received_boolean(test, outcome) == boolean_lexical(lexical)
        }
        (CheckerKind::Numeric { tolerance }, ExpectedAnswer::Value(e)) => {
            match (
                single_value(test, outcome).as_ref().and_then(literal_number),
                literal_number(&e.to_term()),
            ) {
                (Some(r), Some(e)) => (r - e).abs() <= tolerance * e.abs().max(1.0),
                _ => false,
            }
        }
        (CheckerKind::GeometrySemantic { tolerance }, ExpectedAnswer::Value(e)) => {
            let received = single_value(test, outcome).as_ref().and_then(parse_geometry_term);
            match (received, parse_geometry_term(&e.to_term())) {
                (Some(r), Some(e)) => geometry_equals(&r.parsed, &e.parsed, *tolerance),
                _ => false,
            }
        }
        (
            CheckerKind::LiteralNormalized | CheckerKind::OrderedList | CheckerKind::UnorderedSet,
            ExpectedAnswer::Value(e),
        ) => single_value(test, outcome).is_some_and(|r| terms_equivalent(&r, &e.to_term())),
        (CheckerKind::LiteralNormalized | CheckerKind::OrderedList, ExpectedAnswer::Rows(rows)) => {
            projected_rows(test, outcome).is_some_and(|received| {
                received.len() == rows.len() && received.iter().zip(rows).all(|(r, e)| row_matches(r, e))
            })
        }
        (CheckerKind::UnorderedSet, ExpectedAnswer::Rows(rows)) => {
            projected_rows(test, outcome).is_some_and(|received| unordered_match(&received, rows))
        }
        _ => false,
    }
}

/// Decides a test; correct when any alternative matches.
pub fn check(test: &TestCase, outcome: &QueryOutcome) -> TestResult {
    let (verdict, matched_alternative) = if outcome.is_error() {
        (Verdict::Error, None)
    } else {
        match test
            .alternatives
            .iter()
            .position(|a| alternative_matches(test, outcome, a))
        {
            Some(i) => (Verdict::Correct, Some(i)),
            None => (Verdict::Incorrect, None),
        }
    };
    TestResult {
        test_id: test.id.clone(),
        verdict,
        matched_alternative,
        received: outcome.snapshot(),
        elapsed_ms: 0,
    }
}
