// SPDX-License-Identifier: Apache-2.0

//! Query outcomes and the SPARQL 1.1 Query Results JSON and XML formats.

use std::fmt;

use oxrdf::{BlankNode, Literal, NamedNode, Term};
use serde_json::{json, Map, Value};

use crate::vocab::XSD_STRING;
use crate::xml::{escape_text, parse_element, Element};

pub const RESULTS_JSON: &str = "application/sparql-results+json";
pub const RESULTS_XML: &str = "application/sparql-results+xml";
const RESULTS_NS: &str = "http://www.w3.org/2005/sparql-results#";
const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorCategory {
    Connection,
    Timeout,
    Protocol,
    MalformedResults,
    Configuration,
}

impl fmt::Display for ErrorCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorCategory::Connection => "connection",
            ErrorCategory::Timeout => "timeout",
            ErrorCategory::Protocol => "protocol",
            ErrorCategory::MalformedResults => "malformed-results",
            ErrorCategory::Configuration => "configuration",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{category} error: {message}")]
pub struct QueryError {
    pub category: ErrorCategory,
    pub message: String,
}

impl QueryError {
    pub fn new(category: ErrorCategory, message: impl Into<String>) -> Self {
        QueryError {
            category,
            message: message.into(),
        }
    }

    fn malformed(message: impl Into<String>) -> Self {
        QueryError::new(ErrorCategory::MalformedResults, message)
    }
}

/// A SELECT result: rows are aligned with `variables`, `None` meaning unbound.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Solutions {
    pub variables: Vec<String>,
    pub rows: Vec<Vec<Option<Term>>>,
}

impl Solutions {
    pub fn new(variables: Vec<String>) -> Self {
        Solutions {
            variables,
            rows: Vec::new(),
        }
    }

    pub fn get(&self, row: usize, variable: &str) -> Option<&Term> {
        let column = self.variables.iter().position(|v| v == variable)?;
        self.rows.get(row)?.get(column)?.as_ref()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QueryOutcome {
    Solutions(Solutions),
    Boolean(bool),
    Error(QueryError),
}

impl QueryOutcome {
    pub fn error(category: ErrorCategory, message: impl Into<String>) -> Self {
        QueryOutcome::Error(QueryError::new(category, message))
    }

    pub fn is_error(&self) -> bool {
        matches!(self, QueryOutcome::Error(_))
    }

    /// JSON snapshot for reports; errors become `{"error": .., "message": ..}`.
    pub fn snapshot(&self) -> Value {
        match self {
            QueryOutcome::Error(e) => json!({"error": e.category, "message": e.message}),
            other => json_value(other).expect("non-error outcome"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResultsFormat {
    Json,
    Xml,
}

impl ResultsFormat {
    pub fn media_type(self) -> &'static str {
        match self {
            ResultsFormat::Json => RESULTS_JSON,
            ResultsFormat::Xml => RESULTS_XML,
        }
    }

    /// Picks a format from a `Content-Type` or `Accept` entry.
    pub fn from_media_type(media_type: &str) -> Option<Self> {
        let essence = media_type.split(';').next()?.trim().to_ascii_lowercase();
        match essence.as_str() {
            RESULTS_JSON | "application/json" => Some(ResultsFormat::Json),
            RESULTS_XML | "application/xml" | "text/xml" => Some(ResultsFormat::Xml),
            _ => None,
        }
    }
}

/// Parses a response body. The content type decides the format; when it is
/// not a results type the body is sniffed.
pub fn parse_results(body: &[u8], content_type: &str) -> QueryOutcome {
    let text = match std::str::from_utf8(body) {
        Ok(t) => t,
        Err(e) => return QueryOutcome::Error(QueryError::malformed(format!("body is not UTF-8: {e}"))),
    };
    let format = ResultsFormat::from_media_type(content_type).or_else(|| match text.trim_start().chars().next() {
        Some('{') => Some(ResultsFormat::Json),
        Some('<') => Some(ResultsFormat::Xml),
        _ => None,
    });
    let parsed = match format {
        Some(ResultsFormat::Json) => parse_json(text),
        Some(ResultsFormat::Xml) => parse_xml(text),
        None => Err(QueryError::malformed(format!(
            "unsupported results content type {content_type:?}"
        ))),
    };
    parsed.unwrap_or_else(QueryOutcome::Error)
}

fn make_literal(value: String, datatype: Option<&str>, lang: Option<&str>) -> Term {
    match (lang, datatype) {
        (Some(lang), _) => Literal::new_language_tagged_literal_unchecked(value, lang.to_ascii_lowercase()).into(),
        (None, Some(dt)) if dt != XSD_STRING && dt != RDF_LANG_STRING => {
            Literal::new_typed_literal(value, NamedNode::new_unchecked(dt)).into()
        }
        _ => Literal::new_simple_literal(value).into(),
    }
}

fn make_blank(label: &str) -> Result<Term, QueryError> {
    BlankNode::new(label)
        .map(Term::from)
        .map_err(|e| QueryError::malformed(format!("bad blank node label {label:?}: {e}")))
}

fn parse_json(text: &str) -> Result<QueryOutcome, QueryError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| QueryError::malformed(e.to_string()))?;
    let doc = doc
        .as_object()
        .ok_or_else(|| QueryError::malformed("results document is not an object"))?;
    if let Some(b) = doc.get("boolean") {
        return b
            .as_bool()
            .map(QueryOutcome::Boolean)
            .ok_or_else(|| QueryError::malformed("boolean member is not a boolean"));
    }
    let variables: Vec<String> = doc
        .get("head")
        .and_then(|h| h.get("vars"))
        .and_then(Value::as_array)
        .ok_or_else(|| QueryError::malformed("missing head.vars"))?
        .iter()
        .map(|v| v.as_str().map(str::to_owned))
        .collect::<Option<_>>()
        .ok_or_else(|| QueryError::malformed("variable names must be strings"))?;
    let bindings = doc
        .get("results")
        .and_then(|r| r.get("bindings"))
        .and_then(Value::as_array)
        .ok_or_else(|| QueryError::malformed("missing results.bindings"))?;

    let mut solutions = Solutions::new(variables);
    for binding in bindings {
        let binding = binding
            .as_object()
            .ok_or_else(|| QueryError::malformed("binding is not an object"))?;
        let mut row = vec![None; solutions.variables.len()];
        for (name, term) in binding {
            let column = solutions
                .variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| QueryError::malformed(format!("binding for undeclared variable {name:?}")))?;
            row[column] = Some(json_term(term)?);
        }
        solutions.rows.push(row);
    }
    Ok(QueryOutcome::Solutions(solutions))
}

fn json_term(term: &Value) -> Result<Term, QueryError> {
    let field = |k: &str| term.get(k).and_then(Value::as_str);
    let value = field("value").ok_or_else(|| QueryError::malformed("term without a string value"))?;
    match field("type") {
        Some("uri") => Ok(NamedNode::new_unchecked(value).into()),
        Some("bnode") => make_blank(value),
        Some("literal" | "typed-literal") => Ok(make_literal(value.to_owned(), field("datatype"), field("xml:lang"))),
        other => Err(QueryError::malformed(format!("unknown term type {other:?}"))),
    }
}

fn results_children<'a>(e: &'a Element, local: &'a str) -> impl Iterator<Item = &'a Element> + 'a {
    e.child_elements()
        .filter(move |c| c.namespace.as_deref() == Some(RESULTS_NS) && c.local == local)
}

fn parse_xml(text: &str) -> Result<QueryOutcome, QueryError> {
    let root = parse_element(text).map_err(|e| QueryError::malformed(e.to_string()))?;
    if root.namespace.as_deref() != Some(RESULTS_NS) || root.local != "sparql" {
        return Err(QueryError::malformed("root element is not sparql"));
    }
    if let Some(b) = results_children(&root, "boolean").next() {
        return match b.text().trim() {
            "true" | "1" => Ok(QueryOutcome::Boolean(true)),
            "false" | "0" => Ok(QueryOutcome::Boolean(false)),
            other => Err(QueryError::malformed(format!("bad boolean {other:?}"))),
        };
    }
    let head = results_children(&root, "head")
        .next()
        .ok_or_else(|| QueryError::malformed("missing head"))?;
    let variables = results_children(head, "variable")
        .map(|v| {
            v.attribute("name")
                .map(str::to_owned)
                .ok_or_else(|| QueryError::malformed("variable without a name"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let results = results_children(&root, "results")
        .next()
        .ok_or_else(|| QueryError::malformed("missing results"))?;

    let mut solutions = Solutions::new(variables);
    for result in results_children(results, "result") {
        let mut row = vec![None; solutions.variables.len()];
        for binding in results_children(result, "binding") {
            let name = binding
                .attribute("name")
                .ok_or_else(|| QueryError::malformed("binding without a name"))?;
            let column = solutions
                .variables
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| QueryError::malformed(format!("binding for undeclared variable {name:?}")))?;
            let term = binding
                .child_elements()
                .next()
                .ok_or_else(|| QueryError::malformed("empty binding"))?;
            row[column] = Some(match term.local.as_str() {
                "uri" => NamedNode::new_unchecked(term.text().trim()).into(),
                "bnode" => make_blank(term.text().trim())?,
                "literal" => {
                    let lang = term
                        .attributes
                        .iter()
                        .find(|a| a.local == "lang")
                        .map(|a| a.value.as_str());
                    make_literal(term.text(), term.attribute("datatype"), lang)
                }
                other => return Err(QueryError::malformed(format!("unknown term element {other:?}"))),
            });
        }
        solutions.rows.push(row);
    }
    Ok(QueryOutcome::Solutions(solutions))
}

fn json_value(outcome: &QueryOutcome) -> Option<Value> {
    match outcome {
        QueryOutcome::Boolean(b) => Some(json!({"head": {}, "boolean": b})),
        QueryOutcome::Solutions(s) => {
            let bindings: Vec<Value> = s
                .rows
                .iter()
                .map(|row| {
                    let mut m = Map::new();
                    for (var, term) in s.variables.iter().zip(row) {
                        if let Some(term) = term {
                            m.insert(var.clone(), json_term_value(term));
                        }
                    }
                    Value::Object(m)
                })
                .collect();
            Some(json!({"head": {"vars": s.variables}, "results": {"bindings": bindings}}))
        }
        QueryOutcome::Error(_) => None,
    }
}

fn json_term_value(term: &Term) -> Value {
    match term {
        Term::NamedNode(n) => json!({"type": "uri", "value": n.as_str()}),
        Term::BlankNode(b) => json!({"type": "bnode", "value": b.as_str()}),
        Term::Literal(l) => {
            let mut m = Map::new();
            m.insert("type".into(), "literal".into());
            m.insert("value".into(), l.value().into());
            if let Some(lang) = l.language() {
                m.insert("xml:lang".into(), lang.into());
            } else if l.datatype().as_str() != XSD_STRING {
                m.insert("datatype".into(), l.datatype().as_str().into());
            }
            Value::Object(m)
        }
    }
}

/// Renders a boolean or solutions outcome; errors have no results document.
pub fn render_results(outcome: &QueryOutcome, format: ResultsFormat) -> Option<String> {
    match format {
        ResultsFormat::Json => json_value(outcome).map(|v| v.to_string()),
        ResultsFormat::Xml => render_xml(outcome),
    }
}

fn render_xml(outcome: &QueryOutcome) -> Option<String> {
    let mut out = format!("<?xml version=\"1.0\"?>\n<sparql xmlns=\"{RESULTS_NS}\">\n");
    match outcome {
        QueryOutcome::Error(_) => return None,
        QueryOutcome::Boolean(b) => out.push_str(&format!("<head/>\n<boolean>{b}</boolean>\n")),
        QueryOutcome::Solutions(s) => {
            out.push_str("<head>");
            for v in &s.variables {
                out.push_str(&format!("<variable name=\"{}\"/>", escape_text(v)));
            }
            out.push_str("</head>\n<results>\n");
            for row in &s.rows {
                out.push_str("<result>");
                for (var, term) in s.variables.iter().zip(row) {
                    if let Some(term) = term {
                        out.push_str(&format!("<binding name=\"{}\">", escape_text(var)));
                        out.push_str(&xml_term(term));
                        out.push_str("</binding>");
                    }
                }
                out.push_str("</result>\n");
            }
            out.push_str("</results>\n");
        }
    }
    out.push_str("</sparql>\n");
    Some(out)
}

fn xml_term(term: &Term) -> String {
    match term {
        Term::NamedNode(n) => format!("<uri>{}</uri>", escape_text(n.as_str())),
        Term::BlankNode(b) => format!("<bnode>{}</bnode>", escape_text(b.as_str())),
        Term::Literal(l) => {
            let attr = match l.language() {
                Some(lang) => format!(" xml:lang=\"{}\"", escape_text(lang)),
                None if l.datatype().as_str() != XSD_STRING => {
                    format!(" datatype=\"{}\"", escape_text(l.datatype().as_str()))
                }
                None => String::new(),
            };
            format!("<literal{attr}>{}</literal>", escape_text(l.value()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vocab::WKT_LITERAL;

    #[test]
    fn xml_boolean() {
        let body = format!("<sparql xmlns=\"{RESULTS_NS}\"><head/><boolean>true</boolean></sparql>");
        assert_eq!(parse_results(body.as_bytes(), RESULTS_XML), QueryOutcome::Boolean(true));
    }

    #[test]
    fn xml_typed_literal() {
        let body = format!(
            "<sparql xmlns=\"{RESULTS_NS}\"><head><variable name=\"g\"/></head><results><result>\
             <binding name=\"g\"><literal datatype=\"{WKT_LITERAL}\">Point(1 2)</literal></binding>\
             </result></results></sparql>"
        );
        let QueryOutcome::Solutions(s) = parse_results(body.as_bytes(), RESULTS_XML) else {
            panic!("expected solutions")
        };
        let expected: Term = Literal::new_typed_literal("Point(1 2)", NamedNode::new_unchecked(WKT_LITERAL)).into();
        assert_eq!(s.get(0, "g"), Some(&expected));
    }

    #[test]
    fn json_uri_binding() {
        let body =
            r#"{"head":{"vars":["x"]},"results":{"bindings":[{"x":{"type":"uri","value":"http://example.org/A"}}]}}"#;
        let QueryOutcome::Solutions(s) = parse_results(body.as_bytes(), RESULTS_JSON) else {
            panic!("expected solutions")
        };
        assert_eq!(
            s.get(0, "x"),
            Some(&NamedNode::new_unchecked("http://example.org/A").into())
        );
    }

    #[test]
    fn empty_results_are_not_an_error() {
        let body = format!("<sparql xmlns=\"{RESULTS_NS}\"><head/><results/></sparql>");
        assert_eq!(
            parse_results(body.as_bytes(), RESULTS_XML),
            QueryOutcome::Solutions(Solutions::default())
        );
    }

    #[test]
    fn malformed_bodies() {
        for (body, ct) in [
            ("{", RESULTS_JSON),
            ("<sparql/>", RESULTS_XML),
            ("hello", "text/plain"),
            (
                r#"{"head":{"vars":["x"]},"results":{"bindings":[{"y":{"type":"uri","value":"u"}}]}}"#,
                RESULTS_JSON,
            ),
        ] {
            match parse_results(body.as_bytes(), ct) {
                QueryOutcome::Error(e) => assert_eq!(e.category, ErrorCategory::MalformedResults),
                other => panic!("{body}: {other:?}"),
            }
        }
    }

    #[test]
    fn render_then_parse() {
        let mut s = Solutions::new(vec!["a".into(), "b".into()]);
        s.rows.push(vec![
            Some(Literal::new_language_tagged_literal_unchecked("x < y & z", "en").into()),
            None,
        ]);
        s.rows.push(vec![
            Some(BlankNode::new("b0").unwrap().into()),
            Some(Literal::new_simple_literal(" ").into()),
        ]);
        let outcome = QueryOutcome::Solutions(s);
        for format in [ResultsFormat::Json, ResultsFormat::Xml] {
            let text = render_results(&outcome, format).unwrap();
            assert_eq!(parse_results(text.as_bytes(), format.media_type()), outcome);
        }
    }
}
