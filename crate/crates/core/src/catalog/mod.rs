// SPDX-License-Identifier: Apache-2.0

//! The test catalog: queries, requirement linkage, exact weights and
//! expected answers with alternatives.

mod builtin;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Zero};
use oxrdf::{BlankNode, Literal, NamedNode, Term};
use serde::{Deserialize, Serialize};

use crate::results::{QueryOutcome, Solutions};
use crate::vocab::XSD_BOOLEAN;

pub use builtin::builtin_catalog;

/// Manifest file name inside a catalog directory.
pub const MANIFEST: &str = "catalog.json";

pub type Weight = Ratio<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Extension {
    Core,
    Top,
    Geoext,
    Gtop,
    Rdfse,
    Qrw,
}

impl Extension {
    pub const ALL: [Extension; 6] = [
        Extension::Core,
        Extension::Top,
        Extension::Geoext,
        Extension::Gtop,
        Extension::Rdfse,
        Extension::Qrw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Extension::Core => "CORE",
            Extension::Top => "TOP",
            Extension::Geoext => "GEOEXT",
            Extension::Gtop => "GTOP",
            Extension::Rdfse => "RDFSE",
            Extension::Qrw => "QRW",
        }
    }

    pub fn requirements(self) -> std::ops::RangeInclusive<u8> {
        match self {
            Extension::Core => 1..=3,
            Extension::Top => 4..=6,
            Extension::Geoext => 7..=20,
            Extension::Gtop => 21..=24,
            Extension::Rdfse => 25..=27,
            Extension::Qrw => 28..=30,
        }
    }
}

impl fmt::Display for Extension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Extension {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, CatalogError> {
        Extension::ALL
            .into_iter()
            .find(|e| e.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| CatalogError::Selection(format!("unknown extension {s:?}")))
    }
}

/// A requirement number, 1 to 30.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct RequirementId(u8);

impl RequirementId {
    pub const COUNT: u8 = 30;
    /// The requirement credited when at least one answer is correct.
    pub const AUTO_CREDIT: RequirementId = RequirementId(17);

    pub fn new(number: u8) -> Option<Self> {
        (1..=Self::COUNT).contains(&number).then_some(RequirementId(number))
    }

    pub fn all() -> impl Iterator<Item = RequirementId> {
        (1..=Self::COUNT).map(RequirementId)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    pub fn extension(self) -> Extension {
        Extension::ALL
            .into_iter()
            .find(|e| e.requirements().contains(&self.0))
            .expect("every requirement belongs to an extension")
    }
}

impl TryFrom<u8> for RequirementId {
    type Error = String;

    fn try_from(n: u8) -> Result<Self, String> {
        RequirementId::new(n).ok_or_else(|| format!("requirement {n} is out of range 1-30"))
    }
}

impl From<RequirementId> for u8 {
    fn from(r: RequirementId) -> u8 {
        r.0
    }
}

impl fmt::Display for RequirementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Number of tests each requirement must have.
pub fn expected_test_count(requirement: RequirementId) -> usize {
    match requirement.number() {
        1..=3 | 7 | 10..=12 | 14 | 15 | 18 | 27 => 1,
        4..=6 | 28..=30 => 8,
        8 | 13 | 16 | 20 | 26 => 2,
        9 => 6,
        17 => 0,
        19 => 28,
        21 => 4,
        22..=24 => 32,
        25 => 3,
        _ => unreachable!("requirement numbers are 1-30"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckerKind {
    Boolean,
    Numeric { tolerance: f64 },
    LiteralNormalized,
    GeometrySemantic { tolerance: f64 },
    OrderedList,
    UnorderedSet,
}

impl CheckerKind {
    pub fn name(&self) -> &'static str {
        match self {
            CheckerKind::Boolean => "boolean",
            CheckerKind::Numeric { .. } => "numeric",
            CheckerKind::LiteralNormalized => "literal_normalized",
            CheckerKind::GeometrySemantic { .. } => "geometry_semantic",
            CheckerKind::OrderedList => "ordered_list",
            CheckerKind::UnorderedSet => "unordered_set",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Uri,
    Literal,
    Bnode,
}

/// An RDF term in the SPARQL JSON results shape.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSpec {
    #[serde(rename = "type")]
    pub kind: TermKind,
    pub value: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datatype: Option<String>,
    #[serde(default, rename = "xml:lang", skip_serializing_if = "Option::is_none")]
    pub lang: Option<String>,
}

impl TermSpec {
    pub fn iri(value: impl Into<String>) -> Self {
        TermSpec {
            kind: TermKind::Uri,
            value: value.into(),
            datatype: None,
            lang: None,
        }
    }

    pub fn typed(value: impl Into<String>, datatype: impl Into<String>) -> Self {
        TermSpec {
            kind: TermKind::Literal,
            value: value.into(),
            datatype: Some(datatype.into()),
            lang: None,
        }
    }

    pub fn to_term(&self) -> Term {
        match self.kind {
            TermKind::Uri => NamedNode::new_unchecked(&self.value).into(),
            TermKind::Bnode => BlankNode::new_unchecked(&self.value).into(),
            TermKind::Literal => match (&self.lang, &self.datatype) {
                (Some(lang), _) => Literal::new_language_tagged_literal_unchecked(&self.value, lang).into(),
                (None, Some(dt)) => Literal::new_typed_literal(&self.value, NamedNode::new_unchecked(dt)).into(),
                (None, None) => Literal::new_simple_literal(&self.value).into(),
            },
        }
    }

    pub fn from_term(term: &Term) -> Self {
        match term {
            Term::NamedNode(n) => TermSpec::iri(n.as_str()),
            Term::BlankNode(b) => TermSpec {
                kind: TermKind::Bnode,
                value: b.as_str().to_owned(),
                datatype: None,
                lang: None,
            },
            Term::Literal(l) => TermSpec {
                kind: TermKind::Literal,
                value: l.value().to_owned(),
                datatype: l.language().is_none().then(|| l.datatype().as_str().to_owned()),
                lang: l.language().map(str::to_owned),
            },
        }
    }
}

/// One complete expected result.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpectedAnswer {
    /// Lexical form of a boolean, `true`/`1`/`false`/`0`.
    Boolean(String),
    /// A single bound value.
    Value(TermSpec),
    /// Rows of values aligned with the test's variables.
    Rows(Vec<Vec<Option<TermSpec>>>),
}

impl ExpectedAnswer {
    /// The result a conforming endpoint would return for this answer.
    pub fn to_outcome(&self, variables: &[String]) -> QueryOutcome {
        let rows = match self {
            ExpectedAnswer::Boolean(lexical) => vec![vec![Some(
                Literal::new_typed_literal(lexical.as_str(), NamedNode::new_unchecked(XSD_BOOLEAN)).into(),
            )]],
            ExpectedAnswer::Value(t) => vec![vec![Some(t.to_term())]],
            ExpectedAnswer::Rows(rows) => rows
                .iter()
                .map(|row| row.iter().map(|c| c.as_ref().map(TermSpec::to_term)).collect())
                .collect(),
        };
        QueryOutcome::Solutions(Solutions {
            variables: variables.to_vec(),
            rows,
        })
    }

    /// Both lexical forms of a truth value.
    pub fn booleans(value: bool) -> Vec<ExpectedAnswer> {
        let (word, digit) = if value { ("true", "1") } else { ("false", "0") };
        vec![
            ExpectedAnswer::Boolean(word.into()),
            ExpectedAnswer::Boolean(digit.into()),
        ]
    }
}

/// Parses a boolean lexical form.
pub fn boolean_lexical(s: &str) -> Option<bool> {
    match s.trim() {
        "true" | "1" => Some(true),
        "false" | "0" => Some(false),
        _ => None,
    }
}

/// Manifest record for one test.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub requirement: RequirementId,
    pub extension: Extension,
    pub query_file: String,
    pub checker: CheckerKind,
    pub variables: Vec<String>,
    pub alternatives: Vec<ExpectedAnswer>,
    pub weight_num: i64,
    pub weight_den: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub tests: Vec<ManifestEntry>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TestCase {
    pub id: String,
    pub requirement: RequirementId,
    pub query_file: String,
    pub query: String,
    pub checker: CheckerKind,
    pub variables: Vec<String>,
    pub alternatives: Vec<ExpectedAnswer>,
    /// Share of the requirement's score.
    pub weight: Weight,
}

impl TestCase {
    pub fn extension(&self) -> Extension {
        self.requirement.extension()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Catalog {
    pub tests: Vec<TestCase>,
}

#[derive(Debug, thiserror::Error)]
pub enum CatalogError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("bad manifest: {0}")]
    Manifest(String),
    #[error("missing query file {0}")]
    MissingQuery(String),
    #[error("duplicate test id {0}")]
    DuplicateId(String),
    #[error("test {id}: {message}")]
    InvalidTest { id: String, message: String },
    #[error("requirement {requirement}: weights sum to {sum}")]
    WeightSum { requirement: RequirementId, sum: Weight },
    #[error("{0}")]
    Selection(String),
}

impl Catalog {
    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&TestCase> {
        self.tests.iter().find(|t| t.id == id)
    }

    pub fn requirements(&self) -> BTreeSet<RequirementId> {
        self.tests.iter().map(|t| t.requirement).collect()
    }

    pub fn tests_for(&self, requirement: RequirementId) -> impl Iterator<Item = &TestCase> {
        self.tests.iter().filter(move |t| t.requirement == requirement)
    }

    /// Resolves a manifest, reading query files through `read_query`.
    pub fn from_manifest(
        manifest: Manifest,
        mut read_query: impl FnMut(&str) -> Option<String>,
    ) -> Result<Catalog, CatalogError> {
        let mut seen = HashSet::new();
        let mut tests = Vec::with_capacity(manifest.tests.len());
        for e in manifest.tests {
            if !seen.insert(e.id.clone()) {
                return Err(CatalogError::DuplicateId(e.id));
            }
            let invalid = |message: String| CatalogError::InvalidTest {
                id: e.id.clone(),
                message,
            };
            if e.extension != e.requirement.extension() {
                return Err(invalid(format!(
                    "extension {} does not match requirement {}",
                    e.extension, e.requirement
                )));
            }
            if e.weight_den <= 0 || e.weight_num <= 0 || e.weight_num > e.weight_den {
                return Err(invalid(format!(
                    "weight {}/{} is not in (0, 1]",
                    e.weight_num, e.weight_den
                )));
            }
            if e.alternatives.is_empty() {
                return Err(invalid("no expected answers".into()));
            }
            let query = read_query(&e.query_file).ok_or_else(|| CatalogError::MissingQuery(e.query_file.clone()))?;
            tests.push(TestCase {
                weight: Ratio::new(e.weight_num, e.weight_den),
                id: e.id,
                requirement: e.requirement,
                query_file: e.query_file,
                query,
                checker: e.checker,
                variables: e.variables,
                alternatives: e.alternatives,
            });
        }
        let catalog = Catalog { tests };
        for (requirement, sum) in catalog.weight_sums() {
            if !sum.is_one() {
                return Err(CatalogError::WeightSum { requirement, sum });
            }
        }
        Ok(catalog)
    }

    pub fn weight_sums(&self) -> BTreeMap<RequirementId, Weight> {
        let mut sums = BTreeMap::new();
        for t in &self.tests {
            *sums.entry(t.requirement).or_insert_with(Weight::zero) += t.weight;
        }
        sums
    }

    pub fn to_manifest(&self) -> Manifest {
        Manifest {
            tests: self
                .tests
                .iter()
                .map(|t| ManifestEntry {
                    id: t.id.clone(),
                    requirement: t.requirement,
                    extension: t.extension(),
                    query_file: t.query_file.clone(),
                    checker: t.checker,
                    variables: t.variables.clone(),
                    alternatives: t.alternatives.clone(),
                    weight_num: *t.weight.numer(),
                    weight_den: *t.weight.denom(),
                })
                .collect(),
        }
    }
}

pub fn parse_manifest(text: &str) -> Result<Manifest, CatalogError> {
    serde_json::from_str(text).map_err(|e| CatalogError::Manifest(e.to_string()))
}

/// Loads `catalog.json` and its query files from a directory.
pub fn load_catalog(dir: impl AsRef<Path>) -> Result<Catalog, CatalogError> {
    let dir = dir.as_ref();
    let path = dir.join(MANIFEST);
    let text = std::fs::read_to_string(&path).map_err(|source| CatalogError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Catalog::from_manifest(parse_manifest(&text)?, |file| {
        std::fs::read_to_string(dir.join(file)).ok()
    })
}

/// Serialization pair encoded in a function-test id suffix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SerializationPair {
    WktWkt,
    GmlGml,
    WktGml,
    GmlWkt,
    Wkt,
    Gml,
}

impl SerializationPair {
    pub const BINARY: [SerializationPair; 4] = [
        SerializationPair::WktWkt,
        SerializationPair::GmlGml,
        SerializationPair::WktGml,
        SerializationPair::GmlWkt,
    ];
    pub const UNARY: [SerializationPair; 2] = [SerializationPair::Wkt, SerializationPair::Gml];

    pub fn suffix(self) -> &'static str {
        match self {
            SerializationPair::WktWkt => "wkt-wkt",
            SerializationPair::GmlGml => "gml-gml",
            SerializationPair::WktGml => "wkt-gml",
            SerializationPair::GmlWkt => "gml-wkt",
            SerializationPair::Wkt => "wkt",
            SerializationPair::Gml => "gml",
        }
    }

    /// Share of the function group's weight.
    pub fn share(self) -> Weight {
        match self {
            SerializationPair::WktWkt | SerializationPair::GmlGml => Ratio::new(1, 3),
            SerializationPair::WktGml | SerializationPair::GmlWkt => Ratio::new(1, 6),
            SerializationPair::Wkt | SerializationPair::Gml => Ratio::new(1, 2),
        }
    }

    /// Splits `reqNN-<function>-<pair>` into function and pair.
    pub fn split_id(id: &str) -> Option<(&str, SerializationPair)> {
        let rest = id.split_once('-')?.1;
        Self::BINARY.into_iter().chain(Self::UNARY).find_map(|p| {
            rest.strip_suffix(p.suffix())
                .and_then(|f| f.strip_suffix('-'))
                .map(|f| (f, p))
        })
    }
}

/// Requirements whose tests are split by literal serialization.
pub const SPLIT_REQUIREMENTS: [u8; 5] = [19, 21, 22, 23, 24];

/// Checks the count table, the serialization splits and the answer specs.
/// An empty list means the catalog is valid.
pub fn validate_catalog(catalog: &Catalog) -> Vec<String> {
    let mut errors = Vec::new();
    let total: usize = RequirementId::all().map(expected_test_count).sum();
    if catalog.len() != total {
        errors.push(format!("catalog has {} tests, expected {total}", catalog.len()));
    }
    for r in RequirementId::all() {
        let n = catalog.tests_for(r).count();
        if n != expected_test_count(r) {
            errors.push(format!(
                "requirement {r} has {n} tests, expected {}",
                expected_test_count(r)
            ));
        }
    }
    for (r, sum) in catalog.weight_sums() {
        if !sum.is_one() {
            errors.push(format!("requirement {r}: weights sum to {sum}"));
        }
    }
    for &n in &SPLIT_REQUIREMENTS {
        let r = RequirementId(n);
        let mut groups: BTreeMap<&str, Vec<(SerializationPair, Weight)>> = BTreeMap::new();
        for t in catalog.tests_for(r) {
            match SerializationPair::split_id(&t.id) {
                Some((function, pair)) => groups.entry(function).or_default().push((pair, t.weight)),
                None => errors.push(format!("test {}: id has no serialization suffix", t.id)),
            }
        }
        let mut shares = BTreeSet::new();
        for (function, members) in &groups {
            let group: Weight = members.iter().map(|(_, w)| *w).sum();
            shares.insert(group);
            let pairs: BTreeSet<&str> = members.iter().map(|(p, _)| p.suffix()).collect();
            let binary: BTreeSet<&str> = SerializationPair::BINARY.iter().map(|p| p.suffix()).collect();
            let unary: BTreeSet<&str> = SerializationPair::UNARY.iter().map(|p| p.suffix()).collect();
            if pairs != binary && pairs != unary {
                errors.push(format!(
                    "requirement {r} {function}: incomplete serialization set {pairs:?}"
                ));
            }
            for (pair, w) in members {
                if *w != group * pair.share() {
                    errors.push(format!(
                        "requirement {r} {function}-{}: weight {w} is not {} of {group}",
                        pair.suffix(),
                        pair.share()
                    ));
                }
            }
        }
        if shares.len() > 1 {
            errors.push(format!(
                "requirement {r}: function groups have unequal weights {shares:?}"
            ));
        }
    }
    for t in &catalog.tests {
        if t.checker == CheckerKind::Boolean {
            let values: Vec<Option<bool>> = t
                .alternatives
                .iter()
                .map(|a| match a {
                    ExpectedAnswer::Boolean(s) => boolean_lexical(s),
                    _ => None,
                })
                .collect();
            let lexicals: BTreeSet<&str> = t
                .alternatives
                .iter()
                .filter_map(|a| match a {
                    ExpectedAnswer::Boolean(s) => Some(s.trim()),
                    _ => None,
                })
                .collect();
            let complete = match values.first().copied().flatten() {
                Some(true) => lexicals == BTreeSet::from(["true", "1"]),
                Some(false) => lexicals == BTreeSet::from(["false", "0"]),
                None => false,
            };
            if !complete || values.iter().any(|v| *v != values[0]) {
                errors.push(format!(
                    "test {}: boolean alternatives must be both lexical forms of one value",
                    t.id
                ));
            }
        }
        for a in &t.alternatives {
            if let ExpectedAnswer::Rows(rows) = a {
                if rows.iter().any(|row| row.len() != t.variables.len()) {
                    errors.push(format!("test {}: row width differs from variable count", t.id));
                }
            }
        }
        if t.variables.is_empty() {
            errors.push(format!("test {}: no result variables", t.id));
        }
    }
    errors
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selection {
    Requirements(BTreeSet<RequirementId>),
    Extensions(BTreeSet<Extension>),
}

impl Selection {
    pub fn matches(&self, t: &TestCase) -> bool {
        match self {
            Selection::Requirements(rs) => rs.contains(&t.requirement),
            Selection::Extensions(es) => es.contains(&t.extension()),
        }
    }

    /// Parses a list such as `21-24` or `1,3,5-7`.
    pub fn parse_requirements(text: &str) -> Result<Selection, CatalogError> {
        let bad = || CatalogError::Selection(format!("bad requirement list {text:?}"));
        let mut set = BTreeSet::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (lo, hi) = match part.split_once('-') {
                Some((a, b)) => (
                    a.trim().parse::<u8>().map_err(|_| bad())?,
                    b.trim().parse::<u8>().map_err(|_| bad())?,
                ),
                None => {
                    let n = part.parse::<u8>().map_err(|_| bad())?;
                    (n, n)
                }
            };
            if lo > hi {
                return Err(bad());
            }
            for n in lo..=hi {
                set.insert(
                    RequirementId::new(n)
                        .ok_or_else(|| CatalogError::Selection(format!("requirement {n} is out of range 1-30")))?,
                );
            }
        }
        if set.is_empty() {
            return Err(bad());
        }
        Ok(Selection::Requirements(set))
    }

    pub fn parse_extensions(text: &str) -> Result<Selection, CatalogError> {
        let set = text
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(Extension::from_str)
            .collect::<Result<BTreeSet<_>, _>>()?;
        if set.is_empty() {
            return Err(CatalogError::Selection(format!("bad extension list {text:?}")));
        }
        Ok(Selection::Extensions(set))
    }
}

/// The tests matching `selection`, in catalog order.
pub fn select(catalog: &Catalog, selection: &Selection) -> Result<Catalog, CatalogError> {
    if let Selection::Requirements(rs) = selection {
        for r in rs {
            if catalog.tests_for(*r).next().is_none() {
                return Err(CatalogError::Selection(format!("requirement {r} has no tests")));
            }
        }
    }
    let tests: Vec<TestCase> = catalog.tests.iter().filter(|t| selection.matches(t)).cloned().collect();
    if tests.is_empty() {
        return Err(CatalogError::Selection("selection matches no tests".into()));
    }
    Ok(Catalog { tests })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_table_totals_206() {
        assert_eq!(RequirementId::all().map(expected_test_count).sum::<usize>(), 206);
        let gtop: usize = Extension::Gtop
            .requirements()
            .map(|n| expected_test_count(RequirementId(n)))
            .sum();
        assert_eq!(gtop, 100);
    }

    #[test]
    fn id_suffixes() {
        assert_eq!(
            SerializationPair::split_id("req19-distance-wkt-gml"),
            Some(("distance", SerializationPair::WktGml))
        );
        assert_eq!(
            SerializationPair::split_id("req19-convexHull-gml"),
            Some(("convexHull", SerializationPair::Gml))
        );
        assert_eq!(SerializationPair::split_id("req04-sfEquals"), None);
    }

    #[test]
    fn requirement_lists() {
        let Selection::Requirements(rs) = Selection::parse_requirements("21-24, 2").unwrap() else {
            panic!()
        };
        assert_eq!(
            rs.iter().map(|r| r.number()).collect::<Vec<_>>(),
            vec![2, 21, 22, 23, 24]
        );
        assert!(Selection::parse_requirements("31").is_err());
        assert!(Selection::parse_requirements("5-3").is_err());
    }

    #[test]
    fn manifest_entry_json_shape() {
        let e = ManifestEntry {
            id: "req11-default-crs".into(),
            requirement: RequirementId(11),
            extension: Extension::Geoext,
            query_file: "queries/req11-default-crs.rq".into(),
            checker: CheckerKind::Numeric { tolerance: 1e-6 },
            variables: vec!["r".into()],
            alternatives: ExpectedAnswer::booleans(true),
            weight_num: 1,
            weight_den: 1,
        };
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["checker"]["kind"], "numeric");
        assert_eq!(v["alternatives"][1]["boolean"], "1");
        assert_eq!(v["extension"], "GEOEXT");
        assert_eq!(serde_json::from_value::<ManifestEntry>(v).unwrap(), e);
    }
}
