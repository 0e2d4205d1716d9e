// SPDX-License-Identifier: Apache-2.0

//! Writes the built-in catalog (`catalog.json` plus `queries/*.rq`).
//!
//! Usage: `cargo run -p geobench-core --example author_catalog [DIR]`

use std::fs;
use std::path::PathBuf;

use geobench_core::catalog::{
    CheckerKind, ExpectedAnswer, Manifest, ManifestEntry, RequirementId, SerializationPair, TermSpec, Weight,
};
use geobench_core::dataset::{build_dataset, BenchmarkDataset, GeometryRole, EXPLICIT_RELATIONS, FEATURES};
use geobench_core::geometry::{
    GeometryProperty, PropertyValue, RelationFamily, Serialization, TopologicalRelation, CRS84,
};
use geobench_core::vocab::{sparql_prologue, GEO, GML_LITERAL, MY, WKT_LITERAL, XSD_ANY_URI, XSD_DOUBLE, XSD_INTEGER};
use num_rational::Ratio;

type Expectation = (CheckerKind, Vec<ExpectedAnswer>);

const GEOMETRY_TOLERANCE: f64 = 1e-6;
const BUFFER_TOLERANCE: f64 = 0.01;
const NUMERIC_TOLERANCE: f64 = 1e-6;

struct Author {
    dataset: BenchmarkDataset,
    entries: Vec<ManifestEntry>,
    queries: Vec<(String, String)>,
}

struct Test<'a> {
    id: String,
    requirement: u8,
    title: &'a str,
    body: String,
    checker: CheckerKind,
    variables: &'a [&'a str],
    alternatives: Vec<ExpectedAnswer>,
    weight: Weight,
}

fn my(local: &str) -> TermSpec {
    TermSpec::iri(format!("{MY}{local}"))
}

fn iri_rows<S: AsRef<str>>(locals: impl IntoIterator<Item = S>) -> ExpectedAnswer {
    ExpectedAnswer::Rows(locals.into_iter().map(|l| vec![Some(my(l.as_ref()))]).collect())
}

fn wkt(text: &str) -> TermSpec {
    TermSpec::typed(text, WKT_LITERAL)
}

fn ser_name(s: Serialization) -> &'static str {
    match s {
        Serialization::Wkt => "asWKT",
        Serialization::Gml => "asGML",
    }
}

fn pair_serializations(pair: SerializationPair) -> (Serialization, Serialization) {
    use Serialization::{Gml, Wkt};
    match pair {
        SerializationPair::WktWkt | SerializationPair::Wkt => (Wkt, Wkt),
        SerializationPair::GmlGml | SerializationPair::Gml => (Gml, Gml),
        SerializationPair::WktGml => (Wkt, Gml),
        SerializationPair::GmlWkt => (Gml, Wkt),
    }
}

impl Author {
    fn add(&mut self, t: Test<'_>) {
        let requirement = RequirementId::new(t.requirement).expect("valid requirement");
        let query_file = format!("queries/{}.rq", t.id);
        let query = format!(
            "# {}\n# Requirement {}: {}\n{}\n{}\n",
            t.id,
            t.requirement,
            t.title,
            sparql_prologue(),
            t.body.trim()
        );
        self.queries.push((query_file.clone(), query));
        self.entries.push(ManifestEntry {
            id: t.id,
            requirement,
            extension: requirement.extension(),
            query_file,
            checker: t.checker,
            variables: t.variables.iter().map(|v| v.to_string()).collect(),
            alternatives: t.alternatives,
            weight_num: *t.weight.numer(),
            weight_den: *t.weight.denom(),
        });
    }

    fn literal(&self, local: &str, role: GeometryRole, s: Serialization) -> TermSpec {
        let g = self.dataset.geometry(local, role).expect("dataset geometry");
        let datatype = match s {
            Serialization::Wkt => WKT_LITERAL,
            Serialization::Gml => GML_LITERAL,
        };
        TermSpec::typed(g.literal(s), datatype)
    }

    fn core(&mut self) {
        self.add(Test {
            id: "req01-sparql-protocol".into(),
            requirement: 1,
            title: "SPARQL query over the protocol, first property of geometry A",
            body: "SELECT ?p ?o WHERE { my:AExactGeom ?p ?o } ORDER BY ?p ?o LIMIT 1".into(),
            checker: CheckerKind::OrderedList,
            variables: &["p", "o"],
            alternatives: vec![ExpectedAnswer::Rows(vec![vec![
                Some(TermSpec::iri(format!("{GEO}asGML"))),
                Some(self.literal("A", GeometryRole::Exact, Serialization::Gml)),
            ]])],
            weight: Ratio::from_integer(1),
        });
        for (n, id, class) in [
            (2, "req02-spatial-object", "SpatialObject"),
            (3, "req03-feature", "Feature"),
        ] {
            self.add(Test {
                id: id.into(),
                requirement: n,
                title: "first instance of a GeoSPARQL class",
                body: format!("SELECT ?x WHERE {{ ?x a geo:{class} }} ORDER BY ?x LIMIT 1"),
                checker: CheckerKind::OrderedList,
                variables: &["x"],
                alternatives: vec![iri_rows(["A"])],
                weight: Ratio::from_integer(1),
            });
        }
    }

    fn topology_vocabulary(&mut self) {
        for (relation, s, o) in EXPLICIT_RELATIONS {
            let requirement = 4 + family_index(relation.family());
            self.add(Test {
                id: format!("req{requirement:02}-{}", relation.name()),
                requirement,
                title: "topological relation property in a graph pattern, first related feature",
                body: format!(
                    "SELECT ?x WHERE {{ my:{s} geo:{r} ?x . ?x a my:PlaceOfInterest . FILTER(?x != my:{s}) }} ORDER BY ?x LIMIT 1",
                    r = relation.name()
                ),
                checker: CheckerKind::OrderedList,
                variables: &["x"],
                alternatives: vec![iri_rows([o])],
                weight: Ratio::new(1, 8),
            });
        }
    }

    fn geometry_extension(&mut self) {
        let exact: Vec<String> = FEATURES.iter().map(|f| format!("{f}ExactGeom")).collect();
        self.add(Test {
            id: "req07-geometry-class".into(),
            requirement: 7,
            title: "geo:Geometry class in a graph pattern",
            body: "SELECT ?g WHERE { ?g a geo:Geometry } ORDER BY ?g".into(),
            checker: CheckerKind::OrderedList,
            variables: &["g"],
            alternatives: vec![iri_rows(&exact)],
            weight: Ratio::from_integer(1),
        });
        for (id, property, expected) in [
            ("req08-has-geometry", "hasGeometry", vec!["AExactGeom", "APoint"]),
            ("req08-has-default-geometry", "hasDefaultGeometry", vec!["AExactGeom"]),
        ] {
            self.add(Test {
                id: id.into(),
                requirement: 8,
                title: "geometry association properties in a graph pattern",
                body: format!("SELECT ?g WHERE {{ my:A geo:{property} ?g }} ORDER BY ?g"),
                checker: CheckerKind::OrderedList,
                variables: &["g"],
                alternatives: vec![iri_rows(expected)],
                weight: Ratio::new(1, 2),
            });
        }
        let a = self.dataset.exact("A").geometry.clone();
        for p in GeometryProperty::ALL {
            let (checker, alternatives) = match geobench_core::geometry::geometry_property(p, &a) {
                PropertyValue::Integer(i) => (
                    CheckerKind::LiteralNormalized,
                    vec![ExpectedAnswer::Value(TermSpec::typed(i.to_string(), XSD_INTEGER))],
                ),
                PropertyValue::Boolean(b) => (CheckerKind::Boolean, ExpectedAnswer::booleans(b)),
            };
            self.add(Test {
                id: format!("req09-{}", p.name()),
                requirement: 9,
                title: "geometry property in a graph pattern",
                body: format!("SELECT ?v WHERE {{ my:AExactGeom geo:{} ?v }}", p.name()),
                checker,
                variables: &["v"],
                alternatives,
                weight: Ratio::new(1, 6),
            });
        }
        let mut serializations = vec![
            self.literal("A", GeometryRole::Exact, Serialization::Wkt),
            self.literal("A", GeometryRole::Exact, Serialization::Gml),
        ];
        serializations.sort_by(|x, y| x.value.cmp(&y.value));
        self.add(Test {
            id: "req09-hasSerialization".into(),
            requirement: 9,
            title: "geometry property in a graph pattern",
            body: "SELECT ?v WHERE { my:AExactGeom geo:hasSerialization ?v } ORDER BY ?v".into(),
            checker: CheckerKind::OrderedList,
            variables: &["v"],
            alternatives: vec![ExpectedAnswer::Rows(
                serializations.into_iter().map(|t| vec![Some(t)]).collect(),
            )],
            weight: Ratio::new(1, 6),
        });
        self.add(Test {
            id: "req10-wkt-literal".into(),
            requirement: 10,
            title: "geo:wktLiteral datatype",
            body: "SELECT ?w WHERE { my:BExactGeom geo:asWKT ?w }".into(),
            checker: CheckerKind::LiteralNormalized,
            variables: &["w"],
            alternatives: vec![ExpectedAnswer::Value(self.literal(
                "B",
                GeometryRole::Exact,
                Serialization::Wkt,
            ))],
            weight: Ratio::from_integer(1),
        });
        self.equality(
            11,
            "req11-default-crs",
            "default CRS84 for WKT literals",
            ("J", "K"),
            GeometryRole::Exact,
            Serialization::Wkt,
            Ratio::from_integer(1),
        );
        self.equality(
            12,
            "req12-axis-order",
            "axis order of the literal's CRS",
            ("L", "M"),
            GeometryRole::Exact,
            Serialization::Wkt,
            Ratio::from_integer(1),
        );
        self.equality(
            13,
            "req13-empty-exact",
            "empty WKT literal is an empty geometry",
            ("H", "I"),
            GeometryRole::Exact,
            Serialization::Wkt,
            Ratio::new(1, 2),
        );
        self.equality(
            13,
            "req13-empty-point",
            "empty WKT literal is an empty geometry",
            ("H", "I"),
            GeometryRole::Point,
            Serialization::Wkt,
            Ratio::new(1, 2),
        );
        self.add(Test {
            id: "req14-as-wkt".into(),
            requirement: 14,
            title: "geo:asWKT in a graph pattern",
            body: "SELECT ?w WHERE { my:AExactGeom geo:asWKT ?w }".into(),
            checker: CheckerKind::LiteralNormalized,
            variables: &["w"],
            alternatives: vec![ExpectedAnswer::Value(self.literal(
                "A",
                GeometryRole::Exact,
                Serialization::Wkt,
            ))],
            weight: Ratio::from_integer(1),
        });
        let mut gml: Vec<TermSpec> = self
            .dataset
            .geometries
            .iter()
            .map(|g| TermSpec::typed(&g.gml, GML_LITERAL))
            .collect();
        gml.sort_by(|x, y| x.value.cmp(&y.value));
        self.add(Test {
            id: "req15-gml-literals".into(),
            requirement: 15,
            title: "geo:gmlLiteral values, ordered",
            body: "SELECT ?g WHERE { ?s geo:asGML ?g } ORDER BY ?g".into(),
            checker: CheckerKind::OrderedList,
            variables: &["g"],
            alternatives: vec![ExpectedAnswer::Rows(gml.into_iter().map(|t| vec![Some(t)]).collect())],
            weight: Ratio::from_integer(1),
        });
        self.equality(
            16,
            "req16-empty-exact",
            "empty GML literal is an empty geometry",
            ("H", "I"),
            GeometryRole::Exact,
            Serialization::Gml,
            Ratio::new(1, 2),
        );
        self.equality(
            16,
            "req16-empty-point",
            "empty GML literal is an empty geometry",
            ("H", "I"),
            GeometryRole::Point,
            Serialization::Gml,
            Ratio::new(1, 2),
        );
        self.add(Test {
            id: "req18-as-gml".into(),
            requirement: 18,
            title: "geo:asGML in a graph pattern",
            body: "SELECT ?g WHERE { my:AExactGeom geo:asGML ?g }".into(),
            checker: CheckerKind::LiteralNormalized,
            variables: &["g"],
            alternatives: vec![ExpectedAnswer::Value(self.literal(
                "A",
                GeometryRole::Exact,
                Serialization::Gml,
            ))],
            weight: Ratio::from_integer(1),
        });
        self.functions();
        for (s, suffix) in [(Serialization::Wkt, "wkt"), (Serialization::Gml, "gml")] {
            self.add(Test {
                id: format!("req20-getSRID-{suffix}"),
                requirement: 20,
                title: "geof:getSRID",
                body: format!(
                    "SELECT (geof:getSRID(?a) AS ?r) WHERE {{ my:AExactGeom geo:{} ?a }}",
                    ser_name(s)
                ),
                checker: CheckerKind::LiteralNormalized,
                variables: &["r"],
                alternatives: vec![
                    ExpectedAnswer::Value(TermSpec::iri(CRS84)),
                    ExpectedAnswer::Value(TermSpec::typed(CRS84, XSD_ANY_URI)),
                ],
                weight: Ratio::new(1, 2),
            });
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn equality(
        &mut self,
        requirement: u8,
        id: &str,
        title: &str,
        (a, b): (&str, &str),
        role: GeometryRole,
        s: Serialization,
        weight: Weight,
    ) {
        let local = |f: &str| match role {
            GeometryRole::Exact => format!("{f}ExactGeom"),
            GeometryRole::Point => format!("{f}Point"),
        };
        self.add(Test {
            id: id.into(),
            requirement,
            title,
            body: format!(
                "SELECT (geof:sfEquals(?a, ?b) AS ?r) WHERE {{ my:{} geo:{p} ?a . my:{} geo:{p} ?b }}",
                local(a),
                local(b),
                p = ser_name(s)
            ),
            checker: CheckerKind::Boolean,
            variables: &["r"],
            alternatives: ExpectedAnswer::booleans(true),
            weight,
        });
    }

    fn functions(&mut self) {
        let geometry = |text: &str, tolerance: f64| {
            (
                CheckerKind::GeometrySemantic { tolerance },
                vec![ExpectedAnswer::Value(wkt(text))],
            )
        };
        let binary: [(&str, &str, &str, &str, Expectation); 5] = [
            (
                "distance",
                "C",
                "D",
                ", uom:degree",
                (
                    CheckerKind::Numeric {
                        tolerance: NUMERIC_TOLERANCE,
                    },
                    vec![ExpectedAnswer::Value(TermSpec::typed("2.0", XSD_DOUBLE))],
                ),
            ),
            (
                "intersection",
                "B",
                "G",
                "",
                geometry("Polygon((1 1, 2.5 1, 2.5 3, 1 3, 1 1))", GEOMETRY_TOLERANCE),
            ),
            (
                "union",
                "B",
                "G",
                "",
                geometry(
                    "Polygon((-0.5 -0.5, 2.5 -0.5, 2.5 1, 4 1, 4 5, 1 5, 1 3, -0.5 3, -0.5 -0.5))",
                    GEOMETRY_TOLERANCE,
                ),
            ),
            (
                "difference",
                "B",
                "G",
                "",
                geometry("Polygon((1 3, 2.5 3, 2.5 1, 4 1, 4 5, 1 5, 1 3))", GEOMETRY_TOLERANCE),
            ),
            (
                "symDifference",
                "A",
                "G",
                "",
                geometry(
                    "Polygon((2.5 -0.5, 5.25 -0.5, 5.25 6, -0.5 6, -0.5 3, 2.5 3, 2.5 -0.5))",
                    GEOMETRY_TOLERANCE,
                ),
            ),
        ];
        let unary: [(&str, &str, &str, Expectation); 4] = [
            (
                "buffer",
                "F",
                ", 1, uom:degree",
                geometry(&circle(2.5, 5.0, 1.0, 64), BUFFER_TOLERANCE),
            ),
            (
                "convexHull",
                "E",
                "",
                geometry("LineString(3 -2, 4 3)", GEOMETRY_TOLERANCE),
            ),
            (
                "envelope",
                "E",
                "",
                geometry("Polygon((3 -2, 4 -2, 4 3, 3 3, 3 -2))", GEOMETRY_TOLERANCE),
            ),
            (
                "boundary",
                "B",
                "",
                geometry("LineString(1 1, 4 1, 4 5, 1 5, 1 1)", GEOMETRY_TOLERANCE),
            ),
        ];
        let group = Ratio::new(1, 9);
        for (function, a, b, extra, (checker, alternatives)) in binary {
            for pair in SerializationPair::BINARY {
                let (sa, sb) = pair_serializations(pair);
                self.add(Test {
                    id: format!("req19-{function}-{}", pair.suffix()),
                    requirement: 19,
                    title: "non-topological query function",
                    body: format!(
                        "SELECT (geof:{function}(?a, ?b{extra}) AS ?r) WHERE {{ my:{a}ExactGeom geo:{} ?a . my:{b}ExactGeom geo:{} ?b }}",
                        ser_name(sa),
                        ser_name(sb)
                    ),
                    checker,
                    variables: &["r"],
                    alternatives: alternatives.clone(),
                    weight: group * pair.share(),
                });
            }
        }
        for (function, a, extra, (checker, alternatives)) in unary {
            for pair in SerializationPair::UNARY {
                let (sa, _) = pair_serializations(pair);
                self.add(Test {
                    id: format!("req19-{function}-{}", pair.suffix()),
                    requirement: 19,
                    title: "non-topological query function",
                    body: format!(
                        "SELECT (geof:{function}(?a{extra}) AS ?r) WHERE {{ my:{a}ExactGeom geo:{} ?a }}",
                        ser_name(sa)
                    ),
                    checker,
                    variables: &["r"],
                    alternatives: alternatives.clone(),
                    weight: group * pair.share(),
                });
            }
        }
    }

    fn geometry_topology(&mut self) {
        for pair in SerializationPair::BINARY {
            let (sa, sb) = pair_serializations(pair);
            self.add(Test {
                id: format!("req21-relate-{}", pair.suffix()),
                requirement: 21,
                title: "geof:relate with a DE-9IM pattern",
                body: format!(
                    "SELECT (geof:relate(?a, ?b, \"T*****FF*\") AS ?r) WHERE {{ my:AExactGeom geo:{} ?a . my:BExactGeom geo:{} ?b }}",
                    ser_name(sa),
                    ser_name(sb)
                ),
                checker: CheckerKind::Boolean,
                variables: &["r"],
                alternatives: ExpectedAnswer::booleans(true),
                weight: pair.share(),
            });
        }
        for (relation, a, b) in FUNCTION_PAIRS {
            let requirement = 22 + family_index(relation.family());
            for pair in SerializationPair::BINARY {
                let (sa, sb) = pair_serializations(pair);
                self.add(Test {
                    id: format!("req{requirement}-{}-{}", relation.name(), pair.suffix()),
                    requirement,
                    title: "topological query function",
                    body: format!(
                        "SELECT (geof:{}(?a, ?b) AS ?r) WHERE {{ my:{a} geo:{} ?a . my:{b} geo:{} ?b }}",
                        relation.name(),
                        ser_name(sa),
                        ser_name(sb)
                    ),
                    checker: CheckerKind::Boolean,
                    variables: &["r"],
                    alternatives: ExpectedAnswer::booleans(true),
                    weight: Ratio::new(1, 8) * pair.share(),
                });
            }
        }
    }

    fn rdfs_entailment(&mut self) {
        let features: Vec<&str> = FEATURES.to_vec();
        for (id, body) in [
            (
                "req25-feature-class",
                "SELECT ?f WHERE { ?f a geo:Feature } ORDER BY ?f",
            ),
            (
                "req25-has-geometry",
                "SELECT DISTINCT ?f WHERE { ?f geo:hasGeometry ?g } ORDER BY ?f",
            ),
            (
                "req25-has-default-geometry",
                "SELECT DISTINCT ?f WHERE { ?f geo:hasDefaultGeometry ?g } ORDER BY ?f",
            ),
        ] {
            self.add(Test {
                id: id.into(),
                requirement: 25,
                title: "RDFS entailment over the application schema",
                body: body.into(),
                checker: CheckerKind::OrderedList,
                variables: &["f"],
                alternatives: vec![iri_rows(&features)],
                weight: Ratio::new(1, 3),
            });
        }
        let of_class = |class: &str, ontology: &str| -> Vec<String> {
            let mut v: Vec<String> = self
                .dataset
                .geometries
                .iter()
                .filter(|g| match ontology {
                    "sf" => sf_superclasses(g.sf_class).contains(&class),
                    _ => g.gml_class.is_some_and(|c| gml_superclasses(c).contains(&class)),
                })
                .map(|g| g.local_name())
                .collect();
            v.sort();
            v
        };
        let surfaces = of_class("Surface", "sf");
        let curves = of_class("Curve", "sf");
        let gml_surfaces = of_class("Surface", "gml");
        for (id, requirement, body, expected, weight) in [
            (
                "req26-surface",
                26,
                "SELECT ?g WHERE { ?g a sf:Surface } ORDER BY ?g",
                surfaces,
                Ratio::new(1, 2),
            ),
            (
                "req26-curve",
                26,
                "SELECT ?g WHERE { ?g a sf:Curve } ORDER BY ?g",
                curves,
                Ratio::new(1, 2),
            ),
            (
                "req27-gml-surface",
                27,
                "SELECT ?g WHERE { ?g a gml:Surface } ORDER BY ?g",
                gml_surfaces,
                Ratio::from_integer(1),
            ),
        ] {
            self.add(Test {
                id: id.into(),
                requirement,
                title: "geometry class hierarchy entailment",
                body: body.into(),
                checker: CheckerKind::OrderedList,
                variables: &["g"],
                alternatives: vec![iri_rows(&expected)],
                weight,
            });
        }
    }

    fn query_rewrite(&mut self) {
        for (relation, s, o) in EXPLICIT_RELATIONS {
            let requirement = 28 + family_index(relation.family());
            let expected = rewrite_expectation(&self.dataset, relation, s, o);
            self.add(Test {
                id: format!("req{requirement}-{}", relation.name()),
                requirement,
                title: "query rewrite for a topological relation property",
                body: format!("SELECT ?x WHERE {{ my:{s} geo:{} ?x }} ORDER BY ?x", relation.name()),
                checker: CheckerKind::OrderedList,
                variables: &["x"],
                alternatives: vec![iri_rows(&expected)],
                weight: Ratio::new(1, 8),
            });
        }
    }
}

/// True-valued operand pairs for the topological functions.
const FUNCTION_PAIRS: [(TopologicalRelation, &str, &str); 24] = {
    use TopologicalRelation::*;
    [
        (SfEquals, "APoint", "GPoint"),
        (SfDisjoint, "CExactGeom", "DExactGeom"),
        (SfIntersects, "AExactGeom", "BExactGeom"),
        (SfTouches, "AExactGeom", "CExactGeom"),
        (SfCrosses, "EExactGeom", "AExactGeom"),
        (SfWithin, "BExactGeom", "AExactGeom"),
        (SfContains, "AExactGeom", "BExactGeom"),
        (SfOverlaps, "BExactGeom", "GExactGeom"),
        (EhEquals, "JExactGeom", "KExactGeom"),
        (EhDisjoint, "CExactGeom", "DExactGeom"),
        (EhMeet, "AExactGeom", "CExactGeom"),
        (EhOverlap, "BExactGeom", "GExactGeom"),
        (EhCovers, "AExactGeom", "GExactGeom"),
        (EhCoveredBy, "GExactGeom", "AExactGeom"),
        (EhInside, "BExactGeom", "AExactGeom"),
        (EhContains, "AExactGeom", "BExactGeom"),
        (Rcc8Eq, "JExactGeom", "KExactGeom"),
        (Rcc8Dc, "CExactGeom", "DExactGeom"),
        (Rcc8Ec, "AExactGeom", "CExactGeom"),
        (Rcc8Po, "BExactGeom", "GExactGeom"),
        (Rcc8Tppi, "AExactGeom", "GExactGeom"),
        (Rcc8Tpp, "GExactGeom", "AExactGeom"),
        (Rcc8Ntpp, "BExactGeom", "AExactGeom"),
        (Rcc8Ntppi, "AExactGeom", "BExactGeom"),
    ]
};

fn family_index(f: RelationFamily) -> u8 {
    match f {
        RelationFamily::SimpleFeatures => 0,
        RelationFamily::Egenhofer => 1,
        RelationFamily::Rcc8 => 2,
    }
}

fn sf_superclasses(class: &str) -> Vec<&'static str> {
    match class {
        "Polygon" => vec!["Polygon", "Surface", "Geometry"],
        "LineString" => vec!["LineString", "Curve", "Geometry"],
        "Point" => vec!["Point", "Geometry"],
        _ => vec![],
    }
}

fn gml_superclasses(class: &str) -> Vec<&'static str> {
    match class {
        "LineString" => vec!["LineString", "Surface"],
        _ => vec![],
    }
}

/// Explicit object plus every feature (through its exact geometry) and every
/// non-empty geometry related to the subject's exact geometry.
fn rewrite_expectation(d: &BenchmarkDataset, relation: TopologicalRelation, s: &str, o: &str) -> Vec<String> {
    let subject = &d.exact(s).geometry;
    let holds = |g: &geobench_core::geometry::Geometry| {
        !g.is_empty() && relation.holds(subject, g).expect("non-empty operands")
    };
    let mut out = vec![o.to_owned()];
    out.extend(
        FEATURES
            .iter()
            .filter(|f| holds(&d.exact(f).geometry))
            .map(|f| f.to_string()),
    );
    out.extend(
        d.geometries
            .iter()
            .filter(|g| holds(&g.geometry))
            .map(|g| g.local_name()),
    );
    out.sort();
    out.dedup();
    out
}

fn circle(cx: f64, cy: f64, r: f64, segments: usize) -> String {
    let mut coords: Vec<String> = (0..segments)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / segments as f64;
            format!("{} {}", round6(cx + r * t.cos()), round6(cy + r * t.sin()))
        })
        .collect();
    coords.push(coords[0].clone());
    format!("Polygon(({}))", coords.join(", "))
}

fn round6(v: f64) -> f64 {
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn main() {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog"));
    let mut author = Author {
        dataset: build_dataset(),
        entries: Vec::new(),
        queries: Vec::new(),
    };
    author.core();
    author.topology_vocabulary();
    author.geometry_extension();
    author.geometry_topology();
    author.rdfs_entailment();
    author.query_rewrite();

    let mut order: Vec<usize> = (0..author.entries.len()).collect();
    order.sort_by_key(|&i| author.entries[i].requirement);
    let tests: Vec<ManifestEntry> = order.iter().map(|&i| author.entries[i].clone()).collect();
    assert_eq!(tests.len(), 206);
    assert!(tests.iter().all(|t| t.extension == t.requirement.extension()));

    let queries_dir = dir.join("queries");
    if queries_dir.exists() {
        fs::remove_dir_all(&queries_dir).expect("clear queries");
    }
    fs::create_dir_all(&queries_dir).expect("create queries dir");
    for (file, text) in &author.queries {
        fs::write(dir.join(file), text).expect("write query");
    }
    let manifest = Manifest { tests };
    let json = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    fs::write(dir.join("catalog.json"), json + "\n").expect("write manifest");
    println!("wrote {} tests to {}", manifest.tests.len(), dir.display());
}
