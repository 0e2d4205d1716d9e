// SPDX-License-Identifier: Apache-2.0

//! The benchmark dataset: thirteen features, their exact and centre-point
//! geometries, explicit topological relation triples, and the class and
//! property hierarchy used for entailment.

use std::fmt;
use std::str::FromStr;

use oxrdf::{Literal, NamedNode, NamedOrBlankNode, Term, Triple};
use oxrdfxml::{RdfXmlParser, RdfXmlSerializer};
use oxttl::{TurtleParser, TurtleSerializer};

use crate::geometry::{
    geometry_property, serialize, Geometry, GeometryKind, GeometryLiteral, GeometryProperty, PropertyValue,
    Serialization, TopologicalRelation,
};
use crate::vocab::{geo, gml, my, rdf, rdfs, sf, GML_LITERAL, PREFIXES, WKT_LITERAL, XSD_BOOLEAN, XSD_INTEGER};

const J_WKT: &str = "Polygon((-77.089005 38.913574, -77.029953 38.913574, -77.029953 38.886321, -77.089005 38.886321, -77.089005 38.913574))";
const K_WKT: &str = "<http://www.opengis.net/def/crs/OGC/1.3/CRS84> Polygon((-77.089005 38.913574, -77.029953 38.913574, -77.029953 38.886321, -77.089005 38.886321, -77.089005 38.913574))";
const L_WKT: &str = "<http://www.opengis.net/def/crs/OGC/1.3/CRS84> Point(-88.38  31.95)";
const M_WKT: &str = "<http://www.opengis.net/def/crs/EPSG/0/4326>   Point( 31.95 -88.38)";

/// Feature names in IRI order.
pub const FEATURES: [&str; 13] = ["A", "B", "C", "D", "E", "F", "G", "H", "I", "J", "K", "L", "M"];

/// Features that also carry a centre point geometry.
pub const POINT_FEATURES: [&str; 7] = ["A", "B", "C", "D", "G", "H", "I"];

/// Explicit relation triples between features, one per relation.
pub const EXPLICIT_RELATIONS: [(TopologicalRelation, &str, &str); 24] = {
    use TopologicalRelation::*;
    [
        (SfEquals, "J", "K"),
        (SfDisjoint, "C", "B"),
        (SfIntersects, "A", "B"),
        (SfTouches, "A", "C"),
        (SfCrosses, "E", "A"),
        (SfWithin, "B", "A"),
        (SfContains, "A", "B"),
        (SfOverlaps, "B", "G"),
        (EhEquals, "J", "K"),
        (EhDisjoint, "C", "B"),
        (EhMeet, "A", "C"),
        (EhOverlap, "B", "E"),
        (EhCovers, "A", "G"),
        (EhCoveredBy, "G", "A"),
        (EhInside, "B", "A"),
        (EhContains, "A", "B"),
        (Rcc8Eq, "J", "K"),
        (Rcc8Dc, "C", "B"),
        (Rcc8Ec, "A", "C"),
        (Rcc8Po, "B", "G"),
        (Rcc8Tppi, "A", "G"),
        (Rcc8Tpp, "G", "A"),
        (Rcc8Ntpp, "B", "A"),
        (Rcc8Ntppi, "A", "B"),
    ]
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeometryRole {
    Exact,
    Point,
}

/// One geometry resource of the dataset with both of its literals.
#[derive(Debug, Clone, PartialEq)]
pub struct DatasetGeometry {
    pub feature: &'static str,
    pub role: GeometryRole,
    pub wkt: String,
    pub gml: String,
    pub geometry: Geometry,
    pub sf_class: &'static str,
    pub gml_class: Option<&'static str>,
}

impl DatasetGeometry {
    /// Local name of the geometry resource, e.g. `AExactGeom` or `APoint`.
    pub fn local_name(&self) -> String {
        match self.role {
            GeometryRole::Exact => format!("{}ExactGeom", self.feature),
            GeometryRole::Point => format!("{}Point", self.feature),
        }
    }

    pub fn iri(&self) -> NamedNode {
        my(&self.local_name())
    }

    pub fn literal(&self, serialization: Serialization) -> &str {
        match serialization {
            Serialization::Wkt => &self.wkt,
            Serialization::Gml => &self.gml,
        }
    }

    pub fn rdf_literal(&self, serialization: Serialization) -> Literal {
        let datatype = match serialization {
            Serialization::Wkt => WKT_LITERAL,
            Serialization::Gml => GML_LITERAL,
        };
        Literal::new_typed_literal(self.literal(serialization), NamedNode::new_unchecked(datatype))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkDataset {
    pub data: Vec<Triple>,
    pub schema: Vec<Triple>,
    pub geometries: Vec<DatasetGeometry>,
}

impl BenchmarkDataset {
    pub fn geometry(&self, feature: &str, role: GeometryRole) -> Option<&DatasetGeometry> {
        self.geometries.iter().find(|g| g.feature == feature && g.role == role)
    }

    pub fn exact(&self, feature: &str) -> &DatasetGeometry {
        self.geometry(feature, GeometryRole::Exact)
            .unwrap_or_else(|| panic!("no feature {feature}"))
    }

    /// Data and schema triples together, as loaded into a store.
    pub fn all_triples(&self) -> Vec<Triple> {
        let mut all = self.data.clone();
        all.extend(self.schema.iter().cloned());
        sort_triples(&mut all);
        all
    }
}

fn typed(value: impl Into<String>, datatype: &str) -> Term {
    Literal::new_typed_literal(value, NamedNode::new_unchecked(datatype)).into()
}

fn property_term(value: PropertyValue) -> Term {
    match value {
        PropertyValue::Integer(i) => typed(i.to_string(), XSD_INTEGER),
        PropertyValue::Boolean(b) => typed(b.to_string(), XSD_BOOLEAN),
    }
}

fn triple(s: &NamedNode, p: NamedNode, o: impl Into<Term>) -> Triple {
    Triple::new(NamedOrBlankNode::from(s.clone()), p, o.into())
}

/// Sorts by N-Triples text and drops duplicates.
pub fn sort_triples(triples: &mut Vec<Triple>) {
    triples.sort_by_cached_key(|t| t.to_string());
    triples.dedup();
}

fn from_geometry(
    feature: &'static str,
    role: GeometryRole,
    geometry: Geometry,
    sf_class: &'static str,
) -> DatasetGeometry {
    DatasetGeometry {
        feature,
        role,
        wkt: serialize(&geometry, Serialization::Wkt, true),
        gml: serialize(&geometry, Serialization::Gml, true),
        geometry,
        sf_class,
        gml_class: None,
    }
}

fn from_wkt(feature: &'static str, wkt: &str, sf_class: &'static str, gml_crs: bool) -> DatasetGeometry {
    let geometry = GeometryLiteral::parse(Serialization::Wkt, wkt)
        .expect("dataset literal parses")
        .parsed;
    DatasetGeometry {
        feature,
        role: GeometryRole::Exact,
        wkt: wkt.to_owned(),
        gml: serialize(&geometry, Serialization::Gml, gml_crs),
        geometry,
        sf_class,
        gml_class: None,
    }
}

fn empty(
    feature: &'static str,
    role: GeometryRole,
    wkt: &str,
    gml: &str,
    sf_class: &'static str,
    kind: Option<GeometryKind>,
) -> DatasetGeometry {
    DatasetGeometry {
        feature,
        role,
        wkt: wkt.to_owned(),
        gml: gml.to_owned(),
        geometry: Geometry::empty(kind),
        sf_class,
        gml_class: None,
    }
}

/// Every geometry of the dataset: exact geometries in feature order, then
/// the centre points.
pub fn dataset_geometries() -> Vec<DatasetGeometry> {
    use GeometryRole::{Exact, Point};
    let rect = Geometry::rectangle;
    let mut out = vec![
        from_geometry("A", Exact, rect(-0.5, -0.5, 5.25, 6.0), "Polygon"),
        from_geometry("B", Exact, rect(1.0, 1.0, 4.0, 5.0), "Polygon"),
        from_geometry("C", Exact, rect(5.25, 3.0, 7.75, 6.0), "Polygon"),
        from_geometry("D", Exact, rect(4.0, -2.0, 6.5, 1.0), "Polygon"),
        DatasetGeometry {
            gml_class: Some("LineString"),
            ..from_geometry(
                "E",
                Exact,
                Geometry::line_string([(3.0, -2.0), (4.0, 3.0)]),
                "LineString",
            )
        },
        from_geometry("F", Exact, Geometry::point(2.5, 5.0), "Point"),
        from_geometry("G", Exact, rect(-0.5, -0.5, 2.5, 3.0), "Polygon"),
        DatasetGeometry {
            gml_class: Some("LineString"),
            ..empty("H", Exact, "", "", "LineString", None)
        },
        DatasetGeometry {
            gml_class: Some("LineString"),
            ..empty(
                "I",
                Exact,
                "LineString EMPTY",
                "<LineString><posList></posList></LineString>",
                "LineString",
                Some(GeometryKind::LineString),
            )
        },
        from_wkt("J", J_WKT, "Polygon", false),
        from_wkt("K", K_WKT, "Polygon", true),
        from_wkt("L", L_WKT, "Point", true),
        from_wkt("M", M_WKT, "Point", true),
    ];
    for (feature, x, y) in [
        ("A", 2.5, 3.0),
        ("B", 1.0, 1.0),
        ("C", 6.5, 4.5),
        ("D", 5.25, -0.5),
        ("G", 2.5, 3.0),
    ] {
        out.push(from_geometry(feature, Point, Geometry::point(x, y), "Point"));
    }
    out.push(empty("H", Point, "", "", "Point", None));
    out.push(empty(
        "I",
        Point,
        "Point EMPTY",
        "<Point><pos></pos></Point>",
        "Point",
        Some(GeometryKind::Point),
    ));
    out
}

fn schema_triples() -> Vec<Triple> {
    let sub_class = |a: NamedNode, b: NamedNode| triple(&a, rdfs("subClassOf"), b);
    let sub_property = |a: NamedNode, b: NamedNode| triple(&a, rdfs("subPropertyOf"), b);
    let mut out = vec![
        sub_class(my("PlaceOfInterest"), geo("Feature")),
        sub_class(geo("Feature"), geo("SpatialObject")),
        sub_class(geo("Geometry"), geo("SpatialObject")),
        sub_class(sf("Polygon"), sf("Surface")),
        sub_class(sf("LineString"), sf("Curve")),
        sub_class(sf("Surface"), sf("Geometry")),
        sub_class(sf("Curve"), sf("Geometry")),
        sub_class(sf("Point"), sf("Geometry")),
        sub_class(gml("LineString"), gml("Surface")),
        sub_property(my("hasExactGeometry"), geo("hasDefaultGeometry")),
        sub_property(my("hasExactGeometry"), geo("hasGeometry")),
        sub_property(my("hasPointGeometry"), geo("hasGeometry")),
        sub_property(geo("hasDefaultGeometry"), geo("hasGeometry")),
        sub_property(geo("asWKT"), geo("hasSerialization")),
        sub_property(geo("asGML"), geo("hasSerialization")),
    ];
    sort_triples(&mut out);
    out
}

fn geometry_triples(g: &DatasetGeometry, out: &mut Vec<Triple>) {
    let s = g.iri();
    if g.role == GeometryRole::Exact {
        out.push(triple(&s, rdf("type"), geo("Geometry")));
    }
    out.push(triple(&s, rdf("type"), sf(g.sf_class)));
    if let Some(class) = g.gml_class {
        out.push(triple(&s, rdf("type"), gml(class)));
    }
    let wkt = g.rdf_literal(Serialization::Wkt);
    let gml_lit = g.rdf_literal(Serialization::Gml);
    out.push(triple(&s, geo("asWKT"), wkt.clone()));
    out.push(triple(&s, geo("asGML"), gml_lit.clone()));
    out.push(triple(&s, geo("hasSerialization"), wkt));
    out.push(triple(&s, geo("hasSerialization"), gml_lit));
    for p in GeometryProperty::ALL {
        out.push(triple(
            &s,
            geo(p.name()),
            property_term(geometry_property(p, &g.geometry)),
        ));
    }
    let label = match g.role {
        GeometryRole::Exact => format!("{} exact geometry", g.feature),
        GeometryRole::Point => format!("{} point", g.feature),
    };
    out.push(triple(&s, rdfs("label"), Literal::new_simple_literal(label)));
}

pub fn build_dataset() -> BenchmarkDataset {
    let geometries = dataset_geometries();
    let mut data = Vec::new();
    for f in FEATURES {
        let s = my(f);
        data.push(triple(&s, rdf("type"), my("PlaceOfInterest")));
        data.push(triple(
            &s,
            rdfs("label"),
            Literal::new_simple_literal(format!("Feature {f}")),
        ));
        data.push(triple(&s, my("hasExactGeometry"), my(&format!("{f}ExactGeom"))));
        if POINT_FEATURES.contains(&f) {
            data.push(triple(&s, my("hasPointGeometry"), my(&format!("{f}Point"))));
        }
    }
    // Stated without entailment so the first-result queries can be answered
    // by plain stores.
    let a = my("A");
    data.push(triple(&a, rdf("type"), geo("Feature")));
    data.push(triple(&a, rdf("type"), geo("SpatialObject")));
    data.push(triple(&a, geo("hasGeometry"), my("AExactGeom")));
    data.push(triple(&a, geo("hasGeometry"), my("APoint")));
    data.push(triple(&a, geo("hasDefaultGeometry"), my("AExactGeom")));

    for g in &geometries {
        geometry_triples(g, &mut data);
    }
    for (relation, s, o) in EXPLICIT_RELATIONS {
        data.push(triple(&my(s), geo(relation.name()), my(o)));
    }
    sort_triples(&mut data);
    BenchmarkDataset {
        data,
        schema: schema_triples(),
        geometries,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RdfFormat {
    Turtle,
    RdfXml,
}

impl RdfFormat {
    pub fn media_type(self) -> &'static str {
        match self {
            RdfFormat::Turtle => "text/turtle",
            RdfFormat::RdfXml => "application/rdf+xml",
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            RdfFormat::Turtle => "ttl",
            RdfFormat::RdfXml => "rdf",
        }
    }

    pub fn from_media_type(media_type: &str) -> Option<Self> {
        match media_type.split(';').next()?.trim() {
            "text/turtle" | "application/x-turtle" => Some(RdfFormat::Turtle),
            "application/rdf+xml" => Some(RdfFormat::RdfXml),
            _ => None,
        }
    }
}

impl fmt::Display for RdfFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RdfFormat::Turtle => "ttl",
            RdfFormat::RdfXml => "rdfxml",
        })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("unknown RDF format {0:?} (expected ttl or rdfxml)")]
    UnknownFormat(String),
    #[error("RDF syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl FromStr for RdfFormat {
    type Err = DatasetError;

    fn from_str(s: &str) -> Result<Self, DatasetError> {
        match s.to_ascii_lowercase().as_str() {
            "ttl" | "turtle" => Ok(RdfFormat::Turtle),
            "rdfxml" | "rdf" | "xml" => Ok(RdfFormat::RdfXml),
            _ => Err(DatasetError::UnknownFormat(s.to_owned())),
        }
    }
}

/// Serializes triples in N-Triples order with the fixed prefix bindings.
pub fn emit(triples: &[Triple], format: RdfFormat) -> Result<Vec<u8>, DatasetError> {
    let mut sorted = triples.to_vec();
    sort_triples(&mut sorted);
    match format {
        RdfFormat::Turtle => {
            let mut serializer = TurtleSerializer::new();
            for (p, ns) in PREFIXES {
                serializer = serializer.with_prefix(p, ns).expect("fixed prefixes are valid IRIs");
            }
            let mut w = serializer.for_writer(Vec::new());
            for t in &sorted {
                w.serialize_triple(t)?;
            }
            Ok(w.finish()?)
        }
        RdfFormat::RdfXml => {
            let mut serializer = RdfXmlSerializer::new();
            for (p, ns) in PREFIXES {
                serializer = serializer.with_prefix(p, ns).expect("fixed prefixes are valid IRIs");
            }
            let mut w = serializer.for_writer(Vec::new());
            for t in &sorted {
                w.serialize_triple(t)?;
            }
            Ok(w.finish()?)
        }
    }
}

pub fn parse_rdf(bytes: &[u8], format: RdfFormat) -> Result<Vec<Triple>, DatasetError> {
    let syntax = |e: &dyn fmt::Display| DatasetError::Syntax(e.to_string());
    match format {
        RdfFormat::Turtle => TurtleParser::new()
            .for_slice(bytes)
            .map(|r| r.map_err(|e| syntax(&e)))
            .collect(),
        RdfFormat::RdfXml => RdfXmlParser::new()
            .for_slice(bytes)
            .map(|r| r.map_err(|e| syntax(&e)))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::geometry_equals;

    #[test]
    fn size_and_typing() {
        let d = build_dataset();
        assert!(d.data.len() > 300, "{}", d.data.len());
        let typed_geometries = d
            .data
            .iter()
            .filter(|t| t.predicate == rdf("type") && t.object == Term::from(geo("Geometry")))
            .count();
        assert_eq!(typed_geometries, 13);
        for g in &d.geometries {
            for ser in [Serialization::Wkt, Serialization::Gml] {
                let lit = GeometryLiteral::parse(ser, g.literal(ser)).unwrap();
                assert!(
                    geometry_equals(&lit.parsed, &g.geometry, 0.0),
                    "{} {ser}",
                    g.local_name()
                );
            }
        }
    }

    #[test]
    fn published_literals() {
        let d = build_dataset();
        assert!(d
            .exact("K")
            .wkt
            .starts_with("<http://www.opengis.net/def/crs/OGC/1.3/CRS84> Polygon((-77.089005 38.913574"));
        assert_eq!(d.exact("L").wkt, L_WKT);
        assert!(geometry_equals(&d.exact("J").geometry, &d.exact("K").geometry, 0.0));
        assert!(geometry_equals(&d.exact("L").geometry, &d.exact("M").geometry, 0.0));
        assert!(d.exact("H").geometry.is_empty() && d.exact("I").geometry.is_empty());
    }

    #[test]
    fn round_trips() {
        let d = build_dataset();
        let mut expected = d.data.clone();
        sort_triples(&mut expected);
        for format in [RdfFormat::Turtle, RdfFormat::RdfXml] {
            let bytes = emit(&d.data, format).unwrap();
            let mut back = parse_rdf(&bytes, format).unwrap();
            sort_triples(&mut back);
            assert_eq!(back, expected, "{format}");
            assert_eq!(emit(&back, format).unwrap(), bytes);
        }
        assert!(matches!(
            "json".parse::<RdfFormat>(),
            Err(DatasetError::UnknownFormat(_))
        ));
    }

    #[test]
    fn explicit_relations_hold_and_name_the_first_related_feature() {
        let d = build_dataset();
        for (relation, s, o) in EXPLICIT_RELATIONS {
            let subject = &d.exact(s).geometry;
            let related: Vec<&str> = FEATURES
                .into_iter()
                .filter(|f| *f != s && !d.exact(f).geometry.is_empty())
                .filter(|f| relation.holds(subject, &d.exact(f).geometry).unwrap())
                .collect();
            assert_eq!(related.first(), Some(&o), "{relation} {s}: {related:?}");
        }
    }
}
