// SPDX-License-Identifier: Apache-2.0

//! Namespaces and terms used by the dataset, the catalog and the fixture.

use oxrdf::{LiteralRef, NamedNode};

use crate::geometry::{GeometryLiteral, Result as GeometryResult, Serialization};

pub const GEO: &str = "http://www.opengis.net/ont/geosparql#";
pub const GEOF: &str = "http://www.opengis.net/def/function/geosparql/";
pub const SF: &str = "http://www.opengis.net/ont/sf#";
pub const GML_ONT: &str = "http://www.opengis.net/ont/gml#";
pub const MY: &str = "http://example.org/ApplicationSchema#";
pub const UOM: &str = "http://www.opengis.net/def/uom/OGC/1.0/";
pub const RDF: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

pub const WKT_LITERAL: &str = "http://www.opengis.net/ont/geosparql#wktLiteral";
pub const GML_LITERAL: &str = "http://www.opengis.net/ont/geosparql#gmlLiteral";
pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS_SUBCLASS_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subClassOf";
pub const RDFS_SUBPROPERTY_OF: &str = "http://www.w3.org/2000/01/rdf-schema#subPropertyOf";
pub const XSD_BOOLEAN: &str = "http://www.w3.org/2001/XMLSchema#boolean";
pub const XSD_INTEGER: &str = "http://www.w3.org/2001/XMLSchema#integer";
pub const XSD_DOUBLE: &str = "http://www.w3.org/2001/XMLSchema#double";
pub const XSD_DECIMAL: &str = "http://www.w3.org/2001/XMLSchema#decimal";
pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_ANY_URI: &str = "http://www.w3.org/2001/XMLSchema#anyURI";

/// Prefix bindings used when emitting Turtle and rendering queries.
pub const PREFIXES: [(&str, &str); 9] = [
    ("my", MY),
    ("geo", GEO),
    ("geof", GEOF),
    ("sf", SF),
    ("gml", GML_ONT),
    ("rdf", RDF),
    ("rdfs", RDFS),
    ("xsd", XSD),
    ("uom", UOM),
];

fn iri(ns: &str, local: &str) -> NamedNode {
    NamedNode::new_unchecked(format!("{ns}{local}"))
}

pub fn geo(local: &str) -> NamedNode {
    iri(GEO, local)
}

pub fn geof(local: &str) -> NamedNode {
    iri(GEOF, local)
}

pub fn sf(local: &str) -> NamedNode {
    iri(SF, local)
}

pub fn gml(local: &str) -> NamedNode {
    iri(GML_ONT, local)
}

pub fn my(local: &str) -> NamedNode {
    iri(MY, local)
}

pub fn rdf(local: &str) -> NamedNode {
    iri(RDF, local)
}

pub fn rdfs(local: &str) -> NamedNode {
    iri(RDFS, local)
}

pub fn xsd(local: &str) -> NamedNode {
    iri(XSD, local)
}

/// The serialization a literal datatype denotes, if it is a geometry literal.
pub fn geometry_serialization(datatype: &str) -> Option<Serialization> {
    match datatype {
        WKT_LITERAL => Some(Serialization::Wkt),
        GML_LITERAL => Some(Serialization::Gml),
        _ => None,
    }
}

/// Parses a `geo:wktLiteral` or `geo:gmlLiteral`; `None` for other datatypes.
pub fn parse_geometry_literal(literal: LiteralRef<'_>) -> Option<GeometryResult<GeometryLiteral>> {
    geometry_serialization(literal.datatype().as_str()).map(|s| GeometryLiteral::parse(s, literal.value()))
}

/// Turtle/SPARQL prologue with every binding in [`PREFIXES`].
pub fn sparql_prologue() -> String {
    PREFIXES.iter().map(|(p, ns)| format!("PREFIX {p}: <{ns}>\n")).collect()
}
