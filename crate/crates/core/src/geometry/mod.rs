// SPDX-License-Identifier: Apache-2.0

//! Planar vector geometry as carried by GeoSPARQL literals.
//!
//! Coordinates are always stored in longitude/latitude order, whatever axis
//! order the source literal used. Everything here is a pure function over
//! immutable values.

mod functions;
mod gml;
mod overlay;
mod predicates;
mod primitives;
mod properties;
mod relate;
mod wkt;

use std::fmt;

pub use functions::{
    boundary, buffer, convex_hull, difference, distance, envelope, get_srid, intersection, nontopological_function,
    sym_difference, union, FunctionArg, FunctionValue, Units, BUFFER_SEGMENTS_PER_QUADRANT, METRES_PER_DEGREE,
};
pub use gml::{parse_gml, serialize_gml, GML_NAMESPACE};
pub use predicates::{topological_predicate, RelationFamily, TopologicalRelation};
pub use properties::{geometry_equals, geometry_property, is_simple, GeometryProperty, PropertyValue};
pub use relate::{matches_pattern, relate_matrix, De9im, Dimension, Location};
pub use wkt::{parse_wkt, serialize_wkt};

/// IRI of the OGC CRS84 reference system (longitude, latitude).
pub const CRS84: &str = "http://www.opengis.net/def/crs/OGC/1.3/CRS84";
/// IRI of EPSG:4326 (latitude, longitude).
pub const EPSG4326: &str = "http://www.opengis.net/def/crs/EPSG/0/4326";

#[derive(Debug, thiserror::Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("{0} is not defined for empty geometries")]
    EmptyOperand(&'static str),
    #[error("unsupported coordinate reference system <{0}>")]
    UnsupportedCrs(String),
    #[error("unknown topological predicate {0:?}")]
    UnknownPredicate(String),
    #[error("invalid DE-9IM pattern {0:?}")]
    InvalidPattern(String),
    #[error("unknown function {0:?}")]
    UnknownFunction(String),
    #[error("unknown units of measure <{0}>")]
    UnknownUnits(String),
    #[error("{function} expects {expected}")]
    BadArguments { function: String, expected: &'static str },
    #[error("unsupported geometry combination: {0}")]
    Unsupported(String),
}

impl GeometryError {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        GeometryError::Parse {
            position,
            message: message.into(),
        }
    }
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AxisOrder {
    LonLat,
    LatLon,
}

/// A coordinate reference system reference.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrsRef {
    uri: String,
    axis_order: AxisOrder,
}

impl CrsRef {
    pub fn crs84() -> Self {
        CrsRef {
            uri: CRS84.to_owned(),
            axis_order: AxisOrder::LonLat,
        }
    }

    pub fn epsg4326() -> Self {
        CrsRef {
            uri: EPSG4326.to_owned(),
            axis_order: AxisOrder::LatLon,
        }
    }

    /// Resolves a CRS IRI. Unknown IRIs are kept with longitude/latitude axis
    /// order; operations that need to compare them with CRS84 reject them.
    pub fn from_uri(uri: &str) -> Self {
        match uri {
            CRS84 => Self::crs84(),
            EPSG4326 => Self::epsg4326(),
            other => CrsRef {
                uri: other.to_owned(),
                axis_order: AxisOrder::LonLat,
            },
        }
    }

    pub fn uri(&self) -> &str {
        &self.uri
    }

    pub fn axis_order(&self) -> AxisOrder {
        self.axis_order
    }

    pub fn is_crs84(&self) -> bool {
        self.uri == CRS84
    }

    /// Whether coordinates in this CRS can be compared with CRS84 ones
    /// without a datum transformation.
    pub fn is_wgs84_compatible(&self) -> bool {
        self.uri == CRS84 || self.uri == EPSG4326
    }
}

impl Default for CrsRef {
    fn default() -> Self {
        Self::crs84()
    }
}

/// A planar coordinate; `x` is longitude and `y` latitude in degrees.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Coord {
    pub x: f64,
    pub y: f64,
}

impl Coord {
    pub const fn new(x: f64, y: f64) -> Self {
        Coord { x, y }
    }

    pub(crate) fn from_axes(first: f64, second: f64, order: AxisOrder) -> Self {
        match order {
            AxisOrder::LonLat => Coord::new(first, second),
            AxisOrder::LatLon => Coord::new(second, first),
        }
    }

    pub(crate) fn to_axes(self, order: AxisOrder) -> (f64, f64) {
        match order {
            AxisOrder::LonLat => (self.x, self.y),
            AxisOrder::LatLon => (self.y, self.x),
        }
    }
}

impl From<(f64, f64)> for Coord {
    fn from((x, y): (f64, f64)) -> Self {
        Coord::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GeometryKind {
    Point,
    MultiPoint,
    LineString,
    Polygon,
}

impl GeometryKind {
    pub fn wkt_keyword(self) -> &'static str {
        match self {
            GeometryKind::Point => "Point",
            GeometryKind::MultiPoint => "MultiPoint",
            GeometryKind::LineString => "LineString",
            GeometryKind::Polygon => "Polygon",
        }
    }

    /// Topological dimension of a non-empty geometry of this kind.
    pub fn dimension(self) -> u8 {
        match self {
            GeometryKind::Point | GeometryKind::MultiPoint => 0,
            GeometryKind::LineString => 1,
            GeometryKind::Polygon => 2,
        }
    }
}

/// The coordinate content of a geometry.
///
/// Polygon rings are closed and hold at least four coordinates; the first ring
/// is the exterior.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    /// An empty geometry. The kind is `None` for literals that are empty
    /// strings and carry no type at all.
    Empty(Option<GeometryKind>),
    Point(Coord),
    MultiPoint(Vec<Coord>),
    LineString(Vec<Coord>),
    Polygon(Vec<Vec<Coord>>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub shape: Shape,
    pub crs: CrsRef,
}

impl Geometry {
    pub fn new(shape: Shape, crs: CrsRef) -> Self {
        Geometry { shape, crs }
    }

    pub fn point(x: f64, y: f64) -> Self {
        Geometry::new(Shape::Point(Coord::new(x, y)), CrsRef::crs84())
    }

    pub fn line_string(coords: impl IntoIterator<Item = (f64, f64)>) -> Self {
        Geometry::new(
            Shape::LineString(coords.into_iter().map(Coord::from).collect()),
            CrsRef::crs84(),
        )
    }

    /// A polygon without holes. The ring is closed if it is not already.
    pub fn polygon(ring: impl IntoIterator<Item = (f64, f64)>) -> Self {
        let mut ring: Vec<Coord> = ring.into_iter().map(Coord::from).collect();
        if ring.first() != ring.last() {
            ring.push(ring[0]);
        }
        Geometry::new(Shape::Polygon(vec![ring]), CrsRef::crs84())
    }

    /// Axis-aligned rectangle from two opposite corners.
    pub fn rectangle(min_x: f64, min_y: f64, max_x: f64, max_y: f64) -> Self {
        Geometry::polygon([(min_x, min_y), (max_x, min_y), (max_x, max_y), (min_x, max_y)])
    }

    pub fn empty(kind: Option<GeometryKind>) -> Self {
        Geometry::new(Shape::Empty(kind), CrsRef::crs84())
    }

    pub fn with_crs(mut self, crs: CrsRef) -> Self {
        self.crs = crs;
        self
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.shape, Shape::Empty(_))
    }

    pub fn kind(&self) -> Option<GeometryKind> {
        match &self.shape {
            Shape::Empty(kind) => *kind,
            Shape::Point(_) => Some(GeometryKind::Point),
            Shape::MultiPoint(_) => Some(GeometryKind::MultiPoint),
            Shape::LineString(_) => Some(GeometryKind::LineString),
            Shape::Polygon(_) => Some(GeometryKind::Polygon),
        }
    }

    /// All coordinates in storage order.
    pub fn coords(&self) -> Vec<Coord> {
        match &self.shape {
            Shape::Empty(_) => Vec::new(),
            Shape::Point(c) => vec![*c],
            Shape::MultiPoint(cs) | Shape::LineString(cs) => cs.clone(),
            Shape::Polygon(rings) => rings.iter().flatten().copied().collect(),
        }
    }

    /// `(min_x, min_y, max_x, max_y)`, or `None` for empty geometries.
    pub fn bounds(&self) -> Option<(f64, f64, f64, f64)> {
        let coords = self.coords();
        let first = coords.first()?;
        Some(
            coords
                .iter()
                .fold((first.x, first.y, first.x, first.y), |(x0, y0, x1, y1), c| {
                    (x0.min(c.x), y0.min(c.y), x1.max(c.x), y1.max(c.y))
                }),
        )
    }

    pub(crate) fn require_comparable(&self) -> Result<()> {
        if self.crs.is_wgs84_compatible() {
            Ok(())
        } else {
            Err(GeometryError::UnsupportedCrs(self.crs.uri().to_owned()))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Serialization {
    Wkt,
    Gml,
}

impl fmt::Display for Serialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Serialization::Wkt => "WKT",
            Serialization::Gml => "GML",
        })
    }
}

/// A geometry literal together with the text it was read from.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometryLiteral {
    pub serialization: Serialization,
    pub raw: String,
    pub parsed: Geometry,
}

impl GeometryLiteral {
    pub fn parse(serialization: Serialization, raw: &str) -> Result<Self> {
        match serialization {
            Serialization::Wkt => parse_wkt(raw),
            Serialization::Gml => parse_gml(raw),
        }
    }
}

/// Canonical text for a geometry in the requested serialization.
pub fn serialize(geometry: &Geometry, serialization: Serialization, include_crs: bool) -> String {
    match serialization {
        Serialization::Wkt => serialize_wkt(geometry, include_crs),
        Serialization::Gml => serialize_gml(geometry, include_crs),
    }
}

/// Shortest decimal text that parses back to the same `f64`.
pub(crate) fn format_number(value: f64) -> String {
    if value == 0.0 {
        // Avoid emitting "-0".
        return "0".to_owned();
    }
    format!("{value}")
}
