// SPDX-License-Identifier: Apache-2.0

//! Non-topological query functions. Results are always in CRS84.

use std::f64::consts::PI;

use super::overlay::{overlay, SetOp};
use super::predicates::TopologicalRelation;
use super::primitives::{dist, dist_to_segment, hull, segments, signed_area2};
use super::{Coord, CrsRef, Geometry, GeometryError, GeometryKind, Result, Shape};

/// Fixed scale used for metre distances and radii.
pub const METRES_PER_DEGREE: f64 = 111_320.0;
/// Circle approximation used by [`buffer`].
pub const BUFFER_SEGMENTS_PER_QUADRANT: usize = 32;

const UOM: &str = "http://www.opengis.net/def/uom/OGC/1.0/";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Units {
    Degree,
    Metre,
    Radian,
}

impl Units {
    pub fn from_iri(iri: &str) -> Result<Units> {
        match iri.strip_prefix(UOM) {
            Some("degree") => Ok(Units::Degree),
            Some("metre" | "meter") => Ok(Units::Metre),
            Some("radian") => Ok(Units::Radian),
            _ => Err(GeometryError::UnknownUnits(iri.to_owned())),
        }
    }

    pub fn iri(self) -> String {
        let local = match self {
            Units::Degree => "degree",
            Units::Metre => "metre",
            Units::Radian => "radian",
        };
        format!("{UOM}{local}")
    }

    fn to_degrees(self, v: f64) -> f64 {
        match self {
            Units::Degree => v,
            Units::Metre => v / METRES_PER_DEGREE,
            Units::Radian => v.to_degrees(),
        }
    }

    fn in_units(self, v: f64) -> f64 {
        match self {
            Units::Degree => v,
            Units::Metre => v * METRES_PER_DEGREE,
            Units::Radian => v.to_radians(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionArg {
    Geometry(Geometry),
    Number(f64),
    Iri(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionValue {
    Geometry(Geometry),
    Number(f64),
    Iri(String),
}

fn non_empty(g: &Geometry, function: &'static str) -> Result<()> {
    if g.is_empty() {
        Err(GeometryError::EmptyOperand(function))
    } else {
        g.require_comparable()
    }
}

/// Shortest planar distance between two geometries.
pub fn distance(a: &Geometry, b: &Geometry, units: Units) -> Result<f64> {
    non_empty(a, "distance")?;
    non_empty(b, "distance")?;
    if TopologicalRelation::SfIntersects.holds(a, b)? {
        return Ok(0.0);
    }
    let (pa, sa) = (a.coords(), segments(a));
    let (pb, sb) = (b.coords(), segments(b));
    let mut best = f64::INFINITY;
    for p in &pa {
        best = best.min(pb.iter().map(|q| dist(*p, *q)).fold(f64::INFINITY, f64::min));
        best = best.min(
            sb.iter()
                .map(|(s, e)| dist_to_segment(*p, *s, *e))
                .fold(f64::INFINITY, f64::min),
        );
    }
    for p in &pb {
        best = best.min(
            sa.iter()
                .map(|(s, e)| dist_to_segment(*p, *s, *e))
                .fold(f64::INFINITY, f64::min),
        );
    }
    Ok(units.in_units(best))
}

fn is_convex(g: &Geometry) -> bool {
    match &g.shape {
        Shape::Point(_) => true,
        Shape::MultiPoint(_) => false,
        Shape::LineString(cs) => hull(cs).len() <= 2,
        Shape::Polygon(rings) => {
            if rings.len() != 1 {
                return false;
            }
            let mut h = hull(&rings[0]);
            if let Some(&f) = h.first() {
                h.push(f);
            }
            (signed_area2(&h) - signed_area2(&rings[0]).abs()).abs() <= 1e-9
        }
        Shape::Empty(_) => false,
    }
}

/// Minkowski sum with a disc, for convex inputs.
pub fn buffer(g: &Geometry, radius: f64, units: Units) -> Result<Geometry> {
    non_empty(g, "buffer")?;
    if !radius.is_finite() || radius < 0.0 {
        return Err(GeometryError::Unsupported(format!("buffer radius {radius}")));
    }
    if radius == 0.0 {
        return Ok(g.clone().with_crs(CrsRef::crs84()));
    }
    if !is_convex(g) {
        return Err(GeometryError::Unsupported("buffer of a non-convex geometry".into()));
    }
    let r = units.to_degrees(radius);
    let steps = 4 * BUFFER_SEGMENTS_PER_QUADRANT;
    let mut pts = Vec::new();
    for c in g.coords() {
        for k in 0..steps {
            let t = 2.0 * PI * k as f64 / steps as f64;
            pts.push(Coord::new(c.x + r * t.cos(), c.y + r * t.sin()));
        }
    }
    Ok(from_hull(hull(&pts)))
}

fn from_hull(mut h: Vec<Coord>) -> Geometry {
    let shape = match h.len() {
        0 => Shape::Empty(Some(GeometryKind::Point)),
        1 => Shape::Point(h[0]),
        2 => Shape::LineString(h),
        _ => {
            h.push(h[0]);
            Shape::Polygon(vec![h])
        }
    };
    Geometry::new(shape, CrsRef::crs84())
}

pub fn convex_hull(g: &Geometry) -> Result<Geometry> {
    g.require_comparable()?;
    Ok(from_hull(hull(&g.coords())))
}

/// Bounding box; degenerate boxes collapse to a point or a segment.
pub fn envelope(g: &Geometry) -> Result<Geometry> {
    g.require_comparable()?;
    let Some((x0, y0, x1, y1)) = g.bounds() else {
        return Ok(Geometry::empty(Some(GeometryKind::Polygon)));
    };
    Ok(match (x0 == x1, y0 == y1) {
        (true, true) => Geometry::point(x0, y0),
        (true, false) | (false, true) => Geometry::line_string([(x0, y0), (x1, y1)]),
        _ => Geometry::rectangle(x0, y0, x1, y1),
    })
}

/// Polygon exterior as a closed line, line endpoints, and nothing for points.
pub fn boundary(g: &Geometry) -> Result<Geometry> {
    g.require_comparable()?;
    let shape = match &g.shape {
        Shape::Empty(kind) => Shape::Empty(*kind),
        Shape::Point(_) | Shape::MultiPoint(_) => Shape::Empty(Some(GeometryKind::Point)),
        Shape::LineString(cs) => {
            let (first, last) = (cs[0], cs[cs.len() - 1]);
            if first == last {
                Shape::Empty(Some(GeometryKind::MultiPoint))
            } else {
                Shape::MultiPoint(vec![first, last])
            }
        }
        Shape::Polygon(rings) if rings.len() == 1 => Shape::LineString(rings[0].clone()),
        Shape::Polygon(_) => return Err(GeometryError::Unsupported("boundary of a polygon with holes".into())),
    };
    Ok(Geometry::new(shape, CrsRef::crs84()))
}

pub fn intersection(a: &Geometry, b: &Geometry) -> Result<Geometry> {
    overlay(SetOp::Intersection, a, b)
}

pub fn union(a: &Geometry, b: &Geometry) -> Result<Geometry> {
    overlay(SetOp::Union, a, b)
}

pub fn difference(a: &Geometry, b: &Geometry) -> Result<Geometry> {
    overlay(SetOp::Difference, a, b)
}

pub fn sym_difference(a: &Geometry, b: &Geometry) -> Result<Geometry> {
    overlay(SetOp::SymDifference, a, b)
}

pub fn get_srid(g: &Geometry) -> String {
    g.crs.uri().to_owned()
}

/// Dispatches by `geof:` local name.
pub fn nontopological_function(name: &str, args: &[FunctionArg]) -> Result<FunctionValue> {
    use FunctionArg as A;
    let bad = |expected: &'static str| GeometryError::BadArguments {
        function: name.to_owned(),
        expected,
    };
    let geometry = |v: Result<Geometry>| v.map(FunctionValue::Geometry);
    match name {
        "distance" => match args {
            [A::Geometry(a), A::Geometry(b), A::Iri(u)] => {
                Ok(FunctionValue::Number(distance(a, b, Units::from_iri(u)?)?))
            }
            _ => Err(bad("two geometries and a units IRI")),
        },
        "buffer" => match args {
            [A::Geometry(g), A::Number(r), A::Iri(u)] => geometry(buffer(g, *r, Units::from_iri(u)?)),
            _ => Err(bad("a geometry, a radius and a units IRI")),
        },
        "convexHull" | "envelope" | "boundary" | "getSRID" => match args {
            [A::Geometry(g)] => match name {
                "convexHull" => geometry(convex_hull(g)),
                "envelope" => geometry(envelope(g)),
                "boundary" => geometry(boundary(g)),
                _ => Ok(FunctionValue::Iri(get_srid(g))),
            },
            _ => Err(bad("one geometry")),
        },
        "intersection" | "union" | "difference" | "symDifference" => match args {
            [A::Geometry(a), A::Geometry(b)] => geometry(match name {
                "intersection" => intersection(a, b),
                "union" => union(a, b),
                "difference" => difference(a, b),
                _ => sym_difference(a, b),
            }),
            _ => Err(bad("two geometries")),
        },
        _ => Err(GeometryError::UnknownFunction(name.to_owned())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{parse_wkt, serialize_wkt, CRS84};

    #[test]
    fn planar_distance_in_each_unit() {
        let a = Geometry::point(0.0, 0.0);
        let b = Geometry::point(3.0, 4.0);
        assert_eq!(distance(&a, &b, Units::Degree).unwrap(), 5.0);
        assert_eq!(distance(&a, &b, Units::Metre).unwrap(), 5.0 * METRES_PER_DEGREE);
        assert!((distance(&a, &b, Units::Radian).unwrap() - 5f64.to_radians()).abs() < 1e-15);
        let sq = Geometry::rectangle(0.0, 0.0, 1.0, 1.0);
        assert_eq!(distance(&sq, &Geometry::point(0.5, 0.5), Units::Degree).unwrap(), 0.0);
        assert_eq!(distance(&sq, &Geometry::point(3.0, 0.5), Units::Degree).unwrap(), 2.0);
    }

    #[test]
    fn envelope_of_a_line() {
        let l = Geometry::line_string([(0.0, 0.0), (2.0, 3.0)]);
        assert_eq!(
            serialize_wkt(&envelope(&l).unwrap(), false),
            "Polygon((0 0, 2 0, 2 3, 0 3, 0 0))"
        );
    }

    #[test]
    fn srid_defaults_to_crs84() {
        let p = parse_wkt("Point(-88.38 31.95)").unwrap().parsed;
        assert_eq!(get_srid(&p), CRS84);
    }

    #[test]
    fn boundaries() {
        let l = Geometry::line_string([(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]);
        assert_eq!(serialize_wkt(&boundary(&l).unwrap(), false), "MultiPoint((0 0), (2 0))");
        let sq = Geometry::rectangle(0.0, 0.0, 1.0, 1.0);
        assert_eq!(
            serialize_wkt(&boundary(&sq).unwrap(), false),
            "LineString(0 0, 1 0, 1 1, 0 1, 0 0)"
        );
        assert!(boundary(&Geometry::point(1.0, 1.0)).unwrap().is_empty());
    }

    #[test]
    fn hull_of_a_line_is_the_line() {
        let l = Geometry::line_string([(3.0, -2.0), (4.0, 3.0)]);
        assert_eq!(convex_hull(&l).unwrap(), l);
    }

    #[test]
    fn point_buffer_is_a_regular_polygon() {
        let b = buffer(&Geometry::point(2.5, 5.0), 1.0, Units::Degree).unwrap();
        match &b.shape {
            Shape::Polygon(rings) => {
                assert_eq!(rings[0].len(), 4 * BUFFER_SEGMENTS_PER_QUADRANT + 1);
                for c in &rings[0] {
                    assert!((dist(*c, Coord::new(2.5, 5.0)) - 1.0).abs() < 1e-12);
                }
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn argument_checking() {
        let p = FunctionArg::Geometry(Geometry::point(0.0, 0.0));
        assert!(matches!(
            nontopological_function("distance", std::slice::from_ref(&p)),
            Err(GeometryError::BadArguments { .. })
        ));
        assert!(matches!(
            nontopological_function("distance", &[p.clone(), p.clone(), FunctionArg::Iri("urn:x".into())]),
            Err(GeometryError::UnknownUnits(_))
        ));
        assert!(matches!(
            nontopological_function("area", &[p]),
            Err(GeometryError::UnknownFunction(_))
        ));
    }
}
