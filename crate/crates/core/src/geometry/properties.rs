// SPDX-License-Identifier: Apache-2.0

//! Geometry properties and tolerant equality.

use std::fmt;
use std::str::FromStr;

use super::predicates::TopologicalRelation;
use super::primitives::{dist, dist_to_segment, near, segment_intersection, segments};
use super::{Coord, Geometry, GeometryError, Result, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeometryProperty {
    Dimension,
    CoordinateDimension,
    SpatialDimension,
    IsEmpty,
    IsSimple,
}

impl GeometryProperty {
    pub const ALL: [GeometryProperty; 5] = [
        GeometryProperty::Dimension,
        GeometryProperty::CoordinateDimension,
        GeometryProperty::SpatialDimension,
        GeometryProperty::IsEmpty,
        GeometryProperty::IsSimple,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GeometryProperty::Dimension => "dimension",
            GeometryProperty::CoordinateDimension => "coordinateDimension",
            GeometryProperty::SpatialDimension => "spatialDimension",
            GeometryProperty::IsEmpty => "isEmpty",
            GeometryProperty::IsSimple => "isSimple",
        }
    }
}

impl FromStr for GeometryProperty {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        GeometryProperty::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| GeometryError::UnknownFunction(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropertyValue {
    Integer(i64),
    Boolean(bool),
}

impl fmt::Display for PropertyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PropertyValue::Integer(i) => write!(f, "{i}"),
            PropertyValue::Boolean(b) => write!(f, "{b}"),
        }
    }
}

/// Empty geometries report the dimension of their stated kind, or 0 when
/// they have none.
pub fn geometry_property(property: GeometryProperty, g: &Geometry) -> PropertyValue {
    match property {
        GeometryProperty::Dimension => PropertyValue::Integer(g.kind().map_or(0, |k| k.dimension()).into()),
        GeometryProperty::CoordinateDimension | GeometryProperty::SpatialDimension => PropertyValue::Integer(2),
        GeometryProperty::IsEmpty => PropertyValue::Boolean(g.is_empty()),
        GeometryProperty::IsSimple => PropertyValue::Boolean(is_simple(g)),
    }
}

/// No self-intersection other than consecutive segments sharing a vertex and
/// a closed line meeting itself at its start.
pub fn is_simple(g: &Geometry) -> bool {
    match &g.shape {
        Shape::Empty(_) | Shape::Point(_) => true,
        Shape::MultiPoint(cs) => cs
            .iter()
            .enumerate()
            .all(|(i, p)| cs[i + 1..].iter().all(|q| !near(*p, *q))),
        Shape::LineString(cs) => chain_is_simple(cs),
        Shape::Polygon(rings) => rings.iter().all(|r| chain_is_simple(r)),
    }
}

fn chain_is_simple(cs: &[Coord]) -> bool {
    let segs: Vec<(Coord, Coord)> = cs.windows(2).map(|w| (w[0], w[1])).collect();
    let closed = cs.len() > 2 && cs[0] == cs[cs.len() - 1];
    let n = segs.len();
    for i in 0..n {
        if near(segs[i].0, segs[i].1) {
            return false;
        }
        for j in i + 1..n {
            let hits = segment_intersection(segs[i].0, segs[i].1, segs[j].0, segs[j].1);
            let allowed: Vec<Coord> = match (j == i + 1, closed && i == 0 && j == n - 1) {
                (true, _) => vec![segs[i].1],
                (false, true) => vec![segs[i].0],
                _ => vec![],
            };
            if hits.iter().any(|h| !allowed.iter().any(|a| near(*a, *h))) {
                return false;
            }
        }
    }
    true
}

/// Spatial equality after axis normalization.
///
/// Two empty geometries are equal whatever their kinds. With a zero
/// tolerance the DE-9IM equality pattern decides; otherwise the geometries
/// must have the same dimension and their boundaries (or points) must lie
/// within `tol` of each other in both directions.
pub fn geometry_equals(a: &Geometry, b: &Geometry, tol: f64) -> bool {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return true,
        (true, false) | (false, true) => return false,
        _ => {}
    }
    if !(a.crs.is_wgs84_compatible() && b.crs.is_wgs84_compatible()) {
        return a == b;
    }
    if tol <= 0.0 {
        return TopologicalRelation::SfEquals.holds(a, b).unwrap_or(false);
    }
    if a.kind().map(|k| k.dimension()) != b.kind().map(|k| k.dimension()) {
        return false;
    }
    directed_hausdorff(a, b) <= tol && directed_hausdorff(b, a) <= tol
}

const DENSIFY: usize = 16;

fn samples(g: &Geometry) -> Vec<Coord> {
    let mut out = g.coords();
    for (s, e) in segments(g) {
        for k in 1..DENSIFY {
            let t = k as f64 / DENSIFY as f64;
            out.push(Coord::new(s.x + t * (e.x - s.x), s.y + t * (e.y - s.y)));
        }
    }
    out
}

fn distance_to_outline(p: Coord, g: &Geometry) -> f64 {
    let segs = segments(g);
    if segs.is_empty() {
        g.coords().iter().map(|c| dist(p, *c)).fold(f64::INFINITY, f64::min)
    } else {
        segs.iter()
            .map(|(s, e)| dist_to_segment(p, *s, *e))
            .fold(f64::INFINITY, f64::min)
    }
}

fn directed_hausdorff(a: &Geometry, b: &Geometry) -> f64 {
    samples(a)
        .into_iter()
        .map(|p| distance_to_outline(p, b))
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{GeometryKind, Shape};

    #[test]
    fn properties_of_simple_shapes() {
        let a = Geometry::rectangle(0.0, 0.0, 1.0, 1.0);
        assert_eq!(
            geometry_property(GeometryProperty::Dimension, &a),
            PropertyValue::Integer(2)
        );
        let h = Geometry::empty(None);
        assert_eq!(
            geometry_property(GeometryProperty::IsEmpty, &h),
            PropertyValue::Boolean(true)
        );
        let e = Geometry::line_string([(3.0, -2.0), (4.0, 3.0)]);
        assert!(is_simple(&e));
        let bowtie = Geometry::line_string([(0.0, 0.0), (2.0, 2.0), (2.0, 0.0), (0.0, 2.0)]);
        assert!(!is_simple(&bowtie));
        assert!(is_simple(&Geometry::line_string([
            (0.0, 0.0),
            (1.0, 0.0),
            (1.0, 1.0),
            (0.0, 0.0)
        ])));
    }

    #[test]
    fn empties_are_equal_whatever_their_kind() {
        let l = Geometry::empty(Some(GeometryKind::LineString));
        let p = Geometry::empty(Some(GeometryKind::Point));
        assert!(geometry_equals(&l, &p, 0.0));
        assert!(geometry_equals(&Geometry::empty(None), &p, 0.0));
        assert!(!geometry_equals(&Geometry::point(0.0, 0.0), &p, 0.0));
    }

    #[test]
    fn tolerance() {
        let a = Geometry::point(1.0, 1.0);
        let b = Geometry::point(1.0, 1.0 + 1e-12);
        assert!(geometry_equals(&a, &b, 1e-9));
        assert!(!geometry_equals(&a, &Geometry::point(1.0, 1.1), 1e-3));
    }

    #[test]
    fn ring_start_does_not_matter() {
        let a = Geometry::rectangle(0.0, 0.0, 2.0, 1.0);
        let b = Geometry::polygon([(2.0, 1.0), (0.0, 1.0), (0.0, 0.0), (2.0, 0.0)]);
        assert!(geometry_equals(&a, &b, 0.0));
        assert!(geometry_equals(&a, &b, 1e-6));
        assert!(!geometry_equals(
            &a,
            &Geometry::new(Shape::LineString(a.coords()), a.crs.clone()),
            1e-6
        ));
    }
}
