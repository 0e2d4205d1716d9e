// SPDX-License-Identifier: Apache-2.0

//! Boolean set operations.
//!
//! Polygon pairs are handled when every edge is axis-parallel: the plane is
//! cut into grid cells along all edge coordinates, each cell is kept or
//! dropped, and the boundary of the kept cells is traced back into rings.
//! Point operands are handled by location. Anything else is reported as
//! unsupported.

use std::collections::{BTreeMap, HashSet};

use super::primitives::{segments, signed_area2};
use super::relate::{locate, relate_matrix, Location};
use super::{Coord, CrsRef, Geometry, GeometryError, GeometryKind, Result, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SetOp {
    Intersection,
    Union,
    Difference,
    SymDifference,
}

impl SetOp {
    fn keep(self, in_a: bool, in_b: bool) -> bool {
        match self {
            SetOp::Intersection => in_a && in_b,
            SetOp::Union => in_a || in_b,
            SetOp::Difference => in_a && !in_b,
            SetOp::SymDifference => in_a != in_b,
        }
    }
}

pub(crate) fn overlay(op: SetOp, a: &Geometry, b: &Geometry) -> Result<Geometry> {
    a.require_comparable()?;
    b.require_comparable()?;
    let unsupported = || GeometryError::Unsupported(format!("{op:?} of {} and {}", kind_name(a), kind_name(b)));

    match (&a.shape, &b.shape) {
        (Shape::Empty(_), _) | (_, Shape::Empty(_)) => return overlay_with_empty(op, a, b),
        (Shape::Polygon(_), Shape::Polygon(_)) if rectilinear(a) && rectilinear(b) => return grid_overlay(op, a, b),
        _ => {}
    }

    let puntal = |g: &Geometry| matches!(g.shape, Shape::Point(_) | Shape::MultiPoint(_));
    if puntal(a) && puntal(b) {
        let pa = a.coords();
        let pb = b.coords();
        let mut out: Vec<Coord> = pa
            .iter()
            .filter(|p| op.keep(true, locate(**p, b) != Location::Exterior))
            .copied()
            .collect();
        if matches!(op, SetOp::Union | SetOp::SymDifference) {
            out.extend(pb.iter().filter(|p| locate(**p, a) == Location::Exterior));
        }
        return Ok(points(out));
    }
    if puntal(a) {
        let inside: Vec<bool> = a.coords().iter().map(|p| locate(*p, b) != Location::Exterior).collect();
        return match op {
            SetOp::Intersection | SetOp::Difference => Ok(points(
                a.coords()
                    .into_iter()
                    .zip(&inside)
                    .filter(|(_, i)| op.keep(true, **i))
                    .map(|(p, _)| p)
                    .collect(),
            )),
            SetOp::Union | SetOp::SymDifference if inside.iter().all(|i| *i) => Ok(canonical(b)),
            _ => Err(unsupported()),
        };
    }
    if puntal(b) {
        return match op {
            SetOp::Intersection => overlay(op, b, a),
            SetOp::Difference => Ok(canonical(a)),
            SetOp::Union | SetOp::SymDifference if b.coords().iter().all(|p| locate(*p, a) != Location::Exterior) => {
                Ok(canonical(a))
            }
            _ => Err(unsupported()),
        };
    }

    // Disjoint operands of higher dimension.
    let m = relate_matrix(a, b)?;
    if m.matches("FF*FF****")? {
        return match op {
            SetOp::Intersection => Ok(Geometry::empty(Some(lower_kind(a, b)))),
            SetOp::Difference => Ok(canonical(a)),
            _ => Err(unsupported()),
        };
    }
    Err(unsupported())
}

fn kind_name(g: &Geometry) -> &'static str {
    g.kind().map_or("an untyped empty geometry", |k| k.wkt_keyword())
}

fn lower_kind(a: &Geometry, b: &Geometry) -> GeometryKind {
    let ka = a.kind().unwrap_or(GeometryKind::Point);
    let kb = b.kind().unwrap_or(GeometryKind::Point);
    if ka.dimension() <= kb.dimension() {
        ka
    } else {
        kb
    }
}

fn canonical(g: &Geometry) -> Geometry {
    g.clone().with_crs(CrsRef::crs84())
}

fn overlay_with_empty(op: SetOp, a: &Geometry, b: &Geometry) -> Result<Geometry> {
    Ok(match op {
        SetOp::Intersection => Geometry::empty(a.kind().or(b.kind())),
        SetOp::Difference => canonical(a),
        SetOp::Union | SetOp::SymDifference => {
            if a.is_empty() {
                canonical(b)
            } else {
                canonical(a)
            }
        }
    })
}

fn points(mut ps: Vec<Coord>) -> Geometry {
    ps.dedup();
    match ps.len() {
        0 => Geometry::empty(Some(GeometryKind::Point)),
        1 => Geometry::new(Shape::Point(ps[0]), CrsRef::crs84()),
        _ => Geometry::new(Shape::MultiPoint(ps), CrsRef::crs84()),
    }
}

fn rectilinear(g: &Geometry) -> bool {
    segments(g).iter().all(|(p, q)| p.x == q.x || p.y == q.y)
}

type Node = (usize, usize);

fn grid_overlay(op: SetOp, a: &Geometry, b: &Geometry) -> Result<Geometry> {
    let axis = |f: fn(&Coord) -> f64| {
        let mut v: Vec<f64> = a.coords().iter().chain(b.coords().iter()).map(f).collect();
        v.sort_by(f64::total_cmp);
        v.dedup();
        v
    };
    let xs = axis(|c| c.x);
    let ys = axis(|c| c.y);

    // Directed cell edges, counter-clockwise around each kept cell; an edge
    // shared by two kept cells appears in both directions and cancels out.
    let mut edges: HashSet<(Node, Node)> = HashSet::new();
    for i in 0..xs.len().saturating_sub(1) {
        for j in 0..ys.len().saturating_sub(1) {
            let centre = Coord::new((xs[i] + xs[i + 1]) / 2.0, (ys[j] + ys[j + 1]) / 2.0);
            let in_a = locate(centre, a) == Location::Interior;
            let in_b = locate(centre, b) == Location::Interior;
            if !op.keep(in_a, in_b) {
                continue;
            }
            let corners = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            for k in 0..4 {
                let e = (corners[k], corners[(k + 1) % 4]);
                if !edges.remove(&(e.1, e.0)) {
                    edges.insert(e);
                }
            }
        }
    }

    let mut next: BTreeMap<Node, Node> = BTreeMap::new();
    for &(s, e) in &edges {
        if next.insert(s, e).is_some() {
            return Err(GeometryError::Unsupported(
                "result has components touching at a point".into(),
            ));
        }
    }

    let mut rings: Vec<Vec<Coord>> = Vec::new();
    while let Some((&start, _)) = next.iter().next() {
        let mut ring = vec![start];
        let mut at = next.remove(&start).expect("start has an edge");
        while at != start {
            ring.push(at);
            at = next
                .remove(&at)
                .ok_or_else(|| GeometryError::Unsupported("open boundary".into()))?;
        }
        let coords: Vec<Coord> = simplify(&ring)
            .into_iter()
            .map(|(i, j)| Coord::new(xs[i], ys[j]))
            .collect();
        rings.push(close(coords));
    }

    let (shells, holes): (Vec<_>, Vec<_>) = rings.into_iter().partition(|r| signed_area2(r) > 0.0);
    match shells.len() {
        0 => Ok(Geometry::empty(Some(GeometryKind::Polygon))),
        1 => {
            let mut all = shells;
            let mut holes = holes;
            holes.sort_by(|p, q| p[0].x.total_cmp(&q[0].x).then(p[0].y.total_cmp(&q[0].y)));
            all.extend(holes);
            Ok(Geometry::new(Shape::Polygon(all), CrsRef::crs84()))
        }
        n => Err(GeometryError::Unsupported(format!("result has {n} separate polygons"))),
    }
}

/// Drops vertices in the middle of straight runs.
fn simplify(ring: &[Node]) -> Vec<Node> {
    let n = ring.len();
    let straight = |k: usize| {
        let (p, c, q) = (ring[(k + n - 1) % n], ring[k], ring[(k + 1) % n]);
        (p.0 == c.0 && c.0 == q.0) || (p.1 == c.1 && c.1 == q.1)
    };
    (0..n).filter(|&k| !straight(k)).map(|k| ring[k]).collect()
}

/// Rotates a ring to start at its smallest vertex and closes it.
fn close(mut ring: Vec<Coord>) -> Vec<Coord> {
    let start = (0..ring.len())
        .min_by(|&i, &j| ring[i].x.total_cmp(&ring[j].x).then(ring[i].y.total_cmp(&ring[j].y)))
        .unwrap_or(0);
    ring.rotate_left(start);
    if let Some(&first) = ring.first() {
        ring.push(first);
    }
    ring
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::serialize_wkt;

    fn wkt(g: &Geometry) -> String {
        serialize_wkt(g, false)
    }

    #[test]
    fn rectangle_intersection_and_union() {
        let b = Geometry::rectangle(1.0, 1.0, 4.0, 5.0);
        let g = Geometry::rectangle(-0.5, -0.5, 2.5, 3.0);
        assert_eq!(
            wkt(&overlay(SetOp::Intersection, &b, &g).unwrap()),
            "Polygon((1 1, 2.5 1, 2.5 3, 1 3, 1 1))"
        );
        assert_eq!(
            wkt(&overlay(SetOp::Union, &b, &g).unwrap()),
            "Polygon((-0.5 -0.5, 2.5 -0.5, 2.5 1, 4 1, 4 5, 1 5, 1 3, -0.5 3, -0.5 -0.5))"
        );
        assert_eq!(
            wkt(&overlay(SetOp::Difference, &b, &g).unwrap()),
            "Polygon((1 3, 2.5 3, 2.5 1, 4 1, 4 5, 1 5, 1 3))"
        );
    }

    #[test]
    fn contained_rectangle_leaves_a_hole() {
        let outer = Geometry::rectangle(0.0, 0.0, 10.0, 10.0);
        let inner = Geometry::rectangle(2.0, 2.0, 4.0, 4.0);
        let d = overlay(SetOp::Difference, &outer, &inner).unwrap();
        match d.shape {
            Shape::Polygon(rings) => assert_eq!(rings.len(), 2),
            other => panic!("{other:?}"),
        }
        let e = overlay(SetOp::Difference, &inner, &outer).unwrap();
        assert_eq!(e.shape, Shape::Empty(Some(GeometryKind::Polygon)));
    }

    #[test]
    fn separate_components_are_unsupported() {
        let a = Geometry::rectangle(0.0, 0.0, 1.0, 1.0);
        let b = Geometry::rectangle(2.0, 0.0, 3.0, 1.0);
        assert!(overlay(SetOp::Union, &a, &b).is_err());
        assert!(overlay(SetOp::Intersection, &a, &b).unwrap().is_empty());
    }

    #[test]
    fn point_cases() {
        let sq = Geometry::rectangle(0.0, 0.0, 2.0, 2.0);
        let p = Geometry::point(1.0, 1.0);
        assert_eq!(overlay(SetOp::Intersection, &sq, &p).unwrap(), p);
        assert_eq!(overlay(SetOp::Union, &p, &sq).unwrap(), sq);
        assert!(overlay(SetOp::Difference, &p, &sq).unwrap().is_empty());
    }
}
