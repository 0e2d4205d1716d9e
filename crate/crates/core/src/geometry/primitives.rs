// SPDX-License-Identifier: Apache-2.0

//! Low-level planar predicates shared by relate, overlay and the functions.

use super::{Coord, Geometry, Shape};

/// Absolute snapping tolerance in degrees.
pub(crate) const EPS: f64 = 1e-9;

pub(crate) fn cross(o: Coord, a: Coord, b: Coord) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

pub(crate) fn dist(a: Coord, b: Coord) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

pub(crate) fn near(a: Coord, b: Coord) -> bool {
    dist(a, b) <= EPS
}

/// Distance from `p` to the closed segment `ab`.
pub(crate) fn dist_to_segment(p: Coord, a: Coord, b: Coord) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return dist(p, a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0);
    dist(p, Coord::new(a.x + t * dx, a.y + t * dy))
}

pub(crate) fn on_segment(p: Coord, a: Coord, b: Coord) -> bool {
    dist_to_segment(p, a, b) <= EPS
}

/// Parameter of `p` projected onto `ab`.
pub(crate) fn param(p: Coord, a: Coord, b: Coord) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    ((p.x - a.x) * dx + (p.y - a.y) * dy) / (dx * dx + dy * dy)
}

/// Points shared by two closed segments: none, a crossing or touching point,
/// or the two ends of a collinear overlap.
pub(crate) fn segment_intersection(a: Coord, b: Coord, c: Coord, d: Coord) -> Vec<Coord> {
    let mut out: Vec<Coord> = Vec::new();
    let push = |p: Coord, out: &mut Vec<Coord>| {
        if !out.iter().any(|q| near(*q, p)) {
            out.push(p);
        }
    };
    // Endpoints lying on the other segment cover touching and overlap cases.
    for (p, s, e) in [(a, c, d), (b, c, d), (c, a, b), (d, a, b)] {
        if on_segment(p, s, e) {
            push(p, &mut out);
        }
    }
    if !out.is_empty() {
        return out;
    }
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        let t = d1 / (d1 - d2);
        push(Coord::new(a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)), &mut out);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum RingSide {
    Inside,
    On,
    Outside,
}

pub(crate) fn locate_in_ring(p: Coord, ring: &[Coord]) -> RingSide {
    if ring.windows(2).any(|w| on_segment(p, w[0], w[1])) {
        return RingSide::On;
    }
    let mut inside = false;
    for w in ring.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if p.x < x {
                inside = !inside;
            }
        }
    }
    if inside {
        RingSide::Inside
    } else {
        RingSide::Outside
    }
}

/// Twice the signed area; positive for counter-clockwise rings.
pub(crate) fn signed_area2(ring: &[Coord]) -> f64 {
    ring.windows(2).map(|w| w[0].x * w[1].y - w[1].x * w[0].y).sum()
}

/// The linework of a geometry as segments, skipping zero-length ones.
pub(crate) fn segments(g: &Geometry) -> Vec<(Coord, Coord)> {
    let chains: Vec<&[Coord]> = match &g.shape {
        Shape::LineString(cs) => vec![cs.as_slice()],
        Shape::Polygon(rings) => rings.iter().map(Vec::as_slice).collect(),
        _ => Vec::new(),
    };
    chains
        .into_iter()
        .flat_map(|c| c.windows(2).map(|w| (w[0], w[1])))
        .filter(|(a, b)| a != b)
        .collect()
}

/// Monotone-chain convex hull, counter-clockwise without the closing point.
/// Collinear points are dropped.
pub(crate) fn hull(points: &[Coord]) -> Vec<Coord> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| near(*a, *b));
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Coord> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<Coord> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
