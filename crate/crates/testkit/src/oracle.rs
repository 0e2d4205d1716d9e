// SPDX-License-Identifier: Apache-2.0

//! A point-sampling DE-9IM classifier.
//!
//! Each sample point is located against both geometries. Points at vertices
//! and crossings witness 0-dimensional intersections, points strictly inside
//! edge pieces witness 1-dimensional ones and points pushed a tiny distance
//! off every edge witness 2-dimensional ones.

use geobench_core::geometry::{Geometry, Shape};
use rayon::prelude::*;

type P = (f64, f64);

const EPS: f64 = 1e-10;
const OFFSET: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Loc {
    Interior,
    Boundary,
    Exterior,
}

impl Loc {
    fn index(self) -> usize {
        match self {
            Loc::Interior => 0,
            Loc::Boundary => 1,
            Loc::Exterior => 2,
        }
    }
}

/// Plain coordinate lists, independent of the library's internal helpers.
#[derive(Debug, Clone, Default)]
pub struct Parts {
    pub points: Vec<P>,
    pub lines: Vec<Vec<P>>,
    pub polygons: Vec<Vec<Vec<P>>>,
}

impl Parts {
    pub fn of(g: &Geometry) -> Parts {
        let xy = |c: &geobench_core::geometry::Coord| (c.x, c.y);
        let mut parts = Parts::default();
        match &g.shape {
            Shape::Empty(_) => {}
            Shape::Point(c) => parts.points.push(xy(c)),
            Shape::MultiPoint(cs) => parts.points.extend(cs.iter().map(xy)),
            Shape::LineString(cs) => parts.lines.push(cs.iter().map(xy).collect()),
            Shape::Polygon(rings) => parts
                .polygons
                .push(rings.iter().map(|r| r.iter().map(xy).collect()).collect()),
        }
        parts
    }

    fn segments(&self) -> Vec<(P, P)> {
        let chains = self.lines.iter().chain(self.polygons.iter().flatten());
        chains
            .flat_map(|c| c.windows(2).map(|w| (w[0], w[1])))
            .filter(|(a, b)| a != b)
            .collect()
    }

    fn vertices(&self) -> Vec<P> {
        let mut v = self.points.clone();
        v.extend(self.lines.iter().flatten());
        v.extend(self.polygons.iter().flatten().flatten());
        v
    }

    fn is_empty(&self) -> bool {
        self.points.is_empty() && self.lines.is_empty() && self.polygons.is_empty()
    }

    /// Topological location of `p`.
    pub fn locate(&self, p: P) -> Loc {
        let mut loc = Loc::Exterior;
        for q in &self.points {
            if same(*q, p) {
                loc = Loc::Interior;
            }
        }
        for line in &self.lines {
            let closed = same(line[0], line[line.len() - 1]);
            if !closed && (same(p, line[0]) || same(p, line[line.len() - 1])) {
                return Loc::Boundary;
            }
            if line.windows(2).any(|w| on_segment(p, w[0], w[1])) {
                loc = Loc::Interior;
            }
        }
        for rings in &self.polygons {
            if rings.iter().any(|r| r.windows(2).any(|w| on_segment(p, w[0], w[1]))) {
                return Loc::Boundary;
            }
            if inside_ring(p, &rings[0]) && !rings[1..].iter().any(|h| inside_ring(p, h)) {
                loc = Loc::Interior;
            }
        }
        loc
    }
}

fn same(a: P, b: P) -> bool {
    (a.0 - b.0).abs() <= EPS && (a.1 - b.1).abs() <= EPS
}

fn on_segment(p: P, a: P, b: P) -> bool {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    if len2 == 0.0 {
        return same(p, a);
    }
    let t = ((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2;
    if !(-EPS..=1.0 + EPS).contains(&t) {
        return false;
    }
    let (cx, cy) = (a.0 + t * dx, a.1 + t * dy);
    ((p.0 - cx).powi(2) + (p.1 - cy).powi(2)).sqrt() <= EPS
}

/// Even-odd ray casting; points on the ring are handled by the caller.
fn inside_ring(p: P, ring: &[P]) -> bool {
    let mut inside = false;
    for w in ring.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.1 > p.1) != (b.1 > p.1) {
            let x = a.0 + (p.1 - a.1) / (b.1 - a.1) * (b.0 - a.0);
            if p.0 < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Crossing point of two segments when they meet in exactly one point.
fn crossing(a: P, b: P, c: P, d: P) -> Option<P> {
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (d.0 - c.0, d.1 - c.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom.abs() < 1e-15 {
        return None;
    }
    let qp = (c.0 - a.0, c.1 - a.1);
    let t = (qp.0 * s.1 - qp.1 * s.0) / denom;
    let u = (qp.0 * r.1 - qp.1 * r.0) / denom;
    ((-EPS..=1.0 + EPS).contains(&t) && (-EPS..=1.0 + EPS).contains(&u)).then_some((a.0 + t * r.0, a.1 + t * r.1))
}

/// Samples tagged with the dimension they witness.
fn samples(a: &Parts, b: &Parts) -> Vec<(P, u8)> {
    let segs: Vec<(P, P)> = a.segments().into_iter().chain(b.segments()).collect();
    let mut nodes: Vec<P> = a.vertices();
    nodes.extend(b.vertices());
    for (i, &(p, q)) in segs.iter().enumerate() {
        for &(r, s) in &segs[i + 1..] {
            nodes.extend(crossing(p, q, r, s));
        }
    }
    let mut out: Vec<(P, u8)> = nodes.iter().map(|&n| (n, 0)).collect();

    let off_everything = |p: P| !segs.iter().any(|&(s, t)| on_segment(p, s, t)) && !nodes.iter().any(|&n| same(n, p));
    for &(p, q) in &segs {
        let (dx, dy) = (q.0 - p.0, q.1 - p.1);
        let len = (dx * dx + dy * dy).sqrt();
        let mut ts: Vec<f64> = nodes
            .iter()
            .filter(|&&n| on_segment(n, p, q))
            .map(|&n| ((n.0 - p.0) * dx + (n.1 - p.1) * dy) / (len * len))
            .chain([0.0, 1.0])
            .collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup_by(|x, y| (*x - *y).abs() * len <= EPS);
        let normal = (-dy / len, dx / len);
        for w in ts.windows(2) {
            let t = (w[0] + w[1]) / 2.0;
            let m = (p.0 + t * dx, p.1 + t * dy);
            out.push((m, 1));
            for sign in [-1.0, 1.0] {
                let off = (m.0 + sign * OFFSET * normal.0, m.1 + sign * OFFSET * normal.1);
                if off_everything(off) {
                    out.push((off, 2));
                }
            }
        }
    }
    // A point far outside everything witnesses the unbounded exterior.
    let far = nodes.iter().fold(0.0f64, |m, p| m.max(p.0.abs()).max(p.1.abs())) * 4.0 + 10.0;
    out.push(((far, far), 2));
    out
}

/// The DE-9IM matrix of `a` against `b` as a nine-character string, or
/// `None` when either geometry is empty.
pub fn sample_matrix(a: &Geometry, b: &Geometry) -> Option<String> {
    let (pa, pb) = (Parts::of(a), Parts::of(b));
    if pa.is_empty() || pb.is_empty() {
        return None;
    }
    let mut cells = [None::<u8>; 9];
    for (p, dim) in samples(&pa, &pb) {
        let (la, lb) = (pa.locate(p), pb.locate(p));
        let cell = &mut cells[la.index() * 3 + lb.index()];
        *cell = Some(cell.map_or(dim, |c| c.max(dim)));
    }
    Some(
        cells
            .iter()
            .map(|c| match c {
                None => 'F',
                Some(d) => char::from(b'0' + d),
            })
            .collect(),
    )
}

/// Oracle matrices for every ordered pair, computed in parallel.
pub fn sample_all_pairs(geometries: &[Geometry]) -> Vec<(usize, usize, Option<String>)> {
    let pairs: Vec<(usize, usize)> = (0..geometries.len())
        .flat_map(|i| (0..geometries.len()).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| (i, j, sample_matrix(&geometries[i], &geometries[j])))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_matrices() {
        let sq = Geometry::rectangle(0.0, 0.0, 2.0, 2.0);
        let inner = Geometry::rectangle(0.5, 0.5, 1.0, 1.0);
        assert_eq!(sample_matrix(&sq, &inner).unwrap(), "212FF1FF2");
        assert_eq!(sample_matrix(&inner, &sq).unwrap(), "2FF1FF212");
        let right = Geometry::rectangle(2.0, 0.0, 3.0, 2.0);
        assert_eq!(sample_matrix(&sq, &right).unwrap(), "FF2F11212");
        let line = Geometry::line_string([(-1.0, 1.0), (3.0, 1.0)]);
        assert_eq!(sample_matrix(&line, &sq).unwrap(), "101FF0212");
        let p = Geometry::point(1.0, 1.0);
        assert_eq!(sample_matrix(&p, &sq).unwrap(), "0FFFFF212");
        assert_eq!(sample_matrix(&p, &p).unwrap(), "0FFFFFFF2");
    }

    #[test]
    fn closed_lines_have_no_boundary() {
        let ring = Geometry::line_string([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 0.0)]);
        let parts = Parts::of(&ring);
        assert_eq!(parts.locate((0.0, 0.0)), Loc::Interior);
    }
}
