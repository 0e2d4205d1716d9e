// SPDX-License-Identifier: Apache-2.0

//! DE-9IM matrices by planar arrangement.
//!
//! All linework of both operands is split at every mutual intersection. Each
//! node contributes a 0-dimensional cell, each piece of linework a
//! 1-dimensional cell, and the faces on either side of a piece a
//! 2-dimensional cell. Locating one representative point per cell against
//! both operands fills the matrix.

use std::fmt;
use std::str::FromStr;

use super::primitives::{
    dist_to_segment, locate_in_ring, near, on_segment, param, segment_intersection, segments, RingSide, EPS,
};
use super::{Coord, Geometry, GeometryError, Result, Shape};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Interior,
    Boundary,
    Exterior,
}

impl Location {
    fn index(self) -> usize {
        match self {
            Location::Interior => 0,
            Location::Boundary => 1,
            Location::Exterior => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Empty,
    Zero,
    One,
    Two,
}

impl Dimension {
    pub fn symbol(self) -> char {
        match self {
            Dimension::Empty => 'F',
            Dimension::Zero => '0',
            Dimension::One => '1',
            Dimension::Two => '2',
        }
    }
}

/// Cells in the order II, IB, IE, BI, BB, BE, EI, EB, EE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct De9im(pub [Dimension; 9]);

impl De9im {
    pub fn get(&self, a: Location, b: Location) -> Dimension {
        self.0[a.index() * 3 + b.index()]
    }

    fn raise(&mut self, a: Location, b: Location, d: Dimension) {
        let cell = &mut self.0[a.index() * 3 + b.index()];
        if d > *cell {
            *cell = d;
        }
    }

    /// The matrix of `b` against `a`.
    pub fn transpose(&self) -> De9im {
        let m = self.0;
        De9im([m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]])
    }

    pub fn matches(&self, pattern: &str) -> Result<bool> {
        matches_pattern(self, pattern)
    }
}

impl fmt::Display for De9im {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|d| write!(f, "{}", d.symbol()))
    }
}

impl FromStr for De9im {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        let cells: Vec<Dimension> = s
            .chars()
            .map(|c| match c {
                'F' | 'f' => Ok(Dimension::Empty),
                '0' => Ok(Dimension::Zero),
                '1' => Ok(Dimension::One),
                '2' => Ok(Dimension::Two),
                _ => Err(GeometryError::InvalidPattern(s.to_owned())),
            })
            .collect::<Result<_>>()?;
        cells
            .try_into()
            .map(De9im)
            .map_err(|_| GeometryError::InvalidPattern(s.to_owned()))
    }
}

/// `T` matches any non-empty cell, `F` an empty one, a digit exactly that
/// dimension and `*` anything.
pub fn matches_pattern(matrix: &De9im, pattern: &str) -> Result<bool> {
    let invalid = || GeometryError::InvalidPattern(pattern.to_owned());
    if pattern.chars().count() != 9 {
        return Err(invalid());
    }
    let mut ok = true;
    for (cell, p) in matrix.0.iter().zip(pattern.chars()) {
        ok &= match p.to_ascii_uppercase() {
            '*' => true,
            'T' => *cell != Dimension::Empty,
            'F' => *cell == Dimension::Empty,
            '0' => *cell == Dimension::Zero,
            '1' => *cell == Dimension::One,
            '2' => *cell == Dimension::Two,
            _ => return Err(invalid()),
        };
    }
    Ok(ok)
}

/// Location of a point relative to a geometry.
pub(crate) fn locate(p: Coord, g: &Geometry) -> Location {
    match &g.shape {
        Shape::Empty(_) => Location::Exterior,
        Shape::Point(c) => {
            if near(p, *c) {
                Location::Interior
            } else {
                Location::Exterior
            }
        }
        Shape::MultiPoint(cs) => {
            if cs.iter().any(|c| near(p, *c)) {
                Location::Interior
            } else {
                Location::Exterior
            }
        }
        Shape::LineString(cs) => {
            if !cs.windows(2).any(|w| on_segment(p, w[0], w[1])) {
                return Location::Exterior;
            }
            let (first, last) = (cs[0], cs[cs.len() - 1]);
            if first != last && (near(p, first) || near(p, last)) {
                Location::Boundary
            } else {
                Location::Interior
            }
        }
        Shape::Polygon(rings) => {
            let mut result = Location::Interior;
            for (i, ring) in rings.iter().enumerate() {
                match (i, locate_in_ring(p, ring)) {
                    (_, RingSide::On) => return Location::Boundary,
                    (0, RingSide::Outside) | (1.., RingSide::Inside) => result = Location::Exterior,
                    _ => {}
                }
            }
            result
        }
    }
}

/// The DE-9IM matrix of `a` against `b`.
pub fn relate_matrix(a: &Geometry, b: &Geometry) -> Result<De9im> {
    if a.is_empty() || b.is_empty() {
        return Err(GeometryError::EmptyOperand("relate"));
    }
    a.require_comparable()?;
    b.require_comparable()?;

    let mut m = De9im([Dimension::Empty; 9]);
    m.raise(Location::Exterior, Location::Exterior, Dimension::Two);

    let seg_a = segments(a);
    let seg_b = segments(b);
    let all: Vec<(Coord, Coord)> = seg_a.iter().chain(&seg_b).copied().collect();

    // Nodes: every vertex plus every pairwise intersection.
    let mut nodes: Vec<Coord> = Vec::new();
    let add_node = |p: Coord, nodes: &mut Vec<Coord>| {
        if !nodes.iter().any(|q| near(*q, p)) {
            nodes.push(p);
        }
    };
    for c in a.coords().into_iter().chain(b.coords()) {
        add_node(c, &mut nodes);
    }
    for (i, &(p, q)) in all.iter().enumerate() {
        for &(r, s) in &all[i + 1..] {
            for x in segment_intersection(p, q, r, s) {
                add_node(x, &mut nodes);
            }
        }
    }

    for &n in &nodes {
        m.raise(locate(n, a), locate(n, b), Dimension::Zero);
    }

    let areal = matches!(a.shape, Shape::Polygon(_)) || matches!(b.shape, Shape::Polygon(_));
    for &(s, e) in &all {
        let mut cuts: Vec<f64> = nodes
            .iter()
            .filter(|n| on_segment(**n, s, e))
            .map(|n| param(*n, s, e).clamp(0.0, 1.0))
            .chain([0.0, 1.0])
            .collect();
        cuts.sort_by(f64::total_cmp);
        let len = super::primitives::dist(s, e);
        for w in cuts.windows(2) {
            if (w[1] - w[0]) * len <= EPS {
                continue;
            }
            let t = (w[0] + w[1]) / 2.0;
            let mid = Coord::new(s.x + t * (e.x - s.x), s.y + t * (e.y - s.y));
            m.raise(locate(mid, a), locate(mid, b), Dimension::One);

            if areal {
                for side in side_points(mid, s, e, &all) {
                    m.raise(locate(side, a), locate(side, b), Dimension::Two);
                }
            }
        }
    }
    Ok(m)
}

/// Two points just off either side of the piece through `mid`, closer to it
/// than to any linework that does not pass through `mid`.
fn side_points(mid: Coord, s: Coord, e: Coord, all: &[(Coord, Coord)]) -> [Coord; 2] {
    let clearance = all
        .iter()
        .map(|&(p, q)| dist_to_segment(mid, p, q))
        .filter(|d| *d > EPS)
        .fold(f64::INFINITY, f64::min);
    let len = super::primitives::dist(s, e);
    let offset = (clearance / 4.0).min(len / 4.0).min(1e-3);
    let (nx, ny) = (-(e.y - s.y) / len * offset, (e.x - s.x) / len * offset);
    [Coord::new(mid.x + nx, mid.y + ny), Coord::new(mid.x - nx, mid.y - ny)]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: &Geometry, b: &Geometry) -> String {
        relate_matrix(a, b).unwrap().to_string()
    }

    #[test]
    fn polygon_and_interior_point() {
        let sq = Geometry::rectangle(0.0, 0.0, 10.0, 10.0);
        assert_eq!(rel(&sq, &Geometry::point(5.0, 5.0)), "0F2FF1FF2");
    }

    #[test]
    fn disjoint_squares() {
        let a = Geometry::rectangle(0.0, 0.0, 1.0, 1.0);
        let b = Geometry::rectangle(2.0, 2.0, 3.0, 3.0);
        assert_eq!(rel(&a, &b), "FF2FF1212");
    }

    #[test]
    fn identity_of_polygon() {
        let a = Geometry::rectangle(0.0, 0.0, 1.0, 1.0);
        assert_eq!(rel(&a, &a), "2FFF1FFF2");
    }

    #[test]
    fn adjacent_squares_share_an_edge() {
        let a = Geometry::rectangle(0.0, 0.0, 1.0, 1.0);
        let b = Geometry::rectangle(1.0, 0.0, 2.0, 1.0);
        assert_eq!(rel(&a, &b), "FF2F11212");
    }

    #[test]
    fn line_crossing_polygon() {
        let a = Geometry::rectangle(0.0, 0.0, 2.0, 2.0);
        let l = Geometry::line_string([(-1.0, 1.0), (3.0, 1.0)]);
        assert_eq!(rel(&l, &a), "101FF0212");
        assert_eq!(rel(&a, &l), "1F20F1102");
    }

    #[test]
    fn crossing_lines() {
        let a = Geometry::line_string([(0.0, 0.0), (2.0, 2.0)]);
        let b = Geometry::line_string([(0.0, 2.0), (2.0, 0.0)]);
        assert_eq!(rel(&a, &b), "0F1FF0102");
    }

    #[test]
    fn closed_line_has_no_boundary() {
        let ring = Geometry::line_string([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 0.0)]);
        assert_eq!(rel(&ring, &ring), "1FFFFFFF2");
    }

    #[test]
    fn polygon_with_hole() {
        let donut = Geometry::new(
            Shape::Polygon(vec![
                Geometry::rectangle(0.0, 0.0, 10.0, 10.0).coords(),
                Geometry::rectangle(4.0, 4.0, 6.0, 6.0).coords(),
            ]),
            Default::default(),
        );
        assert_eq!(rel(&donut, &Geometry::point(5.0, 5.0)), "FF2FF10F2");
        assert_eq!(rel(&donut, &Geometry::point(1.0, 1.0)), "0F2FF1FF2");
    }

    #[test]
    fn pattern_matching() {
        let m: De9im = "2FFF1FFF2".parse().unwrap();
        assert!(matches_pattern(&m, "T*****FF*").unwrap());
        let d: De9im = "FF2FF1212".parse().unwrap();
        assert!(!matches_pattern(&d, "T*****FF*").unwrap());
        assert!(matches_pattern(&m, "T*****FF").is_err());
        assert!(matches_pattern(&m, "T*****FFX").is_err());
    }

    #[test]
    fn empty_operand_is_an_error() {
        let e = Geometry::empty(None);
        assert!(relate_matrix(&e, &Geometry::point(0.0, 0.0)).is_err());
    }
}
