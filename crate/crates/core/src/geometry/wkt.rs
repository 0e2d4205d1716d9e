// SPDX-License-Identifier: Apache-2.0

//! `geo:wktLiteral` reading and writing.
//!
//! A literal is an optional `<crs-iri>` followed by one or more spaces and a
//! Simple Features WKT string. An empty or blank literal is an empty geometry.

use super::{
    format_number, Coord, CrsRef, Geometry, GeometryError, GeometryKind, GeometryLiteral, Result, Serialization, Shape,
};

pub fn parse_wkt(text: &str) -> Result<GeometryLiteral> {
    let mut cursor = Cursor::new(text);
    cursor.skip_ws();
    let crs = if cursor.peek() == Some(b'<') {
        let uri = cursor.crs_iri()?;
        let had_space = cursor.skip_ws();
        if !had_space && !cursor.at_end() {
            return Err(cursor.error("expected a space after the CRS IRI"));
        }
        CrsRef::from_uri(&uri)
    } else {
        CrsRef::crs84()
    };

    let shape = if cursor.at_end() {
        Shape::Empty(None)
    } else {
        let shape = cursor.geometry(crs.axis_order())?;
        cursor.skip_ws();
        if !cursor.at_end() {
            return Err(cursor.error("unexpected trailing text"));
        }
        shape
    };

    Ok(GeometryLiteral {
        serialization: Serialization::Wkt,
        raw: text.to_owned(),
        parsed: Geometry::new(shape, crs),
    })
}

/// Canonical WKT: single spaces, no space before parentheses, CamelCase
/// keywords, and the CRS IRI prefix when `include_crs` is set.
pub fn serialize_wkt(geometry: &Geometry, include_crs: bool) -> String {
    let order = geometry.crs.axis_order();
    let pair = |c: &Coord| {
        let (a, b) = c.to_axes(order);
        format!("{} {}", format_number(a), format_number(b))
    };
    let seq = |cs: &[Coord]| cs.iter().map(pair).collect::<Vec<_>>().join(", ");

    let body = match &geometry.shape {
        Shape::Empty(None) => String::new(),
        Shape::Empty(Some(kind)) => format!("{} EMPTY", kind.wkt_keyword()),
        Shape::Point(c) => format!("Point({})", pair(c)),
        Shape::MultiPoint(cs) => format!(
            "MultiPoint({})",
            cs.iter()
                .map(|c| format!("({})", pair(c)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
        Shape::LineString(cs) => format!("LineString({})", seq(cs)),
        Shape::Polygon(rings) => format!(
            "Polygon({})",
            rings
                .iter()
                .map(|r| format!("({})", seq(r)))
                .collect::<Vec<_>>()
                .join(", ")
        ),
    };

    match (include_crs, body.is_empty()) {
        (true, true) => format!("<{}>", geometry.crs.uri()),
        (true, false) => format!("<{}> {}", geometry.crs.uri(), body),
        (false, _) => body,
    }
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> GeometryError {
        GeometryError::parse(self.pos, message)
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    /// Returns whether any whitespace was consumed.
    fn skip_ws(&mut self) -> bool {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
        self.pos > start
    }

    fn expect(&mut self, byte: u8) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", byte as char)))
        }
    }

    fn eat(&mut self, byte: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(byte) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn crs_iri(&mut self) -> Result<String> {
        let start = self.pos;
        self.pos += 1;
        let rest = &self.text[self.pos..];
        let end = rest
            .find('>')
            .ok_or_else(|| GeometryError::parse(start, "unterminated CRS IRI"))?;
        let uri = &rest[..end];
        if uri.is_empty() || uri.contains(char::is_whitespace) || !uri.contains(':') {
            return Err(GeometryError::parse(start, "CRS IRI must be absolute"));
        }
        self.pos += end + 1;
        Ok(uri.to_owned())
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphabetic()) {
            self.pos += 1;
        }
        &self.text[start..self.pos]
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E')) {
            self.pos += 1;
        }
        let token = &self.text[start..self.pos];
        token
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| GeometryError::parse(start, format!("malformed coordinate {token:?}")))
    }

    fn coord(&mut self, order: super::AxisOrder) -> Result<Coord> {
        let first = self.number()?;
        let second = self.number()?;
        self.skip_ws();
        if matches!(self.peek(), Some(b) if b.is_ascii_digit() || b == b'-' || b == b'+' || b == b'.') {
            return Err(self.error("only two-dimensional coordinates are supported"));
        }
        Ok(Coord::from_axes(first, second, order))
    }

    fn coord_list(&mut self, order: super::AxisOrder) -> Result<Vec<Coord>> {
        self.expect(b'(')?;
        let mut coords = vec![self.coord(order)?];
        while self.eat(b',') {
            coords.push(self.coord(order)?);
        }
        self.expect(b')')?;
        Ok(coords)
    }

    fn geometry(&mut self, order: super::AxisOrder) -> Result<Shape> {
        let keyword_at = {
            self.skip_ws();
            self.pos
        };
        let keyword = self.word();
        let kind = match keyword.to_ascii_uppercase().as_str() {
            "POINT" => GeometryKind::Point,
            "MULTIPOINT" => GeometryKind::MultiPoint,
            "LINESTRING" | "LINEARRING" => GeometryKind::LineString,
            "POLYGON" => GeometryKind::Polygon,
            "" => return Err(GeometryError::parse(keyword_at, "expected a geometry keyword")),
            _ => {
                return Err(GeometryError::parse(
                    keyword_at,
                    format!("unknown geometry keyword {keyword:?}"),
                ))
            }
        };
        let is_ring = keyword.eq_ignore_ascii_case("LINEARRING");

        let save = self.pos;
        match self.word().to_ascii_uppercase().as_str() {
            "EMPTY" => return Ok(Shape::Empty(Some(kind))),
            "" => self.pos = save,
            "Z" | "M" | "ZM" => {
                return Err(GeometryError::parse(
                    save,
                    "only two-dimensional geometries are supported",
                ))
            }
            other => return Err(GeometryError::parse(save, format!("unexpected token {other:?}"))),
        }

        match kind {
            GeometryKind::Point => {
                self.expect(b'(')?;
                let c = self.coord(order)?;
                self.expect(b')')?;
                Ok(Shape::Point(c))
            }
            GeometryKind::MultiPoint => {
                self.expect(b'(')?;
                let mut points = Vec::new();
                loop {
                    self.skip_ws();
                    if self.peek() == Some(b'(') {
                        self.pos += 1;
                        points.push(self.coord(order)?);
                        self.expect(b')')?;
                    } else {
                        points.push(self.coord(order)?);
                    }
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b')')?;
                Ok(Shape::MultiPoint(points))
            }
            GeometryKind::LineString => {
                let at = self.pos;
                let coords = self.coord_list(order)?;
                if coords.len() < 2 {
                    return Err(GeometryError::parse(at, "a LineString needs at least two coordinates"));
                }
                if is_ring {
                    check_ring(&coords, at)?;
                }
                Ok(Shape::LineString(coords))
            }
            GeometryKind::Polygon => {
                self.expect(b'(')?;
                let mut rings = Vec::new();
                loop {
                    self.skip_ws();
                    let at = self.pos;
                    let ring = self.coord_list(order)?;
                    check_ring(&ring, at)?;
                    rings.push(ring);
                    if !self.eat(b',') {
                        break;
                    }
                }
                self.expect(b')')?;
                Ok(Shape::Polygon(rings))
            }
        }
    }
}

pub(crate) fn check_ring(ring: &[Coord], position: usize) -> Result<()> {
    if ring.len() < 4 {
        return Err(GeometryError::parse(position, "a ring needs at least four coordinates"));
    }
    if ring.first() != ring.last() {
        return Err(GeometryError::parse(position, "unclosed ring"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CRS84, EPSG4326};

    #[test]
    fn point_with_default_crs() {
        let lit = parse_wkt("Point(-88.38  31.95)").unwrap();
        assert_eq!(lit.parsed.shape, Shape::Point(Coord::new(-88.38, 31.95)));
        assert_eq!(lit.parsed.crs.uri(), CRS84);
    }

    #[test]
    fn epsg4326_swaps_axes() {
        let lit = parse_wkt("<http://www.opengis.net/def/crs/EPSG/0/4326> Point( 31.95 -88.38)").unwrap();
        assert_eq!(lit.parsed.shape, Shape::Point(Coord::new(-88.38, 31.95)));
        assert_eq!(lit.parsed.crs.uri(), EPSG4326);
    }

    #[test]
    fn empty_and_blank_literals() {
        for text in ["", "   ", "\n\t"] {
            assert_eq!(parse_wkt(text).unwrap().parsed.shape, Shape::Empty(None));
        }
        assert_eq!(
            parse_wkt("LineString EMPTY").unwrap().parsed.shape,
            Shape::Empty(Some(GeometryKind::LineString))
        );
        assert_eq!(
            parse_wkt("point empty").unwrap().parsed.shape,
            Shape::Empty(Some(GeometryKind::Point))
        );
    }

    #[test]
    fn serialize_canonical_forms() {
        let p = Geometry::point(-88.38, 31.95);
        assert_eq!(
            serialize_wkt(&p, true),
            "<http://www.opengis.net/def/crs/OGC/1.3/CRS84> Point(-88.38 31.95)"
        );
        assert_eq!(
            serialize_wkt(&Geometry::empty(Some(GeometryKind::Point)), false),
            "Point EMPTY"
        );
        assert_eq!(serialize_wkt(&Geometry::empty(None), false), "");
        let m = parse_wkt("<http://www.opengis.net/def/crs/EPSG/0/4326>   Point( 31.95 -88.38)").unwrap();
        assert_eq!(
            serialize_wkt(&m.parsed, true),
            "<http://www.opengis.net/def/crs/EPSG/0/4326> Point(31.95 -88.38)"
        );
    }

    #[test]
    fn polygon_with_hole_round_trips() {
        let text = "Polygon((0 0, 10 0, 10 10, 0 10, 0 0), (2 2, 2 4, 4 4, 2 2))";
        let g = parse_wkt(text).unwrap().parsed;
        assert_eq!(serialize_wkt(&g, false), text);
    }

    #[test]
    fn multipoint_both_syntaxes() {
        let a = parse_wkt("MULTIPOINT((1 2), (3 4))").unwrap().parsed;
        let b = parse_wkt("MultiPoint(1 2, 3 4)").unwrap().parsed;
        assert_eq!(a, b);
        assert_eq!(serialize_wkt(&a, false), "MultiPoint((1 2), (3 4))");
    }

    #[test]
    fn linear_ring_reads_as_closed_line() {
        let g = parse_wkt("LINEARRING(0 0, 1 0, 1 1, 0 0)").unwrap().parsed;
        assert_eq!(g.kind(), Some(GeometryKind::LineString));
        assert!(parse_wkt("LinearRing(0 0, 1 0, 1 1, 0 1)").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_wkt("Point(1 x)").unwrap_err();
        assert!(matches!(err, GeometryError::Parse { position: 8, .. }), "{err:?}");
        let err = parse_wkt("Polygon((0 0, 1 0, 1 1, 0 1))").unwrap_err();
        assert!(err.to_string().contains("unclosed ring"), "{err}");
        let err = parse_wkt("Circle(1 2)").unwrap_err();
        assert!(matches!(err, GeometryError::Parse { position: 0, .. }));
        assert!(err.to_string().contains("unknown geometry keyword"));
        assert!(parse_wkt("Point(1 2) junk").is_err());
        assert!(parse_wkt("<relative> Point(1 2)").is_err());
        assert!(parse_wkt("<http://x.org/crs>Point(1 2)").is_err());
        assert!(parse_wkt("Point Z(1 2 3)").is_err());
        assert!(parse_wkt("Point(1 2 3)").is_err());
    }
}
