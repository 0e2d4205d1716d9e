// SPDX-License-Identifier: Apache-2.0

//! `geo:gmlLiteral` reading and writing (GML 3.2 simple geometries).

use super::wkt::check_ring;
use super::{
    format_number, AxisOrder, Coord, CrsRef, Geometry, GeometryError, GeometryKind, GeometryLiteral, Result,
    Serialization, Shape,
};
use crate::xml::{parse_element, Element};

pub const GML_NAMESPACE: &str = "http://www.opengis.net/gml/3.2";
const GML31_NAMESPACE: &str = "http://www.opengis.net/gml";

pub fn parse_gml(text: &str) -> Result<GeometryLiteral> {
    let parsed = if text.trim().is_empty() {
        Geometry::empty(None)
    } else {
        let root = parse_element(text).map_err(|e| GeometryError::parse(e.position, e.message))?;
        let crs = root.attribute("srsName").map(CrsRef::from_uri).unwrap_or_default();
        let shape = read_geometry(&root, crs.axis_order())?;
        Geometry::new(shape, crs)
    };
    Ok(GeometryLiteral {
        serialization: Serialization::Gml,
        raw: text.to_owned(),
        parsed,
    })
}

fn is_gml(e: &Element) -> bool {
    matches!(
        e.namespace.as_deref(),
        None | Some(GML_NAMESPACE) | Some(GML31_NAMESPACE)
    )
}

fn unknown(e: &Element) -> GeometryError {
    GeometryError::parse(0, format!("unknown GML element {:?}", e.local))
}

fn children<'a>(e: &'a Element, local: &'a str) -> impl Iterator<Item = &'a Element> + 'a {
    e.child_elements().filter(move |c| is_gml(c) && c.local == local)
}

fn read_geometry(e: &Element, order: AxisOrder) -> Result<Shape> {
    if !is_gml(e) {
        return Err(unknown(e));
    }
    match e.local.as_str() {
        "Point" => {
            let coords = read_positions(e, order)?;
            match coords.as_slice() {
                [] => Ok(Shape::Empty(Some(GeometryKind::Point))),
                [c] => Ok(Shape::Point(*c)),
                _ => Err(GeometryError::parse(0, "a Point holds exactly one position")),
            }
        }
        "LineString" => {
            let coords = read_positions(e, order)?;
            match coords.len() {
                0 => Ok(Shape::Empty(Some(GeometryKind::LineString))),
                1 => Err(GeometryError::parse(0, "a LineString needs at least two positions")),
                _ => Ok(Shape::LineString(coords)),
            }
        }
        "LinearRing" => {
            let coords = read_positions(e, order)?;
            check_ring(&coords, 0)?;
            Ok(Shape::LineString(coords))
        }
        "Polygon" => {
            let mut rings = Vec::new();
            for boundary in e.child_elements() {
                if !is_gml(boundary) || !matches!(boundary.local.as_str(), "exterior" | "interior") {
                    return Err(unknown(boundary));
                }
                if (boundary.local == "exterior") != rings.is_empty() {
                    return Err(GeometryError::parse(0, "a Polygon needs one leading exterior ring"));
                }
                let ring = children(boundary, "LinearRing")
                    .next()
                    .ok_or_else(|| GeometryError::parse(0, "missing LinearRing"))?;
                let coords = read_positions(ring, order)?;
                check_ring(&coords, 0)?;
                rings.push(coords);
            }
            if rings.is_empty() {
                Ok(Shape::Empty(Some(GeometryKind::Polygon)))
            } else {
                Ok(Shape::Polygon(rings))
            }
        }
        "MultiPoint" => {
            let mut points = Vec::new();
            for member in e.child_elements() {
                if !is_gml(member) || !matches!(member.local.as_str(), "pointMember" | "pointMembers") {
                    return Err(unknown(member));
                }
                for p in member.child_elements() {
                    match read_geometry(p, order)? {
                        Shape::Point(c) if p.local == "Point" => points.push(c),
                        _ => return Err(GeometryError::parse(0, "MultiPoint members must be points")),
                    }
                }
            }
            if points.is_empty() {
                Ok(Shape::Empty(Some(GeometryKind::MultiPoint)))
            } else {
                Ok(Shape::MultiPoint(points))
            }
        }
        _ => Err(unknown(e)),
    }
}

/// Reads either a `posList` or a sequence of `pos` children.
fn read_positions(e: &Element, order: AxisOrder) -> Result<Vec<Coord>> {
    let mut numbers = Vec::new();
    for child in e.child_elements() {
        if !is_gml(child) || !matches!(child.local.as_str(), "pos" | "posList") {
            return Err(unknown(child));
        }
        for token in child.text().split_whitespace() {
            let value = token
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| GeometryError::parse(0, format!("malformed coordinate {token:?}")))?;
            numbers.push(value);
        }
    }
    if numbers.len() % 2 != 0 {
        return Err(GeometryError::parse(0, "odd number of ordinates"));
    }
    Ok(numbers
        .chunks_exact(2)
        .map(|p| Coord::from_axes(p[0], p[1], order))
        .collect())
}

/// Canonical GML 3.2 with the `gml` prefix bound on the root element.
pub fn serialize_gml(geometry: &Geometry, include_crs: bool) -> String {
    let kind = match geometry.kind() {
        Some(kind) => kind,
        None => return String::new(),
    };
    let order = geometry.crs.axis_order();
    let list = |cs: &[Coord]| {
        cs.iter()
            .flat_map(|c| {
                let (a, b) = c.to_axes(order);
                [format_number(a), format_number(b)]
            })
            .collect::<Vec<_>>()
            .join(" ")
    };

    let body = match &geometry.shape {
        Shape::Empty(Some(GeometryKind::Point)) => "<gml:pos></gml:pos>".to_owned(),
        Shape::Empty(Some(GeometryKind::LineString)) => "<gml:posList></gml:posList>".to_owned(),
        Shape::Empty(_) => String::new(),
        Shape::Point(c) => format!("<gml:pos>{}</gml:pos>", list(&[*c])),
        Shape::LineString(cs) => format!("<gml:posList>{}</gml:posList>", list(cs)),
        Shape::MultiPoint(cs) => cs
            .iter()
            .map(|c| {
                format!(
                    "<gml:pointMember><gml:Point><gml:pos>{}</gml:pos></gml:Point></gml:pointMember>",
                    list(&[*c])
                )
            })
            .collect(),
        Shape::Polygon(rings) => rings
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let tag = if i == 0 { "exterior" } else { "interior" };
                format!(
                    "<gml:{tag}><gml:LinearRing><gml:posList>{}</gml:posList></gml:LinearRing></gml:{tag}>",
                    list(r)
                )
            })
            .collect(),
    };

    let name = kind.wkt_keyword();
    let srs = if include_crs {
        format!(r#" srsName="{}""#, crate::xml::escape_text(geometry.crs.uri()))
    } else {
        String::new()
    };
    format!(r#"<gml:{name} xmlns:gml="{GML_NAMESPACE}"{srs}>{body}</gml:{name}>"#)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::EPSG4326;

    #[test]
    fn empty_elements_from_unqualified_markup() {
        let line = parse_gml("<LineString><posList></posList></LineString>").unwrap();
        assert_eq!(line.parsed.shape, Shape::Empty(Some(GeometryKind::LineString)));
        let point = parse_gml("<Point><pos></pos></Point>").unwrap();
        assert_eq!(point.parsed.shape, Shape::Empty(Some(GeometryKind::Point)));
        assert_eq!(parse_gml("").unwrap().parsed.shape, Shape::Empty(None));
    }

    #[test]
    fn minimal_point_defaults_to_crs84() {
        let p = parse_gml("<Point><pos>1 2</pos></Point>").unwrap().parsed;
        assert_eq!(p, Geometry::point(1.0, 2.0));
    }

    #[test]
    fn srs_name_controls_axis_order() {
        let text = format!(
            r#"<gml:Point xmlns:gml="{GML_NAMESPACE}" srsName="{EPSG4326}"><gml:pos>31.95 -88.38</gml:pos></gml:Point>"#
        );
        let p = parse_gml(&text).unwrap().parsed;
        assert_eq!(p.shape, Shape::Point(Coord::new(-88.38, 31.95)));
        assert_eq!(serialize_gml(&p, true), text);
    }

    #[test]
    fn polygon_round_trip() {
        let g = Geometry::rectangle(0.0, 0.0, 2.5, 3.0);
        let text = serialize_gml(&g, true);
        assert!(text.starts_with(r#"<gml:Polygon xmlns:gml="http://www.opengis.net/gml/3.2" srsName="http://www.opengis.net/def/crs/OGC/1.3/CRS84"><gml:exterior>"#));
        assert_eq!(parse_gml(&text).unwrap().parsed, g);
    }

    #[test]
    fn pos_sequence_line_string() {
        let g = parse_gml("<LineString><pos>0 0</pos><pos>1 1</pos></LineString>")
            .unwrap()
            .parsed;
        assert_eq!(g, Geometry::line_string([(0.0, 0.0), (1.0, 1.0)]));
    }

    #[test]
    fn rejects_unknown_and_malformed() {
        assert!(parse_gml("<Circle/>").is_err());
        assert!(parse_gml("<Point><pos>1 2</Point>").is_err());
        assert!(parse_gml("<Point><pos>1</pos></Point>").is_err());
        assert!(parse_gml("<x:Point xmlns:x='urn:other'><x:pos>1 2</x:pos></x:Point>").is_err());
        assert!(parse_gml(
            "<Polygon><exterior><LinearRing><posList>0 0 1 0 1 1 0 1</posList></LinearRing></exterior></Polygon>"
        )
        .is_err());
    }
}
