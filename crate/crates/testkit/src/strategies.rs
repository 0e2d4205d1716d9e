// SPDX-License-Identifier: Apache-2.0

//! Proptest generators for geometries and query outcomes.

use geobench_core::geometry::{Coord, CrsRef, Geometry, GeometryKind, Shape};
use geobench_core::results::{QueryOutcome, Solutions};
use geobench_core::vocab::{WKT_LITERAL, XSD_BOOLEAN, XSD_DOUBLE, XSD_INTEGER};
use oxrdf::{BlankNode, Literal, NamedNode, Term};
use proptest::collection::{btree_set, vec};
use proptest::prelude::*;

/// A coordinate on a half-unit grid; grid geometries hit the degenerate
/// cases (shared edges, touching vertices) that matter for relations.
pub fn grid_coord() -> BoxedStrategy<Coord> {
    (-4i32..=8, -4i32..=8)
        .prop_map(|(x, y)| Coord::new(f64::from(x) / 2.0, f64::from(y) / 2.0))
        .boxed()
}

/// Any finite longitude/latitude pair.
pub fn float_coord() -> BoxedStrategy<Coord> {
    (-180.0f64..180.0, -90.0f64..90.0)
        .prop_map(|(x, y)| Coord::new(x, y))
        .boxed()
}

fn crs() -> impl Strategy<Value = CrsRef> {
    prop_oneof![Just(CrsRef::crs84()), Just(CrsRef::epsg4326())]
}

fn shapes(c: BoxedStrategy<Coord>) -> impl Strategy<Value = Shape> {
    let rectangle = (c.clone(), c.clone())
        .prop_filter("non-degenerate", |(a, b)| a.x != b.x && a.y != b.y)
        .prop_map(|(a, b)| {
            let (x0, x1) = (a.x.min(b.x), a.x.max(b.x));
            let (y0, y1) = (a.y.min(b.y), a.y.max(b.y));
            Shape::Polygon(vec![vec![
                Coord::new(x0, y0),
                Coord::new(x1, y0),
                Coord::new(x1, y1),
                Coord::new(x0, y1),
                Coord::new(x0, y0),
            ]])
        });
    let triangle = (c.clone(), c.clone(), c.clone())
        .prop_filter("non-collinear", |(a, b, d)| {
            ((b.x - a.x) * (d.y - a.y) - (b.y - a.y) * (d.x - a.x)).abs() > 1e-9
        })
        .prop_map(|(a, b, d)| Shape::Polygon(vec![vec![a, b, d, a]]));
    let multipoint = vec(c.clone(), 2..=3)
        .prop_filter("distinct points", |cs| {
            cs.iter().enumerate().all(|(i, p)| !cs[..i].contains(p))
        })
        .prop_map(Shape::MultiPoint);
    let line = vec(c.clone(), 2..=4)
        .prop_filter("consecutive vertices differ", |cs| cs.windows(2).all(|w| w[0] != w[1]))
        .prop_map(Shape::LineString);
    prop_oneof![c.prop_map(Shape::Point), multipoint, line, rectangle, triangle]
}

/// Small grid geometries in CRS84.
pub fn grid_geometry() -> impl Strategy<Value = Geometry> {
    shapes(grid_coord()).prop_map(|s| Geometry::new(s, CrsRef::crs84()))
}

/// Small geometries with arbitrary coordinates and CRS, including empties.
pub fn any_geometry() -> impl Strategy<Value = Geometry> {
    let empty = prop_oneof![
        Just(GeometryKind::Point),
        Just(GeometryKind::LineString),
        Just(GeometryKind::Polygon),
        Just(GeometryKind::MultiPoint),
    ]
    .prop_map(|k| Shape::Empty(Some(k)));
    (prop_oneof![9 => shapes(float_coord()), 1 => empty], crs()).prop_map(|(s, crs)| Geometry::new(s, crs))
}

fn text() -> impl Strategy<Value = String> {
    prop_oneof!["[a-zA-Z0-9 ]{0,12}", "[<>&\"' \\-_.]{1,6}", "\\PC{0,8}",]
}

fn iri() -> impl Strategy<Value = NamedNode> {
    "[a-z]{1,8}(/[a-zA-Z0-9_]{1,6}){0,2}(#[A-Za-z]{1,5})?"
        .prop_map(|path| NamedNode::new_unchecked(format!("http://example.org/{path}")))
}

pub fn term() -> impl Strategy<Value = Term> {
    prop_oneof![
        iri().prop_map(Term::from),
        "[a-zA-Z][a-zA-Z0-9]{0,7}".prop_map(|id| Term::from(BlankNode::new_unchecked(id))),
        text().prop_map(|s| Term::from(Literal::new_simple_literal(s))),
        (text(), "[a-z]{2}(-[A-Z]{2})?").prop_map(|(s, l)| Term::from(Literal::new_language_tagged_literal_unchecked(
            s,
            l.to_ascii_lowercase()
        ))),
        any::<i32>().prop_map(|v| typed(v.to_string(), XSD_INTEGER)),
        any::<bool>().prop_map(|v| typed(v.to_string(), XSD_BOOLEAN)),
        (-1e6f64..1e6).prop_map(|v| typed(format!("{v:?}"), XSD_DOUBLE)),
        (grid_coord()).prop_map(|c| typed(format!("Point({} {})", c.x, c.y), WKT_LITERAL)),
    ]
}

fn typed(value: String, datatype: &str) -> Term {
    Literal::new_typed_literal(value, NamedNode::new_unchecked(datatype)).into()
}

/// Random small SELECT or ASK outcomes.
pub fn outcome() -> impl Strategy<Value = QueryOutcome> {
    let solutions = btree_set("[a-z][a-z0-9_]{0,5}", 0..4).prop_flat_map(|names| {
        let variables: Vec<String> = names.into_iter().collect();
        let width = variables.len();
        vec(vec(proptest::option::of(term()), width..=width), 0..5).prop_map(move |rows| {
            QueryOutcome::Solutions(Solutions {
                variables: variables.clone(),
                rows,
            })
        })
    });
    prop_oneof![1 => any::<bool>().prop_map(QueryOutcome::Boolean), 4 => solutions]
}
