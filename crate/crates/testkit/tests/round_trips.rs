// SPDX-License-Identifier: Apache-2.0

use geobench_core::checker::{normalize_gml, normalize_wkt};
use geobench_core::geometry::{serialize, GeometryLiteral, Serialization};
use geobench_core::results::{parse_results, render_results, ResultsFormat};
use geobench_testkit::strategies::{any_geometry, outcome};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn geometries_survive_both_serializations(g in any_geometry()) {
        for s in [Serialization::Wkt, Serialization::Gml] {
            let text = serialize(&g, s, true);
            let back = GeometryLiteral::parse(s, &text).unwrap();
            prop_assert_eq!(&back.parsed, &g, "{}", text);
        }
    }

    #[test]
    fn normalization_is_idempotent(g in any_geometry()) {
        let wkt = normalize_wkt(&serialize(&g, Serialization::Wkt, true));
        prop_assert_eq!(normalize_wkt(&wkt), wkt.clone());
        let gml = normalize_gml(&serialize(&g, Serialization::Gml, true)).unwrap();
        prop_assert_eq!(normalize_gml(&gml).unwrap(), gml);
    }

    #[test]
    fn outcomes_survive_both_result_formats(o in outcome()) {
        for format in [ResultsFormat::Json, ResultsFormat::Xml] {
            let body = render_results(&o, format).unwrap();
            let back = parse_results(body.as_bytes(), format.media_type());
            prop_assert_eq!(&back, &o, "{}", body);
        }
    }
}
