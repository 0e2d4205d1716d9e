// SPDX-License-Identifier: Apache-2.0

use geobench_core::dataset::dataset_geometries;
use geobench_core::geometry::{relate_matrix, Geometry};
use geobench_testkit::oracle::{sample_all_pairs, sample_matrix};
use geobench_testkit::strategies::grid_geometry;
use proptest::prelude::*;

#[test]
fn oracle_agrees_on_every_dataset_pair() {
    let geometries: Vec<Geometry> = dataset_geometries().into_iter().map(|g| g.geometry).collect();
    let mut checked = 0;
    for (i, j, oracle) in sample_all_pairs(&geometries) {
        let Some(oracle) = oracle else { continue };
        let matrix = relate_matrix(&geometries[i], &geometries[j]).unwrap().to_string();
        assert_eq!(matrix, oracle, "pair {i} {j}");
        checked += 1;
    }
    assert!(checked > 100, "{checked}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn oracle_agrees_on_random_grid_pairs(a in grid_geometry(), b in grid_geometry()) {
        let oracle = sample_matrix(&a, &b).unwrap();
        let matrix = relate_matrix(&a, &b).unwrap().to_string();
        prop_assert_eq!(matrix, oracle);
    }
}
