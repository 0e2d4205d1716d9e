// SPDX-License-Identifier: Apache-2.0

//! Simple Features, Egenhofer and RCC8 relations as DE-9IM pattern tables.

use std::fmt;
use std::str::FromStr;

use super::relate::{matches_pattern, relate_matrix, De9im};
use super::{Geometry, GeometryError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationFamily {
    SimpleFeatures,
    Egenhofer,
    Rcc8,
}

impl RelationFamily {
    pub fn relations(self) -> &'static [TopologicalRelation] {
        let start = match self {
            RelationFamily::SimpleFeatures => 0,
            RelationFamily::Egenhofer => 8,
            RelationFamily::Rcc8 => 16,
        };
        &TopologicalRelation::ALL[start..start + 8]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TopologicalRelation {
    SfEquals,
    SfDisjoint,
    SfIntersects,
    SfTouches,
    SfCrosses,
    SfWithin,
    SfContains,
    SfOverlaps,
    EhEquals,
    EhDisjoint,
    EhMeet,
    EhOverlap,
    EhCovers,
    EhCoveredBy,
    EhInside,
    EhContains,
    Rcc8Eq,
    Rcc8Dc,
    Rcc8Ec,
    Rcc8Po,
    Rcc8Tppi,
    Rcc8Tpp,
    Rcc8Ntpp,
    Rcc8Ntppi,
}

use TopologicalRelation::*;

impl TopologicalRelation {
    pub const ALL: [TopologicalRelation; 24] = [
        SfEquals,
        SfDisjoint,
        SfIntersects,
        SfTouches,
        SfCrosses,
        SfWithin,
        SfContains,
        SfOverlaps,
        EhEquals,
        EhDisjoint,
        EhMeet,
        EhOverlap,
        EhCovers,
        EhCoveredBy,
        EhInside,
        EhContains,
        Rcc8Eq,
        Rcc8Dc,
        Rcc8Ec,
        Rcc8Po,
        Rcc8Tppi,
        Rcc8Tpp,
        Rcc8Ntpp,
        Rcc8Ntppi,
    ];

    /// Local name shared by the `geo:` property and the `geof:` function.
    pub fn name(self) -> &'static str {
        match self {
            SfEquals => "sfEquals",
            SfDisjoint => "sfDisjoint",
            SfIntersects => "sfIntersects",
            SfTouches => "sfTouches",
            SfCrosses => "sfCrosses",
            SfWithin => "sfWithin",
            SfContains => "sfContains",
            SfOverlaps => "sfOverlaps",
            EhEquals => "ehEquals",
            EhDisjoint => "ehDisjoint",
            EhMeet => "ehMeet",
            EhOverlap => "ehOverlap",
            EhCovers => "ehCovers",
            EhCoveredBy => "ehCoveredBy",
            EhInside => "ehInside",
            EhContains => "ehContains",
            Rcc8Eq => "rcc8eq",
            Rcc8Dc => "rcc8dc",
            Rcc8Ec => "rcc8ec",
            Rcc8Po => "rcc8po",
            Rcc8Tppi => "rcc8tppi",
            Rcc8Tpp => "rcc8tpp",
            Rcc8Ntpp => "rcc8ntpp",
            Rcc8Ntppi => "rcc8ntppi",
        }
    }

    pub fn family(self) -> RelationFamily {
        match self as usize {
            0..=7 => RelationFamily::SimpleFeatures,
            8..=15 => RelationFamily::Egenhofer,
            _ => RelationFamily::Rcc8,
        }
    }

    /// Relations that test for equality; these are the only ones defined
    /// when an operand is empty.
    pub fn is_equality(self) -> bool {
        matches!(self, SfEquals | EhEquals | Rcc8Eq)
    }

    /// The relation with its operands swapped.
    pub fn converse(self) -> TopologicalRelation {
        match self {
            SfWithin => SfContains,
            SfContains => SfWithin,
            EhCovers => EhCoveredBy,
            EhCoveredBy => EhCovers,
            EhInside => EhContains,
            EhContains => EhInside,
            Rcc8Tppi => Rcc8Tpp,
            Rcc8Tpp => Rcc8Tppi,
            Rcc8Ntpp => Rcc8Ntppi,
            Rcc8Ntppi => Rcc8Ntpp,
            symmetric => symmetric,
        }
    }

    /// Pattern disjunction for operands of topological dimensions `da`, `db`.
    /// An empty list means the relation never holds for that combination.
    pub fn patterns(self, da: u8, db: u8) -> Vec<&'static str> {
        match self {
            // The areal table entry never holds for points, whose boundary is empty.
            SfEquals => vec!["T*F**FFF*"],
            EhEquals | Rcc8Eq => vec!["TFFFTFFFT"],
            SfDisjoint | EhDisjoint => vec!["FF*FF****"],
            SfIntersects => vec!["T********", "*T*******", "***T*****", "****T****"],
            SfTouches | EhMeet => vec!["FT*******", "F**T*****", "F***T****"],
            SfWithin => vec!["T*F**F***"],
            SfContains => vec!["T*****FF*"],
            SfOverlaps => match (da, db) {
                (1, 1) => vec!["1*T***T**"],
                (x, y) if x == y => vec!["T*T***T**"],
                _ => vec![],
            },
            SfCrosses => match (da, db) {
                (1, 1) => vec!["0********"],
                (x, y) if x < y => vec!["T*T******"],
                (x, y) if x > y => vec!["T*****T**"],
                _ => vec![],
            },
            EhOverlap => vec!["T*T***T**"],
            EhCovers => vec!["T*TFT*FF*"],
            EhCoveredBy => vec!["TFF*TFT**"],
            EhInside => vec!["TFF*FFT**"],
            EhContains => vec!["T*TFF*FF*"],
            Rcc8Dc => vec!["FFTFFTTTT"],
            Rcc8Ec => vec!["FFTFTTTTT"],
            Rcc8Po => vec!["TTTTTTTTT"],
            Rcc8Tppi => vec!["TTTFTTFFT"],
            Rcc8Tpp => vec!["TFFTTFTTT"],
            Rcc8Ntpp => vec!["TFFTFFTTT"],
            Rcc8Ntppi => vec!["TTTFFTFFT"],
        }
    }

    /// Evaluates the relation on a precomputed matrix.
    pub fn holds_for(self, matrix: &De9im, da: u8, db: u8) -> bool {
        self.patterns(da, db)
            .iter()
            .any(|p| matches_pattern(matrix, p).expect("pattern table is well formed"))
    }

    pub fn holds(self, a: &Geometry, b: &Geometry) -> Result<bool> {
        let m = relate_matrix(a, b)?;
        Ok(self.holds_for(&m, dimension(a), dimension(b)))
    }
}

fn dimension(g: &Geometry) -> u8 {
    g.kind().map_or(0, |k| k.dimension())
}

impl fmt::Display for TopologicalRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TopologicalRelation {
    type Err = GeometryError;

    fn from_str(s: &str) -> Result<Self> {
        TopologicalRelation::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| GeometryError::UnknownPredicate(s.to_owned()))
    }
}

/// Evaluates a relation given by its local name, e.g. `"sfContains"`.
pub fn topological_predicate(name: &str, a: &Geometry, b: &Geometry) -> Result<bool> {
    name.parse::<TopologicalRelation>()?.holds(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn externally_connected_squares() {
        let a = Geometry::rectangle(0.0, 0.0, 1.0, 1.0);
        let b = Geometry::rectangle(1.0, 0.0, 2.0, 1.0);
        assert!(topological_predicate("rcc8ec", &a, &b).unwrap());
        assert!(topological_predicate("sfTouches", &a, &b).unwrap());
        assert!(!topological_predicate("sfOverlaps", &a, &b).unwrap());
    }

    #[test]
    fn names_round_trip_and_families_partition() {
        for r in TopologicalRelation::ALL {
            assert_eq!(r.name().parse::<TopologicalRelation>().unwrap(), r);
            assert!(r.family().relations().contains(&r));
            assert_eq!(r.converse().converse(), r);
        }
        assert!("sfNear".parse::<TopologicalRelation>().is_err());
    }

    #[test]
    fn crosses_depends_on_dimension() {
        let line = Geometry::line_string([(-1.0, 0.5), (2.0, 0.5)]);
        let sq = Geometry::rectangle(0.0, 0.0, 1.0, 1.0);
        assert!(SfCrosses.holds(&line, &sq).unwrap());
        assert!(SfCrosses.holds(&sq, &line).unwrap());
        assert!(!SfCrosses.holds(&sq, &sq).unwrap());
    }

    #[test]
    fn empty_operand_is_an_error() {
        let e = Geometry::empty(None);
        assert!(topological_predicate("sfEquals", &e, &e).is_err());
    }
}
