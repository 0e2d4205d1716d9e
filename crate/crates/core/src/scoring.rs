// SPDX-License-Identifier: Apache-2.0

//! Weighted compliance scoring, extension classification and reports.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{expected_test_count, Catalog, Extension, RequirementId, Weight};
use crate::checker::TestResult;

/// Exit codes of a benchmark run.
pub const EXIT_FULL: i32 = 0;
pub const EXIT_PARTIAL: i32 = 1;
pub const EXIT_HARNESS_FAILURE: i32 = 2;

mod ratio_text {
    use super::Weight;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Weight, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Weight, D::Error> {
        let text = String::deserialize(d)?;
        let (n, m) = text.split_once('/').unwrap_or((text.as_str(), "1"));
        let n: i64 = n.trim().parse().map_err(D::Error::custom)?;
        let m: i64 = m.trim().parse().map_err(D::Error::custom)?;
        if m == 0 {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(Weight::new(n, m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Full,
    Partial,
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Totals {
    pub correct: usize,
    pub total: usize,
    pub compliance_percent: String,
    /// Exact compliance as a fraction of 1.
    #[serde(with = "ratio_text")]
    pub compliance: Weight,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtensionScore {
    pub extension: Extension,
    pub classification: Classification,
    pub correct: usize,
    pub total: usize,
    /// Mean of the requirement fractions in this extension.
    #[serde(with = "ratio_text")]
    pub score: Weight,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RequirementScore {
    pub id: RequirementId,
    pub extension: Extension,
    #[serde(with = "ratio_text")]
    pub weight: Weight,
    #[serde(with = "ratio_text")]
    pub fraction: Weight,
    pub tests: Vec<TestResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplianceReport {
    pub system: String,
    pub timestamp: String,
    pub totals: Totals,
    pub extensions: Vec<ExtensionScore>,
    pub requirements: Vec<RequirementScore>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("no result for test {0}")]
    MissingResult(String),
    #[error("duplicate result for test {0}")]
    DuplicateResult(String),
    #[error("result for unknown test {0}")]
    UnknownTest(String),
}

/// `100 · fraction` rounded half-up to two decimals.
pub fn percent_text(fraction: Weight) -> String {
    let hundredths = fraction * Ratio::from_integer(10_000);
    let rounded = (hundredths + Ratio::new(1, 2)).floor().to_integer();
    format!("{}.{:02}", rounded / 100, rounded % 100)
}

pub fn requirement_weight() -> Weight {
    Ratio::new(1, i64::from(RequirementId::COUNT))
}

/// Whether a catalog covers every tested GEOEXT requirement, which is when
/// requirement 17 takes part in scoring.
pub fn includes_untested_requirement(catalog: &Catalog) -> bool {
    let present = catalog.requirements();
    Extension::Geoext
        .requirements()
        .filter_map(RequirementId::new)
        .filter(|r| expected_test_count(*r) > 0)
        .all(|r| present.contains(&r))
}

/// Scores one result per catalog test. Each scored requirement carries an
/// equal share, 1/30 for the full catalog, and its tests split that share;
/// requirement 17 is credited when at least one answer is correct. A
/// partial catalog is scored over its own requirements only.
pub fn score(catalog: &Catalog, results: &[TestResult], system: &str) -> Result<ComplianceReport, ScoreError> {
    let mut by_id: HashMap<&str, &TestResult> = HashMap::new();
    for r in results {
        if catalog.get(&r.test_id).is_none() {
            return Err(ScoreError::UnknownTest(r.test_id.clone()));
        }
        if by_id.insert(&r.test_id, r).is_some() {
            return Err(ScoreError::DuplicateResult(r.test_id.clone()));
        }
    }
    let with_untested = includes_untested_requirement(catalog);
    let scored = (catalog.requirements().len() + usize::from(with_untested)).max(1);
    let share = Ratio::new(1, i64::try_from(scored).unwrap_or(i64::MAX));
    let mut requirements: BTreeMap<RequirementId, RequirementScore> = BTreeMap::new();
    let mut correct = 0;
    for t in &catalog.tests {
        let result = by_id
            .get(t.id.as_str())
            .ok_or_else(|| ScoreError::MissingResult(t.id.clone()))?;
        let entry = requirements.entry(t.requirement).or_insert_with(|| RequirementScore {
            id: t.requirement,
            extension: t.extension(),
            weight: share,
            fraction: Weight::zero(),
            tests: Vec::new(),
        });
        if result.is_correct() {
            entry.fraction += t.weight;
            correct += 1;
        }
        entry.tests.push((*result).clone());
    }

    let mut compliance: Weight = requirements.values().map(|r| r.weight * r.fraction).sum();
    if correct >= 1 && with_untested {
        compliance += share;
    }

    let mut extensions = Vec::new();
    for extension in Extension::ALL {
        let reqs: Vec<&RequirementScore> = requirements.values().filter(|r| r.extension == extension).collect();
        if reqs.is_empty() {
            continue;
        }
        let total: usize = reqs.iter().map(|r| r.tests.len()).sum();
        let ok: usize = reqs.iter().flat_map(|r| &r.tests).filter(|t| t.is_correct()).count();
        let classification = match ok {
            0 => Classification::None,
            n if n == total => Classification::Full,
            _ => Classification::Partial,
        };
        let score = reqs.iter().map(|r| r.fraction).sum::<Weight>() / Ratio::from_integer(reqs.len() as i64);
        extensions.push(ExtensionScore {
            extension,
            classification,
            correct: ok,
            total,
            score,
        });
    }

    Ok(ComplianceReport {
        system: system.to_owned(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        totals: Totals {
            correct,
            total: catalog.len(),
            compliance_percent: percent_text(compliance),
            compliance,
        },
        extensions,
        requirements: requirements.into_values().collect(),
    })
}

impl ComplianceReport {
    pub fn classification(&self, extension: Extension) -> Option<Classification> {
        self.extensions
            .iter()
            .find(|e| e.extension == extension)
            .map(|e| e.classification)
    }

    /// 0 at 100.00%, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.totals.compliance_percent == "100.00" {
            EXIT_FULL
        } else {
            EXIT_PARTIAL
        }
    }

    /// One-line summary, e.g. `206/206, 100.00%`.
    pub fn summary(&self) -> String {
        format!(
            "{}/{}, {}%",
            self.totals.correct, self.totals.total, self.totals.compliance_percent
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_markdown(&self) -> String {
        let mut md = String::new();
        let _ = writeln!(md, "# GeoSPARQL compliance report\n");
        let _ = writeln!(md, "System: {}  ", self.system);
        let _ = writeln!(md, "Generated: {}\n", self.timestamp);
        let _ = writeln!(md, "| System | Correct answers | GeoSPARQL compliance |");
        let _ = writeln!(md, "|---|---:|---:|");
        let _ = writeln!(
            md,
            "| {} | {} | {}% |\n",
            self.system, self.totals.correct, self.totals.compliance_percent
        );
        let header: Vec<&str> = self.extensions.iter().map(|e| e.extension.name()).collect();
        let _ = writeln!(md, "| System | {} |", header.join(" | "));
        let _ = writeln!(md, "|---|{}", "---|".repeat(header.len()));
        let cells: Vec<String> = self
            .extensions
            .iter()
            .map(|e| format!("{:?}", e.classification))
            .collect();
        let _ = writeln!(md, "| {} | {} |\n", self.system, cells.join(" | "));
        let _ = writeln!(md, "## Requirements\n");
        let _ = writeln!(md, "| Requirement | Extension | Correct | Tests | Score |");
        let _ = writeln!(md, "|---:|---|---:|---:|---:|");
        for r in &self.requirements {
            let ok = r.tests.iter().filter(|t| t.is_correct()).count();
            let pct = r.fraction.to_f64().unwrap_or(0.0) * 100.0;
            let _ = writeln!(
                md,
                "| {} | {} | {} | {} | {:.2}% |",
                r.id,
                r.extension,
                ok,
                r.tests.len(),
                pct
            );
        }
        let failed: Vec<&TestResult> = self
            .requirements
            .iter()
            .flat_map(|r| &r.tests)
            .filter(|t| !t.is_correct())
            .collect();
        if !failed.is_empty() {
            let _ = writeln!(md, "\n## Tests not passed\n");
            let _ = writeln!(md, "| Test | Verdict | Received |");
            let _ = writeln!(md, "|---|---|---|");
            for t in failed {
                let received = t.received.to_string().replace('|', "\\|");
                let received = if received.len() > 120 {
                    let cut = (0..=120).rev().find(|i| received.is_char_boundary(*i)).unwrap_or(0);
                    format!("{}…", &received[..cut])
                } else {
                    received
                };
                let _ = writeln!(md, "| {} | {:?} | `{}` |", t.test_id, t.verdict, received);
            }
        }
        md
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn half_up_rounding() {
        assert_eq!(percent_text(Ratio::new(17, 30)), "56.67");
        assert_eq!(percent_text(Ratio::new(14, 30)), "46.67");
        assert_eq!(percent_text(Ratio::new(1, 1)), "100.00");
        assert_eq!(percent_text(Ratio::zero()), "0.00");
        assert_eq!(percent_text(Ratio::new(1, 30) + Ratio::new(1, 240)), "3.75");
        assert_eq!(percent_text(Ratio::new(1, 800)), "0.13");
    }

    #[test]
    fn ratio_serde() {
        let s = RequirementScore {
            id: RequirementId::new(4).unwrap(),
            extension: Extension::Top,
            weight: requirement_weight(),
            fraction: Ratio::new(1, 8),
            tests: vec![],
        };
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["weight"], "1/30");
        assert_eq!(v["fraction"], "1/8");
        assert_eq!(serde_json::from_value::<RequirementScore>(v).unwrap(), s);
    }
}
