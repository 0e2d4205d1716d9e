// SPDX-License-Identifier: Apache-2.0

//! Benchmark orchestration: load the dataset, run the selected tests, check
//! and score the answers, and write the reports.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use geobench_client::{EndpointConfig, LoadError, SparqlClient};
use geobench_core::catalog::{builtin_catalog, select, CatalogError, Selection};
use geobench_core::checker::check;
use geobench_core::dataset::build_dataset;
use geobench_core::scoring::{score, ComplianceReport, ScoreError};

pub const REPORT_JSON: &str = "report.json";
pub const REPORT_MARKDOWN: &str = "report.md";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ReportFormat {
    Json,
    Markdown,
}

impl ReportFormat {
    pub fn file_name(self) -> &'static str {
        match self {
            ReportFormat::Json => REPORT_JSON,
            ReportFormat::Markdown => REPORT_MARKDOWN,
        }
    }

    pub fn render(self, report: &ComplianceReport) -> String {
        match self {
            ReportFormat::Json => report.to_json() + "\n",
            ReportFormat::Markdown => report.to_markdown(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub endpoint: EndpointConfig,
    pub selection: Option<Selection>,
    pub output_dir: PathBuf,
    pub formats: BTreeSet<ReportFormat>,
    pub system: String,
    pub keep_data: bool,
}

impl RunConfig {
    pub fn new(endpoint: EndpointConfig, output_dir: impl Into<PathBuf>) -> RunConfig {
        RunConfig {
            endpoint,
            selection: None,
            output_dir: output_dir.into(),
            formats: [ReportFormat::Json, ReportFormat::Markdown].into(),
            system: "system under test".into(),
            keep_data: false,
        }
    }
}

/// Failures that abort a run. Failing queries are not among them; they are
/// scored as errors.
#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error("catalog: {0}")]
    Catalog(#[from] CatalogError),
    #[error("dataset load failed: {0}")]
    Load(#[from] LoadError),
    #[error("scoring: {0}")]
    Score(#[from] ScoreError),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

/// Runs the benchmark and writes the requested reports to `output_dir`.
pub fn run_benchmark(config: &RunConfig) -> Result<ComplianceReport, RunError> {
    let mut catalog = builtin_catalog()?;
    if let Some(selection) = &config.selection {
        catalog = select(&catalog, selection)?;
    }
    let client = SparqlClient::new(config.endpoint.clone())?;
    let triples = build_dataset().all_triples();
    let started = Instant::now();
    let load = client.load_dataset(&triples)?;
    tracing::info!(triples = load.triples, method = ?load.method, elapsed = ?started.elapsed(), "dataset loaded");

    let queries: Vec<(usize, String)> = catalog.tests.iter().map(|t| t.query.clone()).enumerate().collect();
    let results: Vec<_> = client
        .execute_all(&queries)
        .into_iter()
        .map(|e| {
            let test = &catalog.tests[e.key];
            let mut result = check(test, &e.outcome);
            result.elapsed_ms = u64::try_from(e.elapsed.as_millis()).unwrap_or(u64::MAX);
            tracing::debug!(test = %test.id, verdict = ?result.verdict, "checked");
            result
        })
        .collect();
    let report = score(&catalog, &results, &config.system)?;

    if !config.keep_data {
        if let Err(e) = client.drop_dataset() {
            tracing::warn!("could not drop the benchmark data: {e}");
        }
    }
    write_reports(&report, &config.output_dir, &config.formats)?;
    Ok(report)
}

pub fn write_reports(
    report: &ComplianceReport,
    dir: &Path,
    formats: &BTreeSet<ReportFormat>,
) -> Result<Vec<PathBuf>, RunError> {
    let io = |path: &Path| {
        let path = path.display().to_string();
        move |source| RunError::Write { path, source }
    };
    std::fs::create_dir_all(dir).map_err(io(dir))?;
    let mut written = Vec::new();
    for format in formats {
        let path = dir.join(format.file_name());
        std::fs::write(&path, format.render(report)).map_err(io(&path))?;
        written.push(path);
    }
    Ok(written)
}
