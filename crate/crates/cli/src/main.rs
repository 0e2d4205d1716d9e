// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use geobench_cli::{run_benchmark, ReportFormat, RunConfig};
use geobench_client::{Credentials, EndpointConfig};
use geobench_core::catalog::{builtin_catalog, select, validate_catalog, Selection};
use geobench_core::dataset::{build_dataset, emit, RdfFormat};
use geobench_core::scoring::EXIT_HARNESS_FAILURE;
use geobench_fixture::{FixtureServer, Profile, ProfileName};
use oxrdf::NamedNode;

const USERNAME_VAR: &str = "GEOBENCH_USERNAME";
const PASSWORD_VAR: &str = "GEOBENCH_PASSWORD";

#[derive(Parser)]
#[command(name = "geobench", version, about = "GeoSPARQL compliance benchmark")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
#[allow(clippy::large_enum_variant)]
enum Command {
    /// Run the benchmark against a SPARQL endpoint.
    Run(RunArgs),
    /// Work with the benchmark dataset.
    #[command(subcommand)]
    Dataset(DatasetCommand),
    /// Inspect the test catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Start the reference endpoint.
    #[command(subcommand)]
    Fixture(FixtureCommand),
}

#[derive(Args)]
struct RunArgs {
    /// SPARQL query endpoint URL.
    #[arg(long)]
    endpoint: String,
    /// SPARQL Update endpoint URL, used when the graph store load fails.
    #[arg(long)]
    update: Option<String>,
    /// Graph Store Protocol URL.
    #[arg(long)]
    graph_store: Option<String>,
    /// Load into this named graph instead of the default graph.
    #[arg(long)]
    graph: Option<String>,
    /// Requirement numbers, e.g. `21-24` or `1,3,5-7`.
    #[arg(long, conflicts_with = "extensions")]
    requirements: Option<String>,
    /// Extension names, e.g. `CORE,GTOP`.
    #[arg(long)]
    extensions: Option<String>,
    #[arg(long, default_value = "geobench-report")]
    output_dir: PathBuf,
    #[arg(long = "format", value_enum, default_values_t = [FormatArg::Json, FormatArg::Markdown])]
    formats: Vec<FormatArg>,
    /// Concurrent requests.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    parallelism: u16,
    /// Per-request timeout in seconds.
    #[arg(long, default_value_t = 30)]
    timeout: u64,
    /// Leave the dataset in the store after the run.
    #[arg(long)]
    keep_data: bool,
    /// Name of the system under test, as shown in the reports.
    #[arg(long, default_value = "system under test")]
    system: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Markdown,
}

#[derive(Subcommand)]
enum DatasetCommand {
    /// Write the dataset to standard output.
    Emit {
        #[arg(long, value_enum, default_value_t = RdfFormatArg::Ttl)]
        format: RdfFormatArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RdfFormatArg {
    Ttl,
    Rdfxml,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the tests with their weights.
    List {
        #[arg(long)]
        extension: Option<String>,
    },
    /// Check the built-in catalog's invariants.
    Validate,
}

#[derive(Subcommand)]
enum FixtureCommand {
    /// Serve the reference endpoint until interrupted.
    Serve {
        #[arg(long, default_value = "full")]
        profile: ProfileName,
        #[arg(long, default_value_t = 0)]
        port: u16,
        /// Answer queries with unknown functions with empty results instead of HTTP 400.
        #[arg(long)]
        empty_on_unknown: bool,
    },
}

fn main() -> ExitCode {
    tracing_subscriber::fmt()
        .with_env_filter(tracing_subscriber::EnvFilter::from_default_env())
        .with_writer(std::io::stderr)
        .init();
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Run(args) => run(args),
        Command::Dataset(DatasetCommand::Emit { format }) => dataset_emit(format),
        Command::Catalog(CatalogCommand::List { extension }) => catalog_list(extension),
        Command::Catalog(CatalogCommand::Validate) => catalog_validate(),
        Command::Fixture(FixtureCommand::Serve {
            profile,
            port,
            empty_on_unknown,
        }) => fixture_serve(profile, port, empty_on_unknown),
    };
    ExitCode::from(u8::try_from(code).unwrap_or(2))
}

fn fail(message: impl std::fmt::Display) -> i32 {
    eprintln!("error: {message}");
    EXIT_HARNESS_FAILURE
}

fn run(args: RunArgs) -> i32 {
    let mut endpoint =
        match EndpointConfig::from_urls(&args.endpoint, args.update.as_deref(), args.graph_store.as_deref()) {
            Ok(e) => e,
            Err(e) => return fail(e),
        };
    if let Some(graph) = &args.graph {
        match NamedNode::new(graph) {
            Ok(g) => endpoint.target_graph = Some(g),
            Err(e) => return fail(format!("bad graph IRI {graph:?}: {e}")),
        }
    }
    if let Ok(username) = std::env::var(USERNAME_VAR) {
        endpoint.auth = Some(Credentials {
            username,
            password: std::env::var(PASSWORD_VAR).unwrap_or_default(),
        });
    }
    endpoint.timeout = Duration::from_secs(args.timeout);
    endpoint.parallelism = usize::from(args.parallelism);

    let selection = match (&args.requirements, &args.extensions) {
        (Some(r), _) => Selection::parse_requirements(r).map(Some),
        (None, Some(e)) => Selection::parse_extensions(e).map(Some),
        (None, None) => Ok(None),
    };
    let selection = match selection {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let formats: BTreeSet<ReportFormat> = args
        .formats
        .iter()
        .map(|f| match f {
            FormatArg::Json => ReportFormat::Json,
            FormatArg::Markdown => ReportFormat::Markdown,
        })
        .collect();
    let config = RunConfig {
        endpoint,
        selection,
        output_dir: args.output_dir,
        formats,
        system: args.system,
        keep_data: args.keep_data,
    };
    match run_benchmark(&config) {
        Ok(report) => {
            println!("{}", report.summary());
            for e in &report.extensions {
                println!("{:<7}{:?}", e.extension.name(), e.classification);
            }
            report.exit_code()
        }
        Err(e) => fail(e),
    }
}

fn dataset_emit(format: RdfFormatArg) -> i32 {
    let format = match format {
        RdfFormatArg::Ttl => RdfFormat::Turtle,
        RdfFormatArg::Rdfxml => RdfFormat::RdfXml,
    };
    match emit(&build_dataset().all_triples(), format) {
        Ok(bytes) => match std::io::stdout().lock().write_all(&bytes) {
            Ok(()) => 0,
            Err(e) => fail(e),
        },
        Err(e) => fail(e),
    }
}

fn catalog_list(extension: Option<String>) -> i32 {
    let catalog = match builtin_catalog() {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let catalog = match extension {
        Some(x) => match Selection::parse_extensions(&x).and_then(|s| select(&catalog, &s)) {
            Ok(c) => c,
            Err(e) => return fail(e),
        },
        None => catalog,
    };
    let mut out = std::io::stdout().lock();
    for t in &catalog.tests {
        let _ = writeln!(
            out,
            "{:>2}  {:<6}  {:<5}  {}",
            t.requirement.to_string(),
            t.extension().to_string(),
            t.weight.to_string(),
            t.id
        );
    }
    0
}

fn catalog_validate() -> i32 {
    let catalog = match builtin_catalog() {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let problems = validate_catalog(&catalog);
    if problems.is_empty() {
        println!("catalog ok: {} tests", catalog.len());
        0
    } else {
        for p in &problems {
            eprintln!("{p}");
        }
        EXIT_HARNESS_FAILURE
    }
}

fn fixture_serve(name: ProfileName, port: u16, empty_on_unknown: bool) -> i32 {
    let mut profile = Profile::new(name);
    if empty_on_unknown {
        profile.unknown_function = geobench_fixture::UnknownFunctionPolicy::EmptyResult;
    }
    let server = match FixtureServer::start(profile, port) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let urls = server.urls();
    println!("profile {name}");
    println!("query       {}", urls.query);
    println!("update      {}", urls.update);
    println!("graph store {}", urls.graph_store);
    let _ = std::io::stdout().flush();
    loop {
        std::thread::park();
    }
}
