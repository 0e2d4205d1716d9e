// SPDX-License-Identifier: Apache-2.0

//! A reference SPARQL endpoint for the GeoSPARQL harness.
//!
//! Three profiles emulate a plain RDF store, a store with RDFS entailment and
//! a fully GeoSPARQL-compliant store. The server speaks the SPARQL Protocol,
//! the Graph Store Protocol and enough SPARQL Update to load and drop data.

pub mod eval;
mod http;
pub mod store;

use std::fmt;
use std::net::SocketAddr;
use std::str::FromStr;

pub use eval::{evaluate, EvalError};
pub use http::{router, serve, FixtureServer};
pub use store::{rdfs_closure, rewrite_match, Snapshot, Store};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProfileName {
    BaselineNoRdfs,
    Baseline,
    Full,
}

impl ProfileName {
    pub const ALL: [ProfileName; 3] = [ProfileName::BaselineNoRdfs, ProfileName::Baseline, ProfileName::Full];

    pub fn as_str(self) -> &'static str {
        match self {
            ProfileName::BaselineNoRdfs => "baseline_no_rdfs",
            ProfileName::Baseline => "baseline",
            ProfileName::Full => "full",
        }
    }
}

impl fmt::Display for ProfileName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ProfileName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ProfileName::ALL
            .into_iter()
            .find(|p| p.as_str() == s || p.as_str().replace('_', "-") == s)
            .ok_or_else(|| format!("unknown profile {s:?} (expected baseline_no_rdfs, baseline or full)"))
    }
}

/// What a query calling an unsupported function gets back.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum UnknownFunctionPolicy {
    #[default]
    BadRequest,
    EmptyResult,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub name: ProfileName,
    pub rdfs_entailment: bool,
    pub geo_functions: bool,
    pub query_rewrite: bool,
    pub unknown_function: UnknownFunctionPolicy,
}

impl Profile {
    pub fn new(name: ProfileName) -> Profile {
        let (rdfs_entailment, geo_functions, query_rewrite) = match name {
            ProfileName::BaselineNoRdfs => (false, false, false),
            ProfileName::Baseline => (true, false, false),
            ProfileName::Full => (true, true, true),
        };
        Profile {
            name,
            rdfs_entailment,
            geo_functions,
            query_rewrite,
            unknown_function: UnknownFunctionPolicy::default(),
        }
    }

    pub fn baseline_no_rdfs() -> Profile {
        Profile::new(ProfileName::BaselineNoRdfs)
    }

    pub fn baseline() -> Profile {
        Profile::new(ProfileName::Baseline)
    }

    pub fn full() -> Profile {
        Profile::new(ProfileName::Full)
    }
}

/// Endpoint URLs of a server listening on `addr`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndpointUrls {
    pub query: String,
    pub update: String,
    pub graph_store: String,
}

impl EndpointUrls {
    pub fn for_addr(addr: SocketAddr) -> EndpointUrls {
        let base = format!("http://{addr}");
        EndpointUrls {
            query: format!("{base}/sparql"),
            update: format!("{base}/update"),
            graph_store: format!("{base}/data"),
        }
    }
}
