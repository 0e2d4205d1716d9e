// SPDX-License-Identifier: Apache-2.0

//! Core of the GeoSPARQL compliance harness: the geometry engine, the
//! benchmark dataset, the test catalog, answer checking and scoring.

pub mod catalog;
pub mod checker;
pub mod dataset;
pub mod geometry;
pub mod results;
pub mod scoring;
pub mod vocab;
pub mod xml;
