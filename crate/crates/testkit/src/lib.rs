// SPDX-License-Identifier: Apache-2.0

//! Independent oracles and proptest generators used by the harness's tests.

pub mod oracle;
pub mod strategies;
