// SPDX-License-Identifier: Apache-2.0

//! The catalog shipped inside the crate.

use include_dir::{include_dir, Dir};

use super::{parse_manifest, Catalog, CatalogError, MANIFEST};

static CATALOG_DIR: Dir<'_> = include_dir!("$CARGO_MANIFEST_DIR/catalog");

/// The built-in catalog of 206 tests.
pub fn builtin_catalog() -> Result<Catalog, CatalogError> {
    let manifest = CATALOG_DIR
        .get_file(MANIFEST)
        .and_then(|f| f.contents_utf8())
        .ok_or_else(|| CatalogError::Manifest("built-in manifest is missing".into()))?;
    Catalog::from_manifest(parse_manifest(manifest)?, |path| {
        CATALOG_DIR
            .get_file(path)
            .and_then(|f| f.contents_utf8())
            .map(str::to_owned)
    })
}
