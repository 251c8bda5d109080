//! Catalog ingestion, the random-element experiment, stored expectations and
//! report output.

pub mod catalog;
pub mod experiment;
pub mod golden;

use std::path::Path;

use serde::Serialize;

use crate::error::Result;

pub use catalog::{builtin_catalog, load_catalog, parse_catalog, Catalog, FieldCatalogEntry, Provenance};
pub use experiment::{sample_experiment, ExperimentReport};
pub use golden::{golden_suite, GoldenReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

pub fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}
