//! Shared generators and independent oracles for the integration tests.

#![allow(dead_code)]

pub mod models;
pub mod suites;
pub mod terms;

use std::path::PathBuf;

pub fn fixture(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}
