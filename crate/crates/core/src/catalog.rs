//! Categories bundled with the crate.
//!
//! The choice of test categories is ours: the trivial category, Fibonacci,
//! Ising, the semion model (`z2`), `Z_3` with its standard nondegenerate
//! braiding, and the symmetric `Z_2` (not modular).  Two deliberately broken
//! Fibonacci variants serve as negative fixtures.

use alloc::vec::Vec;

use crate::catdata::{FusionCategoryData, LoadOptions};
use crate::error::Result;

pub const TRIVIAL: &str = include_str!("../data/trivial.json");
pub const FIBONACCI: &str = include_str!("../data/fibonacci.json");
pub const ISING: &str = include_str!("../data/ising.json");
pub const Z2: &str = include_str!("../data/z2.json");
pub const Z3: &str = include_str!("../data/z3.json");
pub const Z2_SYMMETRIC: &str = include_str!("../data/z2_symmetric.json");
pub const BROKEN_PENTAGON: &str = include_str!("../data/broken_pentagon.json");
pub const BROKEN_HEXAGON: &str = include_str!("../data/broken_hexagon.json");

/// `(name, json)` for every coherent bundled category.
pub const SOURCES: &[(&str, &str)] = &[
    ("trivial", TRIVIAL),
    ("fibonacci", FIBONACCI),
    ("ising", ISING),
    ("z2", Z2),
    ("z3", Z3),
    ("z2_symmetric", Z2_SYMMETRIC),
];

/// `(name, json)` for the perturbed fixtures; these fail the coherence checks.
pub const BROKEN: &[(&str, &str)] = &[("broken_pentagon", BROKEN_PENTAGON), ("broken_hexagon", BROKEN_HEXAGON)];

pub fn load(name: &str) -> Option<Result<FusionCategoryData>> {
    SOURCES
        .iter()
        .chain(BROKEN)
        .find(|(n, _)| *n == name)
        .map(|(n, text)| FusionCategoryData::from_json_str(text, n, LoadOptions::default()))
}

fn bundled(text: &str, name: &str) -> FusionCategoryData {
    FusionCategoryData::from_json_str(text, name, LoadOptions::default()).expect("bundled data is coherent")
}

pub fn trivial() -> FusionCategoryData {
    bundled(TRIVIAL, "trivial")
}
pub fn fibonacci() -> FusionCategoryData {
    bundled(FIBONACCI, "fibonacci")
}
pub fn ising() -> FusionCategoryData {
    bundled(ISING, "ising")
}
/// The semion model.
pub fn semion() -> FusionCategoryData {
    bundled(Z2, "z2")
}
pub fn z3() -> FusionCategoryData {
    bundled(Z3, "z3")
}
/// `Z_2` with symmetric braiding; its S-matrix is singular.
pub fn z2_bosonic() -> FusionCategoryData {
    bundled(Z2_SYMMETRIC, "z2_symmetric")
}

/// All coherent bundled categories, modular or not.
pub fn all() -> Vec<FusionCategoryData> {
    SOURCES.iter().map(|(n, t)| bundled(t, n)).collect()
}

/// The bundled modular categories.
pub fn modular() -> Vec<FusionCategoryData> {
    all().into_iter().filter(|c| c.is_modular()).collect()
}
