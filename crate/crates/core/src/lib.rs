//! Skeletal modular tensor categories, fusion-tree evaluation of planar string
//! diagrams, dual bases of Hom spaces, internal algebra objects and the
//! permutation-action algebras `A`, `B`, `C` with the isomorphism `f: A → B`.
//!
//! Everything here is `no_std` + `alloc`; file IO and the command line live in
//! the `mtcperm` crate.
#![no_std]

extern crate alloc;

pub mod algebra;
pub mod catalog;
pub mod catdata;
pub mod dualbases;
pub mod error;
pub mod permutation;
pub mod evaluator;
pub mod report;

pub use catdata::{DeligneCategoryData, FusionCategoryData, LoadOptions};
pub use error::{Error, Result};

pub use num_complex::Complex64 as C64;

/// Dense complex matrix used for all blocks.
pub type Mat = nalgebra::DMatrix<C64>;

#[inline]
pub const fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
