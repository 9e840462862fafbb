//! Exact algebra for Weyl-algebra modules in positive characteristic:
//! p-curvatures, p-supports, Bernstein invariants and the checks built on them.
//!
//! The crate is `no_std` (it needs `alloc`). IO, parsing of spec files and the
//! command line live in the `psupp` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arith;
pub mod error;
pub mod expr;
pub mod gb;
pub mod pgeometry;
pub mod verify;
pub mod weyl;
pub mod weylgb;

pub use error::{Error, Result};
