//! Set families over a small ground set `X = {1, ..., n}` and the tools for
//! studying cross s-union families: predicates, shadow/shade compressions,
//! shifting, exact binomial bounds, and exhaustive search oracles.
//!
//! The crate is `no_std` and only needs `alloc`. IO, timing, threads and the
//! command line live in the `crossunion` companion crate.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod antichain;
pub mod bounds;
pub mod family;
mod lattice;
pub mod search;
pub mod set;
pub mod transforms;

pub use antichain::{max_antichain_in_downset, DownsetError};
pub use bounds::{BoundValue, BoundsError};
pub use family::{FamilyError, FamilyPair, FamilyTriple, SetFamily};
pub use set::{ElementSet, GroundSet, MAX_GROUND};
