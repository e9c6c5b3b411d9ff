//! Finite permutation group engine and theorem verification harness.
//!
//! The crate has two halves. The engine half builds small permutation
//! groups (standard families, products, semidirect products, quotients,
//! file input), computes their subgroup lattices and structural
//! invariants, and decides group-class membership (soluble, nilpotent,
//! supersoluble, `wU`, `vU`, Sylow towers, `p`-closure, ...) together
//! with permutability predicates between subgroups. The harness half
//! enumerates factorizations `G = AB` over a catalog of groups, filters
//! them by msp-permutability, and verifies a fixed family of factorized
//! group theorems, emitting machine-readable reports in which the set of
//! violations is expected to be empty.

pub mod arith;
pub mod classes;
pub mod construct;
pub mod error;
pub mod group;
pub mod harness;
pub mod perm;
pub mod permutability;
pub mod structure;
pub mod sylow;

pub use error::{Error, Result};
pub use group::Group;
pub use perm::{parse_cycles, Perm};
