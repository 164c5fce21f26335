//! Set-intersection queries, two ways.
//!
//! [`index::IntersectionIndex`] answers "do `S_i` and `S_j` intersect?" with a
//! tunable large-set threshold `t`: pairs of large sets are read from a
//! precomputed bit matrix, everything else is answered by scanning the smaller
//! set against a static hash table of the other.
//!
//! [`reduction`] answers the same question through any approximate distance
//! oracle: sets and elements become the two sides of a bipartite graph
//! (optionally with every edge stretched into a path), and a pair of sets
//! intersects iff the oracle's estimate between their vertices falls below a
//! fixed threshold. [`oracles`] provides an exact BFS oracle, a Thorup-Zwick
//! style landmark oracle, and a mock adversary that emits any estimate its
//! declared guarantee allows.

pub mod bench;
pub mod cli;
mod error;
pub mod index;
pub mod oracles;
pub mod reduction;
pub mod setfam;

pub use error::{Error, Result};
pub use index::{IntersectResult, IntersectionIndex, SpaceReport};
pub use oracles::{DistanceOracle, Guarantee};
pub use reduction::{Eps, OracleParams, ReductionGraph};
pub use setfam::SetFamily;
