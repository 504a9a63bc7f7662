//! Single-change covering designs: construction, verification, and search.
//!
//! A single-change covering design arranges blocks of size `k` over a
//! `v`-set so that consecutive blocks differ by exactly one element and
//! every pair of elements appears in some block; circular variants also
//! make the last and first blocks adjacent. Such lists visit all pairs
//! while changing as little as possible between steps, which is what makes
//! them useful for pairwise processing under a small working set.
//!
//! The crate provides:
//!
//! - [`design`]: the core types and transforms;
//! - [`verify`]: bounds, coverage multiplicities, excess, and the
//!   tight/economical classification;
//! - [`expansion`]: expansion-set discovery via exact cover;
//! - [`construct`]: recursive constructions (one- and two-point
//!   extensions, linear joins, disjoint-capable builds, circular joins);
//! - [`difference`]: the cyclic difference-method family;
//! - [`search`]: a bounded exhaustive backtracking oracle;
//! - [`catalog`]: a library of known designs, verified on load;
//! - [`textio`]: the plain-text design file format.

pub mod catalog;
pub mod construct;
pub mod design;
pub mod difference;
pub mod expansion;
pub mod search;
pub mod textio;
pub mod verify;

pub use design::{Design, Kind, Label};
