//! Quasi-Stirling permutations: permutations of `{1,1,...,n,n}` avoiding
//! 1212 and 2121.
//!
//! The crate covers the walk bijection with ordered rooted labeled trees
//! ([`tree`]), an equality-aware pattern matcher ([`pattern`]), exhaustive
//! generators with sharded counting ([`generate`], [`exec`]), exact
//! enumeration formulas ([`formulas`], [`registry`]) and the harness that
//! checks every formula against brute force ([`verify`], [`wilf`]).

pub mod exec;
pub mod formulas;
pub mod generate;
pub mod pattern;
pub mod perm;
pub mod registry;
pub mod tree;
pub mod verify;
pub mod wilf;

pub use exec::Execution;
pub use generate::Universe;
pub use pattern::{Pattern, PatternSet};
pub use perm::{MultisetPerm, SegmentSet, StatRecord};
pub use tree::OrderedTree;
