//! Computational laboratory for groups with an adjoined zero.
//!
//! The crate estimates ends of finitely generated groups, tests translational
//! almost-stability of subsets, searches for electoral-flexibility witnesses,
//! builds stable partitions of locally finite groups, and classifies
//! shift-continuous topologies on `G⁰` given by neighborhood bases at zero.
//! Every statement about an infinite group is checked on explicit finite
//! windows, and every verdict carries the scale at which it was obtained.

pub mod cayley;
pub mod electoral;
pub mod ends;
pub mod error;
pub mod group;
pub mod stability;
pub mod subset;
pub mod topology;
pub mod window;

pub use error::{Error, Result};
pub use group::{Element, CATALOG, DEFAULT_CHAIN_DEPTH, FlexibilityClass, GroupKind, GroupOracle};
