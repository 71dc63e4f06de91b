//! Johansson diagrams of Dehn surfaces in 3-manifolds.
//!
//! A diagram is a family of oriented closed curves on a surface, paired by
//! a sister involution. This crate validates diagrams, decides whether they
//! are realizable and filling, computes the fundamental group data of the
//! 3-manifold they describe, and rewrites them by local moves.

pub mod algebra;
pub mod diagram;
pub mod enumerate;
pub mod error;
pub mod format;
pub mod gclass;
pub mod manifold;
pub mod moves;
pub mod report;
pub mod surface;

pub use diagram::{validate, triplets, Diagram, Sign, Slot, Triplet, ValidationReport};
pub use error::{Error, Result};
pub use format::{parse, serialize};
