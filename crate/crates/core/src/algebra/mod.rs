//! Group presentations of diagrams and exact abelian invariants.

pub mod coset;
pub mod matrix;
pub mod presentation;

pub use coset::{coset_enumeration, CosetResult};
pub use matrix::{smith_normal_form, AbelianInvariants, IntMatrix};
pub use presentation::{abelianization, diagram_group, manifold_group, surface_group, z2_cover_exists, GroupPresentation, Letter, Word};
