//! The shipped coset systems.

pub mod lamplighter;
pub mod lattice;
pub mod numberfield;
pub mod rational;
