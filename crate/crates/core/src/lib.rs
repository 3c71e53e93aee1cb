//! Exact computations for the genus-one fibrations of the supersingular K3
//! surface of Artin invariant 1 in characteristic 2.

pub mod classify;
pub mod cli;
pub mod genusone;
pub mod lattices;
pub mod niemeier;
pub mod plane;
