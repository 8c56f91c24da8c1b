//! Exact-arithmetic toolkit for rational self-maps of the projective line.
//!
//! The crate provides: places and valuations of Q and F_p(t) (`exactalg`),
//! binary-form algebra with resultants, discriminants and radicals (`forms`),
//! critical loci, differential discriminants and reduction tests for rational
//! maps (`ratmap`), cross-ratio moduli of point configurations and S-unit
//! machinery (`divisors`), the degree-4 elliptic duplication correspondence
//! (`lattes`), and a deterministic height-bounded census with a CLI front end
//! (`census`, `parse`).

pub mod census;
pub mod divisors;
pub mod exactalg;
pub mod factor;
pub mod forms;
pub mod fppoly;
pub mod lattes;
pub mod parse;
pub mod ratmap;
pub mod ring;

pub use exactalg::{BaseField, FieldElement, Place, ResidueElement, Valuation};
