//! Finite order theory and noncommutative support theory.
//!
//! The crate works entirely with desk-scale, explicitly enumerated
//! structures:
//!
//! * [`order`]: finite posets and bounded lattices, distributivity and
//!   meet-primes.
//! * [`frames`]: ideals, filters, compact elements, prime ideals and prime
//!   lifting, quotient frames, and the Cohen/Barthel verdicts.
//! * [`topo`]: finite spaces, sobriety, spectrality, Hochster duality,
//!   Thomason subsets and the spectrum of a distributive lattice.
//! * [`support`]: open and closed support data and their classifying
//!   criteria.
//! * [`tensys`]: finite rule-based models of monoidal-triangulated
//!   categories, their semiprime ideals, spectra and classification
//!   verifiers.
//! * [`crossed`]: group actions and crossed products of tensor systems.
//! * [`fixtures`]: the named fixture corpus used by the tests and the CLI.

pub mod bits;
pub mod closure;
pub mod crossed;
pub mod error;
pub mod fixtures;
pub mod frames;
pub mod order;
pub mod support;
pub mod tensys;
pub mod topo;

pub use bits::Set;
pub use error::{Error, Result};
pub use order::{FinLattice, FinPoset};
pub use topo::FinSpace;

/// Render a set as `{a,b,c}` using `name` for each member.
pub fn set_name<F>(s: Set, name: F) -> String
where
    F: Fn(usize) -> String,
{
    let parts: Vec<String> = s.iter().map(name).collect();
    format!("{{{}}}", parts.join(","))
}
