//! Explicit Kummer generators and prime-splitting checks for the reducible
//! deformation problem attached to a triple of primes `(p, ℓ₀, ℓ₁)`.
//!
//! The crate is layered bottom-up:
//!
//! - [`fparith`]: prime fields, their extensions, discrete logarithms, `F_p`
//!   linear algebra, the Mazur–Tate derivative and the assumption screen.
//! - [`numfield`]: exact arithmetic in `K = Q(ζ_p, ℓ₁^{1/p})`, primes of `K` and
//!   `Q(ζ_p)`, completions at `ℓ₀` and at `p`, and the Kummer splitting oracle.
//! - [`sunitlat`]: S-unit exponent lattices modulo `p`-th powers, seed-data
//!   ingestion and certification, Galois matrices and isotypic projectors.
//! - [`pipeline`]: Kolyvagin derivatives, the adjustment algorithms and the
//!   final splitting conditions, producing a [`pipeline::PipelineReport`].
//! - [`orbits`]: Borel orbits on lines and planes of trace-zero matrices and the
//!   `n_ℓ₀` classifier.

#![forbid(unsafe_code)]

pub mod error;
pub mod fparith;
pub mod numfield;
pub mod orbits;
pub mod pipeline;
pub mod sunitlat;

pub use error::{Error, Result};
