//! S-unit exponent lattices modulo `p`-th powers: seed-data ingestion,
//! Galois matrices, isotypic projectors, probabilistic certification, local
//! tables at the primes the pipeline inspects, and the line searches for `c`
//! and `a₀`.

mod certify;
mod chars;
mod lattice;
mod local;
mod search;
mod seed;

pub use certify::{certify_seed, CertReport, Certified, DEFAULT_TRIALS, MIN_SAMPLED_PRIMES};
pub use chars::{select_aux_primes, AuxPrime, CharTable, ZeroResidue};
pub use lattice::{
    expected_dimensions, isotypic_projector, kolyvagin_operator, GaloisGen, SUnitLattice, SUnitVec,
};
pub use local::{Ell0Table, Ell1Table, OrdLog, PAdicTable};
pub use search::{find_c_and_a0, isotypic_basis, lines_of, solve_by_characters, BaseLines};
pub use seed::{SeedData, SCHEMA_VERSION};
