//! Exact arithmetic in the tower `Q ⊂ Q(ζ_p) ⊂ K = Q(ζ_p, ℓ₁^{1/p})`, prime
//! decomposition, residues and valuations through completion embeddings, and
//! the Kummer splitting oracle.

mod element;
mod padic;
mod primes;
mod ratlin;
mod unram;

pub use element::{
    format_rational, parse_rational, CoeffMatrix, FieldTag, IntegralForm, NFElem, TowerField,
};
pub use padic::{tame_pth_root, Ladder, PAdicPrime, PElem, PRing};
pub use primes::{
    is_pth_power_mod_prime, kummer_splitting, local_congruence_tests, primes_above,
    reduce_mod_prime, splitting_from_ladder, unit_residue, valuation_at, LocalMode, PrimeData,
    PrimeKind, ResidueData, Splitting, DEFAULT_PRECISION, MAX_PRECISION,
};
pub use ratlin::solve_rational;
pub use unram::{v_q, UElem, UnramRing};
