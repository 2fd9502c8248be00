//! Prime-field and finite-field arithmetic, discrete logarithms, `F_p` linear
//! algebra, and the number-theoretic screens applied to a triple before any
//! field arithmetic happens.

mod dlog;
mod ff;
mod linalg;
mod modarith;
mod mt;

pub use dlog::{discrete_log, DlogTable};
pub use ff::{FFElem, FieldCtx};
pub use linalg::FpMatrix;
pub use modarith::{
    factor_u64, is_prime, is_pth_power_mod_q, mod_inv, mod_mul, mod_pow, multiplicative_order,
    primitive_root, Fp,
};
pub use mt::{
    bernoulli2_mod_p, check_assumptions, mazur_tate_derivative, tame_or_wild, AssumptionReport,
    MTData, Ramification, TripleParams,
};
