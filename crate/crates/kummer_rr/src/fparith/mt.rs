use serde::{Deserialize, Serialize};

use super::dlog::DlogTable;
use super::modarith::{is_prime, mod_inv, mod_mul, mod_pow, primitive_root};
use crate::error::{Error, Result};

/// The three primes defining one instance of the problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TripleParams {
    pub p: u64,
    pub ell0: u64,
    pub ell1: u64,
}

impl TripleParams {
    pub fn new(p: u64, ell0: u64, ell1: u64) -> TripleParams {
        TripleParams { p, ell0, ell1 }
    }
}

impl std::fmt::Display for TripleParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.ell0, self.ell1)
    }
}

/// How `p` ramifies in `K = Q(ζ_p, ℓ₁^{1/p})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ramification {
    Tame,
    Wild,
}

impl std::fmt::Display for Ramification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ramification::Tame => "tame",
            Ramification::Wild => "wild",
        })
    }
}

/// Per-clause outcome of the assumption screen.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub params: TripleParams,
    /// `p ≥ 5` and the three primes are distinct.
    pub shape: bool,
    /// `ℓ₀ ≡ 1 (mod p)`.
    pub clause1: bool,
    /// `ℓ₁ ≢ 0, ±1 (mod p)`.
    pub clause2: bool,
    /// `ℓ₁` is a `p`-th power modulo `ℓ₀`.
    pub clause3: bool,
    /// Uniqueness of the Eisenstein-congruent cusp form, tested as `ζ′_MT ≠ 0`.
    pub clause4: bool,
    /// `ζ′_MT` for the smallest primitive root modulo `ℓ₀`, when clause 1 holds.
    pub zeta_mt: Option<u64>,
    pub generator: Option<u64>,
    pub holds: bool,
}

impl AssumptionReport {
    /// Names of the clauses that fail.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.shape {
            out.push("shape (p ≥ 5, distinct primes)");
        }
        if !self.clause1 {
            out.push("clause (1): ℓ₀ ≡ 1 mod p");
        }
        if !self.clause2 {
            out.push("clause (2): ℓ₁ ≢ 0, ±1 mod p");
        }
        if !self.clause3 {
            out.push("clause (3): ℓ₁ is a p-th power mod ℓ₀");
        }
        if !self.clause4 {
            out.push("clause (4): ζ′_MT ≠ 0");
        }
        out
    }
}

/// Screens a triple against the running assumptions.
///
/// Non-prime inputs are rejected with an error naming the offending slot;
/// every other failure is reported clause by clause.
pub fn check_assumptions(params: TripleParams) -> Result<AssumptionReport> {
    let TripleParams { p, ell0, ell1 } = params;
    for (value, clause) in [(p, "p"), (ell0, "ℓ₀"), (ell1, "ℓ₁")] {
        if !is_prime(value) {
            return Err(Error::NotPrime { value, clause });
        }
    }
    let shape = p >= 5 && p != ell0 && p != ell1 && ell0 != ell1;
    let clause1 = ell0 % p == 1;
    let r = ell1 % p;
    let clause2 = r != 0 && r != 1 && r != p - 1;
    let clause3 = clause1 && ell1 % ell0 != 0 && mod_pow(ell1, (ell0 - 1) / p, ell0) == 1;
    let (zeta_mt, generator) = if clause1 && p >= 5 {
        let g = primitive_root(ell0)?;
        (Some(mazur_tate_derivative(p, ell0, g)?), Some(g))
    } else {
        (None, None)
    };
    let clause4 = zeta_mt.is_some_and(|z| z != 0);
    Ok(AssumptionReport {
        params,
        shape,
        clause1,
        clause2,
        clause3,
        clause4,
        zeta_mt,
        generator,
        holds: shape && clause1 && clause2 && clause3 && clause4,
    })
}

/// `Tame` iff `ℓ₁^{p−1} ≡ 1 (mod p²)`.
pub fn tame_or_wild(p: u64, ell1: u64) -> Result<Ramification> {
    if !is_prime(p) {
        return Err(Error::NotPrime {
            value: p,
            clause: "p",
        });
    }
    if ell1.is_multiple_of(p) {
        return Err(Error::InvalidInput(format!("{p} divides ℓ₁ = {ell1}")));
    }
    let p2 = p * p;
    Ok(if mod_pow(ell1 % p2, p - 1, p2) == 1 {
        Ramification::Tame
    } else {
        Ramification::Wild
    })
}

/// `B₂(x) = x² − x + 1/6` evaluated in `F_p` (`p ≥ 5`).
pub fn bernoulli2_mod_p(x: i64, p: u64) -> Result<u64> {
    let xm = x.rem_euclid(p as i64) as u64;
    let sixth = mod_inv(6 % p, p)?;
    Ok((mod_mul(xm, xm, p) + p - xm + sixth) % p)
}

/// `ζ′_MT = ½ Σ_{i=1}^{ℓ₀−1} B₂(i)·log_g(i)` in `F_p`.
///
/// Changing the generator `g` to `g^t` multiplies the result by `t^{−1}`.
pub fn mazur_tate_derivative(p: u64, ell0: u64, generator: u64) -> Result<u64> {
    if ell0 % p != 1 {
        return Err(Error::InvalidInput(format!("ℓ₀ = {ell0} is not 1 mod {p}")));
    }
    let table = DlogTable::new(ell0, generator)?;
    mazur_tate_from_table(p, &table)
}

fn mazur_tate_from_table(p: u64, table: &DlogTable) -> Result<u64> {
    let mut acc = 0u64;
    for i in 1..table.q {
        let b = bernoulli2_mod_p(i as i64, p)?;
        let l = table.log(i)? % p;
        acc = (acc + mod_mul(b, l, p)) % p;
    }
    Ok(mod_mul(acc, mod_inv(2, p)?, p))
}

/// The Mazur–Tate data attached to `(p, ℓ₀)`: the derivative, the generator
/// used for `log_{ℓ₀}`, and the discrete-log table.
#[derive(Debug, Clone)]
pub struct MTData {
    pub p: u64,
    pub ell0: u64,
    pub zeta_mt: u64,
    pub generator: u64,
    pub log_table: DlogTable,
}

impl MTData {
    /// Uses the smallest primitive root modulo `ℓ₀` as the generator.
    pub fn new(p: u64, ell0: u64) -> Result<MTData> {
        MTData::with_generator(p, ell0, primitive_root(ell0)?)
    }

    pub fn with_generator(p: u64, ell0: u64, generator: u64) -> Result<MTData> {
        if ell0 % p != 1 {
            return Err(Error::InvalidInput(format!("ℓ₀ = {ell0} is not 1 mod {p}")));
        }
        let log_table = DlogTable::new(ell0, generator)?;
        let zeta_mt = mazur_tate_from_table(p, &log_table)?;
        Ok(MTData {
            p,
            ell0,
            zeta_mt,
            generator,
            log_table,
        })
    }

    /// `log_{ℓ₀}(x)` reduced to `F_p`.
    pub fn log_mod_p(&self, x: u64) -> Result<u64> {
        Ok(self.log_table.log(x)? % self.p)
    }

    /// The functional `y ↦ ζ′_MT·ord(y) + log_{ℓ₀}(unit residue of y)` in `F_p`.
    pub fn evaluate(&self, ord: i64, unit_residue: u64) -> Result<u64> {
        let ord = ord.rem_euclid(self.p as i64) as u64;
        Ok((mod_mul(self.zeta_mt, ord, self.p) + self.log_mod_p(unit_residue)?) % self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assumption_examples() {
        let r = check_assumptions(TripleParams::new(5, 11, 23)).unwrap();
        assert!(r.holds, "{:?}", r.failures());
        let r = check_assumptions(TripleParams::new(5, 11, 101)).unwrap();
        assert!(!r.clause2 && !r.holds);
        let r = check_assumptions(TripleParams::new(5, 31, 2)).unwrap();
        assert!(!r.clause3 && r.clause2 && r.clause1);
        assert!(matches!(
            check_assumptions(TripleParams::new(5, 12, 23)),
            Err(Error::NotPrime { value: 12, .. })
        ));
    }

    #[test]
    fn tame_wild_examples() {
        assert_eq!(tame_or_wild(5, 23).unwrap(), Ramification::Wild);
        assert_eq!(tame_or_wild(5, 43).unwrap(), Ramification::Tame);
        assert_eq!(tame_or_wild(5, 151).unwrap(), Ramification::Tame);
        assert!(tame_or_wild(5, 25).is_err());
    }

    #[test]
    fn bernoulli_constant_term() {
        assert_eq!(bernoulli2_mod_p(0, 5).unwrap(), mod_inv(6, 5).unwrap());
        assert_eq!(bernoulli2_mod_p(0, 7).unwrap(), 6);
    }

    #[test]
    fn functional_on_ell0_is_zeta() {
        let mt = MTData::new(5, 11).unwrap();
        assert_eq!(mt.evaluate(1, 1).unwrap(), mt.zeta_mt);
        assert_ne!(mt.zeta_mt, 0);
    }
}
