use std::collections::HashMap;

use super::modarith::{factor_u64, is_prime, mod_inv, mod_mul, mod_pow};
use crate::error::{Error, Result};

/// Baby-step/giant-step table for discrete logarithms in `F_q^×` to a fixed
/// generator. Build once per `(q, g)` and reuse for many queries.
#[derive(Debug, Clone)]
pub struct DlogTable {
    pub q: u64,
    pub g: u64,
    step: u64,
    baby: HashMap<u64, u64>,
    giant: u64,
}

impl DlogTable {
    /// Builds the table, checking that `q` is prime and `g` generates `F_q^×`.
    pub fn new(q: u64, g: u64) -> Result<DlogTable> {
        if !is_prime(q) {
            return Err(Error::NotPrime {
                value: q,
                clause: "discrete-log modulus",
            });
        }
        let g = g % q;
        let generates = g != 0
            && factor_u64(q - 1)
                .iter()
                .all(|&r| mod_pow(g, (q - 1) / r, q) != 1);
        if !generates {
            return Err(Error::InvalidInput(format!(
                "{g} does not generate F_{q}^×"
            )));
        }
        let n = q - 1;
        let step = (n as f64).sqrt().ceil() as u64 + 1;
        let mut baby = HashMap::with_capacity(step as usize);
        let mut cur = 1u64;
        for j in 0..step {
            baby.entry(cur).or_insert(j);
            cur = mod_mul(cur, g, q);
        }
        let giant = mod_inv(mod_pow(g, step, q), q)?;
        Ok(DlogTable {
            q,
            g,
            step,
            baby,
            giant,
        })
    }

    /// Returns `e ∈ [0, q−1)` with `g^e = x`.
    pub fn log(&self, x: u64) -> Result<u64> {
        let x = x % self.q;
        if x == 0 {
            return Err(Error::Arithmetic(format!(
                "discrete log of 0 modulo {}",
                self.q
            )));
        }
        let mut gamma = x;
        for i in 0..=self.step {
            if let Some(&j) = self.baby.get(&gamma) {
                return Ok((i * self.step + j) % (self.q - 1));
            }
            gamma = mod_mul(gamma, self.giant, self.q);
        }
        Err(Error::Arithmetic(format!(
            "no discrete log of {x} to base {} modulo {}",
            self.g, self.q
        )))
    }
}

/// One-shot discrete logarithm `log_g(x)` in `F_q^×`.
pub fn discrete_log(q: u64, g: u64, x: u64) -> Result<u64> {
    DlogTable::new(q, g)?.log(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_log(q: u64, g: u64, x: u64) -> u64 {
        (0..q - 1).find(|&e| mod_pow(g, e, q) == x % q).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(discrete_log(11, 2, 10).unwrap(), 5);
        assert_eq!(discrete_log(11, 2, 7).unwrap(), 7);
        assert_eq!(discrete_log(101, 2, 1).unwrap(), 0);
        assert!(discrete_log(11, 2, 0).is_err());
        assert!(discrete_log(11, 3, 5).is_err());
    }

    #[test]
    fn matches_brute_force() {
        for &(q, g) in &[(11u64, 2u64), (41, 6), (61, 2), (71, 7), (1009, 11)] {
            let t = DlogTable::new(q, g).unwrap();
            for x in 1..q.min(400) {
                assert_eq!(t.log(x).unwrap(), brute_log(q, g, x));
            }
        }
    }
}
