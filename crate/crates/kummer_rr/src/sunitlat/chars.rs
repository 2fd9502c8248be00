use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::fparith::{is_prime, is_pth_power_mod_q, mod_inv, mod_mul, mod_pow, primitive_root};
use crate::numfield::IntegralForm;

/// A prime `q ≡ 1 (mod p)` at which `ℓ₁` is a `p`-th power, so that `q`
/// splits completely in `K`. Its primes in `K` are the points
/// `(ζ ↦ z^k, μ ↦ m₀·z^j)` for `1 ≤ k < p` and `0 ≤ j < p`.
#[derive(Debug, Clone)]
pub struct AuxPrime {
    pub q: u64,
    pub p: u64,
    /// A fixed primitive `p`-th root of unity in `F_q`.
    pub z: u64,
    /// A fixed `p`-th root of `ℓ₁` in `F_q`.
    pub m0: u64,
}

impl AuxPrime {
    pub fn new(p: u64, ell1: u64, q: u64) -> Result<AuxPrime> {
        if !is_prime(q) || q % p != 1 || q == ell1 {
            return Err(Error::InvalidInput(format!(
                "{q} is not an admissible auxiliary prime"
            )));
        }
        if !is_pth_power_mod_q(ell1 as i64, p, q)? {
            return Err(Error::InvalidInput(format!(
                "ℓ₁ = {ell1} is not a {p}-th power mod {q}"
            )));
        }
        let g = primitive_root(q)?;
        let z = mod_pow(g, (q - 1) / p, q);
        let m0 = (1..q)
            .find(|&x| mod_pow(x, p, q) == ell1 % q)
            .ok_or_else(|| Error::Arithmetic(format!("no {p}-th root of {ell1} mod {q}")))?;
        Ok(AuxPrime { q, p, z, m0 })
    }

    /// Number of points `(k, j)`.
    pub fn n_points(&self) -> usize {
        ((self.p - 1) * self.p) as usize
    }

    /// Flat index of the point `(k, j)`, with `k` in `1..p`.
    pub fn point(&self, k: u64, j: u64) -> usize {
        let p = self.p;
        (((k % p) - 1) * p + j % p) as usize
    }

    pub fn point_values(&self, k: u64, j: u64) -> (u64, u64) {
        let r = mod_pow(self.z, k, self.q);
        let m = mod_mul(self.m0, mod_pow(self.z, j, self.q), self.q);
        (r, m)
    }

    /// Discrete logarithm base `z` of an element of `μ_p(F_q)`.
    fn log_z(&self, w: u64) -> Result<u64> {
        let mut acc = 1;
        for e in 0..self.p {
            if acc == w {
                return Ok(e);
            }
            acc = mod_mul(acc, self.z, self.q);
        }
        Err(Error::Arithmetic(format!(
            "{w} is not a {}-th root of unity mod {}",
            self.p, self.q
        )))
    }

    fn reduce(&self, n: &BigInt) -> u64 {
        let q = BigInt::from(self.q);
        (((n % &q) + &q) % &q).to_u64().unwrap_or(0)
    }

    /// Whether `q` divides the denominator of `x`.
    pub fn divides_denominator(&self, x: &IntegralForm) -> bool {
        self.reduce(&x.den) == 0
    }

    /// Coefficients of `x` reduced modulo `q`, with the denominator divided out.
    pub fn reduce_form(&self, x: &IntegralForm) -> Result<Vec<u64>> {
        let q = self.q;
        let den = self.reduce(&x.den);
        if den == 0 {
            return Err(Error::InvalidInput(format!("{q} divides a denominator")));
        }
        let inv = mod_inv(den, q)?;
        Ok(x.num
            .iter()
            .map(|c| mod_mul(self.reduce(c), inv, q))
            .collect())
    }

    /// Residue at the point `(k, j)` of an element given by [`AuxPrime::reduce_form`].
    pub fn residue_reduced(&self, coeffs: &[u64], k: u64, j: u64) -> u64 {
        let q = self.q;
        let p = self.p as usize;
        let (r, m) = self.point_values(k, j);
        let mut total = 0u64;
        let mut mb = 1u64;
        for b in 0..p {
            let mut ra = 1u64;
            for a in 0..p - 1 {
                let c = coeffs[b * (p - 1) + a];
                if c != 0 {
                    total = (total + mod_mul(c, mod_mul(ra, mb, q), q)) % q;
                }
                ra = mod_mul(ra, r, q);
            }
            mb = mod_mul(mb, m, q);
        }
        total
    }

    /// Residue of `x` at the point `(k, j)`; `None` when it vanishes.
    pub fn residue(&self, x: &IntegralForm, k: u64, j: u64) -> Result<Option<u64>> {
        let u = self.residue_reduced(&self.reduce_form(x)?, k, j);
        Ok((u != 0).then_some(u))
    }

    /// The character of a nonzero residue.
    pub fn character_of_residue(&self, u: u64) -> Result<u64> {
        self.log_z(mod_pow(u, (self.q - 1) / self.p, self.q))
    }

    /// The character `u ↦ log_z(u^{(q−1)/p})` at `(k, j)`; `None` when the residue vanishes.
    pub fn character(&self, x: &IntegralForm, k: u64, j: u64) -> Result<Option<u64>> {
        match self.residue(x, k, j)? {
            None => Ok(None),
            Some(u) => Ok(Some(self.character_of_residue(u)?)),
        }
    }
}

/// Characters of every basis element at every point of one auxiliary prime.
#[derive(Debug, Clone)]
pub struct CharTable {
    pub prime: AuxPrime,
    /// `big[point][i]`.
    pub big: Vec<Vec<u64>>,
    /// `small[k−1][i]`.
    pub small: Vec<Vec<u64>>,
}

/// A basis element whose residue vanishes somewhere, which shows it is not an `S`-unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroResidue {
    pub small: bool,
    pub index: usize,
    pub q: u64,
}

impl CharTable {
    pub fn build(
        prime: AuxPrime,
        small: &[IntegralForm],
        big: &[IntegralForm],
    ) -> Result<std::result::Result<CharTable, ZeroResidue>> {
        let p = prime.p;
        let mut big_rows = vec![Vec::with_capacity(big.len()); prime.n_points()];
        for (i, x) in big.iter().enumerate() {
            let coeffs = prime.reduce_form(x)?;
            for k in 1..p {
                for j in 0..p {
                    let u = prime.residue_reduced(&coeffs, k, j);
                    if u == 0 {
                        return Ok(Err(ZeroResidue {
                            small: false,
                            index: i,
                            q: prime.q,
                        }));
                    }
                    big_rows[prime.point(k, j)].push(prime.character_of_residue(u)?);
                }
            }
        }
        let mut small_rows = vec![Vec::with_capacity(small.len()); (p - 1) as usize];
        for (i, x) in small.iter().enumerate() {
            let coeffs = prime.reduce_form(x)?;
            for k in 1..p {
                let u = prime.residue_reduced(&coeffs, k, 0);
                if u == 0 {
                    return Ok(Err(ZeroResidue {
                        small: true,
                        index: i,
                        q: prime.q,
                    }));
                }
                small_rows[(k - 1) as usize].push(prime.character_of_residue(u)?);
            }
        }
        Ok(Ok(CharTable {
            prime,
            big: big_rows,
            small: small_rows,
        }))
    }

    /// `χ_{(k,j)}(v)` for an exponent vector on the big basis.
    pub fn eval_big(&self, point: usize, v: &[u64]) -> u64 {
        let p = self.prime.p;
        self.big[point]
            .iter()
            .zip(v)
            .fold(0, |acc, (c, e)| (acc + c * e) % p)
    }
}

/// The first `count` admissible auxiliary primes above `start`, skipping `excluded`
/// and any prime dividing a denominator in `forms`.
pub fn select_aux_primes(
    p: u64,
    ell1: u64,
    excluded: &[u64],
    forms: &[&IntegralForm],
    start: u64,
    count: usize,
) -> Result<Vec<AuxPrime>> {
    let mut out = Vec::new();
    let mut q = start - start % p + 1;
    while out.len() < count {
        if q > start && is_prime(q) && !excluded.contains(&q) && q != ell1 {
            if let Ok(aux) = AuxPrime::new(p, ell1, q) {
                if !forms.iter().any(|f| aux.divides_denominator(f)) {
                    out.push(aux);
                }
            }
        }
        q = q
            .checked_add(p)
            .ok_or_else(|| Error::Arithmetic("auxiliary prime search overflowed".into()))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{NFElem, TowerField};

    #[test]
    fn characters_are_multiplicative() {
        let field = TowerField::new(5, 11).unwrap();
        let aux = select_aux_primes(5, 11, &[], &[], 10, 1).unwrap().remove(0);
        let a = NFElem::mu(&field).add(&NFElem::from_int(&field, 3));
        let b = NFElem::zeta(&field).add(&NFElem::from_int(&field, 2));
        let ab = a.mul(&b);
        for k in 1..5 {
            for j in 0..5 {
                let ca = aux.character(&a.integral_form(), k, j).unwrap();
                let cb = aux.character(&b.integral_form(), k, j).unwrap();
                let cab = aux.character(&ab.integral_form(), k, j).unwrap();
                if let (Some(x), Some(y), Some(z)) = (ca, cb, cab) {
                    assert_eq!((x + y) % 5, z);
                }
            }
        }
    }

    #[test]
    fn zeta_character_is_its_exponent() {
        let field = TowerField::new(5, 11).unwrap();
        let aux = select_aux_primes(5, 11, &[], &[], 10, 1).unwrap().remove(0);
        let z = NFElem::zeta(&field).integral_form();
        // ζ ↦ z^k, and z^{(q−1)/p} has logarithm (q−1)/p·k.
        for k in 1..5 {
            let expect = (aux.q - 1) / 5 % 5 * k % 5;
            assert_eq!(aux.character(&z, k, 0).unwrap(), Some(expect));
        }
    }
}
