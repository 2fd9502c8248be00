use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::modarith::{factor_u64, is_prime, mod_inv, mod_mul};
use crate::error::{Error, Result};

/// The field `F_{q^f} = F_q[x]/(m(x))` for a monic irreducible `m` of degree `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx {
    pub q: u64,
    /// Monic modulus, coefficients low to high, length `f + 1`.
    pub modulus: Vec<u64>,
}

/// Element of a finite field `F_{q^f}`, stored as a reduced polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct FFElem {
    pub ctx: Arc<FieldCtx>,
    /// Coefficients low to high, always of length `f`.
    pub coeffs: Vec<u64>,
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FF{}^{}{:?}", self.ctx.q, self.ctx.degree(), self.coeffs)
    }
}

// Dense polynomial helpers over F_q; vectors are low-to-high and may carry
// trailing zeros until `trim` is applied.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_sub(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + q - y) % q
        })
        .collect();
    trim(out)
}

fn poly_mul(a: &[u64], b: &[u64], q: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    let qq = q as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % qq;
        }
    }
    trim(out.into_iter().map(|v| v as u64).collect())
}

/// Remainder of `a` modulo `m` (any nonzero `m`).
fn poly_rem(a: &[u64], m: &[u64], q: u64) -> Result<Vec<u64>> {
    let m = trim(m.to_vec());
    let Some(&lead) = m.last() else {
        return Err(Error::Arithmetic("polynomial division by zero".into()));
    };
    let lead_inv = mod_inv(lead, q)?;
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = mod_mul(*r.last().unwrap_or(&0), lead_inv, q);
        for (i, &mi) in m.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + q - mod_mul(c, mi, q)) % q;
        }
        r = trim(r);
    }
    Ok(r)
}

fn poly_gcd(a: &[u64], b: &[u64], q: u64) -> Result<Vec<u64>> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, q)?;
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = mod_inv(lead, q)?;
        a.iter_mut().for_each(|c| *c = mod_mul(*c, inv, q));
    }
    Ok(a)
}

/// `base^(q^k) mod m` by repeated `q`-th powering.
fn frobenius_power(base: &[u64], k: usize, m: &[u64], q: u64) -> Result<Vec<u64>> {
    let mut cur = poly_rem(base, m, q)?;
    for _ in 0..k {
        cur = poly_powmod(&cur, &BigUint::from(q), m, q)?;
    }
    Ok(cur)
}

fn poly_powmod(base: &[u64], exp: &BigUint, m: &[u64], q: u64) -> Result<Vec<u64>> {
    let mut result = vec![1u64];
    let mut b = poly_rem(base, m, q)?;
    for i in 0..exp.bits() {
        if exp.bit(i) {
            result = poly_rem(&poly_mul(&result, &b, q), m, q)?;
        }
        b = poly_rem(&poly_mul(&b, &b, q), m, q)?;
    }
    Ok(result)
}

/// Rabin's irreducibility test for a monic polynomial over `F_q`.
pub(crate) fn is_irreducible(m: &[u64], q: u64) -> Result<bool> {
    let m = trim(m.to_vec());
    let n = m.len().saturating_sub(1);
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let x = vec![0u64, 1];
    let full = frobenius_power(&x, n, &m, q)?;
    if !poly_sub(&full, &x, q).is_empty() {
        return Ok(false);
    }
    for r in factor_u64(n as u64) {
        let partial = frobenius_power(&x, n / r as usize, &m, q)?;
        let diff = poly_sub(&partial, &x, q);
        if poly_gcd(&diff, &m, q)?.len() != 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

impl FieldCtx {
    /// Validates `modulus` (monic, irreducible over `F_q`) and builds the field.
    pub fn new(q: u64, modulus: Vec<u64>) -> Result<Arc<FieldCtx>> {
        if !is_prime(q) {
            return Err(Error::NotPrime {
                value: q,
                clause: "finite-field characteristic",
            });
        }
        let modulus: Vec<u64> = trim(modulus.into_iter().map(|c| c % q).collect());
        if modulus.last() != Some(&1) || modulus.len() < 2 {
            return Err(Error::InvalidInput(
                "extension modulus must be monic of degree ≥ 1".into(),
            ));
        }
        if !is_irreducible(&modulus, q)? {
            return Err(Error::InvalidInput(format!(
                "{modulus:?} is reducible over F_{q}"
            )));
        }
        Ok(Arc::new(FieldCtx { q, modulus }))
    }

    /// The prime field `F_q` itself.
    pub fn prime_field(q: u64) -> Result<Arc<FieldCtx>> {
        FieldCtx::new(q, vec![0, 1])
    }

    /// A deterministic choice of `F_{q^f}`: the first monic irreducible of
    /// degree `f` in base-`q` enumeration order of its lower coefficients.
    pub fn with_degree(q: u64, f: usize) -> Result<Arc<FieldCtx>> {
        if f == 1 {
            return FieldCtx::prime_field(q);
        }
        for n in 1u64.. {
            let mut coeffs = Vec::with_capacity(f + 1);
            let mut k = n;
            for _ in 0..f {
                coeffs.push(k % q);
                k /= q;
            }
            if k > 0 {
                break;
            }
            coeffs.push(1);
            if coeffs[0] != 0 && is_irreducible(&coeffs, q)? {
                return Ok(Arc::new(FieldCtx { q, modulus: coeffs }));
            }
        }
        Err(Error::Arithmetic(format!(
            "no irreducible of degree {f} over F_{q}"
        )))
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Number of elements `q^f`.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.q).pow(self.degree() as u32)
    }
}

impl FFElem {
    pub fn from_poly(ctx: &Arc<FieldCtx>, poly: &[u64]) -> Result<FFElem> {
        let reduced = poly_rem(poly, &ctx.modulus, ctx.q)?;
        let mut coeffs = vec![0u64; ctx.degree()];
        coeffs[..reduced.len()].copy_from_slice(&reduced);
        Ok(FFElem {
            ctx: Arc::clone(ctx),
            coeffs,
        })
    }

    pub fn from_int(ctx: &Arc<FieldCtx>, n: i64) -> FFElem {
        let mut coeffs = vec![0u64; ctx.degree()];
        coeffs[0] = n.rem_euclid(ctx.q as i64) as u64;
        FFElem {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    pub fn zero(ctx: &Arc<FieldCtx>) -> FFElem {
        FFElem::from_int(ctx, 0)
    }

    pub fn one(ctx: &Arc<FieldCtx>) -> FFElem {
        FFElem::from_int(ctx, 1)
    }

    /// The class of `x` in `F_q[x]/(m)`.
    pub fn generator(ctx: &Arc<FieldCtx>) -> FFElem {
        FFElem::from_poly(ctx, &[0, 1]).unwrap_or_else(|_| FFElem::zero(ctx))
    }

    /// The element whose coefficient vector is the base-`q` expansion of `n`.
    pub fn from_index(ctx: &Arc<FieldCtx>, mut n: u128) -> FFElem {
        let q = ctx.q as u128;
        let coeffs = (0..ctx.degree())
            .map(|_| {
                let c = (n % q) as u64;
                n /= q;
                c
            })
            .collect();
        FFElem {
            ctx: Arc::clone(ctx),
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 % self.ctx.q && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    fn same_field(&self, o: &FFElem) {
        debug_assert!(Arc::ptr_eq(&self.ctx, &o.ctx) || self.ctx == o.ctx);
    }

    pub fn add(&self, o: &FFElem) -> FFElem {
        self.same_field(o);
        let q = self.ctx.q;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(&a, &b)| (a + b) % q)
            .collect();
        FFElem {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    pub fn sub(&self, o: &FFElem) -> FFElem {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> FFElem {
        let q = self.ctx.q;
        FFElem {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|&a| (q - a) % q).collect(),
        }
    }

    pub fn mul(&self, o: &FFElem) -> FFElem {
        self.same_field(o);
        let prod = poly_mul(&self.coeffs, &o.coeffs, self.ctx.q);
        // The modulus is monic, so reduction cannot fail.
        FFElem::from_poly(&self.ctx, &prod).unwrap_or_else(|_| FFElem::zero(&self.ctx))
    }

    pub fn scale(&self, c: u64) -> FFElem {
        let q = self.ctx.q;
        FFElem {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|&a| mod_mul(a, c % q, q)).collect(),
        }
    }

    pub fn pow(&self, exp: &BigUint) -> FFElem {
        let mut result = FFElem::one(&self.ctx);
        let mut b = self.clone();
        for i in 0..exp.bits() {
            if exp.bit(i) {
                result = result.mul(&b);
            }
            b = b.mul(&b);
        }
        result
    }

    pub fn pow_u64(&self, exp: u64) -> FFElem {
        self.pow(&BigUint::from(exp))
    }

    pub fn inv(&self) -> Result<FFElem> {
        if self.is_zero() {
            return Err(Error::Arithmetic(
                "inverse of zero in a finite field".into(),
            ));
        }
        let e = self.ctx.order() - BigUint::from(2u8);
        Ok(self.pow(&e))
    }

    /// The Frobenius image `x^q`.
    pub fn frobenius(&self) -> FFElem {
        self.pow_u64(self.ctx.q)
    }

    /// Exponent test for being a `p`-th power, valid when `p | q^f − 1`.
    pub fn is_pth_power(&self, p: u64) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::Arithmetic("p-th power test on zero".into()));
        }
        let n = self.ctx.order() - BigUint::one();
        if !(&n % p).is_zero() {
            return Err(Error::InvalidInput(format!(
                "{p} does not divide the order of F_{}^{}×",
                self.ctx.q,
                self.ctx.degree()
            )));
        }
        Ok(self.pow(&(n / p)).is_one())
    }

    /// A `p`-th root of `self`, or `None` when none exists.
    ///
    /// Uses the Adleman–Manders–Miller reduction to a discrete logarithm in the
    /// `p`-Sylow subgroup; `p` must be prime.
    pub fn pth_root(&self, p: u64) -> Result<Option<FFElem>> {
        if self.is_zero() {
            return Ok(Some(self.clone()));
        }
        let n = self.ctx.order() - BigUint::one();
        if !(&n % p).is_zero() {
            // x ↦ x^p is a bijection; invert the exponent modulo n.
            let e = modinv_big(&BigUint::from(p), &n)?;
            return Ok(Some(self.pow(&e)));
        }
        if !self.is_pth_power(p)? {
            return Ok(None);
        }
        let mut s = 0u32;
        let mut t = n.clone();
        while (&t % p).is_zero() {
            t /= p;
            s += 1;
        }
        // A generator of the p-Sylow subgroup: ρ^t for a non-p-th-power ρ.
        let nonresidue = (2u128..)
            .map(|k| FFElem::from_index(&self.ctx, k))
            .find(|z| !z.is_zero() && !z.is_pth_power(p).unwrap_or(true))
            .ok_or_else(|| Error::Arithmetic("no p-th power nonresidue".into()))?;
        let g = nonresidue.pow(&t);
        let alpha = modinv_big(&BigUint::from(p), &t)?;
        let pa_minus_1 = BigUint::from(p) * &alpha - BigUint::one();
        let target = self.pow(&pa_minus_1);
        let e = sylow_log(&g, &target, p, s)?;
        if e % p as u128 != 0 {
            return Err(Error::Arithmetic(
                "p-Sylow logarithm not divisible by p".into(),
            ));
        }
        let pe = BigUint::from(p).pow(s);
        let neg = (&pe - BigUint::from(e / p as u128) % &pe) % &pe;
        let root = self.pow(&alpha).mul(&g.pow(&neg));
        Ok(Some(root))
    }
}

fn modinv_big(a: &BigUint, m: &BigUint) -> Result<BigUint> {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let a = BigInt::from(a.clone());
    let m_i = BigInt::from(m.clone());
    let e = a.extended_gcd(&m_i);
    if !e.gcd.is_one() {
        return Err(Error::Arithmetic("non-invertible exponent".into()));
    }
    Ok(e.x.mod_floor(&m_i).to_biguint().unwrap_or_default())
}

/// Discrete logarithm of `h` to the base `g` of order `p^s`, digit by digit.
fn sylow_log(g: &FFElem, h: &FFElem, p: u64, s: u32) -> Result<u128> {
    let pb = BigUint::from(p);
    let gamma = g.pow(&pb.pow(s.saturating_sub(1)));
    let ginv = g.inv()?;
    let mut x: u128 = 0;
    let mut pk: u128 = 1;
    for k in 0..s {
        let hk = h.mul(&ginv.pow(&BigUint::from(x))).pow(&pb.pow(s - 1 - k));
        let d = (0..p)
            .find(|&d| gamma.pow_u64(d) == hk)
            .ok_or_else(|| Error::Arithmetic("element outside the p-Sylow subgroup".into()))?;
        x += d as u128 * pk;
        pk *= p as u128;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility() {
        assert!(is_irreducible(&[1, 1, 1], 2).unwrap());
        assert!(!is_irreducible(&[1, 0, 1], 2).unwrap());
        // x^4+x^3+x^2+x+1 is irreducible over F_2 (ord_5(2) = 4) and over F_3.
        assert!(is_irreducible(&[1, 1, 1, 1, 1], 2).unwrap());
        assert!(is_irreducible(&[1, 1, 1, 1, 1], 3).unwrap());
        assert!(!is_irreducible(&[1, 1, 1, 1, 1], 11).unwrap());
        assert!(FieldCtx::new(5, vec![1, 0, 1]).is_err());
        assert!(FieldCtx::new(7, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn field_axioms_and_frobenius() {
        let ctx = FieldCtx::with_degree(7, 3).unwrap();
        let n = 343u128;
        for a in (0..n).step_by(17) {
            let x = FFElem::from_index(&ctx, a);
            for b in (0..n).step_by(29) {
                let y = FFElem::from_index(&ctx, b);
                assert_eq!(x.mul(&y), y.mul(&x));
                assert_eq!(x.add(&y).frobenius(), x.frobenius().add(&y.frobenius()));
                if !y.is_zero() {
                    assert!(y.mul(&y.inv().unwrap()).is_one());
                }
            }
        }
    }

    #[test]
    fn pth_roots_exist_exactly_for_pth_powers() {
        let ctx = FieldCtx::with_degree(11, 2).unwrap();
        for a in 1..121u128 {
            let x = FFElem::from_index(&ctx, a);
            let brute = (1..121u128).any(|b| FFElem::from_index(&ctx, b).pow_u64(5) == x);
            assert_eq!(x.is_pth_power(5).unwrap(), brute);
            match x.pth_root(5).unwrap() {
                Some(r) => assert_eq!(r.pow_u64(5), x),
                None => assert!(!brute),
            }
        }
    }
}
