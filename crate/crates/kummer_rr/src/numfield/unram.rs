//! Truncated unramified extensions `(Z/q^n)[y]/(G)` of `Z_q`, used to embed
//! `K` into its completions at primes not dividing `p`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fparith::{FFElem, FieldCtx};

/// `(Z/q^prec)[y]/(G)` where `G` is the integer lift of the residue field's
/// defining polynomial.
#[derive(Debug, Clone)]
pub struct UnramRing {
    pub q: u64,
    pub prec: u32,
    pub modulus: BigInt,
    /// Monic `G`, lowest degree first, length `f + 1`.
    g: Vec<BigInt>,
    pub ctx: Arc<FieldCtx>,
}

pub type UElem = Vec<BigInt>;

impl UnramRing {
    pub fn new(ctx: &Arc<FieldCtx>, prec: u32) -> UnramRing {
        let q = ctx.q;
        UnramRing {
            q,
            prec,
            modulus: BigInt::from(q).pow(prec),
            g: ctx.modulus.iter().map(|&c| BigInt::from(c)).collect(),
            ctx: ctx.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        self.g.len() - 1
    }

    fn reduce_coeff(&self, c: &BigInt) -> BigInt {
        c.mod_floor(&self.modulus)
    }

    pub fn from_int(&self, n: &BigInt) -> UElem {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[0] = self.reduce_coeff(n);
        v
    }

    pub fn one(&self) -> UElem {
        self.from_int(&BigInt::one())
    }

    pub fn lift(&self, x: &FFElem) -> UElem {
        let mut v = vec![BigInt::zero(); self.degree()];
        for (i, &c) in x.coeffs.iter().enumerate() {
            v[i] = BigInt::from(c);
        }
        v
    }

    pub fn to_residue(&self, x: &UElem) -> Result<FFElem> {
        let q = BigInt::from(self.q);
        let coeffs: Vec<u64> = x
            .iter()
            .map(|c| c.mod_floor(&q).to_u64().unwrap_or(0))
            .collect();
        FFElem::from_poly(&self.ctx, &coeffs)
    }

    pub fn add(&self, a: &UElem, b: &UElem) -> UElem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.reduce_coeff(&(x + y)))
            .collect()
    }

    pub fn sub(&self, a: &UElem, b: &UElem) -> UElem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.reduce_coeff(&(x - y)))
            .collect()
    }

    pub fn scale(&self, a: &UElem, c: &BigInt) -> UElem {
        a.iter().map(|x| self.reduce_coeff(&(x * c))).collect()
    }

    pub fn mul(&self, a: &UElem, b: &UElem) -> UElem {
        let f = self.degree();
        if f == 1 {
            return vec![self.reduce_coeff(&(&a[0] * &b[0]))];
        }
        let mut prod = vec![BigInt::zero(); 2 * f - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] += x * y;
            }
        }
        for k in (f..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for i in 0..f {
                prod[k - f + i] -= &c * &self.g[i];
            }
        }
        prod.truncate(f);
        prod.iter().map(|c| self.reduce_coeff(c)).collect()
    }

    pub fn pow(&self, a: &UElem, mut e: u64) -> UElem {
        let mut result = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        result
    }

    /// Inverse of a unit by Newton iteration from the residue-field inverse.
    pub fn inv(&self, a: &UElem) -> Result<UElem> {
        let r = self.to_residue(a)?;
        let mut y = self.lift(&r.inv()?);
        let two = self.from_int(&BigInt::from(2));
        let mut correct = 1u32;
        while correct < self.prec {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            correct *= 2;
        }
        Ok(y)
    }

    /// Evaluates an integer polynomial (lowest degree first) at `x`.
    pub fn eval_poly(&self, poly: &[BigInt], x: &UElem) -> UElem {
        let mut acc = vec![BigInt::zero(); self.degree()];
        for c in poly.iter().rev() {
            acc = self.mul(&acc, x);
            acc[0] = self.reduce_coeff(&(&acc[0] + c));
        }
        acc
    }

    /// Newton lift of a simple root `r0` of `poly` from the residue field.
    pub fn hensel_root(&self, poly: &[BigInt], r0: &FFElem) -> Result<UElem> {
        let deriv: Vec<BigInt> = poly
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect();
        let mut x = self.lift(r0);
        if !self.to_residue(&self.eval_poly(poly, &x))?.is_zero() {
            return Err(Error::Arithmetic("Hensel seed is not a root".into()));
        }
        let mut correct = 1u32;
        while correct < self.prec {
            let fx = self.eval_poly(poly, &x);
            let dfx = self.eval_poly(&deriv, &x);
            let step = self.mul(&fx, &self.inv(&dfx)?);
            x = self.sub(&x, &step);
            correct *= 2;
        }
        Ok(x)
    }

    /// `q`-adic valuation of an element (minimum over coordinates), or
    /// `None` when it vanishes to the working precision.
    pub fn valuation(&self, x: &UElem) -> Option<u32> {
        x.iter()
            .filter(|c| !c.is_zero())
            .map(|c| v_q(c, self.q))
            .min()
    }

    /// Divides every coordinate by `q^k` (they must be divisible).
    pub fn div_q_pow(&self, x: &UElem, k: u32) -> UElem {
        let d = BigInt::from(self.q).pow(k);
        x.iter().map(|c| c / &d).collect()
    }
}

/// Exponent of `q` in a nonzero integer.
pub fn v_q(n: &BigInt, q: u64) -> u32 {
    let qb = BigInt::from(q);
    let mut n = n.abs();
    let mut v = 0;
    if n.is_zero() {
        return u32::MAX;
    }
    loop {
        let (d, r) = n.div_rem(&qb);
        if !r.is_zero() {
            return v;
        }
        n = d;
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hensel_lifts_fifth_root_of_unity() {
        let ctx = FieldCtx::prime_field(11).unwrap();
        let ring = UnramRing::new(&ctx, 20);
        let phi: Vec<BigInt> = vec![1, 1, 1, 1, 1].into_iter().map(BigInt::from).collect();
        let r0 = FFElem::from_int(&ctx, 3);
        let r = ring.hensel_root(&phi, &r0).unwrap();
        assert!(ring.eval_poly(&phi, &r).iter().all(|c| c.is_zero()));
        assert_eq!(ring.pow(&r, 5), ring.one());
    }

    #[test]
    fn unramified_quartic_extension() {
        let ctx = FieldCtx::with_degree(3, 4).unwrap();
        let ring = UnramRing::new(&ctx, 10);
        // A primitive fifth root of unity exists in F_81.
        let z = (2u128..)
            .map(|k| FFElem::from_index(&ctx, k).pow_u64(16))
            .find(|z| !z.is_one())
            .unwrap();
        let phi: Vec<BigInt> = vec![1, 1, 1, 1, 1].into_iter().map(BigInt::from).collect();
        let r = ring.hensel_root(&phi, &z).unwrap();
        assert_eq!(ring.pow(&r, 5), ring.one());
        let inv = ring.inv(&r).unwrap();
        assert_eq!(ring.mul(&r, &inv), ring.one());
        assert_eq!(v_q(&BigInt::from(54), 3), 3);
    }
}
