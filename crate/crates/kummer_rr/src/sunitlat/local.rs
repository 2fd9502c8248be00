use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fparith::{FFElem, MTData};
use crate::numfield::{
    splitting_from_ladder, IntegralForm, Ladder, PAdicPrime, PElem, PRing, PrimeData, Splitting,
};

/// Unit parts of every basis element at one prime above `p`, so that local
/// tests on `Π b_i^{v_i}·p^k` become ring products.
#[derive(Debug, Clone)]
pub struct PAdicTable {
    pub prime: PrimeData,
    pub pp: PAdicPrime,
    pub ring: PRing,
    pub vals: Vec<i64>,
    pub units: Vec<PElem>,
    /// Unit part of `p`.
    pub eps: PElem,
}

impl PAdicTable {
    /// Resolves filtration levels up to `max_level` (at least the critical level plus one).
    pub fn new(prime: &PrimeData, forms: &[IntegralForm], max_level: usize) -> Result<PAdicTable> {
        let pp = prime
            .padic()
            .ok_or_else(|| Error::InvalidInput(format!("{prime} does not lie above p")))?
            .clone();
        let level = max_level.max(pp.critical_level() + 1);
        let digits = pp.digits_for_level(level + 1);
        let ring = pp.ring(digits)?;
        let mut vals = Vec::with_capacity(forms.len());
        let mut units = Vec::with_capacity(forms.len());
        for f in forms {
            let (v, u) = pp.unit_part(f, digits)?;
            vals.push(v);
            units.push(u);
        }
        let eps = pp.unit_part_of_p(&ring)?;
        Ok(PAdicTable {
            prime: prime.clone(),
            pp,
            ring,
            vals,
            units,
            eps,
        })
    }

    pub fn critical_level(&self) -> usize {
        self.pp.critical_level()
    }

    /// Valuation of `Π b_i^{v_i}·p^k`.
    pub fn valuation(&self, v: &[u64], p_exp: u64) -> i64 {
        let base: i64 = self.vals.iter().zip(v).map(|(a, &e)| a * e as i64).sum();
        base + self.pp.e as i64 * p_exp as i64
    }

    /// Unit part of `Π b_i^{v_i}·p^k`, which represents its `p`-th-power class
    /// when the valuation is divisible by `p`.
    pub fn unit(&self, v: &[u64], p_exp: u64) -> PElem {
        let r = &self.ring;
        let mut acc = r.pow(&self.eps, p_exp);
        for (u, &e) in self.units.iter().zip(v) {
            if e != 0 {
                acc = r.mul(&acc, &r.pow(u, e));
            }
        }
        acc
    }

    /// Ladder on the class of `Π b_i^{v_i}·p^k`; `Stuck(0)` when `p` does not divide the valuation.
    pub fn ladder(&self, v: &[u64], p_exp: u64, target: usize) -> Result<Ladder> {
        if self.valuation(v, p_exp).rem_euclid(self.pp.p as i64) != 0 {
            return Ok(Ladder::Stuck(0));
        }
        self.ring.ladder(&self.unit(v, p_exp), target)
    }

    /// Behaviour of this prime in the Kummer extension generated by the class.
    pub fn splitting(&self, v: &[u64], p_exp: u64) -> Result<Splitting> {
        let crit = self.critical_level();
        Ok(splitting_from_ladder(
            self.ladder(v, p_exp, crit + 1)?,
            crit,
        ))
    }

    pub fn unramified(&self, v: &[u64], p_exp: u64) -> Result<bool> {
        Ok(self.splitting(v, p_exp)? != Splitting::Ramified)
    }

    /// The class contains an element `≡ 1 (mod 𝔭^level)`.
    pub fn one_mod(&self, v: &[u64], p_exp: u64, level: usize) -> Result<bool> {
        Ok(self.ladder(v, p_exp, level)? == Ladder::Reached)
    }
}

/// Valuations and unit-residue logarithms of the basis at the primes above `ℓ₀`.
#[derive(Debug, Clone)]
pub struct Ell0Table {
    pub p: u64,
    pub primes: Vec<PrimeData>,
    /// `ord[prime][i]` modulo `p`.
    pub ord: Vec<Vec<u64>>,
    /// `log[prime][i]`: `log_{ℓ₀}` of the residue of `b_i/ℓ₀^{ord}`.
    pub log: Vec<Vec<u64>>,
    /// `log_{ℓ₀}(p)`.
    pub log_p: u64,
    pub mt: MTData,
}

/// A local datum `(ord, log)` in `F_p × F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrdLog {
    pub ord: u64,
    pub log: u64,
}

impl Ell0Table {
    pub fn new(primes: Vec<PrimeData>, forms: &[IntegralForm], mt: MTData) -> Result<Ell0Table> {
        let p = mt.p;
        let mut ord = Vec::with_capacity(primes.len());
        let mut log = Vec::with_capacity(primes.len());
        for pr in &primes {
            if pr.e != 1 || pr.f != 1 {
                return Err(Error::InvalidInput(format!("{pr} is not of degree one")));
            }
            let mut o = Vec::with_capacity(forms.len());
            let mut l = Vec::with_capacity(forms.len());
            for f in forms {
                let (v, unit) = pr.local_unit(f)?;
                o.push(v.rem_euclid(p as i64) as u64);
                l.push(mt.log_mod_p(unit.coeffs[0])?);
            }
            ord.push(o);
            log.push(l);
        }
        let log_p = mt.log_mod_p(p % mt.ell0)?;
        Ok(Ell0Table {
            p,
            primes,
            ord,
            log,
            log_p,
            mt,
        })
    }

    /// `(ord, log)` of `Π b_i^{v_i}·p^k·ℓ₀^m` at the prime with index `idx`.
    pub fn ord_log(&self, idx: usize, v: &[u64], p_exp: u64, ell0_exp: u64) -> OrdLog {
        let p = self.p;
        let dot = |row: &[u64]| row.iter().zip(v).fold(0, |a, (x, e)| (a + x * e) % p);
        OrdLog {
            ord: (dot(&self.ord[idx]) + ell0_exp) % p,
            log: (dot(&self.log[idx]) + self.log_p * p_exp) % p,
        }
    }

    /// `ζ′_MT·ord + log`, the functional cutting out the Mazur–Tate line.
    pub fn mt_functional(&self, x: OrdLog) -> u64 {
        (self.mt.zeta_mt * x.ord + x.log) % self.p
    }

    /// Image of `μ` at the prime, which labels its `Δ`-orbit.
    pub fn mu_label(&self, idx: usize) -> Option<u64> {
        self.primes[idx]
            .residue_data()
            .and_then(|r| r.mu.as_ref())
            .map(|m| m.coeffs[0])
    }
}

/// `p`-th-power characters of the basis at the primes of `K` above `ℓ₁`.
#[derive(Debug, Clone)]
pub struct Ell1Table {
    pub p: u64,
    pub primes: Vec<PrimeData>,
    /// `chars[prime][i]`.
    pub chars: Vec<Vec<u64>>,
}

fn dlog_mu_p(z: &FFElem, w: &FFElem, p: u64) -> Result<u64> {
    let mut acc = FFElem::one(&w.ctx);
    for e in 0..p {
        if acc == *z {
            return Ok(e);
        }
        acc = acc.mul(w);
    }
    Err(Error::Arithmetic(
        "residue character is not a p-th root of unity".into(),
    ))
}

impl Ell1Table {
    pub fn new(p: u64, primes: Vec<PrimeData>, forms: &[IntegralForm]) -> Result<Ell1Table> {
        let mut chars = Vec::with_capacity(primes.len());
        for pr in &primes {
            let rd = pr
                .residue_data()
                .ok_or_else(|| Error::InvalidInput(format!("{pr} lies above p")))?;
            let order = BigUint::from(pr.q).pow(pr.f) - BigUint::one();
            let exp = &order / BigUint::from(p);
            let mut row = Vec::with_capacity(forms.len());
            for (i, f) in forms.iter().enumerate() {
                let (v, unit) = pr.local_unit(f)?;
                if v != 0 {
                    return Err(Error::Refuted {
                        check: format!("basis element has valuation {v} at a prime above ℓ₁"),
                        row: i,
                        witness: pr.q,
                    });
                }
                row.push(dlog_mu_p(&unit.pow(&exp), &rd.zeta, p)?);
            }
            chars.push(row);
        }
        Ok(Ell1Table { p, primes, chars })
    }

    /// Whether `Π b_i^{v_i}` is a `p`-th power modulo every prime above `ℓ₁`.
    pub fn all_trivial(&self, v: &[u64]) -> bool {
        let p = self.p;
        self.chars
            .iter()
            .all(|row| row.iter().zip(v).fold(0, |a, (x, e)| (a + x * e) % p) == 0)
    }
}
