//! Truncated completions of `Q(ζ_p)` and `K` at primes above `p`.
//!
//! Every completion used here is totally ramified over `Q_p`, so it is
//! `Z_p[π]/(E(π))` for an Eisenstein polynomial `E` of degree `e`; elements are
//! stored as `π`-coordinates modulo `p^digits`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::element::{IntegralForm, NFElem, TowerField};
use super::ratlin::solve_rational;
use super::unram::v_q;
use crate::error::{Error, Result};
use crate::fparith::{tame_or_wild, Ramification};

/// How `μ` embeds into the completion.
#[derive(Debug, Clone)]
enum MuImage {
    /// Completion of `Q(ζ_p)`: no `μ`.
    Absent,
    /// Exact `π`-coordinates (wild case).
    Exact(Vec<BigRational>),
    /// `ζ^i·μ₀` with `μ₀ ∈ Z_p` the `p`-th root of `ℓ₁` (tame case).
    TameRoot { i: u64, ell1: u64 },
}

/// A prime above `p` together with the data defining its completion.
#[derive(Debug, Clone)]
pub struct PAdicPrime {
    pub p: u64,
    /// Ramification index over `Q_p`, equal to the local degree.
    pub e: usize,
    /// Lower coefficients `E_0, …, E_{e−1}` of the monic Eisenstein polynomial.
    eis: Vec<BigRational>,
    zeta: Vec<BigRational>,
    mu: MuImage,
}

/// `Z_p[π]/(E, p^digits)`.
#[derive(Debug, Clone)]
pub struct PRing {
    pub p: u64,
    pub e: usize,
    pub digits: u32,
    pub modulus: BigInt,
    eis: Vec<BigInt>,
}

pub type PElem = Vec<BigInt>;

/// Outcome of the greedy filtration ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ladder {
    /// `x` is a `p`-th power times an element of `U_target`.
    Reached,
    /// The ladder could not clear this level.
    Stuck(usize),
}

fn reduce_rational(c: &BigRational, modulus: &BigInt, p: u64) -> Result<BigInt> {
    let d = c.denom();
    if (d % BigInt::from(p)).is_zero() {
        return Err(Error::Arithmetic(format!(
            "coefficient {c} is not {p}-integral"
        )));
    }
    let g = d.extended_gcd(modulus);
    Ok((c.numer() * g.x).mod_floor(modulus))
}

fn binomial(n: u64, k: u64) -> BigInt {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

impl PAdicPrime {
    /// The prime `(1 − ζ)` of `Q(ζ_p)`, or the `i`-th prime above `p` of `K`
    /// in the tame case, where `μ ↦ ζ^i μ₀`.
    fn cyclotomic(p: u64, mu: MuImage) -> PAdicPrime {
        // Φ_p(1 − λ) = Σ_k (−1)^k C(p, k+1) λ^k.
        let eis = (0..p - 1)
            .map(|k| {
                let c = binomial(p, k + 1);
                BigRational::from_integer(if k % 2 == 0 { c } else { -c })
            })
            .collect();
        let mut zeta = vec![BigRational::zero(); p as usize - 1];
        zeta[0] = BigRational::one();
        zeta[1] = -BigRational::one();
        PAdicPrime {
            p,
            e: p as usize - 1,
            eis,
            zeta,
            mu,
        }
    }

    pub fn small_field(p: u64) -> PAdicPrime {
        PAdicPrime::cyclotomic(p, MuImage::Absent)
    }

    /// All primes of `K` above `p`: `p` of them in the tame case, one in the wild case.
    pub fn big_field(field: &TowerField) -> Result<Vec<PAdicPrime>> {
        match tame_or_wild(field.p, field.ell1)? {
            Ramification::Tame => Ok((0..field.p)
                .map(|i| {
                    PAdicPrime::cyclotomic(
                        field.p,
                        MuImage::TameRoot {
                            i,
                            ell1: field.ell1,
                        },
                    )
                })
                .collect()),
            Ramification::Wild => Ok(vec![PAdicPrime::wild(field)?]),
        }
    }

    /// Wild case: uniformizer `π = (1 − ζ)/(μ − ℓ₁)`, with `E` its minimal
    /// polynomial and `ζ, μ` expressed in the basis `1, π, …, π^{e−1}`.
    fn wild(field: &TowerField) -> Result<PAdicPrime> {
        let p = field.p;
        let e = field.degree(super::FieldTag::Big);
        let one = NFElem::one(field);
        // 1/(μ − ℓ₁) = (Σ_k μ^{p−1−k} ℓ₁^k)/(ℓ₁ − ℓ₁^p).
        let l1 = BigInt::from(field.ell1);
        let mut sum = NFElem::zero(field);
        let mut mu_pow = one.clone();
        for k in (0..p as u32).rev() {
            let c = BigRational::from_integer(l1.pow(k));
            sum = sum.add(&mu_pow.scale(&c));
            mu_pow = mu_pow.mul(&NFElem::mu(field));
        }
        let norm = BigRational::from_integer(&l1 - l1.pow(p as u32));
        let pi = one.sub(&NFElem::zeta(field)).mul(&sum).scale(&norm.recip());
        let mut cols = Vec::with_capacity(e);
        let mut power = one;
        for _ in 0..e {
            cols.push(power.flat().to_vec());
            power = power.mul(&pi);
        }
        let rhs = vec![
            power.flat().to_vec(),
            NFElem::zeta(field).flat().to_vec(),
            NFElem::mu(field).flat().to_vec(),
        ];
        let mut sol = solve_rational(&cols, &rhs)?;
        let mu = sol.pop().unwrap_or_default();
        let zeta = sol.pop().unwrap_or_default();
        let eis: Vec<BigRational> = sol.pop().unwrap_or_default().iter().map(|c| -c).collect();
        let pb = BigInt::from(p);
        let integral = |c: &BigRational| !(c.denom() % &pb).is_zero();
        let divisible = |c: &BigRational| integral(c) && (c.numer() % &pb).is_zero();
        let e0_ok =
            divisible(&eis[0]) && !(c_over_p(&eis[0], p).map(|c| divisible(&c)).unwrap_or(true));
        if !(eis.iter().all(divisible) && e0_ok && zeta.iter().chain(&mu).all(integral)) {
            return Err(Error::Arithmetic(
                "wild uniformizer does not give an Eisenstein polynomial".into(),
            ));
        }
        Ok(PAdicPrime {
            p,
            e,
            eis,
            zeta,
            mu: MuImage::Exact(mu),
        })
    }

    /// The truncated ring `O/p^digits`.
    pub fn ring(&self, digits: u32) -> Result<PRing> {
        let modulus = BigInt::from(self.p).pow(digits);
        let eis = self
            .eis
            .iter()
            .map(|c| reduce_rational(c, &modulus, self.p))
            .collect::<Result<Vec<_>>>()?;
        Ok(PRing {
            p: self.p,
            e: self.e,
            digits,
            modulus,
            eis,
        })
    }

    /// `π^e/p = −Σ (E_k/p) π^k`, a unit.
    pub fn pi_e_over_p(&self, ring: &PRing) -> Result<PElem> {
        self.eis
            .iter()
            .map(|c| {
                let c = c_over_p(c, self.p)?;
                Ok((-reduce_rational(&c, &ring.modulus, self.p)?).mod_floor(&ring.modulus))
            })
            .collect()
    }

    /// Images of `ζ^a` for `0 ≤ a < p−1` and of `μ^b` for `0 ≤ b < p`.
    fn generator_powers(&self, ring: &PRing) -> Result<(Vec<PElem>, Vec<PElem>)> {
        let zeta = self
            .zeta
            .iter()
            .map(|c| reduce_rational(c, &ring.modulus, self.p))
            .collect::<Result<Vec<_>>>()?;
        let mut zp = vec![ring.one()];
        for _ in 1..self.p - 1 {
            let next = ring.mul(zp.last().unwrap_or(&ring.one()), &zeta);
            zp.push(next);
        }
        let mu = match &self.mu {
            MuImage::Absent => None,
            MuImage::Exact(c) => Some(
                c.iter()
                    .map(|c| reduce_rational(c, &ring.modulus, self.p))
                    .collect::<Result<Vec<_>>>()?,
            ),
            MuImage::TameRoot { i, ell1 } => {
                let mu0 = tame_pth_root(self.p, *ell1, ring.digits)?;
                Some(ring.scale(&ring.pow(&zeta, *i), &mu0))
            }
        };
        let mut mp = vec![ring.one()];
        if let Some(mu) = mu {
            for _ in 1..self.p {
                let next = ring.mul(mp.last().unwrap_or(&ring.one()), &mu);
                mp.push(next);
            }
        }
        Ok((zp, mp))
    }

    /// Image of an integer-coefficient element `Σ X_ab ζ^a μ^b` in `O/p^digits`.
    pub fn embed_numerator(&self, num: &[BigInt], ring: &PRing) -> Result<PElem> {
        let (zp, mp) = self.generator_powers(ring)?;
        let n = self.p as usize - 1;
        let mut acc = ring.zero();
        for (b, mu_b) in mp.iter().enumerate() {
            let mut inner = ring.zero();
            for (a, z) in zp.iter().enumerate() {
                let c = &num[b * n + a];
                if !c.is_zero() {
                    inner = ring.add(&inner, &ring.scale(z, c));
                }
            }
            acc = ring.add(&acc, &ring.mul(&inner, mu_b));
        }
        // In the small field only the ζ-part is present.
        if mp.len() == 1 && num.len() > n && num[n..].iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidInput(
                "element of K passed to a Q(ζ_p) prime".into(),
            ));
        }
        Ok(acc)
    }

    /// Valuation `v` of `x` and its unit part `x/π^v` modulo `p^digits`.
    pub fn unit_part(&self, x: &IntegralForm, digits: u32) -> Result<(i64, PElem)> {
        if x.num.iter().all(|c| c.is_zero()) {
            return Err(Error::Arithmetic("valuation of zero".into()));
        }
        let s = v_q(&x.den, self.p);
        let den_unit = &x.den / BigInt::from(self.p).pow(s);
        let mut work = digits + 2;
        for _ in 0..16 {
            let ring = self.ring(work)?;
            let big = self.embed_numerator(&x.num, &ring)?;
            let Some(level) = ring.level(&big) else {
                work *= 2;
                continue;
            };
            let a = (level / self.e) as u32;
            let b = level % self.e;
            if work < digits + a + 1 {
                work = digits + a + 1;
                continue;
            }
            let target = self.ring(digits)?;
            let y = ring.div_p_pow(&big, a);
            let eps_inv_big = self.pi_e_over_p(&ring)?;
            // x/π^level = Y·ε^a / π^b with ε = p/π^e.
            let (unit, eps_power) = if b == 0 {
                (target.reduce(&y), a as i64)
            } else {
                let shifted = ring.mul(&y, &ring.pi_pow(self.e - b));
                (target.reduce(&ring.div_p_pow(&shifted, 1)), a as i64 + 1)
            };
            let eps_inv = target.reduce(&eps_inv_big);
            let eps = target.inv(&eps_inv)?;
            // Denominator p^s·D′: multiply by π^{es}/p^s = ε^{−s} and by D′^{−1}.
            let total = eps_power - s as i64;
            let eps_factor = if total >= 0 {
                target.pow(&eps, total as u64)
            } else {
                target.pow(&eps_inv, (-total) as u64)
            };
            let d_inv = target.inv(&target.from_int(&den_unit))?;
            let unit = target.mul(&target.mul(&unit, &eps_factor), &d_inv);
            let v = level as i64 - (self.e as i64) * s as i64;
            return Ok((v, unit));
        }
        Err(Error::Precision(format!(
            "element vanishes to {work} p-adic digits at a prime above {}",
            self.p
        )))
    }

    /// Unit part of `p` itself: `ε = p/π^e`.
    pub fn unit_part_of_p(&self, ring: &PRing) -> Result<PElem> {
        ring.inv(&self.pi_e_over_p(ring)?)
    }

    /// `v_P(1 − ζ_p)`.
    pub fn a_exponent(&self) -> usize {
        self.e / (self.p as usize - 1)
    }

    /// The critical level `e·p/(p−1)`.
    pub fn critical_level(&self) -> usize {
        self.e * self.p as usize / (self.p as usize - 1)
    }

    /// Digits needed to resolve filtration levels up to `level`.
    pub fn digits_for_level(&self, level: usize) -> u32 {
        (level / self.e) as u32 + 3
    }
}

fn c_over_p(c: &BigRational, p: u64) -> Result<BigRational> {
    let pb = BigInt::from(p);
    if !(c.numer() % &pb).is_zero() {
        return Err(Error::Arithmetic(
            "Eisenstein coefficient not divisible by p".into(),
        ));
    }
    Ok(BigRational::new(c.numer() / &pb, c.denom().clone()))
}

/// The `p`-adic integer `μ₀` with `μ₀^p = ℓ₁`, modulo `p^digits` (tame case).
pub fn tame_pth_root(p: u64, ell1: u64, digits: u32) -> Result<BigInt> {
    let pb = BigInt::from(p);
    let m = pb.pow(digits + 1);
    let l = BigInt::from(ell1);
    let p2 = &pb * &pb;
    let mut x = (0..p)
        .map(BigInt::from)
        .find(|x| (x.modpow(&pb, &p2) - &l).mod_floor(&p2).is_zero())
        .ok_or_else(|| Error::Arithmetic(format!("{ell1} has no {p}-th root in Z_{p}")))?;
    let mut pj = pb.clone();
    for j in 1..digits {
        let check = pb.pow(j + 2);
        x = (0..p)
            .map(|d| &x + BigInt::from(d) * &pj)
            .find(|y| (y.modpow(&pb, &check) - &l).mod_floor(&check).is_zero())
            .ok_or_else(|| Error::Arithmetic("p-th root lifting failed".into()))?;
        pj *= &pb;
    }
    Ok(x.mod_floor(&m))
}

impl PRing {
    pub fn zero(&self) -> PElem {
        vec![BigInt::zero(); self.e]
    }

    pub fn one(&self) -> PElem {
        self.from_int(&BigInt::one())
    }

    pub fn from_int(&self, n: &BigInt) -> PElem {
        let mut v = self.zero();
        v[0] = n.mod_floor(&self.modulus);
        v
    }

    /// Reduces an element of a finer ring into this one.
    pub fn reduce(&self, x: &PElem) -> PElem {
        x.iter().map(|c| c.mod_floor(&self.modulus)).collect()
    }

    pub fn add(&self, a: &PElem, b: &PElem) -> PElem {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + y).mod_floor(&self.modulus))
            .collect()
    }

    pub fn sub(&self, a: &PElem, b: &PElem) -> PElem {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x - y).mod_floor(&self.modulus))
            .collect()
    }

    pub fn scale(&self, a: &PElem, c: &BigInt) -> PElem {
        a.iter().map(|x| (x * c).mod_floor(&self.modulus)).collect()
    }

    pub fn mul(&self, a: &PElem, b: &PElem) -> PElem {
        let e = self.e;
        let mut prod = vec![BigInt::zero(); 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        for k in (e..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]).mod_floor(&self.modulus);
            if c.is_zero() {
                continue;
            }
            // π^e = −Σ E_j π^j.
            for j in 0..e {
                prod[k - e + j] -= &c * &self.eis[j];
            }
        }
        prod.truncate(e);
        prod.iter().map(|c| c.mod_floor(&self.modulus)).collect()
    }

    pub fn pow(&self, a: &PElem, mut n: u64) -> PElem {
        let mut result = self.one();
        let mut b = a.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &b);
            }
            n >>= 1;
            if n > 0 {
                b = self.mul(&b, &b);
            }
        }
        result
    }

    pub fn pi_pow(&self, k: usize) -> PElem {
        let mut pi = self.zero();
        pi[1] = BigInt::one();
        self.pow(&pi, k as u64)
    }

    /// Residue in `F_p` (the residue field of every completion used here).
    pub fn residue(&self, x: &PElem) -> u64 {
        x[0].mod_floor(&BigInt::from(self.p)).to_u64().unwrap_or(0)
    }

    /// Inverse of a unit by Newton iteration.
    pub fn inv(&self, a: &PElem) -> Result<PElem> {
        let r = self.residue(a);
        if r == 0 {
            return Err(Error::Arithmetic("inverse of a non-unit at p".into()));
        }
        let r_inv = crate::fparith::mod_inv(r, self.p)?;
        let mut y = self.from_int(&BigInt::from(r_inv));
        let two = self.from_int(&BigInt::from(2));
        let mut correct = 1usize;
        while correct < self.e * self.digits as usize {
            y = self.mul(&y, &self.sub(&two, &self.mul(a, &y)));
            correct *= 2;
        }
        Ok(y)
    }

    /// Filtration level `min_k (e·v_p(c_k) + k)`, or `None` if `x ≡ 0`.
    pub fn level(&self, x: &PElem) -> Option<usize> {
        x.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| self.e * v_q(c, self.p) as usize + k)
            .min()
    }

    /// Exact division of every coordinate by `p^k`.
    pub fn div_p_pow(&self, x: &PElem, k: u32) -> PElem {
        let d = BigInt::from(self.p).pow(k);
        x.iter().map(|c| c / &d).collect()
    }

    /// The Teichmüller lift of a residue `r ∈ F_p`.
    pub fn teichmuller(&self, r: u64) -> PElem {
        let exp = BigInt::from(self.p).pow(self.digits);
        let n = BigInt::from(r).modpow(&exp, &self.modulus);
        self.from_int(&n)
    }

    /// Largest level this precision resolves.
    pub fn max_level(&self) -> usize {
        self.e * self.digits as usize
    }

    /// Greedy filtration ladder: multiplies the unit `x` by `p`-th powers to
    /// push `x − 1` into `π^target`, reporting the first level it cannot clear.
    pub fn ladder(&self, x: &PElem, target: usize) -> Result<Ladder> {
        if target + 1 >= self.max_level() {
            return Err(Error::Precision(format!(
                "filtration level {target} needs more than {} digits",
                self.digits
            )));
        }
        let r = self.residue(x);
        if r == 0 {
            return Err(Error::InvalidInput("ladder applied to a non-unit".into()));
        }
        let omega_inv = self.inv(&self.teichmuller(r))?;
        let mut y = self.mul(x, &omega_inv);
        let crit = self.e * self.p as usize / (self.p as usize - 1);
        let p = self.p as usize;
        loop {
            let one = self.one();
            let j = match self.level(&self.sub(&y, &one)) {
                None => return Ok(Ladder::Reached),
                Some(j) if j >= target => return Ok(Ladder::Reached),
                Some(j) => j,
            };
            let i = if j < crit {
                if j % p != 0 {
                    return Ok(Ladder::Stuck(j));
                }
                j / p
            } else if j == crit {
                crit / p
            } else {
                j - self.e
            };
            let pi_i = self.pi_pow(i);
            let mut advanced = false;
            for t in 1..self.p {
                let base = self.add(&one, &self.scale(&pi_i, &BigInt::from(t)));
                let cand = self.mul(&y, &self.inv(&self.pow(&base, self.p))?);
                let deeper = match self.level(&self.sub(&cand, &one)) {
                    None => true,
                    Some(l) => l > j,
                };
                if deeper {
                    y = cand;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                return Ok(Ladder::Stuck(j));
            }
        }
    }

    /// Literal congruence `x ≡ ω(x̄) (mod π^level)`.
    pub fn congruent_to_teichmuller(&self, x: &PElem, level: usize) -> bool {
        let diff = self.sub(x, &self.teichmuller(self.residue(x)));
        self.level(&diff).is_none_or(|l| l >= level)
    }
}

impl PAdicPrime {
    pub fn is_tame_big(&self) -> bool {
        matches!(self.mu, MuImage::TameRoot { .. })
    }

    pub fn has_mu(&self) -> bool {
        !matches!(self.mu, MuImage::Absent)
    }
}
