use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::element::{FieldTag, IntegralForm, NFElem, TowerField};
use super::padic::{Ladder, PAdicPrime};
use super::unram::{v_q, UElem, UnramRing};
use crate::error::{Error, Result};
use crate::fparith::{is_prime, mod_inv, multiplicative_order, FFElem, FieldCtx};

/// Starting `q`-adic precision for completions at primes not above `p`.
pub const DEFAULT_PRECISION: u32 = 32;
/// Precision ceiling for automatic escalation.
pub const MAX_PRECISION: u32 = 4096;

/// Residue-field images of the generators for a prime not above `p`.
#[derive(Debug, Clone)]
pub struct ResidueData {
    /// A field containing the residue field.
    pub ctx: Arc<FieldCtx>,
    pub zeta: FFElem,
    /// `None` in `Q(ζ_p)`; zero at the primes above `ℓ₁` in `K`.
    pub mu: Option<FFElem>,
    /// `μ` is a uniformizer (the prime lies above `ℓ₁` in `K`).
    pub mu_uniformizer: bool,
    /// Hensel lifts at `DEFAULT_PRECISION`, cached for residue degree one.
    lifts: Option<Arc<Lifts>>,
}

#[derive(Debug, Clone)]
struct Lifts {
    ring: UnramRing,
    zeta: UElem,
    mu: Option<UElem>,
}

#[derive(Debug, Clone)]
pub enum PrimeKind {
    Residual(ResidueData),
    AboveP(Arc<PAdicPrime>),
}

/// A prime of `Q(ζ_p)` or `K` above the rational prime `q`.
#[derive(Debug, Clone)]
pub struct PrimeData {
    pub tag: FieldTag,
    pub q: u64,
    pub e: u32,
    pub f: u32,
    /// Position in the deterministic ordering returned by [`primes_above`].
    pub index: usize,
    pub kind: PrimeKind,
    p: u64,
    ell1: u64,
}

impl fmt::Display for PrimeData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            PrimeKind::Residual(r) if r.ctx.degree() == 1 => {
                write!(f, "({}, ζ↦{}", self.q, r.zeta.coeffs[0])?;
                match &r.mu {
                    Some(m) => write!(f, ", μ↦{})", m.coeffs[0]),
                    None => write!(f, ")"),
                }
            }
            _ => write!(f, "({}, #{})", self.q, self.index),
        }
    }
}

/// Local behaviour of a prime in a degree-`p` Kummer extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// The local congruence tests at primes above `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LocalMode {
    /// `x ≡ ω(x̄) (mod 𝔭^p)`.
    TeichmullerModPp,
    /// `x` is a `p`-th power modulo `𝔭^{p²}`.
    PthPowerModPp2,
    /// `x` is a `p`-th power times an element `≡ 1 (mod 𝔭^{2(p−1)})`.
    OneMod2e,
}

fn cyclotomic_poly(p: u64) -> Vec<BigInt> {
    vec![BigInt::one(); p as usize]
}

fn kummer_poly(p: u64, ell1: u64) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); p as usize + 1];
    v[0] = -BigInt::from(ell1);
    v[p as usize] = BigInt::one();
    v
}

fn big_exp(q: u64, f: u32, p: u64) -> BigUint {
    (BigUint::from(q).pow(f) - BigUint::one()) / BigUint::from(p)
}

/// A primitive `p`-th root of unity in `ctx` (which must contain one).
fn primitive_pth_root(ctx: &Arc<FieldCtx>, p: u64) -> Result<FFElem> {
    let exp = big_exp(ctx.q, ctx.degree() as u32, p);
    (1u128..)
        .take(10_000)
        .map(|k| FFElem::from_index(ctx, k).pow(&exp))
        .find(|w| !w.is_zero() && !w.is_one())
        .ok_or_else(|| Error::Arithmetic("no primitive p-th root of unity found".into()))
}

/// Orbits of tuples of field elements under the `q`-power Frobenius, each
/// represented by its lexicographically least member, sorted.
fn frobenius_orbits(points: Vec<Vec<FFElem>>) -> Vec<(Vec<FFElem>, usize)> {
    let key = |pt: &Vec<FFElem>| pt.iter().map(|x| x.coeffs.clone()).collect::<Vec<_>>();
    let mut seen = std::collections::BTreeSet::new();
    let mut orbits = Vec::new();
    for pt in points {
        if seen.contains(&key(&pt)) {
            continue;
        }
        let mut orbit = vec![pt.clone()];
        let mut cur: Vec<FFElem> = pt.iter().map(|x| x.frobenius()).collect();
        while key(&cur) != key(&pt) {
            orbit.push(cur.clone());
            cur = cur.iter().map(|x| x.frobenius()).collect();
        }
        for o in &orbit {
            seen.insert(key(o));
        }
        let rep = orbit.iter().min_by_key(|o| key(o)).cloned().unwrap_or(pt);
        orbits.push((rep, orbit.len()));
    }
    orbits.sort_by_key(|(rep, _)| key(rep));
    orbits
}

impl ResidueData {
    fn new(
        ctx: Arc<FieldCtx>,
        zeta: FFElem,
        mu: Option<FFElem>,
        mu_uniformizer: bool,
        p: u64,
        ell1: u64,
    ) -> Result<ResidueData> {
        let mut r = ResidueData {
            ctx,
            zeta,
            mu,
            mu_uniformizer,
            lifts: None,
        };
        if r.ctx.degree() == 1 {
            r.lifts = Some(Arc::new(r.lift(DEFAULT_PRECISION, p, ell1)?));
        }
        Ok(r)
    }

    fn lift(&self, prec: u32, p: u64, ell1: u64) -> Result<Lifts> {
        let ring = UnramRing::new(&self.ctx, prec);
        let zeta = ring.hensel_root(&cyclotomic_poly(p), &self.zeta)?;
        let mu = match (&self.mu, self.mu_uniformizer) {
            (Some(m), false) => Some(ring.hensel_root(&kummer_poly(p, ell1), m)?),
            _ => None,
        };
        Ok(Lifts { ring, zeta, mu })
    }

    fn lifts_at(&self, prec: u32, p: u64, ell1: u64) -> Result<Arc<Lifts>> {
        match &self.lifts {
            Some(l) if l.ring.prec == prec => Ok(l.clone()),
            _ => Ok(Arc::new(self.lift(prec, p, ell1)?)),
        }
    }
}

/// Evaluates `Σ_{b∈bs} Σ_a X_ab ζ^a μ^b` in a lifted ring.
fn eval_lifted(num: &[BigInt], p: u64, l: &Lifts, bs: &[usize]) -> UElem {
    let ring = &l.ring;
    let n = p as usize - 1;
    let mut zp = vec![ring.one()];
    for _ in 1..n {
        zp.push(ring.mul(zp.last().unwrap_or(&ring.one()), &l.zeta));
    }
    let mut acc = vec![BigInt::zero(); ring.degree()];
    let mut mu_pow = ring.one();
    let mut last_b = 0usize;
    for &b in bs {
        if let Some(mu) = &l.mu {
            while last_b < b {
                mu_pow = ring.mul(&mu_pow, mu);
                last_b += 1;
            }
        }
        let mut inner = vec![BigInt::zero(); ring.degree()];
        for (a, z) in zp.iter().enumerate() {
            let c = &num[b * n + a];
            if !c.is_zero() {
                inner = ring.add(&inner, &ring.scale(z, c));
            }
        }
        acc = ring.add(&acc, &ring.mul(&inner, &mu_pow));
    }
    acc
}

impl PrimeData {
    pub fn residue_data(&self) -> Option<&ResidueData> {
        match &self.kind {
            PrimeKind::Residual(r) => Some(r),
            PrimeKind::AboveP(_) => None,
        }
    }

    pub fn padic(&self) -> Option<&PAdicPrime> {
        match &self.kind {
            PrimeKind::AboveP(pp) => Some(pp),
            PrimeKind::Residual(_) => None,
        }
    }

    /// Order of the residue field.
    pub fn residue_order(&self) -> BigUint {
        BigUint::from(self.q).pow(self.f)
    }

    /// Reduction of an element with `q`-integral coefficients.
    pub fn reduce_form(&self, x: &IntegralForm) -> Result<FFElem> {
        let q = BigInt::from(self.q);
        if (&x.den % &q).is_zero() {
            return Err(Error::Arithmetic(format!(
                "denominator divisible by {} at prime {self}",
                self.q
            )));
        }
        match &self.kind {
            PrimeKind::Residual(r) => {
                let ctx = &r.ctx;
                let n = self.p as usize - 1;
                let mut zp = vec![FFElem::one(ctx)];
                for _ in 1..n {
                    zp.push(zp.last().unwrap_or(&FFElem::one(ctx)).mul(&r.zeta));
                }
                let n_mu = if r.mu.is_some() { self.p as usize } else { 1 };
                let mut acc = FFElem::zero(ctx);
                let mut mu_pow = FFElem::one(ctx);
                for b in 0..n_mu {
                    let mut inner = FFElem::zero(ctx);
                    for (a, z) in zp.iter().enumerate() {
                        let c = x.num[b * n + a].mod_floor(&q).to_u64().unwrap_or(0);
                        if c != 0 {
                            inner = inner.add(&z.scale(c));
                        }
                    }
                    acc = acc.add(&inner.mul(&mu_pow));
                    if let Some(m) = &r.mu {
                        mu_pow = mu_pow.mul(m);
                    }
                }
                if r.mu.is_none() && x.num[n..].iter().any(|c| !c.is_zero()) {
                    return Err(Error::InvalidInput(
                        "element of K reduced at a Q(ζ_p) prime".into(),
                    ));
                }
                let d = x.den.mod_floor(&q).to_u64().unwrap_or(0);
                Ok(acc.scale(mod_inv(d, self.q)?))
            }
            PrimeKind::AboveP(pp) => {
                let ctx = FieldCtx::prime_field(self.q)?;
                let ring = pp.ring(1)?;
                let img = pp.embed_numerator(&x.num, &ring)?;
                let d = x.den.mod_floor(&q).to_u64().unwrap_or(0);
                let r = (ring.residue(&img) * mod_inv(d, self.q)?) % self.q;
                Ok(FFElem::from_int(&ctx, r as i64))
            }
        }
    }

    /// Valuation and the residue of the unit part `x/ϖ^v`, where `ϖ` is `q`
    /// at unramified primes, `μ` at primes above `ℓ₁` in `K`, and the chosen
    /// uniformizer at primes above `p`.
    pub fn local_unit(&self, x: &IntegralForm) -> Result<(i64, FFElem)> {
        if x.num.iter().all(|c| c.is_zero()) {
            return Err(Error::Arithmetic("valuation of zero".into()));
        }
        match &self.kind {
            PrimeKind::AboveP(pp) => {
                let (v, unit) = pp.unit_part(x, 1)?;
                let ctx = FieldCtx::prime_field(self.q)?;
                let ring = pp.ring(1)?;
                Ok((v, FFElem::from_int(&ctx, ring.residue(&unit) as i64)))
            }
            PrimeKind::Residual(r) => {
                let s = v_q(&x.den, self.q);
                let den_unit = &x.den / BigInt::from(self.q).pow(s);
                let mut prec = DEFAULT_PRECISION;
                loop {
                    let l = r.lifts_at(prec, self.p, self.ell1)?;
                    let resolved = if r.mu_uniformizer {
                        self.ell1_unit(x, &l)?
                    } else {
                        let bs: Vec<usize> = if r.mu.is_some() {
                            (0..self.p as usize).collect()
                        } else {
                            vec![0]
                        };
                        let val = eval_lifted(&x.num, self.p, &l, &bs);
                        l.ring
                            .valuation(&val)
                            .map(|v| {
                                let unit = l.ring.div_q_pow(&val, v);
                                (v as i64, l.ring.to_residue(&unit))
                            })
                            .map(|(v, u)| u.map(|u| (v, u)))
                            .transpose()?
                    };
                    if let Some((v_num, unit)) = resolved {
                        let qd = self.q;
                        let d = den_unit.mod_floor(&BigInt::from(qd)).to_u64().unwrap_or(0);
                        let unit = unit.scale(mod_inv(d, qd)?);
                        let e = self.e as i64;
                        return Ok((v_num - e * s as i64, unit));
                    }
                    if prec >= MAX_PRECISION {
                        return Err(Error::Precision(format!(
                            "element vanishes modulo {}^{prec} at prime {self}",
                            self.q
                        )));
                    }
                    prec *= 2;
                }
            }
        }
    }

    /// At a prime above `ℓ₁` in `K`: `v = min_b (p·v(c_b) + b)` for
    /// `x = Σ_b c_b(ζ) μ^b`.
    fn ell1_unit(&self, x: &IntegralForm, l: &Lifts) -> Result<Option<(i64, FFElem)>> {
        let mut best: Option<(i64, FFElem)> = None;
        for b in 0..self.p as usize {
            let n = self.p as usize - 1;
            let mut num = vec![BigInt::zero(); x.num.len()];
            num[..n].clone_from_slice(&x.num[b * n..(b + 1) * n]);
            if num.iter().all(|c| c.is_zero()) {
                continue;
            }
            let val = eval_lifted(&num, self.p, l, &[0]);
            let Some(v) = l.ring.valuation(&val) else {
                return Ok(None);
            };
            let total = self.p as i64 * v as i64 + b as i64;
            if best.as_ref().is_none_or(|(bv, _)| total < *bv) {
                let unit = l.ring.to_residue(&l.ring.div_q_pow(&val, v))?;
                best = Some((total, unit));
            }
        }
        Ok(best)
    }

    pub fn valuation(&self, x: &NFElem) -> Result<i64> {
        Ok(self.local_unit(&x.integral_form())?.0)
    }

    /// `z^{(|κ|−1)/p} = 1` for the residue `z` of a unit.
    pub fn residue_is_pth_power(&self, z: &FFElem) -> Result<bool> {
        if z.is_zero() {
            return Err(Error::Arithmetic("p-th power test on zero residue".into()));
        }
        Ok(z.pow(&big_exp(self.q, self.f, self.p)).is_one())
    }

    /// Splitting of this prime in `F(x^{1/p})`, where `F` is the field of the prime.
    pub fn kummer_splitting_form(&self, x: &IntegralForm) -> Result<Splitting> {
        match &self.kind {
            PrimeKind::Residual(_) => {
                let (v, unit) = self.local_unit(x)?;
                if v.rem_euclid(self.p as i64) != 0 {
                    return Ok(Splitting::Ramified);
                }
                Ok(if self.residue_is_pth_power(&unit)? {
                    Splitting::Split
                } else {
                    Splitting::Inert
                })
            }
            PrimeKind::AboveP(pp) => {
                let crit = pp.critical_level();
                let digits = pp.digits_for_level(crit + 1);
                let (v, unit) = pp.unit_part(x, digits)?;
                if v.rem_euclid(self.p as i64) != 0 {
                    return Ok(Splitting::Ramified);
                }
                Ok(splitting_from_ladder(
                    pp.ring(digits)?.ladder(&unit, crit + 1)?,
                    crit,
                ))
            }
        }
    }
}

/// Translates a ladder run to `crit + 1` into the Kummer trichotomy.
pub fn splitting_from_ladder(l: Ladder, crit: usize) -> Splitting {
    match l {
        Ladder::Reached => Splitting::Split,
        Ladder::Stuck(j) if j < crit => Splitting::Ramified,
        Ladder::Stuck(_) => Splitting::Inert,
    }
}

/// All primes of the tagged field above `q`, in a deterministic order.
pub fn primes_above(field: &TowerField, tag: FieldTag, q: u64) -> Result<Vec<PrimeData>> {
    if !is_prime(q) {
        return Err(Error::NotPrime {
            value: q,
            clause: "primes_above",
        });
    }
    let p = field.p;
    let mk = |index: usize, e: u32, f: u32, kind: PrimeKind| PrimeData {
        tag,
        q,
        e,
        f,
        index,
        kind,
        p,
        ell1: field.ell1,
    };
    if q == p {
        let locals = match tag {
            FieldTag::Small => vec![PAdicPrime::small_field(p)],
            FieldTag::Big => PAdicPrime::big_field(field)?,
        };
        return Ok(locals
            .into_iter()
            .enumerate()
            .map(|(i, pp)| mk(i, pp.e as u32, 1, PrimeKind::AboveP(Arc::new(pp))))
            .collect());
    }
    let f0 = multiplicative_order(q % p, p)? as usize;
    let ramified_mu = tag == FieldTag::Big && q == field.ell1;
    let mut degree = f0;
    if tag == FieldTag::Big && !ramified_mu {
        let ctx0 = FieldCtx::with_degree(q, f0)?;
        if !FFElem::from_int(&ctx0, field.ell1 as i64).is_pth_power(p)? {
            degree = f0 * p as usize;
        }
    }
    let ctx = FieldCtx::with_degree(q, degree)?;
    let z = primitive_pth_root(&ctx, p)?;
    let zetas: Vec<FFElem> = (1..p).map(|j| z.pow_u64(j)).collect();
    let points: Vec<Vec<FFElem>> = match tag {
        FieldTag::Small => zetas.iter().map(|r| vec![r.clone()]).collect(),
        FieldTag::Big if ramified_mu => zetas
            .iter()
            .map(|r| vec![r.clone(), FFElem::zero(&ctx)])
            .collect(),
        FieldTag::Big => {
            let m0 = FFElem::from_int(&ctx, field.ell1 as i64)
                .pth_root(p)?
                .ok_or_else(|| Error::Arithmetic("ℓ₁ has no p-th root in residue field".into()))?;
            let mus: Vec<FFElem> = (0..p).map(|k| m0.mul(&z.pow_u64(k))).collect();
            zetas
                .iter()
                .flat_map(|r| mus.iter().map(move |m| vec![r.clone(), m.clone()]))
                .collect()
        }
    };
    let e = if ramified_mu { p as u32 } else { 1 };
    frobenius_orbits(points)
        .into_iter()
        .enumerate()
        .map(|(i, (rep, size))| {
            let mu = rep.get(1).cloned();
            let res =
                ResidueData::new(ctx.clone(), rep[0].clone(), mu, ramified_mu, p, field.ell1)?;
            Ok(mk(i, e, size as u32, PrimeKind::Residual(res)))
        })
        .collect()
}

pub fn reduce_mod_prime(x: &NFElem, prime: &PrimeData) -> Result<FFElem> {
    prime.reduce_form(&x.integral_form())
}

pub fn valuation_at(x: &NFElem, prime: &PrimeData) -> Result<i64> {
    prime.valuation(x)
}

/// Residue of `x/ℓ₀^{ord(x)}` at a prime above `ℓ₀` (residue degree one).
pub fn unit_residue(x: &NFElem, prime: &PrimeData) -> Result<u64> {
    if prime.f != 1 || prime.e != 1 {
        return Err(Error::InvalidInput(format!(
            "unit residue requires an unramified degree-one prime, got {prime}"
        )));
    }
    Ok(prime.local_unit(&x.integral_form())?.1.coeffs[0])
}

/// Exponent test for a unit at a prime not above `p`.
pub fn is_pth_power_mod_prime(x: &NFElem, prime: &PrimeData) -> Result<bool> {
    if prime.padic().is_some() {
        return Err(Error::InvalidInput(
            "p-th power residue test needs a prime not above p".into(),
        ));
    }
    let (v, unit) = prime.local_unit(&x.integral_form())?;
    if v != 0 {
        return Err(Error::InvalidInput(format!("valuation {v} ≠ 0 at {prime}")));
    }
    prime.residue_is_pth_power(&unit)
}

pub fn kummer_splitting(alpha: &NFElem, prime: &PrimeData) -> Result<Splitting> {
    prime.kummer_splitting_form(&alpha.integral_form())
}

/// Unit part of `x` at a prime above `p`, valid as a `p`-th-power class when
/// `p | v`; returns `None` when `p ∤ v`.
fn class_unit(
    pp: &PAdicPrime,
    x: &IntegralForm,
    digits: u32,
) -> Result<Option<super::padic::PElem>> {
    let (v, unit) = pp.unit_part(x, digits)?;
    Ok((v.rem_euclid(pp.p as i64) == 0).then_some(unit))
}

pub fn local_congruence_tests(x: &NFElem, prime: &PrimeData, mode: LocalMode) -> Result<bool> {
    let pp = prime
        .padic()
        .ok_or_else(|| Error::InvalidInput("local congruence tests need a prime above p".into()))?;
    let form = x.integral_form();
    if form.num.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidInput("local congruence test on zero".into()));
    }
    let p = pp.p as usize;
    match mode {
        LocalMode::TeichmullerModPp => {
            let digits = pp.digits_for_level(p);
            let (v, unit) = pp.unit_part(&form, digits)?;
            if v < 0 {
                return Err(Error::InvalidInput("element is not integral at p".into()));
            }
            if v > 0 {
                return Ok(v as usize >= p);
            }
            Ok(pp.ring(digits)?.congruent_to_teichmuller(&unit, p))
        }
        LocalMode::PthPowerModPp2 | LocalMode::OneMod2e => {
            let target = if mode == LocalMode::PthPowerModPp2 {
                p * p
            } else {
                2 * (p - 1)
            };
            let digits = pp.digits_for_level(target);
            match class_unit(pp, &form, digits)? {
                None => Ok(false),
                Some(u) => Ok(pp.ring(digits)?.ladder(&u, target)? == Ladder::Reached),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ell0_splits_completely() {
        let f = TowerField::new(5, 23).unwrap();
        let ps = primes_above(&f, FieldTag::Big, 11).unwrap();
        assert_eq!(ps.len(), 20);
        assert!(ps.iter().all(|p| p.e == 1 && p.f == 1));
        let small = primes_above(&f, FieldTag::Small, 11).unwrap();
        assert_eq!(small.len(), 4);
        let at_p = primes_above(&f, FieldTag::Big, 5).unwrap();
        assert_eq!((at_p.len(), at_p[0].e), (1, 20));
    }

    #[test]
    fn degree_bookkeeping() {
        let f = TowerField::new(5, 23).unwrap();
        for q in [2u64, 3, 5, 7, 11, 13, 23, 31, 41] {
            for tag in [FieldTag::Small, FieldTag::Big] {
                let ps = primes_above(&f, tag, q).unwrap();
                let total: u32 = ps.iter().map(|p| p.e * p.f).sum();
                assert_eq!(total as usize, f.degree(tag), "q = {q}, {tag:?}");
            }
        }
    }

    #[test]
    fn valuations_and_residues() {
        let f = TowerField::new(5, 23).unwrap();
        let ps = primes_above(&f, FieldTag::Big, 11).unwrap();
        let l0 = NFElem::from_int(&f, 11);
        for pr in &ps {
            assert_eq!(valuation_at(&l0, pr).unwrap(), 1);
            assert_eq!(unit_residue(&l0, pr).unwrap(), 1);
            assert_eq!(unit_residue(&NFElem::from_int(&f, 7), pr).unwrap(), 7);
            let mu = reduce_mod_prime(&NFElem::mu(&f), pr).unwrap();
            assert_eq!(mu.pow_u64(5), FFElem::from_int(&mu.ctx, 23));
        }
        let at_l1 = primes_above(&f, FieldTag::Big, 23).unwrap();
        assert_eq!(at_l1.len(), 1);
        assert_eq!(
            valuation_at(&NFElem::from_int(&f, 23), &at_l1[0]).unwrap(),
            5
        );
        assert_eq!(valuation_at(&NFElem::mu(&f), &at_l1[0]).unwrap(), 1);
        assert_eq!(
            valuation_at(&NFElem::from_int(&f, 13), &at_l1[0]).unwrap(),
            0
        );
    }

    #[test]
    fn precision_escalates() {
        let f = TowerField::new(5, 23).unwrap();
        let pr = &primes_above(&f, FieldTag::Big, 11).unwrap()[0];
        let big = NFElem::from_rational(
            &f,
            num_rational::BigRational::from_integer(BigInt::from(11).pow(40) * 3),
        );
        assert_eq!(valuation_at(&big, pr).unwrap(), 40);
        assert_eq!(unit_residue(&big, pr).unwrap(), 3);
    }

    #[test]
    fn kummer_trichotomy_at_p() {
        let f = TowerField::new(5, 23).unwrap();
        let small_p = &primes_above(&f, FieldTag::Small, 5).unwrap()[0];
        // ζ is a p-th power of ζ^{1/p}? No: Q(ζ_5, ζ_25)/Q(ζ_5) is ramified at λ.
        let z = NFElem::zeta(&f);
        assert_eq!(kummer_splitting(&z, small_p).unwrap(), Splitting::Ramified);
        assert_eq!(
            kummer_splitting(&NFElem::one(&f), small_p).unwrap(),
            Splitting::Split
        );
        let lam = NFElem::one(&f).sub(&z);
        assert_eq!(
            kummer_splitting(&lam, small_p).unwrap(),
            Splitting::Ramified
        );
    }
}
