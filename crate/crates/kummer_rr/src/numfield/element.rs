use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ratlin::solve_rational;
use crate::error::{Error, Result};
use crate::fparith::{is_prime, primitive_root};

/// The tower `Q ⊂ Q(ζ_p) ⊂ K = Q(ζ_p, μ)` with `μ^p = ℓ₁`.
///
/// `t` is the smallest primitive root modulo `p`; the automorphism `δ` sends
/// `ζ ↦ ζ^t` and fixes `μ`, while `σ` fixes `ζ` and sends `μ ↦ ζμ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TowerField {
    pub p: u64,
    pub ell1: u64,
    pub t: u64,
}

/// Which field of the tower an object lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    /// `Q(ζ_p)`.
    Small,
    /// `K = Q(ζ_p, ℓ₁^{1/p})`.
    Big,
}

impl TowerField {
    /// Builds the tower, checking that `x^p − ℓ₁` stays irreducible over
    /// `Q(ζ_p)`; for a prime `ℓ₁ ≠ p` this holds because `ℓ₁` is not a
    /// `p`-th power in `Q(ζ_p)` (its valuation at any prime above it is 1).
    pub fn new(p: u64, ell1: u64) -> Result<TowerField> {
        if !is_prime(p) || p < 3 {
            return Err(Error::InvalidInput(format!("p = {p} must be an odd prime")));
        }
        if !is_prime(ell1) || ell1 == p {
            return Err(Error::InvalidInput(format!(
                "ℓ₁ = {ell1} must be a prime different from p"
            )));
        }
        Ok(TowerField {
            p,
            ell1,
            t: primitive_root(p)?,
        })
    }

    /// `[K : Q] = p(p−1)`.
    pub fn degree(&self, tag: FieldTag) -> usize {
        let n = self.p as usize - 1;
        match tag {
            FieldTag::Small => n,
            FieldTag::Big => n * self.p as usize,
        }
    }
}

/// Exact element of `K`, the coefficient matrix of `ζ^a μ^b` for
/// `0 ≤ a < p−1`, `0 ≤ b < p`, reduced modulo `Φ_p(ζ)` and `μ^p − ℓ₁`.
#[derive(Clone, PartialEq, Eq)]
pub struct NFElem {
    pub p: u64,
    pub ell1: u64,
    /// Index `b·(p−1) + a`.
    coeffs: Vec<BigRational>,
}

/// Integer numerators with a common positive denominator.
#[derive(Debug, Clone)]
pub struct IntegralForm {
    pub num: Vec<BigInt>,
    pub den: BigInt,
}

impl fmt::Debug for NFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for b in 0..self.p as usize {
            for a in 0..self.p as usize - 1 {
                let c = self.coeff(a, b);
                if !c.is_zero() {
                    terms.push(format!("({c})z^{a}m^{b}"));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl NFElem {
    fn n_zeta(&self) -> usize {
        self.p as usize - 1
    }

    pub fn zero(field: &TowerField) -> NFElem {
        NFElem {
            p: field.p,
            ell1: field.ell1,
            coeffs: vec![BigRational::zero(); field.degree(FieldTag::Big)],
        }
    }

    pub fn from_int(field: &TowerField, n: i64) -> NFElem {
        NFElem::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(field: &TowerField, c: BigRational) -> NFElem {
        let mut x = NFElem::zero(field);
        x.coeffs[0] = c;
        x
    }

    pub fn one(field: &TowerField) -> NFElem {
        NFElem::from_int(field, 1)
    }

    /// `ζ^k` for any integer `k`.
    pub fn zeta_pow(field: &TowerField, k: i64) -> NFElem {
        let mut raw = vec![BigRational::zero(); field.p as usize * field.p as usize];
        let a = k.rem_euclid(field.p as i64) as usize;
        raw[a] = BigRational::one();
        NFElem::from_raw(field.p, field.ell1, raw)
    }

    pub fn zeta(field: &TowerField) -> NFElem {
        NFElem::zeta_pow(field, 1)
    }

    pub fn mu(field: &TowerField) -> NFElem {
        let mut x = NFElem::zero(field);
        let n = x.n_zeta();
        x.coeffs[n] = BigRational::one();
        x
    }

    /// Builds an element from its `(p−1)×p` coefficient matrix (rows `a`, columns `b`).
    pub fn from_matrix(field: &TowerField, rows: &[Vec<BigRational>]) -> Result<NFElem> {
        let n = field.p as usize - 1;
        if rows.len() != n || rows.iter().any(|r| r.len() != field.p as usize) {
            return Err(Error::Schema(format!(
                "coefficient matrix must be {}x{}",
                n, field.p
            )));
        }
        let mut x = NFElem::zero(field);
        for (a, row) in rows.iter().enumerate() {
            for (b, c) in row.iter().enumerate() {
                x.coeffs[b * n + a] = c.clone();
            }
        }
        Ok(x)
    }

    /// The `(p−1)×p` coefficient matrix (rows `a`, columns `b`).
    pub fn to_matrix(&self) -> Vec<Vec<BigRational>> {
        (0..self.n_zeta())
            .map(|a| {
                (0..self.p as usize)
                    .map(|b| self.coeff(a, b).clone())
                    .collect()
            })
            .collect()
    }

    pub fn coeff(&self, a: usize, b: usize) -> &BigRational {
        &self.coeffs[b * self.n_zeta() + a]
    }

    /// Coefficients in the flat order `b·(p−1) + a`.
    pub fn flat(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn from_flat(field: &TowerField, coeffs: Vec<BigRational>) -> Result<NFElem> {
        if coeffs.len() != field.degree(FieldTag::Big) {
            return Err(Error::InvalidInput(
                "flat coefficient vector has wrong length".into(),
            ));
        }
        Ok(NFElem {
            p: field.p,
            ell1: field.ell1,
            coeffs,
        })
    }

    pub fn field(&self) -> TowerField {
        TowerField {
            p: self.p,
            ell1: self.ell1,
            t: primitive_root(self.p).unwrap_or(2),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when `self` lies in `Q(ζ_p)`.
    pub fn is_zeta_only(&self) -> bool {
        self.coeffs[self.n_zeta()..].iter().all(|c| c.is_zero())
    }

    /// Reduces a raw `p×p` array indexed `b·p + a` (`0 ≤ a, b < p`, with
    /// `ζ^p = 1` already applied) modulo `Φ_p`.
    fn from_raw(p: u64, ell1: u64, raw: Vec<BigRational>) -> NFElem {
        let pu = p as usize;
        let n = pu - 1;
        let mut coeffs = vec![BigRational::zero(); n * pu];
        for b in 0..pu {
            let top = raw[b * pu + n].clone();
            for a in 0..n {
                coeffs[b * n + a] = &raw[b * pu + a] - &top;
            }
        }
        NFElem { p, ell1, coeffs }
    }

    pub fn add(&self, o: &NFElem) -> NFElem {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        NFElem {
            coeffs,
            ..self.clone_shape()
        }
    }

    pub fn sub(&self, o: &NFElem) -> NFElem {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&o.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        NFElem {
            coeffs,
            ..self.clone_shape()
        }
    }

    pub fn neg(&self) -> NFElem {
        NFElem {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            ..self.clone_shape()
        }
    }

    pub fn scale(&self, c: &BigRational) -> NFElem {
        NFElem {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> NFElem {
        NFElem {
            p: self.p,
            ell1: self.ell1,
            coeffs: Vec::new(),
        }
    }

    pub fn mul(&self, o: &NFElem) -> NFElem {
        let pu = self.p as usize;
        let n = pu - 1;
        let ell1 = BigRational::from_integer(BigInt::from(self.ell1));
        let mut raw = vec![BigRational::zero(); pu * pu];
        for b1 in 0..pu {
            for a1 in 0..n {
                let x = &self.coeffs[b1 * n + a1];
                if x.is_zero() {
                    continue;
                }
                for b2 in 0..pu {
                    for a2 in 0..n {
                        let y = &o.coeffs[b2 * n + a2];
                        if y.is_zero() {
                            continue;
                        }
                        let mut term = x * y;
                        let mut b = b1 + b2;
                        if b >= pu {
                            b -= pu;
                            term *= &ell1;
                        }
                        let a = (a1 + a2) % pu;
                        raw[b * pu + a] += term;
                    }
                }
            }
        }
        NFElem::from_raw(self.p, self.ell1, raw)
    }

    pub fn pow(&self, mut e: u64) -> NFElem {
        let field = self.field();
        let mut result = NFElem::one(&field);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.mul(&b);
            }
        }
        result
    }

    /// Applies the automorphism `ζ ↦ ζ^r, μ ↦ ζ^s μ` (`p ∤ r`).
    pub fn apply_automorphism(&self, r: u64, s: u64) -> NFElem {
        let pu = self.p as usize;
        let n = pu - 1;
        let mut raw = vec![BigRational::zero(); pu * pu];
        for b in 0..pu {
            for a in 0..n {
                let c = &self.coeffs[b * n + a];
                if c.is_zero() {
                    continue;
                }
                let new_a = (a * r as usize + b * s as usize) % pu;
                raw[b * pu + new_a] += c;
            }
        }
        NFElem::from_raw(self.p, self.ell1, raw)
    }

    /// `σ^k`: `μ ↦ ζ^k μ`.
    pub fn apply_sigma(&self, k: u64) -> NFElem {
        self.apply_automorphism(1, k % self.p)
    }

    /// `δ^k`: `ζ ↦ ζ^{t^k}` where `t` is the tower's primitive root.
    pub fn apply_delta(&self, field: &TowerField, k: u64) -> NFElem {
        let r = crate::fparith::mod_pow(field.t, k, field.p);
        self.apply_automorphism(r, 0)
    }

    /// Matrix of multiplication by `self` on the flat basis, as columns.
    fn multiplication_columns(&self) -> Vec<Vec<BigRational>> {
        let field = self.field();
        let d = field.degree(FieldTag::Big);
        (0..d)
            .map(|k| {
                let mut e = vec![BigRational::zero(); d];
                e[k] = BigRational::one();
                let basis = NFElem {
                    p: self.p,
                    ell1: self.ell1,
                    coeffs: e,
                };
                self.mul(&basis).coeffs
            })
            .collect()
    }

    /// `N_{K/Q}(self)` as the determinant of multiplication by `self`.
    pub fn norm(&self) -> BigRational {
        let form = self.integral_form();
        let n = self.n_zeta();
        let field = self.field();
        let num = NFElem {
            p: self.p,
            ell1: self.ell1,
            coeffs: form
                .num
                .iter()
                .cloned()
                .map(BigRational::from_integer)
                .collect(),
        };
        let cols = num.multiplication_columns();
        // On Q(ζ_p) the block of the first p−1 coordinates is invariant and
        // the norm from K is the p-th power of the norm from Q(ζ_p).
        let (size, power) = if self.is_zeta_only() {
            (n, self.p)
        } else {
            (field.degree(FieldTag::Big), 1)
        };
        let matrix: Vec<Vec<BigInt>> = (0..size)
            .map(|r| (0..size).map(|c| cols[c][r].to_integer()).collect())
            .collect();
        let det = bareiss_determinant(matrix).pow(power as u32);
        let den = form.den.pow(field.degree(FieldTag::Big) as u32);
        BigRational::new(det, den)
    }

    /// Multiplicative inverse by exact linear algebra over `Q`.
    pub fn inv(&self) -> Result<NFElem> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inverse of zero in K".into()));
        }
        let cols = self.multiplication_columns();
        let d = cols.len();
        let mut one = vec![BigRational::zero(); d];
        one[0] = BigRational::one();
        let sol = solve_rational(&cols, &[one])?
            .pop()
            .ok_or_else(|| Error::Arithmetic("singular multiplication matrix".into()))?;
        Ok(NFElem {
            p: self.p,
            ell1: self.ell1,
            coeffs: sol,
        })
    }

    /// Numerators over the least common denominator.
    pub fn integral_form(&self) -> IntegralForm {
        let den = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        IntegralForm { num, den }
    }

    /// Largest absolute numerator or denominator, as a size measure.
    pub fn height_bits(&self) -> u64 {
        self.coeffs
            .iter()
            .map(|c| c.numer().abs().bits().max(c.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

/// Parses `"n"` or `"n/d"` into an exact rational.
/// Fraction-free determinant of a square integer matrix.
fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let parse = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Schema(format!("bad rational coefficient {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse(d)?;
            if d.is_zero() {
                return Err(Error::Schema(format!("zero denominator in {s:?}")));
            }
            Ok(BigRational::new(parse(n)?, d))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

pub fn format_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Serialized form: the coefficient matrix as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffMatrix(pub Vec<Vec<String>>);

impl Serialize for CoeffMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CoeffMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(CoeffMatrix(Vec::<Vec<String>>::deserialize(d)?))
    }
}

impl CoeffMatrix {
    pub fn to_elem(&self, field: &TowerField) -> Result<NFElem> {
        let rows = self
            .0
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        NFElem::from_matrix(field, &rows)
    }

    pub fn from_elem(x: &NFElem) -> CoeffMatrix {
        CoeffMatrix(
            x.to_matrix()
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k() -> TowerField {
        TowerField::new(5, 23).unwrap()
    }

    #[test]
    fn norms_of_simple_elements() {
        let f = k();
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        assert_eq!(NFElem::mu(&f).norm(), q(23i64.pow(4)));
        let one_minus_zeta = NFElem::one(&f).sub(&NFElem::zeta(&f));
        assert_eq!(one_minus_zeta.norm(), q(5i64.pow(5)));
        let half = NFElem::from_rational(&f, BigRational::new(1.into(), 2.into()));
        assert_eq!(
            half.norm(),
            BigRational::new(1.into(), BigInt::from(2).pow(20))
        );
        let x = NFElem::mu(&f).add(&NFElem::zeta(&f));
        let y = NFElem::mu(&f).pow(2).sub(&NFElem::from_int(&f, 3));
        assert_eq!(x.mul(&y).norm(), x.norm() * y.norm());
    }

    #[test]
    fn generators_satisfy_defining_relations() {
        let f = k();
        let z = NFElem::zeta(&f);
        let m = NFElem::mu(&f);
        assert_eq!(z.pow(5), NFElem::one(&f));
        assert_ne!(z.pow(1), NFElem::one(&f));
        assert_eq!(m.pow(5), NFElem::from_int(&f, 23));
        let phi = (0..5).fold(NFElem::zero(&f), |acc, i| acc.add(&z.pow(i)));
        assert!(phi.is_zero());
    }

    #[test]
    fn automorphisms() {
        let f = k();
        let m = NFElem::mu(&f);
        let z = NFElem::zeta(&f);
        assert_eq!(m.apply_sigma(1), z.mul(&m));
        assert_eq!(z.apply_delta(&f, 1), z.pow(2));
        let x = z.add(&m.mul(&m)).add(&NFElem::from_int(&f, 3));
        assert_eq!(x.apply_sigma(5), x);
        assert_eq!(x.apply_delta(&f, 4), x);
        let y = x.mul(&m.add(&z));
        assert_eq!(
            y.apply_sigma(2),
            x.apply_sigma(2).mul(&m.add(&z).apply_sigma(2))
        );
    }

    #[test]
    fn inverse() {
        let f = k();
        let x = NFElem::mu(&f).sub(&NFElem::from_int(&f, 23));
        let y = x.inv().unwrap();
        assert_eq!(x.mul(&y), NFElem::one(&f));
    }

    #[test]
    fn serialization_round_trip() {
        let f = k();
        let x = NFElem::mu(&f)
            .scale(&BigRational::new(BigInt::from(-3), BigInt::from(7)))
            .add(&NFElem::zeta(&f));
        let m = CoeffMatrix::from_elem(&x);
        assert_eq!(m.to_elem(&f).unwrap(), x);
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }
}
