use serde::{Deserialize, Serialize};

use super::seed::SeedData;
use crate::error::{Error, Result};
use crate::fparith::{check_assumptions, mod_inv, mod_pow, FpMatrix, TripleParams};
use crate::numfield::{FieldTag, IntegralForm, NFElem, TowerField};

/// An element of `U_{F,S} ⊗ F_p` in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SUnitVec {
    pub tag: FieldTag,
    pub exps: Vec<u64>,
}

impl SUnitVec {
    pub fn zero(tag: FieldTag, n: usize) -> SUnitVec {
        SUnitVec {
            tag,
            exps: vec![0; n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(|&x| x == 0)
    }

    fn check(&self, o: &SUnitVec) -> Result<()> {
        if self.tag != o.tag || self.exps.len() != o.exps.len() {
            return Err(Error::InvalidInput(
                "S-unit vectors from different lattices".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, o: &SUnitVec, p: u64) -> Result<SUnitVec> {
        self.check(o)?;
        Ok(SUnitVec {
            tag: self.tag,
            exps: self
                .exps
                .iter()
                .zip(&o.exps)
                .map(|(a, b)| (a + b) % p)
                .collect(),
        })
    }

    pub fn scale(&self, c: i64, p: u64) -> SUnitVec {
        let c = c.rem_euclid(p as i64) as u64;
        SUnitVec {
            tag: self.tag,
            exps: self.exps.iter().map(|a| a * c % p).collect(),
        }
    }

    /// `Σ c_k · v_k`.
    pub fn combine(terms: &[(i64, &SUnitVec)], p: u64) -> Result<SUnitVec> {
        let first = terms
            .first()
            .ok_or_else(|| Error::InvalidInput("empty linear combination".into()))?;
        let mut acc = SUnitVec::zero(first.1.tag, first.1.exps.len());
        for (c, v) in terms {
            acc = acc.add(&v.scale(*c, p), p)?;
        }
        Ok(acc)
    }
}

/// A generator of `Gal(K/Q)` used in words.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GaloisGen {
    Sigma,
    Delta,
}

/// Structurally validated seed data with the Galois action in the
/// column convention `v ↦ M·v` (the transpose of the seed's row layout).
#[derive(Debug, Clone)]
pub struct SUnitLattice {
    pub params: TripleParams,
    pub field: TowerField,
    pub small: Vec<NFElem>,
    pub big: Vec<NFElem>,
    pub small_forms: Vec<IntegralForm>,
    pub big_forms: Vec<IntegralForm>,
    pub sigma: FpMatrix,
    pub delta: FpMatrix,
    /// Small coordinates to big coordinates.
    pub inclusion: FpMatrix,
    /// Action of `δ` on the small lattice, derived through the inclusion.
    pub delta_small: FpMatrix,
    /// `[ζ_p]` in small coordinates.
    pub zeta_small: SUnitVec,
}

/// Expected lattice ranks `(small, big)`: torsion, units, and the primes over `ℓ₀`.
pub fn expected_dimensions(p: u64) -> (usize, usize) {
    let p = p as usize;
    let small = 1 + (p - 3) / 2 + (p - 1);
    let n = p * (p - 1);
    let big = 1 + (n / 2 - 1) + n;
    (small, big)
}

fn matrix_from_seed(
    p: u64,
    rows: &[Vec<u64>],
    n_rows: usize,
    n_cols: usize,
    name: &str,
) -> Result<FpMatrix> {
    if rows.len() != n_rows || rows.iter().any(|r| r.len() != n_cols) {
        return Err(Error::Schema(format!("{name} must be {n_rows}x{n_cols}")));
    }
    if rows.iter().flatten().any(|&x| x >= p) {
        return Err(Error::Schema(format!("{name} has entries outside 0..{p}")));
    }
    let signed: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    Ok(FpMatrix::from_rows(p, &signed)?.transpose())
}

/// `k` with `u = ±ζ^k`, if `u` is a root of unity of that shape.
fn torsion_exponent(field: &TowerField, u: &NFElem) -> Option<u64> {
    (1..field.p).find(|&k| {
        let z = NFElem::zeta_pow(field, k as i64);
        *u == z || *u == z.neg()
    })
}

impl SUnitLattice {
    pub fn from_seed(seed: &SeedData) -> Result<SUnitLattice> {
        let mut lat = SUnitLattice::parse(seed)?;
        lat.derive()?;
        Ok(lat)
    }

    /// Structural validation only; Galois-derived fields are left empty.
    pub(crate) fn parse(seed: &SeedData) -> Result<SUnitLattice> {
        let params = seed.params;
        let report = check_assumptions(params)?;
        if !report.holds {
            return Err(Error::InvalidInput(format!(
                "triple {params} fails the assumptions: {}",
                report.failures().join("; ")
            )));
        }
        if !seed.class_number_coprimality_flag {
            return Err(Error::Schema(
                "class_number_coprimality_flag is false: p may divide h_K".into(),
            ));
        }
        let p = params.p;
        let field = TowerField::new(p, params.ell1)?;
        let (ns, nb) = expected_dimensions(p);
        if seed.basis_small.len() != ns || seed.basis_big.len() != nb {
            return Err(Error::Schema(format!(
                "basis sizes {} and {} do not match the expected ranks {ns} and {nb}",
                seed.basis_small.len(),
                seed.basis_big.len()
            )));
        }
        let small = seed
            .basis_small
            .iter()
            .map(|m| m.to_elem(&field))
            .collect::<Result<Vec<_>>>()?;
        if let Some(i) = small.iter().position(|x| !x.is_zeta_only() || x.is_zero()) {
            return Err(Error::Refuted {
                check: "basis_small element is not a nonzero element of Q(ζ_p)".into(),
                row: i,
                witness: 0,
            });
        }
        let big = seed
            .basis_big
            .iter()
            .map(|m| m.to_elem(&field))
            .collect::<Result<Vec<_>>>()?;
        if let Some(i) = big.iter().position(|x| x.is_zero()) {
            return Err(Error::Refuted {
                check: "basis_big element is zero".into(),
                row: i,
                witness: 0,
            });
        }
        let sigma = matrix_from_seed(p, &seed.sigma_matrix, nb, nb, "sigma_matrix")?;
        let delta = matrix_from_seed(p, &seed.delta_matrix, nb, nb, "delta_matrix")?;
        let inclusion = matrix_from_seed(p, &seed.inclusion_matrix, ns, nb, "inclusion_matrix")?;
        let small_forms = small.iter().map(|x| x.integral_form()).collect();
        let big_forms = big.iter().map(|x| x.integral_form()).collect();
        Ok(SUnitLattice {
            params,
            field,
            small,
            big,
            small_forms,
            big_forms,
            sigma,
            delta,
            inclusion,
            delta_small: FpMatrix::zero(p, ns, ns),
            zeta_small: SUnitVec::zero(FieldTag::Small, ns),
        })
    }

    /// Derives `δ` on the small lattice and `[ζ_p]` from parsed data.
    pub(crate) fn derive(&mut self) -> Result<()> {
        let p = self.p();
        let ns = self.small.len();
        let (field, small, big, delta, inclusion) = (
            &self.field,
            &self.small,
            &self.big,
            &self.delta,
            &self.inclusion,
        );
        if inclusion.rank() != ns {
            return Err(Error::Refuted {
                check: "inclusion matrix is not injective".into(),
                row: 0,
                witness: 0,
            });
        }
        let mut delta_small = FpMatrix::zero(p, ns, ns);
        for i in 0..ns {
            let image = delta.mul_vec(&inclusion.column(i));
            let col = inclusion.solve(&image).ok_or(Error::Refuted {
                check: "δ does not preserve the small lattice".into(),
                row: i,
                witness: 0,
            })?;
            for (r, x) in col.into_iter().enumerate() {
                delta_small.set(r, i, x);
            }
        }
        let k = torsion_exponent(field, &small[0]).ok_or_else(|| Error::Refuted {
            check: "basis_small[0] is not a torsion generator ±ζ^k".into(),
            row: 0,
            witness: 0,
        })?;
        if torsion_exponent(field, &big[0]) != Some(k) {
            return Err(Error::Refuted {
                check: "basis_big[0] differs from basis_small[0]".into(),
                row: 0,
                witness: 0,
            });
        }
        let mut zeta_small = SUnitVec::zero(FieldTag::Small, ns);
        zeta_small.exps[0] = mod_inv(k, p)?;
        self.delta_small = delta_small;
        self.zeta_small = zeta_small;
        Ok(())
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn dim(&self, tag: FieldTag) -> usize {
        match tag {
            FieldTag::Small => self.small.len(),
            FieldTag::Big => self.big.len(),
        }
    }

    pub fn delta_for(&self, tag: FieldTag) -> &FpMatrix {
        match tag {
            FieldTag::Small => &self.delta_small,
            FieldTag::Big => &self.delta,
        }
    }

    /// Matrix of the word `g₁^{e₁}·…·g_k^{e_k}` acting on the tagged lattice.
    pub fn word_matrix(&self, tag: FieldTag, word: &[(GaloisGen, i64)]) -> Result<FpMatrix> {
        let p = self.p();
        let mut m = FpMatrix::identity(p, self.dim(tag));
        for &(g, e) in word {
            let (base, order) = match (g, tag) {
                (GaloisGen::Sigma, FieldTag::Big) => (&self.sigma, p),
                (GaloisGen::Sigma, FieldTag::Small) => {
                    // σ fixes Q(ζ_p).
                    continue;
                }
                (GaloisGen::Delta, _) => (self.delta_for(tag), p - 1),
            };
            m = m.mul(&base.pow(e.rem_euclid(order as i64) as u64));
        }
        Ok(m)
    }

    pub fn apply_galois(&self, word: &[(GaloisGen, i64)], v: &SUnitVec) -> Result<SUnitVec> {
        self.check_len(v)?;
        Ok(SUnitVec {
            tag: v.tag,
            exps: self.word_matrix(v.tag, word)?.mul_vec(&v.exps),
        })
    }

    fn check_len(&self, v: &SUnitVec) -> Result<()> {
        if v.exps.len() != self.dim(v.tag) {
            return Err(Error::InvalidInput(
                "vector length does not match the lattice".into(),
            ));
        }
        Ok(())
    }

    /// `ω(δ^k) = t^k`, where `δ(ζ) = ζ^t`.
    pub fn omega(&self, k: u64) -> u64 {
        mod_pow(self.field.t, k, self.p())
    }

    /// The idempotent `ε_{ω^i}` on the tagged lattice.
    pub fn projector(&self, tag: FieldTag, i: i64) -> Result<FpMatrix> {
        isotypic_projector(self.delta_for(tag), self.field.t, i)
    }

    pub fn isotypic_project(&self, v: &SUnitVec, i: i64) -> Result<SUnitVec> {
        self.check_len(v)?;
        Ok(SUnitVec {
            tag: v.tag,
            exps: self.projector(v.tag, i)?.mul_vec(&v.exps),
        })
    }

    /// `N = Σ_{k=0}^{p−1} σ^k` on the big lattice.
    pub fn norm_matrix(&self) -> FpMatrix {
        kolyvagin_operator(&self.sigma, 0)
    }

    pub fn include(&self, w: &SUnitVec) -> Result<SUnitVec> {
        if w.tag != FieldTag::Small {
            return Err(Error::InvalidInput(
                "inclusion expects a small-field vector".into(),
            ));
        }
        self.check_len(w)?;
        Ok(SUnitVec {
            tag: FieldTag::Big,
            exps: self.inclusion.mul_vec(&w.exps),
        })
    }

    /// `Nm_{K/Q(ζ_p)}` in small coordinates.
    pub fn norm_map(&self, v: &SUnitVec) -> Result<SUnitVec> {
        if v.tag != FieldTag::Big {
            return Err(Error::InvalidInput(
                "norm expects a big-field vector".into(),
            ));
        }
        self.check_len(v)?;
        let image = self.norm_matrix().mul_vec(&v.exps);
        let w = self
            .inclusion
            .solve(&image)
            .ok_or_else(|| Error::Infeasible("norm image is not in the small lattice".into()))?;
        Ok(SUnitVec {
            tag: FieldTag::Small,
            exps: w,
        })
    }

    /// A big vector `γ` with `Nm(γ) = c` and `ε_{ω^i} γ = γ`, free variables set to zero.
    pub fn solve_norm(&self, c: &SUnitVec, i: i64) -> Result<SUnitVec> {
        let p = self.p();
        let target = self.include(c)?;
        let n = self.dim(FieldTag::Big);
        let eigen = self.delta.sub(&FpMatrix::identity(p, n).scale(mod_pow(
            self.field.t,
            i.rem_euclid(p as i64 - 1) as u64,
            p,
        )));
        let system = self.norm_matrix().vstack(&eigen);
        let mut rhs = target.exps.clone();
        rhs.extend(std::iter::repeat_n(0, n));
        let x = system.solve(&rhs).ok_or_else(|| {
            Error::Infeasible(format!("no ω^{i}-isotypic element has the requested norm"))
        })?;
        Ok(SUnitVec {
            tag: FieldTag::Big,
            exps: x,
        })
    }
}

/// The idempotent `ε_{ω^i} = (p−1)^{−1} Σ_k ω^{−i}(δ^k) δ^k` for a matrix
/// `δ` of order dividing `p−1` with `ω(δ) = t`.
pub fn isotypic_projector(delta: &FpMatrix, t: u64, i: i64) -> Result<FpMatrix> {
    let p = delta.p;
    let n = delta.rows;
    let mut acc = FpMatrix::zero(p, n, n);
    let mut dk = FpMatrix::identity(p, n);
    let i = i.rem_euclid(p as i64 - 1) as u64;
    for k in 0..p - 1 {
        let chi = mod_inv(mod_pow(mod_pow(t, k, p), i, p), p)?;
        acc = acc.add(&dk.scale(chi));
        dk = dk.mul(delta);
    }
    Ok(acc.scale(mod_inv(p - 1, p)?))
}

/// `D^i_g = Σ_{j=0}^{p−1} C(j, i)·g^j`.
pub fn kolyvagin_operator(g: &FpMatrix, order: u64) -> FpMatrix {
    let p = g.p;
    let mut acc = FpMatrix::zero(p, g.rows, g.cols);
    let mut gj = FpMatrix::identity(p, g.rows);
    for j in 0..p {
        acc = acc.add(&gj.scale(binomial_mod(j, order, p)));
        gj = gj.mul(g);
    }
    acc
}

fn binomial_mod(n: u64, k: u64, p: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = num * ((n - i) % p) % p;
        den = den * ((i + 1) % p) % p;
    }
    num * mod_inv(den, p).unwrap_or(0) % p
}
