use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::chars::{select_aux_primes, CharTable};
use super::lattice::SUnitLattice;
use super::seed::SeedData;
use crate::error::{Error, Result};
use crate::fparith::{FpMatrix, TripleParams};
use crate::numfield::{FieldTag, IntegralForm, NFElem};

/// Default number of auxiliary primes.
pub const DEFAULT_TRIALS: usize = 20;

/// Minimum number of primes of `K` outside `S` at which every basis element
/// must have valuation zero.
pub const MIN_SAMPLED_PRIMES: usize = 30;

/// Summary of a successful certification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CertReport {
    pub params: TripleParams,
    pub rank_small: usize,
    pub rank_big: usize,
    pub trials: usize,
    pub aux_primes: Vec<u64>,
    /// Primes of `K` at which every basis element was checked to be a unit.
    pub sampled_primes: usize,
    /// Names of the checks that passed.
    pub checks: Vec<String>,
    /// Heuristic probability that a wrong matrix row survived, `p^{−trials}`.
    pub heuristic_error: f64,
}

/// Certified lattice data together with the character tables used to certify it.
#[derive(Debug, Clone)]
pub struct Certified {
    pub lattice: SUnitLattice,
    pub report: CertReport,
    pub tables: Vec<CharTable>,
}

fn refuted(check: &str, row: usize, witness: u64) -> Error {
    Error::Refuted {
        check: check.into(),
        row,
        witness,
    }
}

/// Whether `n = ±ℓ^k` for some `k ≥ 0`.
fn is_signed_power_of(n: &BigInt, ell: u64) -> bool {
    let ell = BigInt::from(ell);
    let mut n = n.abs();
    while n > BigInt::one() {
        let (q, r) = n.div_rem(&ell);
        if r.bits() != 0 {
            return false;
        }
        n = q;
    }
    n.is_one()
}

/// Checks that `N_{K/Q}(u)` is `±ℓ₀^k` for every basis element.
fn check_norms(elements: &[NFElem], ell0: u64, name: &str) -> Result<()> {
    for (i, x) in elements.iter().enumerate() {
        let n = x.norm();
        if !(is_signed_power_of(n.numer(), ell0) && is_signed_power_of(n.denom(), ell0)) {
            return Err(refuted(
                &format!("{name} element has a norm prime to ℓ₀"),
                i,
                0,
            ));
        }
    }
    Ok(())
}

fn check_relations(lat: &SUnitLattice) -> Result<()> {
    let p = lat.p();
    let nb = lat.dim(FieldTag::Big);
    let ns = lat.dim(FieldTag::Small);
    let id = FpMatrix::identity(p, nb);
    if lat.sigma.pow(p) != id {
        return Err(refuted("σ^p is not the identity", 0, 0));
    }
    if lat.delta.pow(p - 1) != id {
        return Err(refuted("δ^(p−1) is not the identity", 0, 0));
    }
    if lat.delta_small.pow(p - 1) != FpMatrix::identity(p, ns) {
        return Err(refuted(
            "δ^(p−1) is not the identity on the small lattice",
            0,
            0,
        ));
    }
    let delta_inv = lat
        .delta
        .inverse()
        .ok_or_else(|| refuted("δ matrix is singular", 0, 0))?;
    if lat.delta.mul(&lat.sigma).mul(&delta_inv) != lat.sigma.pow(lat.field.t) {
        return Err(refuted("δσδ⁻¹ differs from σ^ω(δ)", 0, 0));
    }
    Ok(())
}

/// Character identities at one auxiliary prime, using the seed's row layout.
fn check_table(seed: &SeedData, lat: &SUnitLattice, table: &CharTable) -> Result<()> {
    let p = lat.p();
    let t = lat.field.t;
    let aux = &table.prime;
    let q = aux.q;
    let dot = |row: &[u64], chi: &[u64]| row.iter().zip(chi).fold(0, |a, (m, c)| (a + m * c) % p);
    for k in 1..p {
        for j in 0..p {
            let here = &table.big[aux.point(k, j)];
            // σ moves the point (k, j) to (k, j + k); δ moves it to (k·t, j).
            let after_sigma = &table.big[aux.point(k, j + k)];
            let after_delta = &table.big[aux.point(k * t % p, j)];
            for (i, row) in seed.sigma_matrix.iter().enumerate() {
                if after_sigma[i] != dot(row, here) {
                    return Err(refuted(
                        "sigma_matrix row is not a p-th power relation",
                        i,
                        q,
                    ));
                }
            }
            for (i, row) in seed.delta_matrix.iter().enumerate() {
                if after_delta[i] != dot(row, here) {
                    return Err(refuted(
                        "delta_matrix row is not a p-th power relation",
                        i,
                        q,
                    ));
                }
            }
            let small = &table.small[(k - 1) as usize];
            for (i, row) in seed.inclusion_matrix.iter().enumerate() {
                if small[i] != dot(row, here) {
                    return Err(refuted(
                        "inclusion_matrix row is not a p-th power relation",
                        i,
                        q,
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Certifies exporter output: exact structural and norm checks, Galois
/// relations as matrix identities, and character checks at `trials`
/// auxiliary primes. Any failure names the row and the witness prime.
pub fn certify_seed(seed: &SeedData, trials: usize) -> Result<Certified> {
    let mut lat = SUnitLattice::parse(seed)?;
    let params = lat.params;
    let p = params.p;
    let mut checks = vec!["structure".to_string()];

    let per_prime = (p * (p - 1)) as usize;
    let count = trials.max(MIN_SAMPLED_PRIMES.div_ceil(per_prime)).max(1);
    let forms: Vec<&IntegralForm> = lat.small_forms.iter().chain(&lat.big_forms).collect();
    let primes = select_aux_primes(p, params.ell1, &[params.ell0, p], &forms, p, count)?;
    let mut tables = Vec::with_capacity(primes.len());
    for aux in primes {
        let q = aux.q;
        match CharTable::build(aux, &lat.small_forms, &lat.big_forms)? {
            Ok(table) => tables.push(table),
            Err(z) => {
                let which = if z.small { "basis_small" } else { "basis_big" };
                return Err(refuted(
                    &format!("{which} element has positive valuation outside S"),
                    z.index,
                    q,
                ));
            }
        }
    }
    checks.push(format!(
        "units at {} primes outside S",
        tables.len() * per_prime
    ));

    for table in &tables {
        check_table(seed, &lat, table)?;
    }
    checks.push("Galois and inclusion rows".into());

    let last = tables.last().map(|t| t.prime.q).unwrap_or(0);
    let big_rows: Vec<Vec<i64>> = tables
        .iter()
        .flat_map(|t| t.big.iter().map(|r| r.iter().map(|&x| x as i64).collect()))
        .collect();
    if FpMatrix::from_rows(p, &big_rows)?.rank() != lat.dim(FieldTag::Big) {
        return Err(refuted(
            "basis_big is dependent modulo p-th powers",
            0,
            last,
        ));
    }
    let small_rows: Vec<Vec<i64>> = tables
        .iter()
        .flat_map(|t| {
            t.small
                .iter()
                .map(|r| r.iter().map(|&x| x as i64).collect())
        })
        .collect();
    if FpMatrix::from_rows(p, &small_rows)?.rank() != lat.dim(FieldTag::Small) {
        return Err(refuted(
            "basis_small is dependent modulo p-th powers",
            0,
            last,
        ));
    }
    checks.push("bases independent modulo p-th powers".into());

    check_norms(&lat.small, params.ell0, "basis_small")?;
    check_norms(&lat.big, params.ell0, "basis_big")?;
    checks.push("norms are ±ℓ₀^k".into());

    lat.derive()?;
    check_relations(&lat)?;
    checks.push("σ^p = 1, δ^(p−1) = 1, δσδ⁻¹ = σ^ω(δ)".into());

    let report = CertReport {
        params,
        rank_small: lat.dim(FieldTag::Small) - 1,
        rank_big: lat.dim(FieldTag::Big) - 1,
        trials: tables.len(),
        aux_primes: tables.iter().map(|t| t.prime.q).collect(),
        sampled_primes: tables.len() * per_prime,
        checks,
        heuristic_error: (p as f64).powi(-(tables.len() as i32)),
    };
    Ok(Certified {
        lattice: lat,
        report,
        tables,
    })
}
