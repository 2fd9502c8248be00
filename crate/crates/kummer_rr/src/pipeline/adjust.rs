use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::kolyvagin::Derivatives;
use crate::error::{Error, Result};
use crate::fparith::Ramification;
use crate::numfield::{FieldTag, Splitting};
use crate::sunitlat::{
    solve_by_characters, CharTable, Ell0Table, Ell1Table, OrdLog, PAdicTable, SUnitLattice,
    SUnitVec,
};

/// Local data at the primes of `K` above `p`, `ℓ₀` and `ℓ₁`.
#[derive(Debug, Clone)]
pub struct LocalData {
    pub ramification: Ramification,
    pub at_p: Vec<PAdicTable>,
    pub at_ell0: Ell0Table,
    pub at_ell1: Ell1Table,
}

/// Output of the two adjustments of `a1_cand`.
#[derive(Debug, Clone)]
pub struct AdjustedA1 {
    pub i: u64,
    pub j: u64,
    /// Index of `𝔏₀` among the primes above `ℓ₀`.
    pub ell0_prime: usize,
    pub a1: SUnitVec,
    /// Indices of the primes above `ℓ₀` that split in the extension cut out by `a1`.
    pub split_set: Vec<usize>,
}

/// The `Δ`-orbit of the prime with index `idx`: all primes with the same image of `μ`.
pub fn delta_orbit(table: &Ell0Table, idx: usize) -> BTreeSet<usize> {
    let label = table.mu_label(idx);
    (0..table.primes.len())
        .filter(|&k| table.mu_label(k) == label)
        .collect()
}

/// Primes above `ℓ₀` at which the class of `v` is a `p`-th power.
pub fn split_set(table: &Ell0Table, v: &[u64]) -> Vec<usize> {
    (0..table.primes.len())
        .filter(|&k| table.ord_log(k, v, 0, 0) == OrdLog { ord: 0, log: 0 })
        .collect()
}

/// Whether the split set of `v` is exactly one `Δ`-orbit.
pub fn splits_at_one_orbit(table: &Ell0Table, v: &[u64]) -> bool {
    let split = split_set(table, v);
    match split.first() {
        None => false,
        Some(&first) => delta_orbit(table, first) == split.iter().copied().collect(),
    }
}

fn unramified_everywhere(at_p: &[PAdicTable], v: &[u64]) -> Result<bool> {
    for t in at_p {
        if !t.unramified(v, 0)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether the class of `v` is a `p`-th power in every completion above `p`.
pub fn split_at_p(at_p: &[PAdicTable], v: &[u64]) -> Result<bool> {
    for t in at_p {
        if t.splitting(v, 0)? != Splitting::Split {
            return Ok(false);
        }
    }
    Ok(true)
}

fn unique<T>(found: Vec<T>, stage: &'static str) -> Result<T> {
    let n = found.len();
    let mut it = found.into_iter();
    match (it.next(), n) {
        (Some(x), 1) => Ok(x),
        _ => Err(Error::Uniqueness { stage, found: n }),
    }
}

/// Finds `i` making `a1_cand + i·[ζ_p]` unramified above `p`, then `j`
/// making `… + j·[a₀]` split at exactly one `Δ`-orbit above `ℓ₀`, and
/// fixes `𝔏₀` as the first prime of that orbit.
pub fn adjust_a1(
    lat: &SUnitLattice,
    local: &LocalData,
    a1_cand: &SUnitVec,
    a0: &SUnitVec,
) -> Result<AdjustedA1> {
    let p = lat.p();
    let zeta = lat.include(&lat.zeta_small)?;
    let mut found_i = Vec::new();
    for i in 0..p {
        let v = SUnitVec::combine(&[(1, a1_cand), (i as i64, &zeta)], p)?;
        if unramified_everywhere(&local.at_p, &v.exps)? {
            found_i.push((i, v));
        }
    }
    let (i, a1_i) = unique(found_i, "a1 adjustment (unramified above p)")?;

    let a0_big = lat.include(a0)?;
    let mut found_j = Vec::new();
    for t in 0..p {
        let v = SUnitVec::combine(&[(1, &a1_i), (t as i64, &a0_big)], p)?;
        if splits_at_one_orbit(&local.at_ell0, &v.exps) {
            found_j.push((t, v));
        }
    }
    let (j, a1) = unique(found_j, "a1 adjustment (one split Δ-orbit above ℓ₀)")?;
    let split = split_set(&local.at_ell0, &a1.exps);
    Ok(AdjustedA1 {
        i,
        j,
        ell0_prime: split[0],
        a1,
        split_set: split,
    })
}

/// Whether `a1` is a `p`-th power at every prime of `K` above `ℓ₁`.
pub fn condition_i(local: &LocalData, a1: &SUnitVec) -> bool {
    local.at_ell1.all_trivial(&a1.exps)
}

/// Small-lattice coordinates of the rational prime `ℓ₀`, read off from its
/// characters at the auxiliary primes.
pub fn ell0_coordinates(lat: &SUnitLattice, tables: &[CharTable]) -> Result<SUnitVec> {
    let ell0 = lat.params.ell0;
    let mut rows = Vec::new();
    let mut target = Vec::new();
    for t in tables {
        let chi = t.prime.character_of_residue(ell0 % t.prime.q)?;
        for row in &t.small {
            rows.push(row.clone());
            target.push(chi);
        }
    }
    let exps = solve_by_characters(lat.p(), &rows, &target)
        .ok_or_else(|| Error::Infeasible("ℓ₀ is not in the small lattice".into()))?;
    Ok(SUnitVec {
        tag: FieldTag::Small,
        exps,
    })
}

/// Output of the construction of `b2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct B2Data {
    pub xi: Vec<u64>,
    /// `ω⁰` component of the modified candidate.
    pub b_tilde: Vec<u64>,
    pub k: u64,
    /// Whether the adjustment at `p` was skipped (tame, or `p` a `p`-th power mod `ℓ₀`).
    pub k_skipped: bool,
    pub m: u64,
    /// Lattice part of `b2 = b̃ + k·[p] + m·[ℓ₀]`; the `p^k` factor is carried by `k`.
    pub b2: Vec<u64>,
    /// `(ord, log)` of `b2` at `𝔏₀`.
    pub at_ell0_prime: (u64, u64),
}

/// Builds `b2` from `γ` and the adjusted `a1`. Must only be called when
/// condition (i) holds.
#[allow(clippy::too_many_arguments)]
pub fn build_b2(
    lat: &SUnitLattice,
    local: &LocalData,
    tables: &[CharTable],
    gamma: &SUnitVec,
    adj: &AdjustedA1,
    a0: &SUnitVec,
) -> Result<B2Data> {
    let p = lat.p();
    let small_part = SUnitVec::combine(&[(adj.i as i64, &lat.zeta_small), (adj.j as i64, a0)], p)?;
    let xi = lat
        .solve_norm(&small_part, 1)
        .map_err(|e| e.at("ξ with Nm(ξ) = a1 mod K"))?;
    let d = Derivatives::new(lat);
    let raw = SUnitVec::combine(
        &[
            (-2, &d.apply(2, gamma)?),
            (-2, &d.apply(1, &xi)?),
            (-1, &adj.a1),
        ],
        p,
    )?;
    let b_tilde = lat.isotypic_project(&raw, 0)?;
    let rest = SUnitVec::combine(&[(1, &raw), (-1, &b_tilde)], p)?;
    if lat.inclusion.solve(&rest.exps).is_none() {
        return Err(Error::Infeasible(
            "the non-trivial isotypic part of b̃ does not come from Q(ζ_p)".into(),
        ));
    }

    let ell0 = &local.at_ell0;
    let k_skipped = local.ramification == Ramification::Tame || ell0.log_p == 0;
    let k = if k_skipped {
        0
    } else {
        let table = local
            .at_p
            .first()
            .ok_or_else(|| Error::Arithmetic("no prime above p".into()))?;
        let level = 2 * (p as usize - 1);
        let mut found = Vec::new();
        for k in 0..p {
            if table.one_mod(&b_tilde.exps, k, level)? {
                found.push(k);
            }
        }
        unique(found, "b2 adjustment (finite-flat at p)")?
    };

    let big = adj.ell0_prime;
    let x = ell0.ord_log(big, &b_tilde.exps, k, 0);
    let b = ell0.mt_functional(OrdLog { ord: 1, log: 0 });
    let b_inv =
        crate::fparith::mod_inv(b, p).map_err(|_| Error::Arithmetic("ζ′_MT vanishes".into()))?;
    let m = (p - ell0.mt_functional(x) % p) % p * b_inv % p;

    let ell0_big = lat.include(&ell0_coordinates(lat, tables)?)?;
    let b2 = SUnitVec::combine(&[(1, &b_tilde), (m as i64, &ell0_big)], p)?;
    let at = ell0.ord_log(big, &b2.exps, k, 0);
    let expected = ell0.ord_log(big, &b_tilde.exps, k, m);
    if at != expected {
        return Err(Error::Arithmetic(
            "lattice coordinates of ℓ₀ disagree with its local data at 𝔏₀".into(),
        ));
    }
    Ok(B2Data {
        xi: xi.exps,
        b_tilde: b_tilde.exps,
        k,
        k_skipped,
        m,
        b2: b2.exps,
        at_ell0_prime: (at.ord, at.log),
    })
}

/// Whether `b2` is a `p`-th power at `𝔏₀`.
pub fn condition_ii(b2: &B2Data) -> bool {
    b2.at_ell0_prime == (0, 0)
}
