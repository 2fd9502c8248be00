use super::lattice::{SUnitLattice, SUnitVec};
use super::local::PAdicTable;
use crate::error::{Error, Result};
use crate::fparith::FpMatrix;
use crate::numfield::{primes_above, FieldTag, Splitting};

/// Representatives of the lines of the column space spanned by `basis`,
/// one per line, with last nonzero coefficient 1 in terms of `basis`.
pub fn lines_of(p: u64, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let d = basis.len();
    if d == 0 {
        return Vec::new();
    }
    let n = basis[0].len();
    let mut out = Vec::new();
    let total = p.pow(d as u32);
    for code in 1..total {
        let mut coeffs = Vec::with_capacity(d);
        let mut c = code;
        for _ in 0..d {
            coeffs.push(c % p);
            c /= p;
        }
        // Keep only combinations whose last nonzero coefficient is 1.
        if coeffs.iter().rev().find(|&&x| x != 0) != Some(&1) {
            continue;
        }
        let mut v = vec![0u64; n];
        for (k, b) in coeffs.iter().zip(basis) {
            for (vi, bi) in v.iter_mut().zip(b) {
                *vi = (*vi + k * bi) % p;
            }
        }
        out.push(v);
    }
    out
}

/// Basis of the `ω^i`-isotypic subspace of the tagged lattice.
pub fn isotypic_basis(lat: &SUnitLattice, tag: FieldTag, i: i64) -> Result<Vec<Vec<u64>>> {
    Ok(lat.projector(tag, i)?.column_space_basis())
}

/// The unique `ω²`-isotypic line `c` split at `(1 − ζ_p)` and the unique
/// `ω`-isotypic line `a₀` unramified at `(1 − ζ_p)` and ramified at `ℓ₀`.
#[derive(Debug, Clone)]
pub struct BaseLines {
    pub c: SUnitVec,
    pub a0: SUnitVec,
    /// Number of lines examined in each search.
    pub lines_examined: (usize, usize),
}

pub fn find_c_and_a0(lat: &SUnitLattice) -> Result<BaseLines> {
    let p = lat.p();
    let lambda = primes_above(&lat.field, FieldTag::Small, p)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Arithmetic("no prime above p in Q(ζ_p)".into()))?;
    let table = PAdicTable::new(&lambda, &lat.small_forms, 0)?;
    let ell0_primes = primes_above(&lat.field, FieldTag::Small, lat.params.ell0)?;
    let ords: Vec<Vec<i64>> = ell0_primes
        .iter()
        .map(|pr| {
            lat.small_forms
                .iter()
                .map(|f| pr.local_unit(f).map(|(v, _)| v))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let ramified_at_ell0 = |v: &[u64]| {
        ords.iter().any(|row| {
            let s: i64 = row.iter().zip(v).map(|(o, &e)| o * e as i64).sum();
            s.rem_euclid(p as i64) != 0
        })
    };

    let c_lines = lines_of(p, &isotypic_basis(lat, FieldTag::Small, 2)?);
    let mut c_found = Vec::new();
    for v in &c_lines {
        if table.splitting(v, 0)? == Splitting::Split {
            c_found.push(v.clone());
        }
    }
    let a_lines = lines_of(p, &isotypic_basis(lat, FieldTag::Small, 1)?);
    let mut a_found = Vec::new();
    for v in &a_lines {
        if table.unramified(v, 0)? && ramified_at_ell0(v) {
            a_found.push(v.clone());
        }
    }
    if c_found.len() != 1 {
        return Err(Error::Uniqueness {
            stage: "search for c",
            found: c_found.len(),
        });
    }
    if a_found.len() != 1 {
        return Err(Error::Uniqueness {
            stage: "search for a0",
            found: a_found.len(),
        });
    }
    let wrap = |exps: Vec<u64>| SUnitVec {
        tag: FieldTag::Small,
        exps,
    };
    Ok(BaseLines {
        c: wrap(c_found.remove(0)),
        a0: wrap(a_found.remove(0)),
        lines_examined: (c_lines.len(), a_lines.len()),
    })
}

/// Coordinates of an element of the small lattice from its characters, by
/// solving against the character matrix of the basis.
pub fn solve_by_characters(p: u64, basis_chars: &[Vec<u64>], target: &[u64]) -> Option<Vec<u64>> {
    let rows: Vec<Vec<i64>> = basis_chars
        .iter()
        .map(|r| r.iter().map(|&x| x as i64).collect())
        .collect();
    FpMatrix::from_rows(p, &rows).ok()?.solve(target)
}
