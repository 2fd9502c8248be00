//! End-to-end construction of the Kummer generators `a1` and `b2` from
//! certified S-unit data, and the two splitting conditions.

mod adjust;
mod kolyvagin;

pub use adjust::{
    adjust_a1, build_b2, condition_i, condition_ii, delta_orbit, ell0_coordinates, split_at_p,
    split_set, splits_at_one_orbit, AdjustedA1, B2Data, LocalData,
};
pub use kolyvagin::{candidates, heisenberg_identities, kolyvagin_matrix, Derivatives};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fparith::{tame_or_wild, MTData, Ramification, TripleParams};
use crate::numfield::{primes_above, FieldTag};
use crate::orbits::classify_n_ell0;
use crate::sunitlat::{
    certify_seed, find_c_and_a0, Certified, Ell0Table, Ell1Table, PAdicTable, SeedData,
};

/// `dim_{F_p} R/pR`, as decided by the two conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    /// `dim = 3`, so `R = 𝕋`.
    #[serde(rename = "R = T")]
    RIsT,
    #[serde(rename = "dim > 3")]
    DimGreaterThanThree,
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conclusion::RIsT => write!(f, "R = 𝕋"),
            Conclusion::DimGreaterThanThree => write!(f, "dim > 3"),
        }
    }
}

/// A re-test of an adjustment condition on the adjusted output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recheck {
    pub name: String,
    pub passed: bool,
}

/// Basis-relative vectors kept for audit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditVectors {
    pub c: Vec<u64>,
    pub a0: Vec<u64>,
    pub gamma: Vec<u64>,
    pub a1_cand: Vec<u64>,
    pub b2_cand: Vec<u64>,
    pub a1: Vec<u64>,
    pub b2: Option<B2Data>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub params: TripleParams,
    pub ramification: Ramification,
    pub i: u64,
    pub j: u64,
    /// `None` when `b2` was not built.
    pub k: Option<u64>,
    pub m: Option<u64>,
    /// `𝔏₀`, as `(ℓ₀, ζ ↦ r, μ ↦ s)`.
    pub ell0_prime: String,
    pub condition_i: bool,
    /// `α² + β = 0` with `α = 0` arranged; false when condition (i) fails.
    pub condition_ii: bool,
    pub n_ell0: u64,
    pub conclusion: Conclusion,
    /// Whether `a1` is a `p`-th power in every completion above `p`.
    pub a1_split_at_p: bool,
    /// `(σ−1)a1_cand = c` and `(σ−1)b2_cand = −2a1_cand − c`.
    pub heisenberg_identities: bool,
    pub rechecks: Vec<Recheck>,
    pub vectors: AuditVectors,
}

impl PipelineReport {
    pub fn rechecks_pass(&self) -> bool {
        self.rechecks.iter().all(|r| r.passed)
    }

    pub fn table_header() -> String {
        format!(
            "{:>3} {:>5} {:>6} {:>8} {:>3} {:>3} {:>3} {:>3} {:>10}  {}",
            "p", "ℓ₀", "ℓ₁", "p in K", "i", "j", "k", "m", "α²+β=0?", "conclusion"
        )
    }

    /// One fixed-width row in the layout of the published tables.
    pub fn table_row(&self) -> String {
        let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
        let ram = match self.ramification {
            Ramification::Tame => "tame",
            Ramification::Wild => "wild",
        };
        let ab = if !self.condition_i {
            "-"
        } else if self.condition_ii {
            "yes"
        } else {
            "no"
        };
        format!(
            "{:>3} {:>5} {:>6} {:>8} {:>3} {:>3} {:>3} {:>3} {:>10}  {}",
            self.params.p,
            self.params.ell0,
            self.params.ell1,
            ram,
            self.i,
            self.j,
            opt(self.k),
            opt(self.m),
            ab,
            self.conclusion
        )
    }
}

fn local_data(c: &Certified, mt: MTData, ramification: Ramification) -> Result<LocalData> {
    let lat = &c.lattice;
    let p = lat.p();
    let mut at_p = Vec::new();
    for pr in primes_above(&lat.field, FieldTag::Big, p)? {
        let level = 2 * (p as usize - 1);
        at_p.push(PAdicTable::new(&pr, &lat.big_forms, level)?);
    }
    let ell0 = primes_above(&lat.field, FieldTag::Big, lat.params.ell0)?;
    let at_ell0 = Ell0Table::new(ell0, &lat.big_forms, mt)?;
    let ell1 = primes_above(&lat.field, FieldTag::Big, lat.params.ell1)?;
    let at_ell1 = Ell1Table::new(p, ell1, &lat.big_forms)?;
    Ok(LocalData {
        ramification,
        at_p,
        at_ell0,
        at_ell1,
    })
}

/// Runs the full construction on certified data.
pub fn run_pipeline(c: &Certified) -> Result<PipelineReport> {
    let lat = &c.lattice;
    let params = lat.params;
    let p = params.p;
    let mt = MTData::new(p, params.ell0).map_err(|e| e.at("Mazur–Tate data"))?;
    let ramification = tame_or_wild(p, params.ell1)?;
    let base = find_c_and_a0(lat).map_err(|e| e.at("base lines"))?;
    let gamma = lat
        .solve_norm(&base.c, 2)
        .map_err(|e| e.at("γ with Nm(γ) = c"))?;
    let (a1_cand, b2_cand) = candidates(lat, &gamma).map_err(|e| e.at("candidates"))?;
    let heis = heisenberg_identities(lat, &base.c, &a1_cand, &b2_cand)?;
    if !heis {
        return Err(
            Error::Arithmetic("candidates fail the cochain identities".into()).at("candidates"),
        );
    }
    let local = local_data(c, mt, ramification).map_err(|e| e.at("local data"))?;
    let adj = adjust_a1(lat, &local, &a1_cand, &base.a0).map_err(|e| e.at("adjust a1"))?;

    let mut rechecks = Vec::new();
    let mut recheck = |name: &str, passed: bool| {
        rechecks.push(Recheck {
            name: name.into(),
            passed,
        })
    };
    let unram = local
        .at_p
        .iter()
        .map(|t| t.unramified(&adj.a1.exps, 0))
        .collect::<Result<Vec<_>>>()?;
    recheck("a1 unramified above p", unram.iter().all(|&u| u));
    let one_orbit = splits_at_one_orbit(&local.at_ell0, &adj.a1.exps)
        && split_set(&local.at_ell0, &adj.a1.exps).contains(&adj.ell0_prime);
    recheck("a1 split at exactly the Δ-orbit of 𝔏₀", one_orbit);
    let a1_split_at_p = split_at_p(&local.at_p, &adj.a1.exps)?;

    let cond_i = condition_i(&local, &adj.a1);
    let b2 = if cond_i {
        let b2 = build_b2(lat, &local, &c.tables, &gamma, &adj, &base.a0)
            .map_err(|e| e.at("build b2"))?;
        if !b2.k_skipped {
            let level = 2 * (p as usize - 1);
            let ok = local.at_p[0].one_mod(&b2.b_tilde, b2.k, level)?;
            recheck("b̃·p^k ≡ 1 mod 𝔭^(2(p−1))", ok);
        }
        let x = local.at_ell0.ord_log(adj.ell0_prime, &b2.b2, b2.k, 0);
        recheck(
            "Mazur–Tate functional vanishes on b2 at 𝔏₀",
            local.at_ell0.mt_functional(x) == 0,
        );
        let zero_iso = lat.isotypic_project(
            &crate::sunitlat::SUnitVec {
                tag: FieldTag::Big,
                exps: b2.b2.clone(),
            },
            0,
        )?;
        recheck("b2 is ω⁰-isotypic", zero_iso.exps == b2.b2);
        Some(b2)
    } else {
        None
    };
    let cond_ii = b2.as_ref().is_some_and(condition_ii);
    let conclusion = if cond_i && cond_ii {
        Conclusion::DimGreaterThanThree
    } else {
        Conclusion::RIsT
    };
    Ok(PipelineReport {
        params,
        ramification,
        i: adj.i,
        j: adj.j,
        k: b2.as_ref().map(|b| b.k),
        m: b2.as_ref().map(|b| b.m),
        ell0_prime: local.at_ell0.primes[adj.ell0_prime].to_string(),
        condition_i: cond_i,
        condition_ii: cond_ii,
        n_ell0: classify_n_ell0(cond_i, cond_ii, p),
        conclusion,
        a1_split_at_p,
        heisenberg_identities: heis,
        rechecks,
        vectors: AuditVectors {
            c: base.c.exps,
            a0: base.a0.exps,
            gamma: gamma.exps,
            a1_cand: a1_cand.exps,
            b2_cand: b2_cand.exps,
            a1: adj.a1.exps,
            b2,
        },
    })
}

/// Certifies `seed` with `trials` auxiliary primes, then runs the pipeline.
pub fn run_seed(seed: &SeedData, trials: usize) -> Result<(Certified, PipelineReport)> {
    let c = certify_seed(seed, trials).map_err(|e| e.at("certify"))?;
    let r = run_pipeline(&c)?;
    Ok((c, r))
}
