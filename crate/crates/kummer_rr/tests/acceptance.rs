//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p kummer_rr --test acceptance`.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kummer_rr::fparith::{
    check_assumptions, is_prime, mod_pow, primitive_root, tame_or_wild, FpMatrix, MTData,
    Ramification, TripleParams,
};
use kummer_rr::numfield::{
    kummer_splitting, primes_above, FieldTag, NFElem, Splitting, TowerField,
};
use kummer_rr::orbits::{
    classify_n_ell0, enumerate_line_orbits, enumerate_plane_orbits, verify_duality,
};
use kummer_rr::pipeline::{kolyvagin_matrix, run_pipeline, Conclusion, PipelineReport};
use kummer_rr::sunitlat::{certify_seed, isotypic_projector, SeedData};
use kummer_rr::Error;

/// One published row: `(p, ℓ₀, ℓ₁, wild, α²+β = 0, a⁽¹⁾ split at p)`, the last
/// being `None` where no value was published.
type Row = (u64, u64, u64, bool, bool, Option<bool>);

const TABLE_5_11: [Row; 14] = [
    (5, 11, 23, true, false, Some(false)),
    (5, 11, 43, false, true, Some(false)),
    (5, 11, 67, true, false, Some(false)),
    (5, 11, 197, true, true, Some(false)),
    (5, 11, 263, true, false, Some(true)),
    (5, 11, 307, false, false, Some(true)),
    (5, 11, 373, true, false, Some(false)),
    (5, 11, 397, true, false, Some(false)),
    (5, 11, 593, false, false, Some(true)),
    (5, 11, 683, true, true, Some(true)),
    (5, 11, 727, true, true, Some(false)),
    (5, 11, 857, false, false, Some(false)),
    (5, 11, 967, true, false, Some(false)),
    (5, 11, 1013, true, false, Some(false)),
];

const OTHER_TABLES: [Row; 47] = [
    (7, 29, 17, true, false, None),
    (7, 29, 157, true, false, None),
    (7, 29, 521, false, true, Some(false)),
    (5, 41, 73, true, true, Some(false)),
    (5, 41, 83, true, false, Some(false)),
    (5, 41, 137, true, false, Some(false)),
    (5, 41, 163, true, false, Some(false)),
    (5, 41, 167, true, false, Some(false)),
    (5, 41, 173, true, false, Some(true)),
    (5, 41, 383, true, false, Some(true)),
    (5, 41, 547, true, false, Some(false)),
    (5, 41, 577, true, true, Some(false)),
    (5, 41, 683, true, false, Some(false)),
    (5, 41, 983, true, true, Some(false)),
    (5, 61, 13, true, false, Some(false)),
    (5, 61, 47, true, true, Some(false)),
    (5, 61, 197, true, false, Some(true)),
    (5, 61, 257, false, false, Some(false)),
    (5, 61, 337, true, false, Some(true)),
    (5, 61, 353, true, false, Some(false)),
    (5, 61, 367, true, false, Some(false)),
    (5, 61, 487, true, true, Some(false)),
    (5, 61, 563, true, false, Some(false)),
    (5, 61, 733, true, false, Some(false)),
    (5, 61, 853, true, true, Some(false)),
    (5, 61, 977, true, true, Some(false)),
    (5, 71, 23, true, false, Some(false)),
    (5, 71, 37, true, false, Some(false)),
    (5, 71, 97, true, false, Some(true)),
    (5, 71, 103, true, false, Some(false)),
    (5, 71, 193, false, false, Some(false)),
    (5, 71, 233, true, true, Some(true)),
    (5, 71, 283, true, false, Some(false)),
    (5, 71, 307, false, false, Some(false)),
    (5, 71, 463, true, false, Some(false)),
    (5, 71, 853, true, false, Some(false)),
    (7, 43, 37, true, true, None),
    (7, 43, 79, false, false, Some(false)),
    (5, 41, 653, true, true, Some(true)),
    (5, 41, 823, true, false, Some(true)),
    (5, 61, 743, false, false, Some(true)),
    (5, 61, 883, true, false, Some(false)),
    (5, 61, 997, true, false, Some(false)),
    (5, 71, 613, true, false, Some(true)),
    (5, 71, 673, true, false, Some(false)),
    (5, 71, 733, true, false, Some(false)),
    // Excluded from the tables by the class-number gate; screened here only.
    (7, 29, 347, true, false, None),
];

const PER_TRIPLE_BUDGET: Duration = Duration::from_secs(600);

fn all_rows() -> impl Iterator<Item = &'static Row> {
    TABLE_5_11.iter().chain(OTHER_TABLES.iter())
}

fn table_rows() -> impl Iterator<Item = &'static Row> {
    all_rows().filter(|r| (r.0, r.1, r.2) != (7, 29, 347))
}

fn seed_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/seed")
}

fn seed_path(p: u64, ell0: u64, ell1: u64) -> PathBuf {
    seed_dir().join(format!("p{p}_l{ell0}_l{ell1}.json"))
}

struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

fn outcome(name: &'static str, passed: bool, detail: String) -> Outcome {
    Outcome {
        name,
        passed,
        detail,
    }
}

fn tame_wild() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut n = 0;
    for &(p, _, ell1, wild, _, _) in table_rows() {
        n += 1;
        match tame_or_wild(p, ell1) {
            Ok(r) if (r == Ramification::Wild) == wild => {}
            other => bad.push(format!("({p}, {ell1}): {other:?}")),
        }
    }
    let t = start.elapsed();
    outcome(
        "tame/wild column",
        bad.is_empty() && t < Duration::from_secs(1),
        format!("{n} rows, {} mismatches {bad:?}, {t:.2?}", bad.len()),
    )
}

fn screening() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut n = 0;
    for &(p, ell0, ell1, _, _, _) in all_rows() {
        n += 1;
        match check_assumptions(TripleParams::new(p, ell0, ell1)) {
            Ok(r) if r.holds => {}
            other => bad.push(format!("({p}, {ell0}, {ell1}): {other:?}")),
        }
    }
    let mut zetas = Vec::new();
    for (p, ell0) in [(5, 11), (7, 29), (5, 41), (7, 43), (5, 61), (5, 71)] {
        match MTData::new(p, ell0) {
            Ok(mt) if mt.zeta_mt != 0 => zetas.push(format!("ℓ₀={ell0}:{}", mt.zeta_mt)),
            other => bad.push(format!("ζ′_MT at ({p}, {ell0}): {other:?}")),
        }
    }
    // The class-number gate runs in the exporter; the library refuses any
    // seed that does not carry its flag.
    let gate = match SeedData::load(&seed_path(5, 11, 23)) {
        Ok(mut s) => {
            s.class_number_coprimality_flag = false;
            matches!(certify_seed(&s, 20), Err(Error::Schema(_)))
        }
        Err(_) => false,
    };
    if !gate {
        bad.push("unflagged seed was not rejected".into());
    }
    let t = start.elapsed();
    outcome(
        "assumption screening",
        bad.is_empty() && t < Duration::from_secs(1),
        format!(
            "{n} triples pass, ζ′_MT {}, unflagged seed rejected: {gate}, {t:.2?} {bad:?}",
            zetas.join(" ")
        ),
    )
}

struct Computed {
    report: PipelineReport,
    elapsed: Duration,
}

/// Certifies and runs every shipped seed whose triple appears in a table.
fn compute_all() -> BTreeMap<(u64, u64, u64), Result<Computed, String>> {
    let mut out = BTreeMap::new();
    for &(p, ell0, ell1, _, _, _) in table_rows() {
        let path = seed_path(p, ell0, ell1);
        if !path.exists() {
            continue;
        }
        let start = Instant::now();
        let result = SeedData::load(&path)
            .and_then(|s| certify_seed(&s, 20))
            .and_then(|c| run_pipeline(&c))
            .map(|report| Computed {
                report,
                elapsed: start.elapsed(),
            })
            .map_err(|e| e.to_string());
        out.insert((p, ell0, ell1), result);
    }
    out
}

fn conclusions(computed: &BTreeMap<(u64, u64, u64), Result<Computed, String>>) -> Outcome {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let (mut first, mut others) = (0, 0);
    for (i, &(p, ell0, ell1, _, yes, _)) in table_rows().enumerate() {
        let name = format!("({p}, {ell0}, {ell1})");
        let required = i < TABLE_5_11.len();
        match computed.get(&(p, ell0, ell1)) {
            // Seeds for the other tables are optional.
            None if !required => continue,
            None => bad.push(format!("{name}: no seed data")),
            Some(Err(e)) => bad.push(format!("{name}: {e}")),
            Some(Ok(c)) => {
                let r = &c.report;
                slowest = slowest.max(c.elapsed);
                if (r.conclusion == Conclusion::DimGreaterThanThree) != yes {
                    bad.push(format!("{name}: got {}", r.conclusion));
                }
                if !r.rechecks_pass() || !r.heisenberg_identities {
                    bad.push(format!("{name}: recheck failed"));
                }
                if c.elapsed > PER_TRIPLE_BUDGET {
                    bad.push(format!("{name}: {:.0?}", c.elapsed));
                }
            }
        }
        if required {
            first += 1;
        } else {
            others += 1;
        }
    }
    outcome(
        "conclusion reproduction",
        bad.is_empty(),
        format!(
            "{first} first-table rows plus {others} other rows, slowest {slowest:.1?}; {}",
            if bad.is_empty() {
                "all match".to_string()
            } else {
                bad.join("; ")
            }
        ),
    )
}

/// Not a criterion on its own: the split-at-p diagnostic of the adjusted
/// `a⁽¹⁾` against every published value.
fn a1_at_p(computed: &BTreeMap<(u64, u64, u64), Result<Computed, String>>) -> Outcome {
    let mut bad = Vec::new();
    let mut compared = 0;
    for &(p, ell0, ell1, _, _, published) in table_rows() {
        if let (Some(want), Some(Ok(c))) = (published, computed.get(&(p, ell0, ell1))) {
            compared += 1;
            if c.report.a1_split_at_p != want {
                bad.push((p, ell0, ell1));
            }
        }
    }
    outcome(
        "a1 split at p (extra)",
        bad.is_empty(),
        format!("{compared} published values compared {bad:?}"),
    )
}

fn condition_i(computed: &BTreeMap<(u64, u64, u64), Result<Computed, String>>) -> Outcome {
    let ok: Vec<_> = computed
        .iter()
        .filter_map(|(k, v)| v.as_ref().ok().map(|c| (k, c)))
        .collect();
    let failing: Vec<_> = ok
        .iter()
        .filter(|(_, c)| !c.report.condition_i)
        .map(|(k, _)| **k)
        .collect();
    outcome(
        "condition (i) universality",
        !ok.is_empty() && failing.is_empty(),
        format!(
            "holds on {} of {} computed triples {failing:?}",
            ok.len() - failing.len(),
            ok.len()
        ),
    )
}

fn matrix(p: u64, n: usize, rng: &mut ChaCha8Rng) -> (FpMatrix, FpMatrix) {
    loop {
        let rows: Vec<Vec<i64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect())
            .collect();
        let m = FpMatrix::from_rows(p, &rows).unwrap();
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

fn kolyvagin_cases(rng: &mut ChaCha8Rng) -> usize {
    let mut passed = 0;
    for case in 0..60 {
        let p = [3u64, 5, 7][case % 3];
        let blocks = rng.gen_range(1..3usize);
        let n = blocks * p as usize + rng.gen_range(0..3usize);
        let mut b = FpMatrix::zero(p, n, n);
        for blk in 0..blocks {
            let o = blk * p as usize;
            for j in 0..p as usize {
                b.set(o + (j + 1) % p as usize, o + j, 1);
            }
        }
        for k in blocks * p as usize..n {
            b.set(k, k, 1);
        }
        let (m, inv) = matrix(p, n, rng);
        let s = m.mul(&b).mul(&inv);
        let id = FpMatrix::identity(p, n);
        let norm = kolyvagin_matrix(0, &s);
        if s.sub(&id).mul(&kolyvagin_matrix(1, &s)) == norm.scale(p - 1) {
            passed += 1;
        }
    }
    passed
}

fn projector_cases(rng: &mut ChaCha8Rng) -> usize {
    let mut passed = 0;
    for case in 0..40 {
        let p = [5u64, 7][case % 2];
        let t = primitive_root(p).unwrap();
        let n = rng.gen_range(2..8usize);
        let mut d = FpMatrix::zero(p, n, n);
        for k in 0..n {
            d.set(k, k, mod_pow(t, rng.gen_range(0..p - 1), p));
        }
        let (m, inv) = matrix(p, n, rng);
        let d = m.mul(&d).mul(&inv);
        let eps: Vec<FpMatrix> = (0..p as i64 - 1)
            .map(|i| isotypic_projector(&d, t, i).unwrap())
            .collect();
        let mut sum = FpMatrix::zero(p, n, n);
        let mut ok = true;
        for (i, e) in eps.iter().enumerate() {
            ok &= e.mul(e) == *e;
            for (j, f) in eps.iter().enumerate() {
                ok &= i == j || e.mul(f) == FpMatrix::zero(p, n, n);
            }
            sum = sum.add(e);
        }
        if ok && sum == FpMatrix::identity(p, n) {
            passed += 1;
        }
    }
    passed
}

fn residue(c: &BigRational, q: u64) -> Option<u64> {
    let qi = BigInt::from(q);
    let num: u64 = ((c.numer() % &qi + &qi) % &qi).try_into().ok()?;
    let den: u64 = ((c.denom() % &qi + &qi) % &qi).try_into().ok()?;
    (den != 0).then(|| num * mod_pow(den, q - 2, q) % q)
}

/// Random `α = q^e·u` at the degree-one primes above small split `q`,
/// compared with the factorization of `x^p − ᾱ` over `F_q`.
fn kummer_cases(rng: &mut ChaCha8Rng) -> (usize, usize) {
    let p = 5u64;
    let (mut agree, mut total) = (0, 0);
    let fields: Vec<(u64, TowerField, Vec<u64>)> = [23u64, 43, 67]
        .into_iter()
        .map(|ell1| {
            let f = TowerField::new(p, ell1).unwrap();
            let qs: Vec<u64> = (11..3000)
                .filter(|&q| {
                    is_prime(q) && q % p == 1 && q != ell1 && mod_pow(ell1 % q, (q - 1) / p, q) == 1
                })
                .take(4)
                .collect();
            (ell1, f, qs)
        })
        .collect();
    while total < 120 {
        let (ell1, field, qs) = &fields[rng.gen_range(0..fields.len())];
        let q = qs[rng.gen_range(0..qs.len())];
        let e = [0u32, 1, 2, 5][rng.gen_range(0..4)];
        let unit = NFElem::from_flat(
            field,
            (0..20)
                .map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-4..5))))
                .collect(),
        )
        .unwrap();
        if unit.is_zero() {
            continue;
        }
        let alpha = unit.mul(&NFElem::from_int(field, (q as i64).pow(e)));
        let primes = primes_above(field, FieldTag::Big, q).unwrap();
        let pr = &primes[rng.gen_range(0..primes.len())];
        let rd = pr.residue_data().unwrap();
        let (r, s) = (rd.zeta.coeffs[0], rd.mu.as_ref().unwrap().coeffs[0]);
        let mut value = 0;
        for b in 0..p as usize {
            for a in 0..p as usize - 1 {
                let c = residue(unit.coeff(a, b), q).unwrap();
                value = (value + c * mod_pow(r, a as u64, q) % q * mod_pow(s, b as u64, q)) % q;
            }
        }
        if value == 0 || mod_pow(s, p, q) != ell1 % q {
            continue;
        }
        let roots = (1..q).filter(|&x| mod_pow(x, p, q) == value).count();
        let expected = if !(e as u64).is_multiple_of(p) {
            Splitting::Ramified
        } else if roots == p as usize {
            Splitting::Split
        } else {
            Splitting::Inert
        };
        total += 1;
        if kummer_splitting(&alpha, pr).ok() == Some(expected) {
            agree += 1;
        }
    }
    (agree, total)
}

fn mt_cases() -> (usize, usize) {
    let cases = [(5u64, 11u64), (5, 41), (5, 61), (5, 71), (7, 29), (7, 43)];
    let ok = cases
        .iter()
        .filter(|&&(p, ell0)| {
            let mt = MTData::new(p, ell0).unwrap();
            mt.evaluate(1, 1).ok() == Some(mt.zeta_mt)
        })
        .count();
    (ok, cases.len())
}

fn properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let kol = kolyvagin_cases(&mut rng);
    let proj = projector_cases(&mut rng);
    let (kum, kum_total) = kummer_cases(&mut rng);
    let (mt, mt_total) = mt_cases();
    outcome(
        "property suite",
        kol == 60 && proj == 40 && kum == kum_total && kum_total >= 100 && mt == mt_total,
        format!(
            "Kolyvagin {kol}/60, projectors {proj}/40, Kummer oracle {kum}/{kum_total}, MT functional {mt}/{mt_total}"
        ),
    )
}

fn orbit_suite(computed: &BTreeMap<(u64, u64, u64), Result<Computed, String>>) -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for p in [3u64, 5, 7, 11] {
        let half = (p * (p - 1) / 2) as usize;
        let want = vec![1, p as usize, p as usize, half, half];
        let lines: Vec<usize> = enumerate_line_orbits(p)
            .unwrap()
            .iter()
            .map(|o| o.size)
            .collect();
        let planes: Vec<usize> = enumerate_plane_orbits(p)
            .unwrap()
            .iter()
            .map(|o| o.size)
            .collect();
        let total = (p * p + p + 1) as usize;
        if lines != want || planes != want || lines.iter().sum::<usize>() != total {
            bad.push(format!("p = {p}: lines {lines:?}, planes {planes:?}"));
        }
        if !verify_duality(p).unwrap_or(false) {
            bad.push(format!("p = {p}: duality"));
        }
    }
    let mut classified = 0;
    for &(p, ell0, ell1, _, yes, _) in table_rows() {
        if let Some(Ok(c)) = computed.get(&(p, ell0, ell1)) {
            classified += 1;
            let r = &c.report;
            let from_table = classify_n_ell0(true, yes, p);
            if r.n_ell0 != classify_n_ell0(r.condition_i, r.condition_ii, p)
                || r.n_ell0 != from_table
            {
                bad.push(format!("({p}, {ell0}, {ell1}): n_ℓ₀ = {}", r.n_ell0));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        "orbit suite",
        bad.is_empty() && t < Duration::from_secs(10),
        format!("p ∈ {{3, 5, 7, 11}}, duality verified, n_ℓ₀ consistent on {classified} triples, {t:.2?} {bad:?}"),
    )
}

/// Adds a nonzero amount to one coordinate of the seed.
fn mutate(seed: &mut SeedData, rng: &mut ChaCha8Rng) -> String {
    let p = seed.params.p;
    let shift = rng.gen_range(1..p);
    let bump = |m: &mut Vec<Vec<u64>>, rng: &mut ChaCha8Rng| {
        let i = rng.gen_range(0..m.len());
        let j = rng.gen_range(0..m[i].len());
        m[i][j] = (m[i][j] + shift) % p;
        (i, j)
    };
    match rng.gen_range(0..5) {
        0 => format!("sigma_matrix{:?}", bump(&mut seed.sigma_matrix, rng)),
        1 => format!("delta_matrix{:?}", bump(&mut seed.delta_matrix, rng)),
        2 => format!(
            "inclusion_matrix{:?}",
            bump(&mut seed.inclusion_matrix, rng)
        ),
        which => {
            let basis = if which == 3 {
                &mut seed.basis_small
            } else {
                &mut seed.basis_big
            };
            let e = rng.gen_range(0..basis.len());
            let i = rng.gen_range(0..basis[e].0.len());
            let j = rng.gen_range(0..basis[e].0[i].len());
            let cell = &mut basis[e].0[i][j];
            let old: BigRational = cell.parse().unwrap();
            let delta = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
            *cell = (old + BigRational::from_integer(delta.into())).to_string();
            let name = if which == 3 {
                "basis_small"
            } else {
                "basis_big"
            };
            format!("{name}[{e}][{i}][{j}]")
        }
    }
}

fn certification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee);
    let seeds: Vec<SeedData> = [(5, 11, 23), (5, 11, 43)]
        .iter()
        .map(|&(p, a, b)| SeedData::load(&seed_path(p, a, b)).unwrap())
        .collect();
    let mut survivors = Vec::new();
    let (mut with_prime, mut exact) = (0, 0);
    for n in 0..100 {
        let mut s = seeds[n % seeds.len()].clone();
        let what = mutate(&mut s, &mut rng);
        match certify_seed(&s, 20) {
            Err(Error::Refuted { witness, .. }) if witness > 0 => with_prime += 1,
            Err(Error::Refuted { .. }) => exact += 1,
            other => survivors.push(format!("{what}: {:?}", other.map(|_| "certified"))),
        }
    }
    outcome(
        "certification soundness",
        survivors.is_empty(),
        format!(
            "100 mutations, {with_prime} refuted at a witness prime, {exact} by an exact check {survivors:?}"
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut results = vec![tame_wild(), screening()];
    let computed = compute_all();
    results.push(conclusions(&computed));
    results.push(condition_i(&computed));
    results.push(a1_at_p(&computed));
    results.push(properties());
    results.push(orbit_suite(&computed));
    results.push(certification());
    for r in &results {
        println!(
            "{} {:<28} {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.detail
        );
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!(
        "{} of {} criteria pass ({:.1?})",
        results.len() - failed,
        results.len(),
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
