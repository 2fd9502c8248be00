use std::path::PathBuf;

use kummer_rr::fparith::{FpMatrix, MTData, Ramification};
use kummer_rr::numfield::{primes_above, FieldTag};
use kummer_rr::orbits::classify_n_ell0;
use kummer_rr::pipeline::{
    ell0_coordinates, kolyvagin_matrix, run_pipeline, Conclusion, PipelineReport,
};
use kummer_rr::sunitlat::{certify_seed, Certified, Ell0Table, OrdLog, SeedData};

fn seed(name: &str) -> SeedData {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/seed")
        .join(name);
    SeedData::load(&path).unwrap()
}

fn run(name: &str) -> (Certified, PipelineReport) {
    let c = certify_seed(&seed(name), 20).unwrap();
    let r = run_pipeline(&c).unwrap();
    (c, r)
}

#[test]
fn wild_triple_23_gives_r_equals_t() {
    let (_, r) = run("p5_l11_l23.json");
    assert_eq!(r.ramification, Ramification::Wild);
    assert!(r.condition_i);
    assert!(!r.condition_ii);
    assert_eq!(r.conclusion, Conclusion::RIsT);
    assert_eq!(r.n_ell0, 250);
    assert!(r.heisenberg_identities);
    assert!(r.rechecks_pass(), "{:?}", r.rechecks);
    assert!(r.k.is_some() && r.m.is_some());
}

#[test]
fn tame_triple_43_takes_k_zero_branch() {
    let (_, r) = run("p5_l11_l43.json");
    assert_eq!(r.ramification, Ramification::Tame);
    assert!(r.condition_i && r.condition_ii);
    assert_eq!(r.conclusion, Conclusion::DimGreaterThanThree);
    assert_eq!(r.n_ell0, 500);
    assert_eq!(r.k, Some(0));
    assert!(r.vectors.b2.as_ref().unwrap().k_skipped);
    assert!(r.rechecks_pass(), "{:?}", r.rechecks);
}

#[test]
fn conclusions_do_not_depend_on_the_basis() {
    for (a, b) in [
        ("p5_l11_l23.json", "variant_p5_l11_l23.json"),
        ("p5_l11_l43.json", "variant_p5_l11_l43.json"),
    ] {
        let (_, ra) = run(a);
        let (_, rb) = run(b);
        let key = |r: &PipelineReport| (r.condition_i, r.condition_ii, r.n_ell0, r.conclusion);
        assert_eq!(key(&ra), key(&rb), "{a} vs {b}");
        assert_ne!(
            seed(a).basis_big,
            seed(b).basis_big,
            "variant seeds should use another basis"
        );
    }
}

#[test]
fn report_round_trips_through_json_and_is_deterministic() {
    let (_, r1) = run("p5_l11_l23.json");
    let (_, r2) = run("p5_l11_l23.json");
    let j1 = serde_json::to_string(&r1).unwrap();
    assert_eq!(j1, serde_json::to_string(&r2).unwrap());
    let back: PipelineReport = serde_json::from_str(&j1).unwrap();
    assert_eq!(back, r1);
    let row = r1.table_row();
    assert!(
        row.contains("wild") && row.contains(" no ") && row.contains("R = 𝕋"),
        "{row}"
    );
}

#[test]
fn kolyvagin_identity_on_certified_sigma() {
    let c = certify_seed(&seed("p5_l11_l43.json"), 20).unwrap();
    let s = &c.lattice.sigma;
    let p = s.p;
    let id = FpMatrix::identity(p, s.rows);
    let d1 = kolyvagin_matrix(1, s);
    let n = kolyvagin_matrix(0, s);
    assert_eq!(s.sub(&id).mul(&d1), n.scale(p - 1));
    assert_eq!(n, c.lattice.norm_matrix());
}

#[test]
fn ell0_has_local_data_one_zero_and_functional_zeta_prime() {
    let c = certify_seed(&seed("p5_l11_l23.json"), 20).unwrap();
    let lat = &c.lattice;
    let ell0 = ell0_coordinates(lat, &c.tables).unwrap();
    let big = lat.include(&ell0).unwrap();
    let mt = MTData::new(5, 11).unwrap();
    let zeta_mt = mt.zeta_mt;
    let primes = primes_above(&lat.field, FieldTag::Big, 11).unwrap();
    let table = Ell0Table::new(primes, &lat.big_forms, mt).unwrap();
    for idx in 0..table.primes.len() {
        let x = table.ord_log(idx, &big.exps, 0, 0);
        assert_eq!(x, OrdLog { ord: 1, log: 0 });
        assert_eq!(table.mt_functional(x), zeta_mt);
    }
}

#[test]
fn n_ell0_matches_conclusion() {
    for name in ["p5_l11_l23.json", "p5_l11_l43.json"] {
        let (_, r) = run(name);
        assert_eq!(r.n_ell0, classify_n_ell0(r.condition_i, r.condition_ii, 5));
        assert_eq!(
            r.conclusion == Conclusion::DimGreaterThanThree,
            r.n_ell0 == 500
        );
    }
}
