use std::path::PathBuf;

use kummer_rr::sunitlat::{certify_seed, SeedData};
use kummer_rr::Error;

fn seed(name: &str) -> SeedData {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data/seed")
        .join(name);
    SeedData::load(&path).unwrap()
}

#[test]
fn shipped_seeds_certify() {
    for name in ["p5_l11_l23.json", "p5_l11_l43.json"] {
        let c = certify_seed(&seed(name), 20).unwrap();
        assert_eq!((c.report.rank_small, c.report.rank_big), (5, 29));
        assert_eq!(c.report.aux_primes.len(), 20);
        assert!(c.report.sampled_primes >= 30);
    }
}

#[test]
fn identity_sigma_is_refuted_at_first_aux_prime() {
    let good = certify_seed(&seed("p5_l11_l23.json"), 20).unwrap();
    let mut s = seed("p5_l11_l23.json");
    let n = s.sigma_matrix.len();
    s.sigma_matrix = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    match certify_seed(&s, 20) {
        Err(Error::Refuted { witness, .. }) => assert_eq!(witness, good.report.aux_primes[0]),
        other => panic!("expected a refutation, got {other:?}"),
    }
}

#[test]
fn perturbed_exponent_names_row_and_witness() {
    let mut s = seed("p5_l11_l43.json");
    s.delta_matrix[7][3] = (s.delta_matrix[7][3] + 2) % 5;
    match certify_seed(&s, 20) {
        Err(Error::Refuted {
            row,
            witness,
            check,
        }) => {
            assert_eq!(row, 7);
            assert!(witness > 0);
            assert!(check.contains("delta_matrix"));
        }
        other => panic!("expected a refutation, got {other:?}"),
    }
}

#[test]
fn unflagged_class_number_is_rejected() {
    let mut s = seed("p5_l11_l23.json");
    s.class_number_coprimality_flag = false;
    assert!(matches!(certify_seed(&s, 20), Err(Error::Schema(_))));
}

#[test]
fn unique_c_and_a0_lines() {
    for name in ["p5_l11_l23.json", "p5_l11_l43.json"] {
        let c = certify_seed(&seed(name), 20).unwrap();
        let lines = kummer_rr::sunitlat::find_c_and_a0(&c.lattice).unwrap();
        assert_eq!(lines.lines_examined, (6, 6));
    }
}
