use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_kummer-rr"));
    c.env_remove("KUMMER_RR_CACHE_DIR");
    c
}

fn seed_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/seed")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn screen_lists_admissible_triples() {
    let o = bin()
        .args(["--format", "json", "screen", "5", "11", "1000"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let rows: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let ell1s: Vec<u64> = rows
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["params"]["ell1"].as_u64().unwrap())
        .collect();
    for l in [23, 43, 67, 197, 263, 307, 373, 397, 593, 683, 727, 857, 967] {
        assert!(ell1s.contains(&l), "ℓ₁ = {l} missing");
    }
    assert!(!ell1s.contains(&101));

    let o = bin().args(["screen", "7", "50", "500"]).output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).lines().any(|l| {
        let f: Vec<&str> = l.split_whitespace().collect();
        f.len() >= 3 && f[..3] == ["7", "29", "157"]
    }));
}

#[test]
fn run_without_data_requires_certification() {
    let o = bin().args(["run", "5,11,23"]).output().unwrap();
    assert!(!o.status.success());
    assert!(
        stderr(&o).contains("certification required"),
        "{}",
        stderr(&o)
    );
}

#[test]
fn run_reports_table_row_and_deterministic_json() {
    let data = seed_dir().join("p5_l11_l23.json");
    let o = bin()
        .args(["run", "5,11,23", "--data"])
        .arg(&data)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    assert!(
        row.contains("wild") && row.contains(" no ") && row.contains("R = 𝕋"),
        "{row}"
    );

    let json = |_: ()| {
        bin()
            .args(["--format", "json", "run", "--data"])
            .arg(&data)
            .output()
            .unwrap()
    };
    let (a, b) = (json(()), json(()));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["n_ell0"], 250);
    assert_eq!(v["condition_i"], true);
    assert_eq!(v["condition_ii"], false);
}

#[test]
fn run_rejects_mismatched_triple() {
    let data = seed_dir().join("p5_l11_l23.json");
    let o = bin()
        .args(["run", "5,11,43", "--data"])
        .arg(&data)
        .output()
        .unwrap();
    assert!(!o.status.success());
    assert!(stderr(&o).contains("not (5, 11, 43)"), "{}", stderr(&o));
}

#[test]
fn certify_names_the_witness_for_a_bad_row() {
    let dir = tempfile::tempdir().unwrap();
    let mut seed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(seed_dir().join("p5_l11_l43.json")).unwrap())
            .unwrap();
    let cell = &mut seed["sigma_matrix"][4][9];
    *cell = serde_json::json!((cell.as_u64().unwrap() + 1) % 5);
    let path = dir.path().join("bad.json");
    fs::write(&path, serde_json::to_string(&seed).unwrap()).unwrap();
    let o = bin()
        .args(["certify", "--data"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(!o.status.success());
    let err = stderr(&o);
    assert!(
        err.contains("row 4") && err.contains("witness prime"),
        "{err}"
    );

    let o = bin()
        .args(["certify", "--data"])
        .arg(seed_dir().join("p5_l11_l43.json"))
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("ranks           5 and 29"));
}

#[test]
fn orbits_prints_five_rows() {
    let o = bin().args(["orbits", "5"]).output().unwrap();
    assert!(o.status.success());
    let out = stdout(&o);
    let sizes: Vec<&str> = out
        .lines()
        .skip(1)
        .take(5)
        .map(|l| l.split_whitespace().nth(1).unwrap())
        .collect();
    assert_eq!(sizes, ["1", "5", "5", "10", "10"]);
    assert!(out.contains("duality bijection verified: yes"));
}

#[test]
fn batch_keeps_input_order_and_flags_missing_data() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("batch.txt");
    fs::write(&file, "# comment\n5 11 43\n5 11 9973\n5 11 23\n").unwrap();
    let o = bin()
        .args(["batch", "--jobs", "2", "--data"])
        .arg(seed_dir())
        .arg(&file)
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let out = stdout(&o);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].contains(" 43 ") && rows[0].contains("dim > 3"));
    assert!(rows[1].contains("certification required"));
    assert!(rows[2].contains(" 23 ") && rows[2].contains("R = 𝕋"));
}

#[test]
fn cache_directory_stores_reports() {
    let dir = tempfile::tempdir().unwrap();
    let data = seed_dir().join("p5_l11_l43.json");
    let run = || {
        bin()
            .env("KUMMER_RR_CACHE_DIR", dir.path())
            .args(["--format", "json", "run", "--data"])
            .arg(&data)
            .output()
            .unwrap()
    };
    let first = run();
    assert!(first.status.success(), "{}", stderr(&first));
    let entries: Vec<_> = fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);
    let second = run();
    assert_eq!(first.stdout, second.stdout);
}
