use std::collections::BTreeSet;

use kummer_rr::orbits::{
    all_lines, all_planes, classify_n_ell0, enumerate_line_orbits, enumerate_plane_orbits,
    verify_duality, TraceZeroVec,
};

fn sizes(p: u64) -> Vec<usize> {
    enumerate_line_orbits(p)
        .unwrap()
        .iter()
        .map(|o| o.size)
        .collect()
}

#[test]
fn line_and_plane_orbit_sizes() {
    for p in [3u64, 5, 7, 11] {
        let half = (p * (p - 1) / 2) as usize;
        let mut expected = vec![1, p as usize, p as usize, half, half];
        expected.sort();
        assert_eq!(sizes(p), expected, "lines, p = {p}");
        let planes: Vec<usize> = enumerate_plane_orbits(p)
            .unwrap()
            .iter()
            .map(|o| o.size)
            .collect();
        assert_eq!(planes, expected, "planes, p = {p}");
        assert_eq!(expected.iter().sum::<usize>() as u64, p * p + p + 1);
        assert!(verify_duality(p).unwrap(), "duality, p = {p}");
    }
}

#[test]
fn orbits_partition_lines_and_planes() {
    for p in [3u64, 5, 7] {
        let mut seen = BTreeSet::new();
        for o in enumerate_line_orbits(p).unwrap() {
            for m in &o.members {
                assert!(seen.insert(*m));
            }
            assert_eq!((p * (p - 1)) as usize % o.size, 0);
            assert_eq!(o.size * o.stabilizer_order, (p * (p - 1)) as usize);
        }
        assert_eq!(seen.len(), all_lines(p).len());
        let mut seen = BTreeSet::new();
        for o in enumerate_plane_orbits(p).unwrap() {
            for m in &o.members {
                assert!(seen.insert(*m));
            }
        }
        assert_eq!(seen.len(), all_planes(p).len());
    }
}

#[test]
fn nilpotent_family_is_one_orbit_for_p7() {
    let p = 7;
    let family: BTreeSet<TraceZeroVec> = (0..p)
        .map(|a| TraceZeroVec::new((p - a * a % p) % p, a, 1).normalized(p))
        .collect();
    let orbits = enumerate_line_orbits(p).unwrap();
    let hit: Vec<_> = orbits
        .iter()
        .filter(|o| o.members.iter().any(|m| family.contains(m)))
        .collect();
    assert_eq!(hit.len(), 1);
    assert_eq!(hit[0].size, 7);
    assert_eq!(
        hit[0].members.iter().copied().collect::<BTreeSet<_>>(),
        family
    );
}

#[test]
fn nonsquare_stabilizer_has_order_two() {
    for p in [5u64, 7, 11] {
        let squares: BTreeSet<u64> = (1..p).map(|x| x * x % p).collect();
        let b = (2..p).find(|b| !squares.contains(b)).unwrap();
        let line = TraceZeroVec::new(b, 0, 1).normalized(p);
        let orbit = enumerate_line_orbits(p)
            .unwrap()
            .into_iter()
            .find(|o| o.members.contains(&line))
            .unwrap();
        assert_eq!(orbit.stabilizer_order, 2, "p = {p}");
    }
}

#[test]
fn n_ell0_values() {
    assert_eq!(classify_n_ell0(false, false, 5), 100);
    assert_eq!(classify_n_ell0(false, true, 5), 100);
    assert_eq!(classify_n_ell0(true, false, 5), 250);
    assert_eq!(classify_n_ell0(true, true, 5), 500);
    assert_eq!(classify_n_ell0(true, true, 7), 7 * 7 * 7 * 6);
}

#[test]
fn rejects_non_odd_primes() {
    assert!(enumerate_line_orbits(2).is_err());
    assert!(enumerate_plane_orbits(9).is_err());
}
