//! Orbits of the Borel subgroup `B = {(x y; 0 1)} ⊂ GL₂(F_p)` acting by
//! conjugation on lines and planes of trace-zero `2×2` matrices, and the
//! classifier for `n_ℓ₀`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fparith::{is_prime, mod_inv};

/// `b·E₁₂ + a·(E₁₁ − E₂₂) + c·E₂₁`, stored as `(b, a, c)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TraceZeroVec {
    pub b: u64,
    pub a: u64,
    pub c: u64,
}

impl TraceZeroVec {
    pub fn new(b: u64, a: u64, c: u64) -> TraceZeroVec {
        TraceZeroVec { b, a, c }
    }

    fn coords(&self) -> [u64; 3] {
        [self.b, self.a, self.c]
    }

    fn from_coords(v: [u64; 3]) -> TraceZeroVec {
        TraceZeroVec::new(v[0], v[1], v[2])
    }

    pub fn is_zero(&self) -> bool {
        self.coords() == [0, 0, 0]
    }

    /// `g·v·g⁻¹` for `g = (x y; 0 1)`.
    pub fn conjugate(&self, x: u64, y: u64, p: u64) -> TraceZeroVec {
        let xi = mod_inv(x, p).unwrap_or(0);
        let (b, a, c) = (self.b, self.a, self.c);
        let yc_x = y * c % p * xi % p;
        TraceZeroVec {
            b: (x * b % p + 2 * (p - y % p) % p * a % p + (p - y * yc_x % p)) % p,
            a: (a + yc_x) % p,
            c: c * xi % p,
        }
    }

    /// The trace pairing `tr(v·w) = 2aa′ + bc′ + cb′`.
    pub fn trace_pairing(&self, o: &TraceZeroVec, p: u64) -> u64 {
        (2 * self.a * o.a + self.b * o.c + self.c * o.b) % p
    }

    /// Scales so that the first nonzero coordinate is 1.
    pub fn normalized(&self, p: u64) -> TraceZeroVec {
        let v = self.coords();
        match v.iter().find(|&&x| x != 0) {
            None => *self,
            Some(&lead) => {
                let inv = mod_inv(lead, p).unwrap_or(0);
                TraceZeroVec::from_coords(v.map(|x| x * inv % p))
            }
        }
    }
}

/// A two-dimensional subspace in reduced row echelon form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Plane {
    pub basis: [TraceZeroVec; 2],
}

impl Plane {
    /// Row-reduces the span of `u` and `v`; `None` if they are dependent.
    pub fn span(u: TraceZeroVec, v: TraceZeroVec, p: u64) -> Option<Plane> {
        let mut rows = [u.coords(), v.coords()];
        let mut r = 0;
        for col in 0..3 {
            if r == 2 {
                break;
            }
            let Some(piv) = (r..2).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = mod_inv(rows[r][col], p).ok()?;
            rows[r] = rows[r].map(|x| x * inv % p);
            for i in 0..2 {
                if i != r && rows[i][col] != 0 {
                    let f = rows[i][col];
                    for k in 0..3 {
                        rows[i][k] = (rows[i][k] + p * p - f * rows[r][k] % p) % p;
                    }
                }
            }
            r += 1;
        }
        (r == 2).then(|| Plane {
            basis: [
                TraceZeroVec::from_coords(rows[0]),
                TraceZeroVec::from_coords(rows[1]),
            ],
        })
    }

    pub fn conjugate(&self, x: u64, y: u64, p: u64) -> Plane {
        let [u, v] = self.basis;
        Plane::span(u.conjugate(x, y, p), v.conjugate(x, y, p), p).unwrap_or(*self)
    }

    /// The line orthogonal to this plane under the trace pairing.
    pub fn orthogonal_line(&self, p: u64) -> TraceZeroVec {
        let [u, v] = self.basis;
        all_lines(p)
            .into_iter()
            .find(|w| w.trace_pairing(&u, p) == 0 && w.trace_pairing(&v, p) == 0)
            .unwrap_or(u)
    }
}

/// One orbit: its least member, size, and stabilizer order `|B|/size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit<T> {
    pub representative: T,
    pub size: usize,
    pub stabilizer_order: usize,
    pub members: Vec<T>,
}

fn check_p(p: u64) -> Result<()> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidInput(format!("p = {p} must be an odd prime")));
    }
    Ok(())
}

/// All `p² + p + 1` lines, as normalized vectors.
pub fn all_lines(p: u64) -> Vec<TraceZeroVec> {
    let mut out = Vec::new();
    for b in 0..p {
        for a in 0..p {
            for c in 0..p {
                let v = TraceZeroVec::new(b, a, c);
                if !v.is_zero() && v.normalized(p) == v {
                    out.push(v);
                }
            }
        }
    }
    out
}

/// All `p² + p + 1` planes.
pub fn all_planes(p: u64) -> Vec<Plane> {
    let lines = all_lines(p);
    let mut set = BTreeSet::new();
    for (i, u) in lines.iter().enumerate() {
        for v in &lines[i + 1..] {
            if let Some(pl) = Plane::span(*u, *v, p) {
                set.insert(pl);
            }
        }
    }
    set.into_iter().collect()
}

fn orbits_of<T: Ord + Copy>(
    p: u64,
    items: Vec<T>,
    act: impl Fn(&T, u64, u64) -> T,
) -> Vec<Orbit<T>> {
    let group_order = (p * (p - 1)) as usize;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for start in items {
        if seen.contains(&start) {
            continue;
        }
        let mut members = BTreeSet::new();
        for x in 1..p {
            for y in 0..p {
                members.insert(act(&start, x, y));
            }
        }
        seen.extend(members.iter().copied());
        let members: Vec<T> = members.into_iter().collect();
        out.push(Orbit {
            representative: members[0],
            size: members.len(),
            stabilizer_order: group_order / members.len(),
            members,
        });
    }
    out.sort_by_key(|a| (a.size, a.representative));
    out
}

/// Orbits of `B` on the lines of `V`, sorted by size.
pub fn enumerate_line_orbits(p: u64) -> Result<Vec<Orbit<TraceZeroVec>>> {
    check_p(p)?;
    Ok(orbits_of(p, all_lines(p), |v, x, y| {
        v.conjugate(x, y, p).normalized(p)
    }))
}

/// Orbits of `B` on the planes of `V`, sorted by size.
pub fn enumerate_plane_orbits(p: u64) -> Result<Vec<Orbit<Plane>>> {
    check_p(p)?;
    Ok(orbits_of(p, all_planes(p), |pl, x, y| {
        pl.conjugate(x, y, p)
    }))
}

/// Checks that `plane ↦ plane^⊥` is a bijection carrying plane orbits onto
/// line orbits of the same size.
pub fn verify_duality(p: u64) -> Result<bool> {
    let lines = enumerate_line_orbits(p)?;
    let planes = enumerate_plane_orbits(p)?;
    let line_orbit: BTreeMap<TraceZeroVec, usize> = lines
        .iter()
        .enumerate()
        .flat_map(|(i, o)| o.members.iter().map(move |m| (*m, i)))
        .collect();
    let mut images = BTreeSet::new();
    for o in &planes {
        let targets: BTreeSet<usize> = o
            .members
            .iter()
            .map(|pl| line_orbit[&pl.orthogonal_line(p)])
            .collect();
        if targets.len() != 1 {
            return Ok(false);
        }
        let t = *targets.iter().next().unwrap_or(&0);
        if lines[t].size != o.size || !images.insert(t) {
            return Ok(false);
        }
    }
    Ok(images.len() == lines.len() && planes.len() == lines.len())
}

/// The three possible values of `n_ℓ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NEll0Class {
    /// `p²(p−1)`: condition (i) fails.
    ConditionIFails,
    /// `2p³`: condition (i) holds and (ii) fails.
    ConditionIIFails,
    /// `p³(p−1)`: both conditions hold.
    BothHold,
}

/// `n_ℓ₀` from the two conditions.
pub fn classify_n_ell0(condition_i: bool, condition_ii: bool, p: u64) -> u64 {
    match n_ell0_class(condition_i, condition_ii) {
        NEll0Class::ConditionIFails => p * p * (p - 1),
        NEll0Class::ConditionIIFails => 2 * p * p * p,
        NEll0Class::BothHold => p * p * p * (p - 1),
    }
}

pub fn n_ell0_class(condition_i: bool, condition_ii: bool) -> NEll0Class {
    match (condition_i, condition_ii) {
        (false, _) => NEll0Class::ConditionIFails,
        (true, false) => NEll0Class::ConditionIIFails,
        (true, true) => NEll0Class::BothHold,
    }
}

/// Fixed-width table of line orbits, each beside the plane orbit of its
/// orthogonal complements.
pub fn orbit_table(p: u64) -> Result<String> {
    let lines = enumerate_line_orbits(p)?;
    let planes = enumerate_plane_orbits(p)?;
    let mut out = format!(
        "{:<14} {:>5} {:>5}   {:<26} {:>5}\n",
        "line (b,a,c)", "size", "stab", "dual plane", "size"
    );
    let fmt_v = |v: &TraceZeroVec| format!("({},{},{})", v.b, v.a, v.c);
    for l in &lines {
        let dual = planes
            .iter()
            .find(|pl| l.members.contains(&pl.representative.orthogonal_line(p)));
        let (plane, size) = match dual {
            Some(pl) => {
                let [u, v] = pl.representative.basis;
                (
                    format!("<{}, {}>", fmt_v(&u), fmt_v(&v)),
                    pl.size.to_string(),
                )
            }
            None => ("-".into(), "-".into()),
        };
        out.push_str(&format!(
            "{:<14} {:>5} {:>5}   {:<26} {:>5}\n",
            fmt_v(&l.representative),
            l.size,
            l.stabilizer_order,
            plane,
            size
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugation_matches_matrix_product() {
        let p = 7;
        let mat = |v: &TraceZeroVec| [[v.a as i64, v.b as i64], [v.c as i64, -(v.a as i64)]];
        for (x, y) in [(2u64, 3u64), (6, 0), (1, 5)] {
            let v = TraceZeroVec::new(4, 1, 3);
            let g = [[x as i64, y as i64], [0, 1]];
            let xi = mod_inv(x, p).unwrap() as i64;
            let gi = [[xi, (-(y as i64) * xi).rem_euclid(p as i64)], [0, 1]];
            let m = mat(&v);
            let mul = |a: [[i64; 2]; 2], b: [[i64; 2]; 2]| {
                let mut r = [[0i64; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        r[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]).rem_euclid(p as i64);
                    }
                }
                r
            };
            let r = mul(mul(g, m), gi);
            let w = v.conjugate(x, y, p);
            assert_eq!(
                [
                    [w.a as i64, w.b as i64],
                    [w.c as i64, (p - w.a) as i64 % p as i64]
                ],
                r
            );
        }
    }
}
