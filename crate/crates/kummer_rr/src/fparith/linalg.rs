use std::fmt;

use super::modarith::{mod_inv, mod_mul};
use crate::error::{Error, Result};

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix mod {} ({}x{})", self.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Result of row reduction: reduced row echelon form and its pivot columns.
struct Echelon {
    rref: FpMatrix,
    pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zero(p: u64, rows: usize, cols: usize) -> FpMatrix {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u64, n: usize) -> FpMatrix {
        let mut m = FpMatrix::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows, reducing every entry modulo `p`.
    pub fn from_rows(p: u64, rows: &[Vec<i64>]) -> Result<FpMatrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidInput("ragged matrix rows".into()));
        }
        let data = rows
            .iter()
            .flat_map(|r| r.iter().map(|&x| x.rem_euclid(p as i64) as u64))
            .collect();
        Ok(FpMatrix {
            p,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(p: u64, n_rows: usize, columns: &[Vec<u64>]) -> FpMatrix {
        let mut m = FpMatrix::zero(p, n_rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = v % self.p;
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<u64> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zero(self.p, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn add(&self, o: &FpMatrix) -> FpMatrix {
        debug_assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self
            .data
            .iter()
            .zip(&o.data)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        FpMatrix {
            data,
            ..self.clone()
        }
    }

    pub fn sub(&self, o: &FpMatrix) -> FpMatrix {
        self.add(&o.scale(self.p - 1))
    }

    pub fn scale(&self, c: u64) -> FpMatrix {
        let c = c % self.p;
        let data = self.data.iter().map(|&a| mod_mul(a, c, self.p)).collect();
        FpMatrix {
            data,
            ..self.clone()
        }
    }

    pub fn mul(&self, o: &FpMatrix) -> FpMatrix {
        debug_assert_eq!(self.cols, o.rows);
        let mut out = FpMatrix::zero(self.p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let idx = i * o.cols + j;
                    out.data[idx] = (out.data[idx] + a * o.get(k, j)) % self.p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        debug_assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + a * b) % self.p)
            })
            .collect()
    }

    pub fn pow(&self, mut e: u64) -> FpMatrix {
        let mut result = FpMatrix::identity(self.p, self.rows);
        let mut b = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&b);
            }
            b = b.mul(&b);
            e >>= 1;
        }
        result
    }

    /// Stacks `self` on top of `o`.
    pub fn vstack(&self, o: &FpMatrix) -> FpMatrix {
        debug_assert_eq!(self.cols, o.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        FpMatrix {
            p: self.p,
            rows: self.rows + o.rows,
            cols: self.cols,
            data,
        }
    }

    fn echelon(&self) -> Echelon {
        let p = self.p;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            // Nonzero modulo a prime, hence invertible.
            let inv = mod_inv(m.get(r, c), p).unwrap_or(1);
            for j in 0..m.cols {
                let v = mod_mul(m.get(r, j), inv, p);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                let f = m.get(i, c);
                if i == r || f == 0 {
                    continue;
                }
                for j in 0..m.cols {
                    let v = (m.get(i, j) + p - mod_mul(f, m.get(r, j), p)) % p;
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { rref: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Basis of the right kernel `{x : self·x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let Echelon { rref, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (self.p - rref.get(r, f)) % self.p;
                }
                v
            })
            .collect()
    }

    /// Solves `self·x = b`, returning the solution with every free variable
    /// set to zero, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        debug_assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zero(self.p, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u64; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = rref.get(r, self.cols);
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<FpMatrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = FpMatrix::zero(self.p, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, 1);
        }
        let Echelon { rref, pivots } = aug.echelon();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = FpMatrix::zero(self.p, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, rref.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// Basis of the column space, as reduced vectors in row-echelon order.
    pub fn column_space_basis(&self) -> Vec<Vec<u64>> {
        let t = self.transpose().echelon();
        (0..t.pivots.len())
            .map(|r| t.rref.row(r).to_vec())
            .collect()
    }
}
