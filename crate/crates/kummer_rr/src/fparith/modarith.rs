use crate::error::{Error, Result};

/// Multiplies modulo `m` without overflow.
#[inline]
pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Computes `base^exp mod m` by square-and-multiply.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mod_mul(result, b, m);
        }
        b = mod_mul(b, b, m);
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `m`, or an error when `gcd(a, m) != 1`.
pub fn mod_inv(a: u64, m: u64) -> Result<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(Error::Arithmetic(format!(
            "{a} is not invertible modulo {m}"
        )));
    }
    Ok(old_s.rem_euclid(m as i128) as u64)
}

/// Deterministic Miller–Rabin primality test, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `n` in increasing order.
pub fn factor_u64(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Smallest primitive root modulo the prime `q`.
pub fn primitive_root(q: u64) -> Result<u64> {
    if !is_prime(q) {
        return Err(Error::NotPrime {
            value: q,
            clause: "primitive root modulus",
        });
    }
    if q == 2 {
        return Ok(1);
    }
    let factors = factor_u64(q - 1);
    (2..q)
        .find(|&g| factors.iter().all(|&r| mod_pow(g, (q - 1) / r, q) != 1))
        .ok_or_else(|| Error::Arithmetic(format!("no primitive root modulo {q}")))
}

/// Multiplicative order of `a` modulo the prime `q`.
pub fn multiplicative_order(a: u64, q: u64) -> Result<u64> {
    if a.is_multiple_of(q) {
        return Err(Error::Arithmetic(format!("{a} is zero modulo {q}")));
    }
    let mut order = q - 1;
    for r in factor_u64(q - 1) {
        while order.is_multiple_of(r) && mod_pow(a, order / r, q) == 1 {
            order /= r;
        }
    }
    Ok(order)
}

/// Tests whether `a` is a `p`-th power modulo the prime `q ≡ 1 (mod p)`.
pub fn is_pth_power_mod_q(a: i64, p: u64, q: u64) -> Result<bool> {
    if q % p != 1 {
        return Err(Error::InvalidInput(format!("{q} is not 1 modulo {p}")));
    }
    let r = a.rem_euclid(q as i64) as u64;
    if r == 0 {
        return Err(Error::InvalidInput(format!("{q} divides {a}")));
    }
    Ok(mod_pow(r, (q - 1) / p, q) == 1)
}

/// Element of the prime field `F_p`, stored as a canonical residue.
///
/// `Fp` carries its modulus so that values from different fields cannot mix
/// silently; arithmetic between different moduli panics in debug builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    pub value: u64,
    pub modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Fp {
        Fp {
            value: value.rem_euclid(modulus as i64) as u64,
            modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp {
            value: (self.value + o.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp {
            value: (self.value + self.modulus - o.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp {
            value: mod_mul(self.value, o.value, self.modulus),
            modulus: self.modulus,
        }
    }

    pub fn neg(self) -> Fp {
        Fp {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    pub fn inv(self) -> Result<Fp> {
        Ok(Fp {
            value: mod_inv(self.value, self.modulus)?,
            modulus: self.modulus,
        })
    }
}
