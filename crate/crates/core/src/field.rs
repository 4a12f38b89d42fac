//! Arithmetic in the prime field F_p.
//!
//! Elements are canonical residues stored as `u32`. All intermediate products
//! are computed in `u64`, so any modulus below 2^32 is safe; the default is
//! the Macaulay-style prime 32003.

use crate::error::{Error, Result};

pub const DEFAULT_MODULUS: u32 = 32003;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidRing(format!("modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn default_field() -> Self {
        PrimeField { p: DEFAULT_MODULUS }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    /// Canonical residue of a signed integer.
    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u32 {
        let p = self.p as i64;
        (((v % p) + p) % p) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + (self.p - b) as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn pow(&self, mut base: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero (callers guard).
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        // Fermat: a^(p-2). p is prime, a canonical nonzero.
        self.pow(a, (self.p - 2) as u64)
    }

    #[inline]
    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    let n64 = n as u64;
    while d * d <= n64 {
        if n64.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
