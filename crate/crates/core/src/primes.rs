//! Prime selection for modular passes.
//!
//! Residue arithmetic uses primes below 2^31 so that sums and products of
//! residues stay inside native words.  The pass count is sized from the
//! worst-case coefficient bound: at most `4 * 3^(D-1)` walks of any given
//! length fit in a lattice with `D` interior vertices, so the product of the
//! chosen primes must exceed twice that, plus one extra prime reserved for a
//! consistency check of the reconstruction.

use crate::error::{Error, Result};
use crate::geometry::Rectangle;

/// A set of distinct overflow-safe primes; the last one is the verification
/// prime and does not count towards the reconstruction capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    /// Build from explicit primes (validated: distinct, prime, below 2^31).
    pub fn new(primes: Vec<u64>) -> Result<Self> {
        if primes.is_empty() {
            return Err(Error::InvalidSequence("empty prime set".into()));
        }
        for &p in &primes {
            if p >= (1 << 31) {
                return Err(Error::UnsafePrime(p));
            }
            if !is_prime(p) {
                return Err(Error::Parse(format!("{p} is not prime")));
            }
        }
        let mut sorted = primes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != primes.len() {
            return Err(Error::InvalidSequence("duplicate primes".into()));
        }
        Ok(PrimeSet { primes })
    }

    /// Consecutive primes descending from just under 2^31, enough to cover
    /// the coefficients of any series of `rect` with one prime to spare.
    pub fn for_rectangle(rect: Rectangle) -> Self {
        let digits_bound = coefficient_digit_bound(rect);
        // each prime contributes a little over 9 decimal digits
        let needed = (digits_bound / 9 + 2) as usize;
        PrimeSet { primes: descending_primes(needed + 1) }
    }

    /// All primes, including the verification prime.
    pub fn all(&self) -> &[u64] {
        &self.primes
    }

    /// The primes used for reconstruction.
    pub fn reconstruction(&self) -> &[u64] {
        &self.primes[..self.primes.len() - 1]
    }

    /// The extra prime used to validate the reconstruction.
    pub fn verification(&self) -> u64 {
        *self.primes.last().expect("non-empty")
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }
}

/// Decimal digits of `2 * 4 * 3^(D-1)` for the degree bound `D`.
fn coefficient_digit_bound(rect: Rectangle) -> u64 {
    let d = rect.interior_vertices() as f64;
    (((d - 1.0).max(0.0) * 3f64.log10() + 1.0) as u64) + 1
}

/// Deterministic Miller-Rabin, exact for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d % 2 == 0 {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..r - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The largest `count` primes below 2^31, descending.
pub fn descending_primes(count: usize) -> Vec<u64> {
    let mut primes = Vec::with_capacity(count);
    let mut candidate: u64 = (1 << 31) - 1;
    while primes.len() < count {
        if is_prime(candidate) {
            primes.push(candidate);
        }
        candidate -= 2;
    }
    primes
}
