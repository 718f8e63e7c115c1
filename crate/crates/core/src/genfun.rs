//! Generating functions by walk length.
//!
//! A `GenFun` is a polynomial in the step fugacity `x` with non-negative
//! integer coefficients; coefficient `k` counts walks of length `k`.  The
//! transfer matrix manipulates weights of the same shape, either with exact
//! big integers or with residues modulo a prime; both are hidden behind the
//! [`WeightRing`] trait so the two engines share one evolution code path.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::bigfloat::BigFloat;
use crate::error::Result;

/// Exact integer-coefficient polynomial in the fugacity.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GenFun {
    coeffs: Vec<BigUint>,
}

impl GenFun {
    pub fn zero() -> Self {
        GenFun { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<BigUint>) -> Self {
        let mut g = GenFun { coeffs };
        g.trim();
        g
    }

    pub fn from_u64_coeffs(coeffs: &[u64]) -> Self {
        GenFun::from_coeffs(coeffs.iter().map(|&c| BigUint::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[BigUint] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigUint {
        self.coeffs.get(k).cloned().unwrap_or_else(BigUint::zero)
    }

    pub fn add_assign(&mut self, other: &GenFun) {
        if self.coeffs.len() < other.coeffs.len() {
            self.coeffs.resize(other.coeffs.len(), BigUint::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(other.coeffs.iter()) {
            *a += b;
        }
    }

    pub fn scaled(&self, factor: u64) -> GenFun {
        GenFun::from_coeffs(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Coefficient-wise reduction modulo `p`.
    pub fn reduce_mod(&self, p: u64) -> Vec<u64> {
        let pp = BigUint::from(p);
        self.coeffs
            .iter()
            .map(|c| (c % &pp).try_into().expect("residue fits u64"))
            .collect()
    }

    /// Horner evaluation at a decimal point, carried out at the scale of `x`.
    pub fn eval(&self, x: &BigFloat) -> BigFloat {
        let scale = x.scale();
        let mut acc = BigFloat::zero(scale);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&BigFloat::from_biguint(c, scale));
        }
        acc
    }

    /// Evaluate the ratio `self(x) / den(x)`.
    pub fn eval_ratio(&self, den: &GenFun, x: &BigFloat) -> Result<BigFloat> {
        self.eval(x).div(&den.eval(x))
    }

    /// True when every non-zero coefficient sits at an exponent of the given
    /// parity (0 = even, 1 = odd).
    pub fn single_parity(&self, parity: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || k % 2 == parity % 2)
    }

    pub fn all_even(&self) -> bool {
        self.coeffs.iter().all(|c| (c % 2u32).is_zero())
    }
}

/// Coefficient arithmetic required by the transfer matrix: weights form a
/// module over x-shifts.  Polynomials are never multiplied together, only
/// shifted (one factor of `x` per added walk step) and accumulated.
pub trait WeightRing: Clone + Send + Sync {
    /// Weight of the empty configuration (the constant polynomial 1),
    /// shaped like `self` (same modulus for residue weights).
    fn one_like(&self) -> Self;
    /// Multiply by `x^steps`.
    fn shift(&mut self, steps: usize);
    /// Accumulate another weight.
    fn add_assign(&mut self, other: &Self);
    fn is_zero(&self) -> bool;
}

/// Big-integer polynomial weight with an offset so that leading runs of
/// zero coefficients cost nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntWeight {
    lo: usize,
    coeffs: Vec<BigUint>,
}

impl IntWeight {
    pub fn one() -> Self {
        IntWeight { lo: 0, coeffs: vec![BigUint::one()] }
    }

    pub fn to_genfun(&self) -> GenFun {
        let mut coeffs = vec![BigUint::zero(); self.lo];
        coeffs.extend(self.coeffs.iter().cloned());
        GenFun::from_coeffs(coeffs)
    }
}

impl WeightRing for IntWeight {
    fn one_like(&self) -> Self {
        IntWeight::one()
    }

    fn shift(&mut self, steps: usize) {
        self.lo += steps;
    }

    fn add_assign(&mut self, other: &Self) {
        if other.coeffs.is_empty() {
            return;
        }
        if self.coeffs.is_empty() {
            *self = other.clone();
            return;
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len()).max(other.lo + other.coeffs.len());
        if lo < self.lo {
            let pad = self.lo - lo;
            let mut fresh = vec![BigUint::zero(); pad];
            fresh.append(&mut self.coeffs);
            self.coeffs = fresh;
            self.lo = lo;
        }
        self.coeffs.resize(hi - lo, BigUint::zero());
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[other.lo - lo + i] += c;
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// Residue polynomial weight modulo a fixed prime below 2^31.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModWeight {
    p: u64,
    lo: usize,
    coeffs: Vec<u32>,
}

impl ModWeight {
    pub fn one(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        ModWeight { p, lo: 0, coeffs: vec![1] }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Dense residue table from exponent 0.
    pub fn to_residues(&self) -> Vec<u64> {
        let mut out = vec![0u64; self.lo];
        out.extend(self.coeffs.iter().map(|&c| c as u64));
        while out.last() == Some(&0) {
            out.pop();
        }
        out
    }
}

impl WeightRing for ModWeight {
    fn one_like(&self) -> Self {
        ModWeight::one(self.p)
    }

    fn shift(&mut self, steps: usize) {
        self.lo += steps;
    }

    fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.p, other.p);
        if other.coeffs.is_empty() {
            return;
        }
        if self.coeffs.is_empty() {
            *self = other.clone();
            return;
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len()).max(other.lo + other.coeffs.len());
        if lo < self.lo {
            let pad = self.lo - lo;
            let mut fresh = vec![0u32; pad];
            fresh.append(&mut self.coeffs);
            self.coeffs = fresh;
            self.lo = lo;
        }
        self.coeffs.resize(hi - lo, 0);
        for (i, &c) in other.coeffs.iter().enumerate() {
            let slot = &mut self.coeffs[other.lo - lo + i];
            let sum = *slot as u64 + c as u64;
            *slot = if sum >= self.p { (sum - self.p) as u32 } else { sum as u32 };
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}
