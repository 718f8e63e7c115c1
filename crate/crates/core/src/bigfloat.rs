//! Fixed-precision decimal arithmetic.
//!
//! Values are stored as `mantissa * 10^(-scale)` with an arbitrary-precision
//! integer mantissa, so a value of scale `P` carries `P` decimal digits after
//! the point.  Every operation rounds to nearest (ties away from zero) at the
//! scale of its result, which for binary operations is the larger of the two
//! operand scales.  This is deliberately simple and auditable: generating
//! functions are evaluated at ~80 digits and extrapolation tables amplify
//! roundoff, so the rounding behaviour has to be easy to reason about.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Decimal fixed-point number: `mant * 10^(-scale)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    scale: u32,
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// Nearest division, ties away from zero. `d` must be positive.
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    let (q, r) = n.div_rem(d);
    let two_r: BigInt = r.abs() * 2;
    if two_r >= d.abs() {
        if n.is_negative() {
            q - 1u32
        } else {
            q + 1u32
        }
    } else {
        q
    }
}

impl BigFloat {
    pub fn zero(scale: u32) -> Self {
        BigFloat { mant: BigInt::zero(), scale }
    }

    pub fn one(scale: u32) -> Self {
        BigFloat { mant: pow10(scale), scale }
    }

    pub fn from_i64(v: i64, scale: u32) -> Self {
        BigFloat { mant: BigInt::from(v) * pow10(scale), scale }
    }

    pub fn from_u64(v: u64, scale: u32) -> Self {
        BigFloat { mant: BigInt::from(v) * pow10(scale), scale }
    }

    pub fn from_bigint(v: &BigInt, scale: u32) -> Self {
        BigFloat { mant: v * pow10(scale), scale }
    }

    pub fn from_biguint(v: &BigUint, scale: u32) -> Self {
        BigFloat { mant: BigInt::from_biguint(Sign::Plus, v.clone()) * pow10(scale), scale }
    }

    /// Exact conversion from an `f64` (every finite double has a finite
    /// decimal expansion), then rounded to `scale`.
    pub fn from_f64(v: f64, scale: u32) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::Domain(format!("cannot convert {v} to a decimal")));
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let exp_bits = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0xf_ffff_ffff_ffff;
        let (m, e) = if exp_bits == 0 {
            (frac, -1074i64)
        } else {
            (frac | (1u64 << 52), exp_bits - 1075)
        };
        let mut mant = BigInt::from(m) * sign;
        let exact = if e >= 0 {
            mant <<= e as u32;
            BigFloat { mant, scale: 0 }
        } else {
            let k = (-e) as u32;
            // m / 2^k = m * 5^k / 10^k
            mant *= BigInt::from(5u32).pow(k);
            BigFloat { mant, scale: k }
        };
        Ok(exact.with_scale(scale))
    }

    /// Rescale, rounding to nearest if digits are dropped.
    pub fn with_scale(&self, scale: u32) -> Self {
        match scale.cmp(&self.scale) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => BigFloat {
                mant: &self.mant * pow10(scale - self.scale),
                scale,
            },
            Ordering::Less => BigFloat {
                mant: div_round(&self.mant, &pow10(self.scale - scale)),
                scale,
            },
        }
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        BigFloat { mant: self.mant.abs(), scale: self.scale }
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -&self.mant, scale: self.scale }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let scale = self.scale.max(other.scale);
        let a = &self.mant * pow10(scale - self.scale);
        let b = &other.mant * pow10(scale - other.scale);
        (a, b, scale)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, scale) = self.aligned(other);
        BigFloat { mant: a + b, scale }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b, scale) = self.aligned(other);
        BigFloat { mant: a - b, scale }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let scale = self.scale.max(other.scale);
        let exact = &self.mant * &other.mant; // at scale self.scale + other.scale
        let drop = self.scale + other.scale - scale;
        BigFloat { mant: div_round(&exact, &pow10(drop)), scale }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let scale = self.scale.max(other.scale);
        // a/b = (ma * 10^(sb + scale)) / (mb * 10^(sa)) * 10^(-scale)
        let numer = &self.mant * pow10(other.scale + scale);
        let denom = &other.mant * pow10(self.scale);
        let mant = if denom.is_negative() {
            div_round(&-numer, &-denom)
        } else {
            div_round(&numer, &denom)
        };
        Ok(BigFloat { mant, scale })
    }

    /// Square root, rounded to the scale of the input.  Negative input is a
    /// domain error.
    pub fn sqrt(&self) -> Result<Self> {
        if self.mant.is_negative() {
            return Err(Error::Domain("sqrt of negative value".into()));
        }
        // r ~= sqrt(m * 10^scale) so that (r 10^-scale)^2 = m 10^-scale
        let target = self.mant.magnitude() * pow10(self.scale).magnitude();
        let floor = target.sqrt();
        // nearest integer square root
        let up = &floor + 1u32;
        let r = if (&up * &up) - &target <= &target - (&floor * &floor) {
            up
        } else {
            floor
        };
        Ok(BigFloat { mant: BigInt::from_biguint(Sign::Plus, r), scale: self.scale })
    }

    /// Integer power by binary exponentiation.  Negative powers invert.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let scale = self.scale;
        if n == 0 {
            return Ok(BigFloat::one(scale));
        }
        let guard = 10 + 2 * (64 - n.unsigned_abs().leading_zeros());
        let mut base = self.with_scale(scale + guard);
        let mut e = n.unsigned_abs();
        let mut acc = BigFloat::one(scale + guard);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        let acc = if n < 0 { BigFloat::one(scale + guard).div(&acc)? } else { acc };
        Ok(acc.with_scale(scale))
    }

    /// `e^x` by argument halving and Taylor series.
    pub fn exp(&self) -> Self {
        let scale = self.scale;
        // halve until |x| < 1/16
        let mut halvings = 0u32;
        {
            let mut approx = self.to_f64().abs();
            while approx > 1.0 / 16.0 && halvings < 64 {
                approx /= 2.0;
                halvings += 1;
            }
        }
        let work = scale + 25 + halvings;
        let mut x = self.with_scale(work);
        let two = BigFloat::from_u64(2, 0);
        for _ in 0..halvings {
            x = x.div(&two).expect("two != 0");
        }
        // Taylor sum
        let eps = BigFloat { mant: BigInt::from(1u32), scale: work };
        let mut term = BigFloat::one(work);
        let mut sum = BigFloat::one(work);
        let mut n = 1u64;
        loop {
            term = term.mul(&x).div(&BigFloat::from_u64(n, 0)).expect("n > 0");
            if term.abs().cmp(&eps) == Ordering::Less {
                break;
            }
            sum = sum.add(&term);
            n += 1;
        }
        for _ in 0..halvings {
            sum = sum.mul(&sum);
        }
        sum.with_scale(scale)
    }

    /// The circle constant at the requested scale (Machin's formula).
    pub fn pi(scale: u32) -> Self {
        let work = scale + 15;
        let a = atan_inv(5, work);
        let b = atan_inv(239, work);
        let sixteen = BigFloat::from_u64(16, 0);
        let four = BigFloat::from_u64(4, 0);
        sixteen.mul(&a).sub(&four.mul(&b)).with_scale(scale)
    }

    pub fn to_f64(&self) -> f64 {
        // keep the exponent in f64 range by trimming excess digits first
        let v = if self.scale > 250 {
            self.with_scale(250)
        } else {
            self.clone()
        };
        let m = v.mant.to_f64().unwrap_or(f64::NAN);
        m * 10f64.powi(-(v.scale as i32))
    }

    /// Parse a plain decimal string, optionally with an `e` exponent,
    /// rounding to `scale`.
    pub fn parse(s: &str, scale: u32) -> Result<Self> {
        let s = s.trim();
        let (body, exp) = match s.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = s[i + 1..]
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
                (&s[..i], e)
            }
            None => (s, 0),
        };
        let (sign, digits) = match body.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1, body.strip_prefix('+').unwrap_or(body)),
        };
        let (int_part, frac_part) = match digits.find('.') {
            Some(i) => (&digits[..i], &digits[i + 1..]),
            None => (digits, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Parse(format!("empty number {s:?}")));
        }
        let all: String = format!("{int_part}{frac_part}");
        if !all.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad digits in {s:?}")));
        }
        let mant: BigInt = all.parse().map_err(|_| Error::Parse(format!("bad number {s:?}")))?;
        let mant = mant * sign;
        // value = mant * 10^(exp - frac_len)
        let point = frac_part.len() as i64 - exp;
        let exact = if point >= 0 {
            BigFloat { mant, scale: point as u32 }
        } else {
            BigFloat { mant: mant * pow10((-point) as u32), scale: 0 }
        };
        Ok(exact.with_scale(scale))
    }

    /// Full decimal rendering with `scale` digits after the point.
    pub fn to_decimal_string(&self) -> String {
        let neg = self.mant.is_negative();
        let digits = self.mant.abs().to_string();
        let scale = self.scale as usize;
        let padded = if digits.len() <= scale {
            format!("{}{}", "0".repeat(scale + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - scale);
        let body = if scale == 0 {
            int_part.to_string()
        } else {
            format!("{int_part}.{frac_part}")
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }

    pub fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }

    /// True when `|self - other| <= 10^(-digits)`.
    pub fn abs_diff_within(&self, other: &Self, digits: u32) -> bool {
        let tol = BigFloat { mant: BigInt::from(1u32), scale: digits };
        self.sub(other).abs().cmp(&tol) != Ordering::Greater
    }

    /// True when the two values agree to at least `n` significant digits,
    /// in the sense `|a - b| <= |a| * 10^(1-n)`.
    pub fn agrees_to_sig_digits(&self, other: &Self, n: u32) -> bool {
        let diff = self.sub(other).abs();
        let bound = self.abs().mul(&BigFloat {
            mant: BigInt::from(10u32),
            scale: n,
        });
        diff.cmp(&bound) != Ordering::Greater
    }
}

/// arctan(1/k) by its Taylor series, summed in integer arithmetic.
fn atan_inv(k: u64, scale: u32) -> BigFloat {
    let k2 = BigInt::from(k) * BigInt::from(k);
    let mut term = pow10(scale) / BigInt::from(k);
    let mut sum = term.clone();
    let mut n = 1u64;
    while !term.is_zero() {
        term /= &k2;
        if term.is_zero() {
            break;
        }
        let contrib = &term / BigInt::from(2 * n + 1);
        if n % 2 == 1 {
            sum -= contrib;
        } else {
            sum += contrib;
        }
        n += 1;
    }
    BigFloat { mant: sum, scale }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937511";
    const E_50: &str = "2.71828182845904523536028747135266249775724709369996";

    #[test]
    fn basic_arithmetic() {
        let a = BigFloat::parse("1.5", 10).unwrap();
        let b = BigFloat::parse("2.25", 10).unwrap();
        assert_eq!(a.add(&b).to_decimal_string(), "3.7500000000");
        assert_eq!(a.mul(&b).to_decimal_string(), "3.3750000000");
        assert_eq!(b.sub(&a).to_decimal_string(), "0.7500000000");
        assert_eq!(b.div(&a).unwrap().to_decimal_string(), "1.5000000000");
    }

    #[test]
    fn rounding_is_nearest() {
        // 1/3 at 5 digits: 0.33333; 2/3 rounds up to 0.66667
        let one = BigFloat::one(5);
        let three = BigFloat::from_u64(3, 5);
        assert_eq!(one.div(&three).unwrap().to_decimal_string(), "0.33333");
        let two = BigFloat::from_u64(2, 5);
        assert_eq!(two.div(&three).unwrap().to_decimal_string(), "0.66667");
        // rescaling rounds ties away from zero
        let v = BigFloat::parse("0.25", 10).unwrap();
        assert_eq!(v.with_scale(1).to_decimal_string(), "0.3");
        assert_eq!(v.neg().with_scale(1).to_decimal_string(), "-0.3");
    }

    #[test]
    fn rounding_audit_against_exact_rationals() {
        // every quotient is within half an ulp of the exact rational
        let scale = 40u32;
        for (n, d) in [(1u64, 7u64), (22, 7), (355, 113), (1, 999983)] {
            let q = BigFloat::from_u64(n, scale)
                .div(&BigFloat::from_u64(d, scale))
                .unwrap();
            // |q*d - n| <= d/2 * 10^-scale
            let back = q.mul(&BigFloat::from_u64(d, 0));
            let err = back.sub(&BigFloat::from_u64(n, scale)).abs();
            let half_ulp_times_d = BigFloat {
                mant: BigInt::from(d),
                scale: scale + 1,
            }
            .mul(&BigFloat::from_u64(5, 0).with_scale(1));
            // err <= d * 0.5 * 10^-scale  (allow equality)
            assert!(
                err.cmp(&half_ulp_times_d.with_scale(scale + 2)) != Ordering::Greater,
                "{n}/{d}: err {err}"
            );
        }
    }

    #[test]
    fn sqrt_matches_known_value() {
        let two = BigFloat::from_u64(2, 60);
        let r = two.sqrt().unwrap();
        let expected = BigFloat::parse(
            "1.414213562373095048801688724209698078569671875376948073176680",
            60,
        )
        .unwrap();
        assert!(r.abs_diff_within(&expected, 59));
        // square back
        let sq = r.mul(&r);
        assert!(sq.abs_diff_within(&two, 58));
    }

    #[test]
    fn pi_and_exp_digits() {
        let pi = BigFloat::pi(50);
        assert!(pi.abs_diff_within(&BigFloat::parse(PI_50, 50).unwrap(), 49));
        let e = BigFloat::one(50).exp();
        assert!(e.abs_diff_within(&BigFloat::parse(E_50, 50).unwrap(), 49));
        // exp(-x) * exp(x) = 1
        let x = BigFloat::parse("3.724", 50).unwrap();
        let p = x.exp().mul(&x.neg().exp());
        assert!(p.abs_diff_within(&BigFloat::one(50), 47));
    }

    #[test]
    fn f64_round_trips() {
        for v in [0.0, 1.0, -2.5, 0.1, 1e-7, 12345.6789] {
            let b = BigFloat::from_f64(v, 40).unwrap();
            assert!((b.to_f64() - v).abs() <= 1e-15 * v.abs().max(1.0));
        }
    }

    #[test]
    fn parse_and_render() {
        let v = BigFloat::parse("-12.0345e2", 4).unwrap();
        assert_eq!(v.to_decimal_string(), "-1203.4500");
        assert!(BigFloat::parse("abc", 4).is_err());
        let tiny = BigFloat::parse("5e-3", 4).unwrap();
        assert_eq!(tiny.to_decimal_string(), "0.0050");
    }

    #[test]
    fn powi_inverse() {
        let x = BigFloat::parse("1.3", 30).unwrap();
        let p = x.powi(7).unwrap();
        let q = x.powi(-7).unwrap();
        assert!(p.mul(&q).abs_diff_within(&BigFloat::one(30), 27));
    }
}
