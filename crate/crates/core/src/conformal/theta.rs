//! Jacobi theta constants and the rectangle map parameter.
//!
//! The Schwarz-Christoffel map `f(z) = int_0^z dxi / (sqrt(1-xi^2) sqrt(alpha^2-xi^2))`
//! sends the upper half-plane to a rectangle whose aspect ratio is
//! `r = 2 K(1/alpha) / K(sqrt(alpha^2-1)/alpha)`; inverting that relation via
//! theta constants gives
//!
//! ```text
//! sqrt(alpha) = theta3(q) / theta2(q),   q = exp(-2 pi / r).
//! ```
//!
//! For large `r` the map parameter collapses onto 1 exponentially,
//! `alpha ~= 1 + 8 exp(-pi r/2) + 32 exp(-pi r)` with error `O(exp(-3 pi r/2))`,
//! so `alpha - 1` is also exposed directly: consumers near the degenerate
//! corner need it at full relative precision.

use std::cmp::Ordering;

use crate::bigfloat::BigFloat;
use crate::conformal::elliptic::{elliptic_k, elliptic_k_from_kp2};
use crate::error::{Error, Result};

fn check_nome(q: &BigFloat) -> Result<()> {
    if q.is_negative() || q.cmp(&BigFloat::one(q.scale())) != Ordering::Less {
        return Err(Error::Domain("theta nome must satisfy 0 <= q < 1".into()));
    }
    Ok(())
}

/// Working scale and truncation threshold: terms below
/// `10^-max(30, precision+5)` are dropped.
fn series_params(precision: u32) -> (u32, BigFloat) {
    let cutoff = 30.max(precision + 5);
    let work = (precision + 10).max(cutoff + 5);
    let tiny = BigFloat::parse(&format!("1e-{cutoff}"), work).expect("constant");
    (work, tiny)
}

/// `theta2(q) = 2 sum_{n>=0} q^((n+1/2)^2) = 2 q^(1/4) sum_{n>=0} q^(n(n+1))`.
pub fn theta2(q: &BigFloat, precision: u32) -> Result<BigFloat> {
    check_nome(q)?;
    let (work, tiny) = series_params(precision);
    let q = q.with_scale(work);
    if q.is_zero() {
        return Ok(BigFloat::zero(precision));
    }
    let quarter_root = q.sqrt()?.sqrt()?;
    let q2 = q.mul(&q);
    let mut sum = BigFloat::one(work); // n = 0
    let mut power = BigFloat::one(work); // q^(n(n+1))
    let mut step = BigFloat::one(work); // q^(2n)
    loop {
        step = step.mul(&q2);
        power = power.mul(&step);
        if power.cmp(&tiny) == Ordering::Less {
            break;
        }
        sum = sum.add(&power);
    }
    Ok(BigFloat::from_u64(2, 0).mul(&quarter_root).mul(&sum).with_scale(precision))
}

/// `theta3(q) = 1 + 2 sum_{n>=1} q^(n^2)`.
pub fn theta3(q: &BigFloat, precision: u32) -> Result<BigFloat> {
    check_nome(q)?;
    let (work, tiny) = series_params(precision);
    let q = q.with_scale(work);
    let q2 = q.mul(&q);
    let two = BigFloat::from_u64(2, 0);
    let mut sum = BigFloat::one(work);
    let mut power = q.clone(); // q^(n^2), n = 1
    let mut step = q.clone(); // q^(2n-1)
    while power.cmp(&tiny) != Ordering::Less {
        sum = sum.add(&two.mul(&power));
        step = step.mul(&q2); // q^(2n+1)
        power = power.mul(&step); // q^((n+1)^2)
    }
    Ok(sum.with_scale(precision))
}

/// Map parameter for an aspect ratio `r >= 1`:
/// `alpha = (theta3(q)/theta2(q))^2` with `q = exp(-2 pi / r)`.
pub fn alpha_from_aspect(r: f64, precision: u32) -> Result<BigFloat> {
    if !(r >= 1.0) {
        return Err(Error::Domain(format!("aspect ratio must be >= 1, got {r}")));
    }
    let work = precision + 15;
    let q = nome(r, work)?;
    let t3 = theta3(&q, work)?;
    let t2 = theta2(&q, work)?;
    let root = t3.div(&t2)?;
    Ok(root.mul(&root).with_scale(precision))
}

/// `q = exp(-2 pi / r)` at the given scale.
pub fn nome(r: f64, scale: u32) -> Result<BigFloat> {
    let two_pi = BigFloat::pi(scale + 10).mul(&BigFloat::from_u64(2, 0));
    let arg = two_pi.div(&BigFloat::from_f64(r, scale + 10)?)?.neg();
    Ok(arg.exp().with_scale(scale))
}

/// `alpha - 1` at full relative precision.
pub fn alpha_m1_from_aspect(r: f64, precision: u32) -> Result<BigFloat> {
    let alpha = alpha_from_aspect(r, precision + 10)?;
    Ok(alpha.sub(&BigFloat::one(precision + 10)).with_scale(precision))
}

/// Two-term exponential approximation
/// `alpha ~= 1 + 8 e^(-pi r/2) + 32 e^(-pi r)`, error `O(e^(-3 pi r/2))`.
pub fn alpha_asymptotic(r: f64, precision: u32) -> Result<BigFloat> {
    if !(r >= 1.0) {
        return Err(Error::Domain(format!("aspect ratio must be >= 1, got {r}")));
    }
    let work = precision + 10;
    let half_pi_r = BigFloat::pi(work)
        .mul(&BigFloat::from_f64(r, work)?)
        .div(&BigFloat::from_u64(2, 0))?;
    let u = half_pi_r.neg().exp();
    let u2 = u.mul(&u);
    Ok(BigFloat::one(work)
        .add(&BigFloat::from_u64(8, 0).mul(&u))
        .add(&BigFloat::from_u64(32, 0).mul(&u2))
        .with_scale(precision))
}

/// Closed form for aspect ratio 2 (a singular modulus): `alpha = sqrt(2)`.
pub fn alpha_closed_form_r2(precision: u32) -> Result<BigFloat> {
    BigFloat::from_u64(2, precision + 5).sqrt().map(|v| v.with_scale(precision))
}

/// Closed form for aspect ratio 10 from the singular modulus `k_25`:
/// `alpha = sqrt(2 + 24 s) / (1 + 12 s)` with `s = sqrt(161 sqrt(5) - 360)`.
pub fn alpha_closed_form_r10(precision: u32) -> Result<BigFloat> {
    // heavy cancellation: s is within 4e-7 of 1/12, so alpha - 1 ~ 1.2e-6
    let work = precision + 25;
    let sqrt5 = BigFloat::from_u64(5, work).sqrt()?;
    let s = BigFloat::from_u64(161, 0)
        .mul(&sqrt5)
        .sub(&BigFloat::from_u64(360, work))
        .sqrt()?;
    let numer = BigFloat::from_u64(2, work)
        .add(&BigFloat::from_u64(24, 0).mul(&s))
        .sqrt()?;
    let denom = BigFloat::one(work).add(&BigFloat::from_u64(12, 0).mul(&s));
    numer.div(&denom).map(|v| v.with_scale(precision))
}

/// Invert the map parameter back to the aspect ratio through the elliptic
/// relation `r = 2 K(1/alpha) / K(sqrt(alpha^2-1)/alpha)`.  Takes
/// `alpha - 1` so the degenerate corner keeps full precision.
pub fn aspect_from_alpha_m1(alpha_m1: f64) -> Result<f64> {
    if alpha_m1 <= 0.0 {
        return Err(Error::Domain("alpha must exceed 1".into()));
    }
    let alpha = 1.0 + alpha_m1;
    // (alpha^2 - 1) / alpha^2, computed without cancellation
    let kp2 = alpha_m1 * (alpha_m1 + 2.0) / (alpha * alpha);
    let k_top = elliptic_k_from_kp2(kp2)?;
    let k_bottom = elliptic_k(kp2.sqrt())?;
    Ok(2.0 * k_top / k_bottom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta3_at_zero_is_one() {
        let q = BigFloat::zero(40);
        assert_eq!(theta3(&q, 40).unwrap().to_decimal_string(), BigFloat::one(40).to_decimal_string());
    }

    #[test]
    fn theta2_leading_series() {
        // theta2(q) / (2 q^(1/4)) = 1 + q^2 + O(q^6)
        let q = BigFloat::parse("1e-4", 40).unwrap();
        let t2 = theta2(&q, 40).unwrap();
        let quarter = q.with_scale(45).sqrt().unwrap().sqrt().unwrap();
        let ratio = t2.div(&BigFloat::from_u64(2, 0).mul(&quarter)).unwrap();
        let expected = BigFloat::one(40).add(&q.mul(&q));
        assert!(ratio.abs_diff_within(&expected, 10), "{ratio} vs {expected}");
    }

    #[test]
    fn nome_out_of_range_rejected() {
        assert!(theta2(&BigFloat::one(10), 10).is_err());
        assert!(theta3(&BigFloat::from_i64(-1, 10), 10).is_err());
    }

    #[test]
    fn aspect_two_gives_sqrt2() {
        let alpha = alpha_from_aspect(2.0, 40).unwrap();
        let sqrt2 = BigFloat::from_u64(2, 40).sqrt().unwrap();
        assert!(alpha.abs_diff_within(&sqrt2, 35), "{alpha}");
    }

    #[test]
    fn aspect_ten_reference_digits() {
        let alpha = alpha_from_aspect(10.0, 40).unwrap();
        let reference = BigFloat::parse("1.00000120561454706472212", 40).unwrap();
        // the reference carries 24 significant digits
        assert!(alpha.abs_diff_within(&reference, 22), "{alpha}");
    }

    #[test]
    fn closed_forms_match_theta_values() {
        let a2 = alpha_from_aspect(2.0, 60).unwrap();
        assert!(a2.abs_diff_within(&alpha_closed_form_r2(60).unwrap(), 55));
        let a10 = alpha_from_aspect(10.0, 60).unwrap();
        assert!(
            a10.abs_diff_within(&alpha_closed_form_r10(60).unwrap(), 55),
            "{a10} vs {}",
            alpha_closed_form_r10(60).unwrap()
        );
    }

    #[test]
    fn asymptotic_agreement() {
        // 19-digit agreement at r = 10
        let exact = alpha_from_aspect(10.0, 40).unwrap();
        let asym = alpha_asymptotic(10.0, 40).unwrap();
        assert!(exact.abs_diff_within(&asym, 18), "{exact} vs {asym}");
        // relative error at r = 4 below 100 e^(-3 pi r / 2)
        let exact4 = alpha_from_aspect(4.0, 40).unwrap();
        let asym4 = alpha_asymptotic(4.0, 40).unwrap();
        let bound = 100.0 * (-1.5 * std::f64::consts::PI * 4.0).exp();
        let rel = exact4.sub(&asym4).abs().div(&exact4).unwrap().to_f64();
        assert!(rel < bound, "rel {rel:e} vs bound {bound:e}");
    }

    #[test]
    fn asymptotic_decreases_to_one() {
        let mut prev = f64::INFINITY;
        for r in [4.0, 6.0, 8.0, 12.0, 20.0] {
            let a = alpha_asymptotic(r, 40).unwrap().to_f64();
            assert!(a > 1.0 && a < prev);
            prev = a;
        }
    }

    #[test]
    fn round_trip_through_elliptic_relation() {
        for r in [1.0, 1.5, 2.0, 4.0, 10.0] {
            let am1 = alpha_m1_from_aspect(r, 40).unwrap().to_f64();
            let back = aspect_from_alpha_m1(am1).unwrap();
            assert!((back - r).abs() < 1e-12 * r, "r={r}: {back}");
        }
    }
}
