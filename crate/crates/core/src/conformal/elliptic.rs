//! Complete and incomplete elliptic integrals of the first kind.
//!
//! Modulus convention throughout (not the parameter `m = k^2`):
//!
//! ```text
//! K(k)    = integral_0^(pi/2) dt / sqrt(1 - k^2 sin^2 t)
//! F(x, k) = integral_0^x dt / (sqrt(1 - t^2) sqrt(1 - k^2 t^2))   (Jacobi form)
//! ```
//!
//! `K` uses the arithmetic-geometric mean; `F` uses Carlson's symmetric
//! `R_F` with the duplication theorem.  Both are good to ~1e-14 relative.

use crate::error::{Error, Result};
use std::f64::consts::PI;

/// Complete elliptic integral of the first kind, `0 <= k < 1`.
pub fn elliptic_k(k: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&k) {
        return Err(Error::Domain(format!("elliptic_k requires 0 <= k < 1, got {k}")));
    }
    let kp2 = (1.0 - k) * (1.0 + k);
    Ok(PI / (2.0 * agm(1.0, kp2.sqrt())))
}

/// `K(k)` from the complementary modulus squared, for `k` so close to 1
/// that `1 - k^2` would lose precision.
pub fn elliptic_k_from_kp2(kp2: f64) -> Result<f64> {
    if kp2 <= 0.0 || kp2 > 1.0 {
        return Err(Error::Domain(format!("complementary modulus^2 {kp2} out of (0, 1]")));
    }
    Ok(PI / (2.0 * agm(1.0, kp2.sqrt())))
}

fn agm(mut a: f64, mut b: f64) -> f64 {
    for _ in 0..64 {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= 2.0 * f64::EPSILON * an {
            return an;
        }
        a = an;
        b = bn;
    }
    a
}

/// Carlson symmetric integral R_F(x, y, z).
pub fn carlson_rf(mut x: f64, mut y: f64, mut z: f64) -> Result<f64> {
    if x < 0.0 || y < 0.0 || z < 0.0 || (x + y == 0.0) || (y + z == 0.0) || (z + x == 0.0) {
        return Err(Error::Domain("carlson_rf arguments out of range".into()));
    }
    for _ in 0..200 {
        let sx = x.sqrt();
        let sy = y.sqrt();
        let sz = z.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        let mu = (x + y + z) / 3.0;
        let dev = (x - mu).abs().max((y - mu).abs()).max((z - mu).abs());
        if dev <= 1e-10 * mu {
            // fifth-order tail
            let dx = 1.0 - x / mu;
            let dy = 1.0 - y / mu;
            let dz = 1.0 - z / mu;
            let e2 = dx * dy + dy * dz + dz * dx;
            let e3 = dx * dy * dz;
            let s = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0;
            return Ok(s / mu.sqrt());
        }
    }
    Err(Error::QuadratureFailure { achieved: f64::NAN, requested: 1e-13 })
}

/// Incomplete elliptic integral of the first kind in Jacobi form,
/// `0 <= x <= 1`, `0 <= k < 1` (or `k = 1` with `x < 1`).
pub fn elliptic_f(x: f64, k: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("elliptic_f requires 0 <= x <= 1, got {x}")));
    }
    if k < 0.0 || k > 1.0 || (k == 1.0 && x == 1.0) {
        return Err(Error::Domain(format!("elliptic_f modulus {k} out of range")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let kx = k * x;
    Ok(x * carlson_rf((1.0 - x) * (1.0 + x), (1.0 - kx) * (1.0 + kx), 1.0)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_at_zero() {
        assert!((elliptic_k(0.0).unwrap() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn complete_case_of_f() {
        for k in [0.3, 0.7] {
            let f = elliptic_f(1.0, k).unwrap();
            let kk = elliptic_k(k).unwrap();
            assert!((f - kk).abs() < 1e-12 * kk, "k={k}: {f} vs {kk}");
        }
    }

    #[test]
    fn lemniscatic_value() {
        // K(1/sqrt(2)) = Gamma(1/4)^2 / (4 sqrt(pi))
        let k = elliptic_k(std::f64::consts::FRAC_1_SQRT_2).unwrap();
        let g = crate::conformal::gamma::gamma(0.25);
        let expected = g * g / (4.0 * PI.sqrt());
        assert!((k - expected).abs() < 1e-12 * expected, "{k} vs {expected}");
        assert!((k - 1.854_074_677_301_372).abs() < 1e-12);
    }

    #[test]
    fn domain_errors() {
        assert!(elliptic_k(1.0).is_err());
        assert!(elliptic_k(-0.1).is_err());
        assert!(elliptic_f(1.5, 0.3).is_err());
        assert!(elliptic_f(1.0, 1.0).is_err());
    }

    #[test]
    fn f_small_modulus_is_arcsin() {
        let x = 0.6;
        let f = elliptic_f(x, 0.0).unwrap();
        assert!((f - x.asin()).abs() < 1e-14);
    }
}
