//! Chinese-remainder reconstruction of exact coefficients from residue
//! tables produced by independent modular passes.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::genfun::GenFun;

/// Reconstruct the unique integer in `[0, prod(moduli))` with the given
/// residues.  Moduli must be pairwise coprime.
pub fn crt(residues: &[u64], moduli: &[u64]) -> Result<BigUint> {
    if residues.len() != moduli.len() || moduli.is_empty() {
        return Err(Error::InconsistentResidues(
            "residue and modulus lists must be non-empty and equal in length".into(),
        ));
    }
    let mut acc = BigUint::from(residues[0] % moduli[0]);
    let mut modulus = BigUint::from(moduli[0]);
    for (&r, &m) in residues.iter().zip(moduli).skip(1) {
        // acc' = acc + modulus * t where t = (r - acc) / modulus  (mod m)
        let m_big = BigUint::from(m);
        let acc_mod = u64::try_from(&acc % &m_big).expect("fits");
        let inv = mod_inverse(
            u64::try_from(&modulus % &m_big).expect("fits"),
            m,
        )
        .ok_or_else(|| {
            Error::InconsistentResidues(format!("moduli not coprime at {m}"))
        })?;
        let diff = (r % m + m - acc_mod % m) % m;
        let t = (diff as u128 * inv as u128 % m as u128) as u64;
        acc += &modulus * BigUint::from(t);
        modulus *= m_big;
    }
    Ok(acc)
}

/// Extended-Euclid modular inverse; `None` when not invertible.
pub fn mod_inverse(a: u64, modulus: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (modulus as i128, (a % modulus) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    if t < 0 {
        t += modulus as i128;
    }
    Some(t as u64)
}

/// Reconstruct a whole series from per-prime residue tables.
///
/// All but the last pass are used for reconstruction; the last is the
/// verification pass: every reconstructed coefficient is reduced by the
/// extra prime and must reproduce its residue, otherwise the prime set was
/// too small (or a pass is corrupt).  Tables may differ in length because
/// top coefficients can vanish modulo individual primes; they are padded
/// with zeros to a common length.
pub fn reconstruct_series(passes: &[(u64, Vec<u64>)]) -> Result<GenFun> {
    if passes.len() < 2 {
        return Err(Error::InconsistentResidues(
            "need at least one reconstruction prime and one verification prime".into(),
        ));
    }
    let len = passes.iter().map(|(_, t)| t.len()).max().unwrap_or(0);
    let (rec, verify) = passes.split_at(passes.len() - 1);
    let moduli: Vec<u64> = rec.iter().map(|&(p, _)| p).collect();
    let (vp, vtable) = (&verify[0].0, &verify[0].1);

    let mut coeffs = Vec::with_capacity(len);
    for k in 0..len {
        let residues: Vec<u64> =
            rec.iter().map(|(_, t)| t.get(k).copied().unwrap_or(0)).collect();
        let value = crt(&residues, &moduli)?;
        let check = u64::try_from(&value % BigUint::from(*vp)).expect("fits");
        let expect = vtable.get(k).copied().unwrap_or(0);
        if check != expect {
            return Err(Error::InconsistentResidues(format!(
                "coefficient {k}: reconstruction gives {check} mod {vp}, pass says {expect}"
            )));
        }
        coeffs.push(value);
    }
    Ok(GenFun::from_coeffs(coeffs))
}

/// Reconstruction capacity of a modulus product: `true` when the product of
/// the reconstruction primes exceeds `2 * bound`.
pub fn capacity_sufficient(moduli: &[u64], bound: &BigUint) -> bool {
    let mut product = BigUint::one();
    for &m in moduli {
        product *= m;
    }
    product > bound * 2u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn textbook_instance() {
        // x = 2 mod 3, x = 3 mod 5 -> 8
        assert_eq!(crt(&[2, 3], &[3, 5]).unwrap(), BigUint::from(8u32));
    }

    #[test]
    fn value_below_both_moduli() {
        assert_eq!(crt(&[116, 116], &[10007, 10009]).unwrap(), BigUint::from(116u32));
    }

    #[test]
    fn inverse() {
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(4, 8), None);
    }

    #[test]
    fn series_reconstruction_with_verification() {
        // series 1 + 12x + 12345x^2 under primes {101, 127} (capacity
        // 12827) with verifier 131
        let exact = [1u64, 12, 12345];
        let passes = vec![
            (101u64, exact.iter().map(|c| c % 101).collect::<Vec<_>>()),
            (127u64, exact.iter().map(|c| c % 127).collect::<Vec<_>>()),
            (131u64, exact.iter().map(|c| c % 131).collect::<Vec<_>>()),
        ];
        let g = reconstruct_series(&passes).unwrap();
        assert_eq!(g, GenFun::from_u64_coeffs(&exact));
    }

    #[test]
    fn verification_catches_insufficient_sets() {
        // 123 needs mod 35 capacity; with only {5} reconstructed value is
        // 123 % 5 = 3, which the verifier 11 rejects (123 % 11 = 2 != 3 % 11)
        let passes = vec![(5u64, vec![123 % 5]), (11u64, vec![123 % 11])];
        assert!(matches!(
            reconstruct_series(&passes),
            Err(Error::InconsistentResidues(_))
        ));
    }

    #[test]
    fn ragged_tables_are_padded() {
        // top coefficient 7 vanishes mod 7, so that pass's table is shorter
        let exact = [3u64, 7];
        let passes = vec![
            (5u64, vec![3, 2]),
            (7u64, vec![3]),
            (11u64, vec![3, 7]),
        ];
        let g = reconstruct_series(&passes).unwrap();
        assert_eq!(g, GenFun::from_u64_coeffs(&exact));
    }

    #[test]
    fn extra_prime_leaves_reconstruction_unchanged() {
        let exact = [99999999999u64, 123456789012345];
        let make = |ps: &[u64]| -> Vec<(u64, Vec<u64>)> {
            ps.iter().map(|&p| (p, exact.iter().map(|c| c % p).collect())).collect()
        };
        let a = reconstruct_series(&make(&[2147483647, 2147483629, 2147483587])).unwrap();
        let b =
            reconstruct_series(&make(&[2147483647, 2147483629, 2147483579, 2147483587])).unwrap();
        assert_eq!(a, b);
    }
}
