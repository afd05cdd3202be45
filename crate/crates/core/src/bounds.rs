//! Degree admissibility and the exact thresholds N1 and N2.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};

/// Shape of a degree `m`: `m = 2^r (2^l + 1)` when `shape_ok`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub m: u64,
    /// 2-adic valuation of `m`.
    pub r: u32,
    /// `l` with `m / 2^r = 2^l + 1`; 0 when the shape does not hold.
    pub ell: u32,
    /// `(m - 2) / 2`.
    pub d: u64,
    /// `C((d - 1) / 2, 2)`.
    pub e: u64,
    pub shape_ok: bool,
    /// `shape_ok && r >= 2 && l >= 1 && gcd(r, l) <= 2`.
    pub admissible: bool,
}

pub fn degree_profile(m: u64) -> Result<DegreeProfile> {
    if m % 2 == 1 || m < 4 {
        return Err(Error::OddDegree(m));
    }
    let r = m.trailing_zeros();
    let q = m >> r;
    let shape_ok = q >= 3 && (q - 1).is_power_of_two();
    let ell = if shape_ok { (q - 1).trailing_zeros() } else { 0 };
    let d = (m - 2) / 2;
    let k = (d - 1) / 2;
    let e = k * k.saturating_sub(1) / 2;
    let admissible = shape_ok && r >= 2 && ell >= 1 && r.gcd(&ell) <= 2;
    Ok(DegreeProfile { m, r, ell, d, e, shape_ok, admissible })
}

fn admissible_profile(m: u64) -> Result<DegreeProfile> {
    let p = degree_profile(m)?;
    if !p.admissible {
        return Err(Error::Inadmissible(m));
    }
    Ok(p)
}

/// All admissible `m <= limit`, increasing.
pub fn admissible_degrees(limit: u64) -> Vec<DegreeProfile> {
    (4..=limit)
        .step_by(4)
        .filter_map(|m| degree_profile(m).ok())
        .filter(|p| p.admissible)
        .collect()
}

/// `(m - 1)(m - 4)`: how many `alpha` can give degenerate critical points.
pub fn resultant_degree_bound(m: u64) -> u64 {
    (m - 1) * (m - 4)
}

/// `(5d + 4) e`: how many `alpha` can give coinciding critical values.
pub fn pi_degree_bound(p: &DegreeProfile) -> u64 {
    (5 * p.d + 4) * p.e
}

fn factorial(d: u64) -> BigUint {
    (1..=d).fold(BigUint::one(), |acc, i| acc * i)
}

/// `d_Omega = d! 2^(d-1)`.
pub fn d_omega(d: u64) -> BigUint {
    factorial(d) << (d - 1)
}

/// `d! 2^(d-2) (2d - 3) + 1`, i.e. `d! 2^(d-1) (d - 3/2) + 1`.
pub fn g_omega_bound(d: u64) -> BigUint {
    ((factorial(d) * (2 * d - 3)) << (d - 2)) + 1u32
}

fn pow2(n: u64) -> BigInt {
    BigInt::one() << n
}

/// Whether `(2^n - 2^(n/2+1) - 1) / 2 > B` with `B = (m-1)(m-4) + (5d+4)e`.
pub fn n1_holds(p: &DegreeProfile, n: u64) -> bool {
    let b = BigInt::from(resultant_degree_bound(p.m) + pi_degree_bound(p));
    let lhs: BigInt = pow2(n) - 1 - 2 * b;
    // lhs > 2^(n/2 + 1)  <=>  lhs > 0 and lhs^2 > 2^(n + 2)
    lhs.sign() == num_bigint::Sign::Plus && &lhs * &lhs > pow2(n + 2)
}

/// Whether `2^n - 2g - 3 d_Omega >= 2 g 2^(n/2)`, the `V >= 1` form of the
/// Chebotarev estimate.
pub fn n2_holds(p: &DegreeProfile, n: u64) -> bool {
    let dom = BigInt::from(d_omega(p.d));
    let g = BigInt::from(g_omega_bound(p.d));
    let lhs: BigInt = pow2(n) - 2 * &g - 3 * dom;
    lhs.sign() != num_bigint::Sign::Minus && &lhs * &lhs >= BigInt::from(4) * &g * &g * pow2(n)
}

/// Both conditions are false while their left side is negative and stay true
/// once they hold, so scanning from the first `n` with `2^n` above the
/// constant term finds the minimum.
fn first_holding(start_above: &BigInt, holds: impl Fn(u64) -> bool) -> u64 {
    let mut n = start_above.bits().saturating_sub(1).max(1);
    while !holds(n) {
        n += 1;
    }
    n
}

pub fn n1(m: u64) -> Result<u64> {
    let p = admissible_profile(m)?;
    let b = BigInt::from(resultant_degree_bound(m) + pi_degree_bound(&p));
    Ok(first_holding(&(2 * b + 1i32), |n| n1_holds(&p, n)))
}

pub fn n2(m: u64) -> Result<u64> {
    let p = admissible_profile(m)?;
    let c: BigInt = 2 * BigInt::from(g_omega_bound(p.d)) + 3 * BigInt::from(d_omega(p.d));
    Ok(first_holding(&c, |n| n2_holds(&p, n)))
}

/// `(2^n - 2(g ceil(2^(n/2)) + g + d_Omega)) / d_Omega`, never above the true bound.
pub fn v_lower(n: u64, m: u64) -> Result<BigRational> {
    let p = admissible_profile(m)?;
    let dom = BigInt::from(d_omega(p.d));
    let g = BigInt::from(g_omega_bound(p.d));
    let root = pow2(n).sqrt();
    let ceil_root = if &root * &root == pow2(n) { root } else { root + 1 };
    let num: BigInt = pow2(n) - 2 * (&g * ceil_root + &g + &dom);
    Ok(BigRational::new(num, dom))
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundsReport {
    pub m: u64,
    pub profile: DegreeProfile,
    pub n1: u64,
    pub n2: u64,
    /// `max(n1, n2)`: sufficient for maximal uniformity, not claimed minimal.
    pub n_threshold: u64,
    pub n_threshold_kind: &'static str,
    #[serde(serialize_with = "as_decimal")]
    pub d_omega: BigUint,
    #[serde(serialize_with = "as_decimal")]
    pub g_omega_bound: BigUint,
    pub resultant_degree_bound: u64,
    pub pi_degree_bound: u64,
}

fn as_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

pub fn bounds_report(m: u64) -> Result<BoundsReport> {
    let profile = admissible_profile(m)?;
    let (a, b) = (n1(m)?, n2(m)?);
    Ok(BoundsReport {
        m,
        n1: a,
        n2: b,
        n_threshold: a.max(b),
        n_threshold_kind: "sufficient",
        d_omega: d_omega(profile.d),
        g_omega_bound: g_omega_bound(profile.d),
        resultant_degree_bound: resultant_degree_bound(m),
        pi_degree_bound: pi_degree_bound(&profile),
        profile,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn profiles() {
        let p = degree_profile(12).unwrap();
        assert_eq!((p.r, p.ell, p.d, p.e, p.admissible), (2, 1, 5, 1, true));
        let p = degree_profile(72).unwrap();
        assert_eq!((p.r, p.ell, p.shape_ok, p.admissible), (3, 3, true, false));
        assert!(!degree_profile(28).unwrap().shape_ok);
        assert_eq!(degree_profile(13).unwrap_err(), Error::OddDegree(13));
        let p = degree_profile(20).unwrap();
        assert_eq!((p.d, p.e), (9, 6));
    }

    #[test]
    fn admissible_list() {
        let ms: Vec<u64> = admissible_degrees(100).iter().map(|p| p.m).collect();
        assert_eq!(ms, vec![12, 20, 24, 36, 40, 48, 68, 80, 96]);
    }

    #[test]
    fn thresholds_for_twelve() {
        assert_eq!(n1(12).unwrap(), 9);
        assert_eq!(n2(12).unwrap(), 28);
        assert_eq!(d_omega(5), BigUint::from(1920u32));
        assert_eq!(g_omega_bound(5), BigUint::from(6721u32));
        let p = degree_profile(12).unwrap();
        assert!(!n1_holds(&p, 8));
        assert!(!n2_holds(&p, 27));
        assert_eq!(n1(72).unwrap_err(), Error::Inadmissible(72));
    }

    #[test]
    fn v_lower_signs() {
        assert!(v_lower(28, 12).unwrap() >= BigRational::one());
        assert!(v_lower(20, 12).unwrap().is_negative());
    }

    #[test]
    fn v_lower_is_an_underestimate() {
        // for even n the value is exact; for odd n it sits below the exact bound
        for m in [12, 20, 24] {
            let p = degree_profile(m).unwrap();
            let n2 = n2(m).unwrap();
            for n in n2.saturating_sub(4)..n2 + 4 {
                let v = v_lower(n, m).unwrap();
                if v >= BigRational::one() {
                    assert!(n2_holds(&p, n));
                }
            }
        }
    }
}
