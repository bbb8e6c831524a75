//! Riemann zeta function on the real half-line `s > 1`.

use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

/// Number of leading terms summed directly before the asymptotic tail.
const DIRECT_TERMS: u32 = 16;

/// `B_{2k} / (2k)!` for k = 1..=12.
const BERNOULLI_OVER_FACTORIAL: [f64; 12] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
    77683.0 / 14101100039391805440000.0,
    -236364091.0 / 1693824136731743669452800000.0,
];

/// ζ(s) together with a bound on its absolute error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue {
    pub value: f64,
    pub error_bound: f64,
}

/// Evaluates ζ(s) for real `s > 1`.
///
/// The first terms are summed directly; the tail `Σ_{n≥N} n^{-s}` is the
/// integral `N^{1-s}/(s-1)` plus Euler–Maclaurin corrections, truncated
/// once a correction falls below 1e-17. The first omitted correction
/// bounds the truncation error for real `s`.
pub fn zeta_constant(s: f64) -> Result<ZetaValue> {
    if !(s > 1.0) || !s.is_finite() {
        return Err(Error::Domain("zeta(s) requires finite s > 1"));
    }
    let n = DIRECT_TERMS as f64;
    let mut acc = CompensatedSum::new();
    for i in 1..DIRECT_TERMS {
        acc.add(libm::pow(i as f64, -s));
    }
    let n_pow = libm::pow(n, -s);
    acc.add(n * n_pow / (s - 1.0));
    acc.add(0.5 * n_pow);

    // rising = s (s+1) ... (s+2k-2), power = N^{-s-2k+1}
    let mut rising = s;
    let mut power = n_pow / n;
    let mut remainder = f64::INFINITY;
    for (k, coeff) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        if k > 0 {
            let m = 2.0 * k as f64;
            rising *= (s + m - 1.0) * (s + m);
            power /= n * n;
        }
        let term = coeff * rising * power;
        if libm::fabs(term) < 1e-17 {
            remainder = libm::fabs(term);
            break;
        }
        acc.add(term);
    }
    let value = acc.value();
    // compensated sum: one rounding of the result plus half an ulp per term
    let rounding = 2.0 * f64::EPSILON * value;
    Ok(ZetaValue { value, error_bound: remainder + rounding })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn even_closed_forms() {
        let z2 = zeta_constant(2.0).unwrap();
        assert!((z2.value - PI * PI / 6.0).abs() < 1e-15);
        let z4 = zeta_constant(4.0).unwrap();
        assert!((z4.value - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!(z2.error_bound < 1e-15);
    }

    #[test]
    fn large_s_approaches_one() {
        let z = zeta_constant(10.0).unwrap().value;
        assert!(z > 1.0 && z < 1.001);
        assert!((z - 1.0009945751278180853).abs() < 1e-15);
    }

    #[test]
    fn rejects_divergent_region() {
        assert!(zeta_constant(1.0).is_err());
        assert!(zeta_constant(0.5).is_err());
        assert!(zeta_constant(f64::NAN).is_err());
    }
}
