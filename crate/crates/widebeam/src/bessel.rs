//! Bessel function of the first kind, order zero.
//!
//! The argument range is validated up to |x| = 100. Small arguments use the
//! convergent power series; large arguments use the Hankel asymptotic
//! expansion in the rational form of the Cephes library, which keeps the
//! absolute error well below the 1e-9 contract everywhere in range.

use crate::error::{Error, Result};
use std::f64::consts::FRAC_PI_4;

/// Largest validated argument magnitude.
pub const MAX_ARGUMENT: f64 = 100.0;

/// Switch point between the power series and the asymptotic expansion.
const SERIES_CUTOFF: f64 = 12.0;

const SQRT_FRAC_2_PI: f64 = 0.797_884_560_802_865_4;

/// J0(x) with absolute error <= 1e-9 for |x| <= 100.
///
/// Returns an error for arguments outside the validated range (including
/// NaN).
pub fn bessel_j0(x: f64) -> Result<f64> {
    let ax = x.abs();
    if ax.is_nan() || ax > MAX_ARGUMENT {
        return Err(Error::BesselRange(x));
    }
    if ax <= SERIES_CUTOFF {
        Ok(j0_series(ax))
    } else {
        Ok(j0_asymptotic(ax))
    }
}

/// Power series sum_k (-1)^k (x^2/4)^k / (k!)^2.
///
/// Cancellation at the top of this range costs ~5 digits, leaving the
/// absolute error near 1e-12.
fn j0_series(x: f64) -> f64 {
    let q = x * x / 4.0;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut k = 1.0f64;
    while term.abs() > 1e-20 && k < 400.0 {
        term *= -q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

// Rational approximations to the Hankel asymptotic auxiliary functions,
// from the Cephes math library (valid for x > 5; used here for x > 12).
static PP: [f64; 7] = [
    7.969367292973471e-4,
    8.283523921074408e-2,
    1.239533716464143,
    5.447250030587687,
    8.74716500199817,
    5.303240382353949,
    1.0,
];

static PQ: [f64; 7] = [
    9.244088105588637e-4,
    8.562884743544745e-2,
    1.2535274390105895,
    5.470977403304171,
    8.761908832370695,
    5.306052882353947,
    1.0,
];

static QP: [f64; 8] = [
    -1.1366383889846916e-2,
    -1.2825271867050931,
    -1.9553954425773597e1,
    -9.320601521237683e1,
    -1.7768116798048806e2,
    -1.4707750515495118e2,
    -5.141053267665993e1,
    -6.050143506007285,
];

static QQ: [f64; 7] = [
    6.43178256118178e1,
    8.564300259769806e2,
    3.8824018360540163e3,
    7.240467741956525e3,
    5.930727011873169e3,
    2.0620933166032783e3,
    2.420057402402914e2,
];

fn poly(x: f64, coeffs: &[f64]) -> f64 {
    coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
}

/// Horner evaluation with an implicit leading coefficient of 1.
fn poly1(x: f64, coeffs: &[f64]) -> f64 {
    coeffs.iter().fold(1.0, |acc, &c| acc * x + c)
}

fn j0_asymptotic(x: f64) -> f64 {
    let w = 5.0 / x;
    let z = 25.0 / (x * x);
    let p = poly(z, &PP) / poly(z, &PQ);
    let q = poly(z, &QP) / poly1(z, &QQ);
    let xn = x - FRAC_PI_4;
    SQRT_FRAC_2_PI * (p * xn.cos() - w * q * xn.sin()) / x.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    /// Independent oracle: the power series with compensated summation.
    /// Valid in f64 for |x| <= 16 with absolute error below ~1e-10.
    fn series_oracle(x: f64) -> f64 {
        let q = x * x / 4.0;
        let mut term = 1.0f64;
        let mut sum = 1.0f64;
        let mut comp = 0.0f64;
        let mut k = 1.0f64;
        while term.abs() > 1e-24 && k < 500.0 {
            term *= -q / (k * k);
            let y = term - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            k += 1.0;
        }
        sum
    }

    // Reference values computed with mpmath at 50 digits.
    const REFERENCES: &[(f64, f64)] = &[
        (0.0, 1.0),
        (0.5, 0.938_469_807_240_812_9),
        (1.0, 0.765_197_686_557_966_6),
        (PI, -0.304_242_177_644_093_83),
        (5.0, -0.177_596_771_314_338_3),
        (7.5, 0.266_339_657_880_378_4),
        (10.0, -0.245_935_764_451_348_34),
        (12.0, 0.047_689_310_796_833_537),
        (15.0, -0.014_224_472_826_780_773),
        (20.0, 0.167_024_664_340_583_15),
        (30.0, -0.086_367_983_581_040_21),
        (50.0, 0.055_812_327_669_251_815),
        (75.0, 0.034_643_913_805_097_06),
        (100.0, 0.019_985_850_304_223_122),
    ];

    #[test]
    fn matches_references_within_contract() {
        for &(x, expected) in REFERENCES {
            let got = bessel_j0(x).unwrap();
            assert!(
                (got - expected).abs() <= 1e-9,
                "J0({x}) = {got}, expected {expected}"
            );
        }
    }

    #[test]
    fn even_in_the_argument() {
        for &(x, _) in REFERENCES {
            assert_eq!(bessel_j0(x).unwrap(), bessel_j0(-x).unwrap());
        }
    }

    #[test]
    fn first_zero() {
        let z = bessel_j0(2.404_825_557_695_773).unwrap();
        assert!(z.abs() <= 1e-5, "J0 at first zero = {z}");
    }

    #[test]
    fn agrees_with_series_oracle_through_switch_region() {
        // Dense sweep over [0, 16]: both branches must track the oracle.
        for i in 0..=1600 {
            let x = i as f64 * 0.01;
            let got = bessel_j0(x).unwrap();
            let oracle = series_oracle(x);
            assert!(
                (got - oracle).abs() <= 1e-9,
                "J0({x}) = {got}, series oracle {oracle}"
            );
        }
    }

    #[test]
    fn rejects_out_of_range_arguments() {
        assert!(matches!(bessel_j0(100.5), Err(Error::BesselRange(_))));
        assert!(matches!(bessel_j0(-101.0), Err(Error::BesselRange(_))));
        assert!(matches!(bessel_j0(f64::NAN), Err(Error::BesselRange(_))));
        assert!(bessel_j0(100.0).is_ok());
    }
}
