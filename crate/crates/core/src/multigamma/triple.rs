use num_complex::Complex64;

use super::{check_cut, check_pole, LogMultiGammaValue};
use crate::error::{Error, Result};
use crate::foundations::{hurwitz_scaled, CutPlanePoint, Order, CONSTANTS};
use crate::quadrature::ComplexSum;

const MIN_DIRECT: u64 = 16;
const MAX_TAIL: usize = 120;

/// `log P(z) = sum_k [-k(k+1)/2 Log(1+z/k) + (k+1)/2 z - (1+1/k) z^2/4 + (1+1/k) z^3/(6k)]`,
/// the infinite product part of `log Gamma_3(1+z)`.
pub fn log_p_gamma3(z: Complex64) -> Result<Complex64> {
    check_cut(z + 1.0, "1+z on the closed negative axis")?;
    check_pole(z + 1.0)?;
    let big_k = ((2.0 * z.norm()).ceil() as u64).max(MIN_DIRECT);
    let z2 = z * z;
    let z3 = z2 * z;
    let mut acc = ComplexSum::default();
    for k in 1..=big_k {
        let kf = k as f64;
        let c = 1.0 + 1.0 / kf;
        acc.add(
            -(1.0 + z / kf).ln() * (0.5 * kf * (kf + 1.0)) + z * (0.5 * (kf + 1.0))
                - z2 * (0.25 * c)
                + z3 * (c / (6.0 * kf)),
        );
    }
    // sum_{k>K} k(k+1)/2 k^{-i} = (zeta(i-2, a) + zeta(i-1, a)) / 2, a = K+1
    let a = big_k + 1;
    let af = a as f64;
    let u = z / af;
    let mut p = u.powi(4);
    let mut tail = Complex64::new(0.0, 0.0);
    for i in 4..4 + MAX_TAIL {
        let s = af * af * hurwitz_scaled(i as u32 - 2, a) + af * hurwitz_scaled(i as u32 - 1, a);
        let term = p * (0.5 * s / i as f64);
        tail += if i % 2 == 0 { term } else { -term };
        if term.norm() <= 1e-17 * tail.norm() || term.norm() == 0.0 {
            return Ok(acc.total() + tail);
        }
        p *= u;
    }
    Err(Error::Convergence(format!(
        "triple gamma tail at |z| = {}",
        z.norm()
    )))
}

/// `log G_3(1+z) = D z^3 + E z^2 + F z + log P(z)`.
pub fn log_g3(z: Complex64) -> Result<LogMultiGammaValue> {
    let (d, e, f) = CONSTANTS.triple_gamma_cubic();
    let cubic = ((z * d + e) * z + f) * z;
    Ok(LogMultiGammaValue::new(
        cubic + log_p_gamma3(z)?,
        Order::with_cap(3, 3)?,
    ))
}

/// `log G_3(z)` for `z` in the cut plane.
pub fn log_triple_gamma(z: CutPlanePoint) -> Result<LogMultiGammaValue> {
    log_g3(z.z() - 1.0)
}

/// Closed leading terms of the large-`x` expansion of `log Gamma_3(x+1)`:
///
/// `(x^3/6 - x^2/4 + 1/24) log(x+1) - 11x^3/36 + 5x^2/24 + x/3 - 13/72`
/// `- (x^2-x)/2 zeta'(0) + (2x-1)/2 zeta'(-1) - zeta'(-2)/2 + 1/(12(x+1))`.
pub fn stirling_log_g3(x: f64) -> Result<f64> {
    if !(x >= 10.0) || !x.is_finite() {
        return Err(Error::Domain {
            re: x,
            im: 0.0,
            reason: "expansion needs x >= 10",
        });
    }
    let x2 = x * x;
    let x3 = x2 * x;
    let c = &CONSTANTS;
    Ok(
        (x3 / 6.0 - x2 / 4.0 + 1.0 / 24.0) * x.ln_1p() - 11.0 * x3 / 36.0
            + 5.0 * x2 / 24.0
            + x / 3.0
            - 13.0 / 72.0
            - 0.5 * (x2 - x) * c.zeta_prime_0
            + 0.5 * (2.0 * x - 1.0) * c.zeta_prime_m1
            - 0.5 * c.zeta_prime_m2
            + 1.0 / (12.0 * (x + 1.0)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigamma::log_gn_shifted;

    fn g3(re: f64, im: f64) -> Complex64 {
        log_g3(Complex64::new(re, im)).unwrap().value
    }

    #[test]
    fn examples() {
        assert_eq!(g3(0.0, 0.0).norm(), 0.0);
        assert!((g3(4.0, 0.0).re - 2f64.ln()).abs() < 1e-13);
        assert!(g3(1.0, 0.0).norm() < 1e-13 && g3(2.0, 0.0).norm() < 1e-13);
        let h = 1e-5;
        let deriv = (g3(h, 0.0).re - g3(-h, 0.0).re) / (2.0 * h);
        assert!((deriv - CONSTANTS.triple_gamma_cubic().2).abs() < 1e-9);
    }

    #[test]
    fn matches_general_evaluator() {
        let n3 = Order::new(3).unwrap();
        for &(re, im) in &[
            (3.5, 0.0),
            (-0.5, 0.0),
            (-7.3, 0.4),
            (20.0, 30.0),
            (-45.0, 5.0),
        ] {
            let z = Complex64::new(re, im);
            let a = g3(re, im);
            let b = log_gn_shifted(z, n3).unwrap().value;
            assert!(
                (a - b).norm() < 1e-12 * (1.0 + z.norm().powi(3)),
                "{z} {a} {b}"
            );
        }
    }

    #[test]
    fn stirling_accuracy_improves() {
        let rel = |x: f64| {
            let exact = g3(x, 0.0).re;
            ((stirling_log_g3(x).unwrap() - exact) / exact).abs()
        };
        let (r50, r200) = (rel(50.0), rel(200.0));
        assert!(r50 <= 1e-3 && r200 <= 1e-4 && r200 < r50);
        assert!(stirling_log_g3(9.0).is_err());
    }

    #[test]
    fn stirling_leading_ratio() {
        // ratio = 1/6 - (11/36) / log x + O(1/x); extrapolate linearly in 1/log x
        let ratio = |x: f64| stirling_log_g3(x).unwrap() / (x.powi(3) * x.ln());
        let (x1, x2) = (1e6f64, 1e8f64);
        let (u1, u2) = (1.0 / x1.ln(), 1.0 / x2.ln());
        let lim = (u1 * ratio(x2) - u2 * ratio(x1)) / (u1 - u2);
        assert!((lim - 1.0 / 6.0).abs() < 1e-5);
    }
}
