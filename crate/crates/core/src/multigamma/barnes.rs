use num_complex::Complex64;

use super::gamma::ln_gamma;
use super::{check_pole, LogMultiGammaValue};
use crate::error::Result;
use crate::foundations::{bernoulli_f64, CutPlanePoint, Order, CONSTANTS};

const SHIFT_TO: f64 = 16.0;
const ASYMPTOTIC_TERMS: u64 = 10;

/// Large-argument expansion of `log G(1+u)`.
fn asymptotic(u: Complex64) -> Complex64 {
    let lu = u.ln();
    let u2 = u * u;
    let mut s = (u2 * 0.5 - 1.0 / 12.0) * lu - u2 * 0.75
        + u * (0.5 * CONSTANTS.log_two_pi)
        + CONSTANTS.zeta_prime_m1;
    let inv2 = u2.inv();
    let mut p = inv2;
    for k in 1..=ASYMPTOTIC_TERMS {
        let kk = k as f64;
        let b = bernoulli_f64(2 * k + 2).unwrap_or(0.0);
        s += p * (b / (4.0 * kk * (kk + 1.0)));
        p *= inv2;
    }
    s
}

/// `log G(z)` for the Barnes G-function, no domain checks.
pub(crate) fn ln_barnes_g(z: Complex64) -> Complex64 {
    if z.im.abs() >= SHIFT_TO || z.re >= SHIFT_TO {
        return asymptotic(z - 1.0);
    }
    let n = (SHIFT_TO - z.re).ceil() as usize;
    // sum_{j<n} log Gamma(z+j) = n log Gamma(z+n) - sum_{i<n} (i+1) Log(z+i)
    let mut weighted = Complex64::new(0.0, 0.0);
    for i in 0..n {
        weighted += (z + i as f64).ln() * (i + 1) as f64;
    }
    let gamma_sum = ln_gamma(z + n as f64) * n as f64 - weighted;
    asymptotic(z + (n as f64 - 1.0)) - gamma_sum
}

/// `log G_2(z) = log G(z)` on the cut plane.
pub fn log_barnes_g2(z: CutPlanePoint) -> Result<LogMultiGammaValue> {
    let w = z.z();
    check_pole(w)?;
    Ok(LogMultiGammaValue::new(
        ln_barnes_g(w),
        Order::with_cap(2, 2)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lg2(re: f64, im: f64) -> Complex64 {
        log_barnes_g2(CutPlanePoint::new(re, im).unwrap())
            .unwrap()
            .value
    }

    #[test]
    fn examples() {
        assert!(lg2(1.0, 0.0).norm() < 1e-13);
        assert!(lg2(3.0, 0.0).norm() < 1e-13);
        assert!((lg2(4.0, 0.0) - Complex64::new(2f64.ln(), 0.0)).norm() < 1e-13);
        // G(6) = 1! 2! 3! 4! = 288
        assert!((lg2(6.0, 0.0).re - 288f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn half_integer_value() {
        // log G(1/2) = 1/24 log 2 - 1/4 log pi + 3/2 zeta'(-1)
        let want =
            2f64.ln() / 24.0 - 0.25 * std::f64::consts::PI.ln() + 1.5 * CONSTANTS.zeta_prime_m1;
        assert!((lg2(0.5, 0.0).re - want).abs() < 3e-13);
    }

    #[test]
    fn recurrence_against_gamma() {
        for &(re, im) in &[
            (0.2, 0.7),
            (-5.5, 0.3),
            (30.0, -2.0),
            (-40.0, 20.0),
            (3.0, 15.5),
        ] {
            let z = Complex64::new(re, im);
            let d = ln_barnes_g(z + 1.0) - ln_barnes_g(z) - ln_gamma(z);
            assert!(d.norm() < 1e-10 * (1.0 + z.norm_sqr()), "{z} {d}");
        }
    }
}
