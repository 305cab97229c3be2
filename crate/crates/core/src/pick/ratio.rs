use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::Result;
use crate::foundations::{CutPlanePoint, Order};
use crate::multigamma::{ln_barnes_g, ln_gamma, log_g3, CanonicalProductParams};

/// Inside this distance from `z = 1` the quotient is summed from Taylor series.
const TAYLOR_RADIUS: f64 = 0.05;
const CAUCHY_RADIUS: f64 = 0.5;
const CAUCHY_POINTS: usize = 64;
const TAYLOR_TERMS: usize = 18;

/// Taylor coefficients of `L_n(1+h) = log G_n(2+h)` from the trapezoid rule
/// on the circle `|h| = 1/2`.
fn taylor_at_one(n: Order) -> Result<Arc<Vec<f64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(c) = cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .get(&n.get())
    {
        return Ok(c.clone());
    }
    let params = CanonicalProductParams::cached(n)?;
    let samples: Vec<Complex64> = (0..CAUCHY_POINTS)
        .map(|m| {
            let w = Complex64::from_polar(
                1.0,
                2.0 * std::f64::consts::PI * m as f64 / CAUCHY_POINTS as f64,
            );
            params.eval(1.0 + w * CAUCHY_RADIUS)
        })
        .collect::<Result<_>>()?;
    let coeffs: Vec<f64> = (0..=TAYLOR_TERMS)
        .map(|j| {
            let s: Complex64 = samples
                .iter()
                .enumerate()
                .map(|(m, v)| {
                    let ang = -2.0 * std::f64::consts::PI * (m * j) as f64 / CAUCHY_POINTS as f64;
                    v * Complex64::from_polar(1.0, ang)
                })
                .sum();
            s.re / CAUCHY_POINTS as f64 / CAUCHY_RADIUS.powi(j as i32)
        })
        .collect();
    let coeffs = Arc::new(coeffs);
    cache
        .lock()
        .unwrap_or_else(|e| e.into_inner())
        .insert(n.get(), coeffs.clone());
    Ok(coeffs)
}

fn f_near_one(h: Complex64, n: Order) -> Result<Complex64> {
    let l = taylor_at_one(n)?;
    // L_n(1+h) / h and Log(1+h) / h
    let mut num = Complex64::new(0.0, 0.0);
    for j in (1..l.len()).rev() {
        num = num * h + l[j];
    }
    let mut den = Complex64::new(0.0, 0.0);
    for j in (1..=TAYLOR_TERMS).rev() {
        let c = if j % 2 == 1 { 1.0 } else { -1.0 } / j as f64;
        den = den * h + c;
    }
    Ok(num / (den * (1.0 + h).powi(n.get() as i32)))
}

/// `f_n(z) = log G_n(z+1) / (z^n Log z)` on the cut plane.
pub fn f_n_eval(z: CutPlanePoint, n: Order) -> Result<Complex64> {
    let w = z.z();
    if (w - 1.0).norm() < TAYLOR_RADIUS {
        return f_near_one(w - 1.0, n);
    }
    let l = CanonicalProductParams::cached(n)?.eval(w)?;
    Ok(l / (w.powi(n.get() as i32) * w.ln()))
}

/// `log G_n(1+z)` through the order-specific evaluators (Stirling for `n = 1`,
/// Barnes asymptotics for `n = 2`, the explicit triple product for `n = 3`),
/// falling back to the canonical product for higher orders.
pub fn log_g_reference(z: Complex64, n: Order) -> Result<Complex64> {
    Ok(match n.get() {
        1 => ln_gamma(z + 1.0),
        2 => ln_barnes_g(z + 1.0),
        3 => log_g3(z)?.value,
        _ => CanonicalProductParams::cached(n)?.eval(z)?,
    })
}

/// `f_n` through [`log_g_reference`]; not valid near `z = 1`.
pub fn f_n_reference(z: Complex64, n: Order) -> Result<Complex64> {
    Ok(log_g_reference(z, n)? / (z.powi(n.get() as i32) * z.ln()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::foundations::CONSTANTS;

    fn ord(n: u32) -> Order {
        Order::new(n).unwrap()
    }

    fn f(re: f64, im: f64, n: u32) -> Complex64 {
        f_n_eval(CutPlanePoint::new(re, im).unwrap(), ord(n)).unwrap()
    }

    #[test]
    fn examples() {
        assert!((f(2.0, 0.0, 1) - 0.5).norm() < 1e-14);
        assert!((f(1.0, 0.0, 1).re - (1.0 - CONSTANTS.euler_gamma)).abs() < 1e-13);
        assert_eq!(f(3.0, 0.0, 3).im, 0.0);
    }

    #[test]
    fn taylor_branch_is_continuous() {
        for n in 1..=4 {
            for &(dr, di) in &[(0.05, 0.0), (-0.05, 0.0), (0.0, 0.05), (0.035, -0.0354)] {
                let inside = f(1.0 + dr * (1.0 - 1e-13), di * (1.0 - 1e-13), n);
                let outside = f(1.0 + dr * (1.0 + 1e-13), di * (1.0 + 1e-13), n);
                assert!(
                    (inside - outside).norm() < 1e-12,
                    "n={n} {inside} {outside}"
                );
            }
        }
    }

    #[test]
    fn reference_agrees() {
        for n in 1..=4 {
            for &(re, im) in &[(2.0, 3.0), (-30.0, 0.5), (150.0, -300.0), (0.3, 0.0)] {
                let z = Complex64::new(re, im);
                let a = f(re, im, n);
                let b = f_n_reference(z, ord(n)).unwrap();
                assert!(
                    (a - b).norm() < 1e-12 * (1.0 + a.norm()),
                    "n={n} z={z} {a} {b}"
                );
            }
        }
    }

    #[test]
    fn reflection() {
        for n in 1..=4 {
            for &(re, im) in &[(0.5, 2.0), (-3.0, 0.25), (1.01, 0.01)] {
                assert!((f(re, -im, n) - f(re, im, n).conj()).norm() < 1e-12);
            }
        }
    }
}
