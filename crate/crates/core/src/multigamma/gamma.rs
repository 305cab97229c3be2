use num_complex::Complex64;

use super::{check_pole, LogMultiGammaValue};
use crate::error::Result;
use crate::foundations::{bernoulli_f64, CutPlanePoint, Order, CONSTANTS};

/// Stirling series is used once `Re w >= SHIFT_TO` or `|Im w| >= SHIFT_TO`.
const SHIFT_TO: f64 = 15.0;
const STIRLING_TERMS: u64 = 10;

fn stirling(w: Complex64) -> Complex64 {
    let mut s = (w - 0.5) * w.ln() - w + 0.5 * CONSTANTS.log_two_pi;
    let winv = w.inv();
    let w2 = winv * winv;
    let mut p = winv;
    for r in 1..=STIRLING_TERMS {
        let b = bernoulli_f64(2 * r).unwrap_or(0.0);
        let rr = (2 * r) as f64;
        s += p * (b / (rr * (rr - 1.0)));
        p *= w2;
    }
    s
}

/// Number of unit shifts needed before the Stirling series is accurate.
pub(crate) fn stirling_shift(z: Complex64) -> usize {
    if z.im.abs() >= SHIFT_TO || z.re >= SHIFT_TO {
        0
    } else {
        (SHIFT_TO - z.re).ceil() as usize
    }
}

/// `log Gamma(z)` on the branch holomorphic in `C \ (-inf, 0]`, without
/// domain checks. Points on the negative axis give the limit from above.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    let n = stirling_shift(z);
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        acc += (z + j as f64).ln();
    }
    stirling(z + n as f64) - acc
}

/// `log Gamma(z)` for `z` in the cut plane.
pub fn log_gamma(z: CutPlanePoint) -> Result<LogMultiGammaValue> {
    let w = z.z();
    check_pole(w)?;
    Ok(LogMultiGammaValue::new(ln_gamma(w), Order::with_cap(1, 1)?))
}
