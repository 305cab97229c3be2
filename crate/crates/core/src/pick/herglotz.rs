use num_complex::Complex64;
use serde::Serialize;

use super::ratio::f_n_eval;
use crate::error::{Error, Result};
use crate::foundations::{CutPlanePoint, Order};

/// Linear and constant terms `a z + b` of the Herglotz representation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HerglotzParams {
    /// `lim f(iy)/(iy)` as `y -> inf`.
    pub a: f64,
    /// `Re f(i)`.
    pub b: f64,
}

const HEIGHTS: [f64; 3] = [1e2, 1e3, 1e4];

/// Estimates `a` from `f_n(iy)/(iy)` at `y = 1e2, 1e3, 1e4`, eliminating the
/// `1/y` term from each consecutive pair; the two estimates must agree.
pub fn herglotz_params(n: Order) -> Result<HerglotzParams> {
    let g: Vec<Complex64> = HEIGHTS
        .iter()
        .map(|&y| Ok(f_n_eval(CutPlanePoint::new(0.0, y)?, n)? / Complex64::new(0.0, y)))
        .collect::<Result<_>>()?;
    let extrapolate = |i: usize| {
        let (y1, y2) = (HEIGHTS[i], HEIGHTS[i + 1]);
        (g[i + 1] * y2 - g[i] * y1) / (y2 - y1)
    };
    let (a1, a2) = (extrapolate(0), extrapolate(1));
    let spread = (a1 - a2).norm();
    if !(spread <= 1e-3 * (1.0 + a2.norm())) {
        return Err(Error::Convergence(format!(
            "linear term estimates {a1} and {a2} disagree"
        )));
    }
    let b = f_n_eval(CutPlanePoint::new(0.0, 1.0)?, n)?.re;
    Ok(HerglotzParams { a: a2.re, b })
}
