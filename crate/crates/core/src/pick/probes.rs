use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ratio::f_n_eval;
use super::stieltjes::{stieltjes_reconstruct, QuadratureConfig};
use crate::error::{Error, Result};
use crate::foundations::{CutPlanePoint, Order, CONSTANTS};

/// Axis-parallel rectangle `[x0, x1] x [y0, y1]` in the upper half plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Region {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
}

impl Region {
    pub fn validate(&self) -> Result<()> {
        let finite = [self.x0, self.x1, self.y0, self.y1]
            .iter()
            .all(|v| v.is_finite());
        if !finite || self.x0 >= self.x1 || self.y0 >= self.y1 || self.y0 <= 0.0 {
            return Err(Error::Config(format!(
                "region [{}, {}] x [{}, {}] must be nonempty with y0 > 0",
                self.x0, self.x1, self.y0, self.y1
            )));
        }
        Ok(())
    }
}

impl Default for Region {
    fn default() -> Self {
        Region {
            x0: -10.0,
            x1: 10.0,
            y0: 0.01,
            y1: 10.0,
        }
    }
}

/// Minimum of `Im f_n` over a grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridScan {
    pub min_im: f64,
    pub at: Complex64,
    pub points: usize,
}

/// Evaluates `Im f_n` on a `resolution x resolution` grid spanning the region
/// (edges included) and returns the smallest value.
pub fn pick_grid_scan(n: Order, region: &Region, resolution: usize) -> Result<GridScan> {
    region.validate()?;
    if resolution < 2 {
        return Err(Error::Config(format!(
            "resolution {resolution} must be at least 2"
        )));
    }
    let step = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (resolution - 1) as f64;
    let rows: Vec<(f64, Complex64)> = (0..resolution)
        .into_par_iter()
        .map(|j| -> Result<(f64, Complex64)> {
            let y = step(region.y0, region.y1, j);
            let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
            for i in 0..resolution {
                let z = Complex64::new(step(region.x0, region.x1, i), y);
                let v = f_n_eval(CutPlanePoint::from_complex(z)?, n)?.im;
                if !v.is_finite() {
                    return Err(Error::Convergence(format!("non-finite Im f_{n} at {z}")));
                }
                if v < best.0 {
                    best = (v, z);
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    let (min_im, at) = rows
        .into_iter()
        .fold((f64::INFINITY, Complex64::new(0.0, 0.0)), |a, b| {
            if b.0 < a.0 {
                b
            } else {
                a
            }
        });
    Ok(GridScan {
        min_im,
        at,
        points: resolution * resolution,
    })
}

/// Outcome of the sign test `(-1)^(m+1) f^(m) >= -tol` for one order `m`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderSign {
    pub order: u32,
    /// Smallest `(-1)^(m+1) f^(m)(x)` over the grid.
    pub min_signed: f64,
    pub at: f64,
    /// Tolerance applied at `at`.
    pub tolerance: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityReport {
    pub order: u32,
    pub signs: Vec<OrderSign>,
    pub all_hold: bool,
}

/// Finite difference weights for the `m`-th derivative at 0 on the given
/// nodes (Fornberg's recursion).
fn fd_weights(m: usize, nodes: &[f64]) -> Vec<f64> {
    let len = nodes.len();
    let mut c = vec![vec![0.0; m + 1]; len];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0];
    for i in 1..len {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i];
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

struct Stencil {
    half: i64,
    h: f64,
    richardson: bool,
}

fn stencil(m: u32) -> Stencil {
    if m <= 4 {
        Stencil {
            half: i64::from(m.div_ceil(2)),
            h: 1e-2,
            richardson: true,
        }
    } else {
        Stencil {
            half: i64::from(m / 2 + 2),
            h: 10f64.powf(-1.5),
            richardson: false,
        }
    }
}

/// `(derivative, noise floor)` of the central difference with step `h`.
fn central(
    f: &dyn Fn(f64) -> Result<f64>,
    x: f64,
    m: u32,
    half: i64,
    h: f64,
) -> Result<(f64, f64)> {
    let nodes: Vec<f64> = (-half..=half).map(|i| i as f64).collect();
    let w = fd_weights(m as usize, &nodes);
    let mut sum = 0.0;
    let mut scale = 0.0;
    let mut fmax: f64 = 0.0;
    for (node, wi) in nodes.iter().zip(&w) {
        let v = f(x + node * h)?;
        sum += wi * v;
        scale += wi.abs();
        fmax = fmax.max(v.abs());
    }
    let hm = h.powi(m as i32);
    Ok((sum / hm, 100.0 * f64::EPSILON * fmax * scale / hm))
}

/// `(f^(m)(x), noise floor)` with the stencil used by the probe.
fn derivative(f: &dyn Fn(f64) -> Result<f64>, x: f64, m: u32) -> Result<(f64, f64)> {
    let s = stencil(m);
    if !x.is_finite() || x - s.half as f64 * s.h <= 0.0 {
        return Err(Error::Config(format!(
            "stencil of order {m} at x = {x} leaves (0, inf)"
        )));
    }
    if s.richardson {
        let (d1, n1) = central(f, x, m, s.half, s.h)?;
        let (d2, n2) = central(f, x, m, s.half, 0.5 * s.h)?;
        Ok(((4.0 * d2 - d1) / 3.0, (4.0 * n2 + n1) / 3.0))
    } else {
        central(f, x, m, s.half, s.h)
    }
}

/// Finite difference estimate of `f_n^(m)(x)`, `1 <= m <= 8`.
pub fn derivative_estimate(n: Order, x: f64, m: u32) -> Result<f64> {
    if m == 0 || m > 8 {
        return Err(Error::Config(format!("derivative order {m} outside 1..=8")));
    }
    let f = move |x: f64| -> Result<f64> { Ok(f_n_eval(CutPlanePoint::real(x)?, n)?.re) };
    Ok(derivative(&f, x, m)?.0)
}

/// Checks `(-1)^(m+1) f_n^(m)(x) >= -tol` for `m = 1..=max_order` on the grid,
/// with derivatives from central differences (step `1e-2` with Richardson
/// extrapolation up to order 4, step `10^-1.5` above). The tolerance is `1e-8`
/// for `m = 1`, `1e-6` otherwise, raised to the rounding noise of the stencil.
pub fn complete_monotonicity_probe(
    n: Order,
    max_order: u32,
    grid: &[f64],
) -> Result<MonotonicityReport> {
    if max_order == 0 || max_order > 8 {
        return Err(Error::Config(format!(
            "derivative order {max_order} outside 1..=8"
        )));
    }
    if grid.is_empty() {
        return Err(Error::Config("empty grid".into()));
    }
    let f = move |x: f64| -> Result<f64> { Ok(f_n_eval(CutPlanePoint::real(x)?, n)?.re) };
    let mut signs = Vec::new();
    for m in 1..=max_order {
        let s = stencil(m);
        if let Some(&x) = grid
            .iter()
            .find(|&&x| !x.is_finite() || x - s.half as f64 * s.h <= 0.0)
        {
            return Err(Error::Config(format!(
                "stencil of order {m} at x = {x} leaves (0, inf)"
            )));
        }
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let base: f64 = if m == 1 { 1e-8 } else { 1e-6 };
        let vals: Vec<(f64, f64, f64)> = grid
            .par_iter()
            .map(|&x| -> Result<(f64, f64, f64)> {
                let (d, noise) = derivative(&f, x, m)?;
                Ok((x, sign * d, base.max(noise)))
            })
            .collect::<Result<_>>()?;
        let holds = vals.iter().all(|&(_, v, tol)| v >= -tol);
        let &(at, min_signed, tolerance) = vals
            .iter()
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty grid");
        signs.push(OrderSign {
            order: m,
            min_signed,
            at,
            tolerance,
            holds,
        });
    }
    let all_hold = signs.iter().all(|s| s.holds);
    Ok(MonotonicityReport {
        order: n.get(),
        signs,
        all_hold,
    })
}

/// Critical point of `g(t) = (D+1/3)t^3 + (E-1/2)t^2 + (F+1)t - log|1+t|` on `(-2, -1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CubicAnalysis {
    /// `(D, E, F)`.
    pub coefficients: (f64, f64, f64),
    /// Number of zeros of `g'` in `(-2, -1)`.
    pub critical_points: usize,
    pub t0: f64,
    pub g_t0: f64,
    pub g2_t0: f64,
}

pub fn triple_density_cubic() -> Result<CubicAnalysis> {
    let (d, e, f) = CONSTANTS.triple_gamma_cubic();
    let g = |t: f64| {
        (d + 1.0 / 3.0) * t.powi(3) + (e - 0.5) * t * t + (f + 1.0) * t - (1.0 + t).abs().ln()
    };
    let g2 = |t: f64| 6.0 * (d + 1.0 / 3.0) * t + 2.0 * (e - 0.5) + (1.0 + t).powi(-2);
    // (1+t) g'(t) is a cubic
    let cubic = |t: f64| (((3.0 * d + 1.0) * t + (3.0 * d + 2.0 * e)) * t + (2.0 * e + f)) * t + f;
    const SAMPLES: usize = 20_000;
    let mut roots = Vec::new();
    let at = |i: usize| -2.0 + i as f64 / SAMPLES as f64;
    for i in 0..SAMPLES {
        let (mut a, mut b) = (at(i), at(i + 1));
        let (fa, fb) = (cubic(a), cubic(b));
        if fa == 0.0 {
            roots.push(a);
            continue;
        }
        if fa * fb < 0.0 {
            let sa = fa.signum();
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if cubic(mid).signum() == sa {
                    a = mid;
                } else {
                    b = mid;
                }
            }
            roots.push(0.5 * (a + b));
        }
    }
    let t0 = match roots.as_slice() {
        [t] => *t,
        _ => {
            return Err(Error::Convergence(format!(
                "expected one critical point in (-2, -1), found {}",
                roots.len()
            )))
        }
    };
    Ok(CubicAnalysis {
        coefficients: (d, e, f),
        critical_points: roots.len(),
        t0,
        g_t0: g(t0),
        g2_t0: g2(t0),
    })
}

/// Mass `c` of an atom at the origin, `c = lim x (value - f_n(x))` as `x -> 0+`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointMass {
    /// `(x, x (value - f_n(x)))`.
    pub samples: Vec<(f64, f64)>,
    pub c: f64,
}

pub fn point_mass_estimate(n: Order, cfg: &QuadratureConfig) -> Result<PointMass> {
    let samples: Vec<(f64, f64)> = [1e-2, 1e-3]
        .iter()
        .map(|&x| {
            let r = stieltjes_reconstruct(CutPlanePoint::real(x)?, n, cfg)?;
            Ok((x, x * (r.value.re - r.direct.re)))
        })
        .collect::<Result<_>>()?;
    let ((x1, c1), (x2, c2)) = (samples[0], samples[1]);
    let c = c2 - x2 * (c1 - c2) / (x1 - x2);
    Ok(PointMass { samples, c })
}

/// `f_n(x)` for large `x` against its limit `1/n!`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AsymptoticLimit {
    pub limit: f64,
    pub samples: Vec<(f64, f64)>,
    /// `|f_n(x) - 1/n!|` decreases along the samples.
    pub monotone: bool,
    /// Linear extrapolation in `1/log x` through the last two samples.
    pub extrapolated: f64,
}

pub fn asymptotic_limit(n: Order) -> Result<AsymptoticLimit> {
    let limit = 1.0 / n.factorial();
    let samples: Vec<(f64, f64)> = [1e2, 1e3, 1e4]
        .iter()
        .map(|&x| Ok((x, f_n_eval(CutPlanePoint::real(x)?, n)?.re)))
        .collect::<Result<_>>()?;
    let monotone = samples
        .windows(2)
        .all(|w| (w[1].1 - limit).abs() < (w[0].1 - limit).abs());
    let ((x1, f1), (x2, f2)) = (samples[1], samples[2]);
    let (u1, u2) = (1.0 / x1.ln(), 1.0 / x2.ln());
    let extrapolated = (u1 * f2 - u2 * f1) / (u1 - u2);
    Ok(AsymptoticLimit {
        limit,
        samples,
        monotone,
        extrapolated,
    })
}
