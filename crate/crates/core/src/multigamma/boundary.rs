use num_complex::Complex64;
use std::f64::consts::PI;

use super::canonical::{log_gn_real, log_gn_shifted};
use super::POLE_TOLERANCE;
use crate::error::{Error, Result};
use crate::foundations::{binomial, CutPlanePoint, Order};

/// A real point `x = -j + delta`, `delta` in `(0, 1)`, with both distances
/// `delta = x + j` and `eps = 1 - delta` to the neighbouring integers kept
/// separately so that either may be tiny.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitPoint {
    pub j: u64,
    pub delta: f64,
    pub eps: f64,
}

impl SplitPoint {
    pub fn new(j: u64, delta: f64, eps: f64) -> Result<Self> {
        if !(delta > 0.0 && eps > 0.0 && delta <= 1.0 && eps <= 1.0) {
            return Err(Error::Domain {
                re: delta,
                im: eps,
                reason: "split point distances outside (0,1)",
            });
        }
        Ok(SplitPoint { j, delta, eps })
    }

    /// Splits a real `x < 1` that is not an integer.
    pub fn from_real(x: f64) -> Result<Self> {
        if !(x < 1.0) || !x.is_finite() {
            return Err(Error::Domain {
                re: x,
                im: 0.0,
                reason: "split point needs x < 1",
            });
        }
        if (x - x.round()).abs() < POLE_TOLERANCE * x.abs().max(1.0) {
            return Err(Error::Singularity { t: x.round() });
        }
        let j = (-x).ceil().max(0.0);
        let delta = x + j;
        Self::new(j as u64, delta, 1.0 - delta)
    }

    pub fn value(&self) -> f64 {
        self.delta - self.j as f64
    }
}

/// `log|G_n(x)|` at a split point, by descending from `G_m(x+j+1) = G_m(1+delta)`
/// with `log|G_m(y)| = log|G_m(y+1)| - log|G_{m-1}(y)|` and `G_0(y) = y`.
pub fn log_abs_gn_near(n: Order, p: SplitPoint) -> Result<f64> {
    let j = p.j as usize;
    let mut prev: Vec<f64> = (0..=j)
        .map(|l| {
            if l == j {
                p.delta.ln()
            } else if l + 1 == j {
                p.eps.ln()
            } else {
                ((j - l) as f64 - p.delta).ln()
            }
        })
        .collect();
    let mut cur = vec![0.0; j + 1];
    for m in 1..=n.get() {
        let mut above = log_gn_real(p.delta, Order::with_cap(m, n.get())?)?;
        for l in (0..=j).rev() {
            cur[l] = above - prev[l];
            above = cur[l];
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    Ok(prev[0])
}

/// Limit of `log G_n(t + iy)` as `y -> 0+`, `t` negative and not an integer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryValue {
    pub t: f64,
    pub k: u64,
    /// `log|G_n(t)|`.
    pub real_part: f64,
    /// `(-1)^n pi (k)_n / n!`.
    pub imag_part: f64,
}

impl BoundaryValue {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.real_part, self.imag_part)
    }
}

/// `(-1)^n (k)_n / n!` as an exact integer-valued float.
pub fn boundary_phase_over_pi(n: Order, k: u64) -> Result<f64> {
    let c = binomial(k + u64::from(n.get()) - 1, u64::from(n.get()))? as f64;
    Ok(n.sign() * c)
}

pub fn boundary_log_gn(t: f64, n: Order) -> Result<BoundaryValue> {
    if !(t < 0.0) || !t.is_finite() {
        return Err(Error::Domain {
            re: t,
            im: 0.0,
            reason: "boundary values need t < 0",
        });
    }
    let p = SplitPoint::from_real(t)?;
    let real_part = log_abs_gn_near(n, p)?;
    Ok(BoundaryValue {
        t,
        k: p.j,
        real_part,
        imag_part: PI * boundary_phase_over_pi(n, p.j)?,
    })
}

/// `|G_{n+1}(z+1) - G_{n+1}(z) G_n(z)| / max(1, |G_{n+1}(z+1)|)`, evaluated
/// in scaled form so that large values do not overflow.
pub fn recurrence_residual(z: CutPlanePoint, n: Order) -> Result<f64> {
    let up = n.next()?;
    let w = z.z();
    let a = log_gn_shifted(w, up)?.value;
    let b = log_gn_shifted(w - 1.0, up)?.value;
    let c = log_gn_shifted(w - 1.0, n)?.value;
    let d = b + c - a;
    let diff = (d.exp() - 1.0).norm();
    Ok(diff * a.re.min(0.0).exp())
}
