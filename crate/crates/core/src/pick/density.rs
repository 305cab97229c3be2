use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::foundations::{binomial, pochhammer, Order};
use crate::multigamma::{log_abs_gn_near, log_gn_real, SplitPoint};

/// Public density evaluation refuses points this close to a negative integer.
pub const SINGULARITY_TOLERANCE: f64 = 1e-8;

/// A point `(t, d_n(t))` with `t` in `(-k, -k+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySample {
    pub t: f64,
    pub k: u64,
    pub value: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DensityValue {
    /// `t >= 0`, where the density vanishes.
    Vanishing,
    Support(DensitySample),
}

impl DensityValue {
    pub fn value(&self) -> f64 {
        match self {
            DensityValue::Vanishing => 0.0,
            DensityValue::Support(s) => s.value,
        }
    }
}

/// `d_n(t)` at `t = -k + delta` with `eps = 1 - delta`, both distances given
/// exactly. Used by the quadrature, which samples arbitrarily close to the
/// integers.
pub fn density_at_split(n: Order, k: u64, delta: f64, eps: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain {
            re: delta,
            im: 0.0,
            reason: "density support needs k >= 1",
        });
    }
    // |t| = (k-1) + eps, t + 1 = -(k-1) + delta
    let abs_t = (k - 1) as f64 + eps;
    let log_t = abs_t.ln();
    let nn = u64::from(n.get());
    let counting = if k == 1 {
        0.0
    } else {
        binomial(k + nn - 2, nn)? as f64
    };
    let log_g = log_abs_gn_near(n, SplitPoint::new(k - 1, delta, eps)?)?;
    // -[(-1)^{n-1} N log|t| + log|G_n(t+1)|] / (t^n (log^2|t| + pi^2))
    let numer = n.sign() * counting * log_t - log_g;
    let t_pow = n.sign() * abs_t.powi(n.get() as i32);
    Ok(numer / (t_pow * (log_t * log_t + PI * PI)))
}

/// Stieltjes density `d_n(t)`: zero for `t >= 0`, and for `t < 0`
///
/// `-[(-1)^{n-1} N_n(|t|) log|t| + log|G_n(t+1)|] / (t^n (log^2|t| + pi^2))`.
pub fn density_d_n(t: f64, n: Order) -> Result<DensityValue> {
    if !t.is_finite() {
        return Err(Error::Domain {
            re: t,
            im: 0.0,
            reason: "non-finite t",
        });
    }
    if t >= 0.0 {
        return Ok(DensityValue::Vanishing);
    }
    let r = t.round();
    if r < 0.0 && (t - r).abs() < SINGULARITY_TOLERANCE {
        return Err(Error::Singularity { t: r });
    }
    let k = (-t).ceil() as u64;
    let delta = t + k as f64;
    let value = density_at_split(n, k, delta, 1.0 - delta)?;
    Ok(DensityValue::Support(DensitySample { t, k, value }))
}

/// Boundary value of `Im f_n(t + i0)` from the Pochhammer form
/// `pi [(-1)^n (k-1)_n / n! log|t| - log|G_n(t+1)|] / (t^n (log^2|t| + pi^2))`,
/// with `log|G_n(t+1)|` from the real canonical product.
pub fn boundary_im_f_n(t: f64, n: Order) -> Result<f64> {
    if !(t < 0.0) || !t.is_finite() {
        return Err(Error::Domain {
            re: t,
            im: 0.0,
            reason: "boundary needs t < 0",
        });
    }
    let r = t.round();
    if (t - r).abs() < SINGULARITY_TOLERANCE {
        return Err(Error::Singularity { t: r });
    }
    let k = (-t).ceil();
    let coeff = pochhammer(k - 1.0, n.get()) / n.factorial();
    let log_t = (-t).ln();
    let log_g = log_gn_real(t, n)?;
    Ok(PI * (n.sign() * coeff * log_t - log_g)
        / (t.powi(n.get() as i32) * (log_t * log_t + PI * PI)))
}
