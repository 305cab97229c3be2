//! Holomorphic branches of `log Gamma`, Barnes `G`, `G_3` and `G_n` on the
//! cut plane, boundary values on the negative axis and recurrence residuals.
//!
//! Conventions: `Gamma_1 = Gamma`, `Gamma_{n+1}(z+1) = Gamma_{n+1}(z) / Gamma_n(z)`,
//! `G_n = Gamma_n^{(-1)^{n-1}}`, so `G_2` is the Barnes G-function and
//! `G_{n+1}(z+1) = G_{n+1}(z) G_n(z)` with `G_n(1) = 1`. Every branch here is
//! holomorphic on `C \ (-inf, 0]` and real on the positive axis.

mod barnes;
mod boundary;
mod canonical;
mod gamma;
mod triple;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::foundations::Order;

pub use barnes::log_barnes_g2;
pub use boundary::{
    boundary_log_gn, boundary_phase_over_pi, log_abs_gn_near, recurrence_residual, BoundaryValue,
    SplitPoint,
};
pub use canonical::{log_gn, log_gn_at, log_gn_real, log_gn_shifted, CanonicalProductParams};
pub use gamma::{ln_gamma, log_gamma};
pub use triple::{log_g3, log_p_gamma3, log_triple_gamma, stirling_log_g3};

pub(crate) use barnes::ln_barnes_g;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BranchContract {
    /// Holomorphic on `C \ (-inf, 0]`, real on `(0, inf)`.
    HolomorphicOnCutPlane,
}

/// Value of `log G_n` on the holomorphic branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogMultiGammaValue {
    pub value: Complex64,
    pub order: Order,
    pub branch_contract: BranchContract,
}

impl LogMultiGammaValue {
    pub(crate) fn new(value: Complex64, order: Order) -> Self {
        LogMultiGammaValue {
            value,
            order,
            branch_contract: BranchContract::HolomorphicOnCutPlane,
        }
    }
}

pub(crate) const POLE_TOLERANCE: f64 = 1e-12;

/// Rejects points within [`POLE_TOLERANCE`] of `0, -1, -2, ...`.
pub(crate) fn check_pole(z: Complex64) -> Result<()> {
    if z.im.abs() < POLE_TOLERANCE && z.re < 0.5 {
        let r = z.re.round();
        if r <= 0.0 && (z.re - r).abs() < POLE_TOLERANCE {
            return Err(Error::Pole { at: r });
        }
    }
    Ok(())
}

/// Requires `w` to be off the closed negative axis.
pub(crate) fn check_cut(w: Complex64, reason: &'static str) -> Result<()> {
    if !w.re.is_finite() || !w.im.is_finite() || (w.im == 0.0 && w.re <= 0.0) {
        return Err(Error::Domain {
            re: w.re,
            im: w.im,
            reason,
        });
    }
    Ok(())
}
