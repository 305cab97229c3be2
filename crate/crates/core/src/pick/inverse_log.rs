use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use super::ratio::f_n_eval;
use super::stieltjes::{stieltjes_reconstruct, QuadratureConfig, ReconstructionResult};
use crate::error::{Error, Result};
use crate::foundations::{CutPlanePoint, Order, CONSTANTS};
use crate::quadrature::integrate;

const MAX_LEVEL: u32 = 12;

fn shifted(z: CutPlanePoint) -> Result<Complex64> {
    let c = z.z() + 1.0;
    if c.re <= 0.0 && c.im.abs() < 1e-6 {
        return Err(Error::Domain {
            re: z.re(),
            im: z.im(),
            reason: "z + 1 on the cut",
        });
    }
    if z.z().norm() < 1e-10 {
        return Err(Error::Domain {
            re: z.re(),
            im: z.im(),
            reason: "Log(z + 1) vanishes",
        });
    }
    Ok(c)
}

/// `1/Log(z+1) = 1/z + int_1^inf dt / ((z+t)(log^2(t-1) + pi^2))`, with the
/// integral computed in the variable `phi = atan(log(t-1)/pi)` where the
/// integrand becomes the bounded `1/(pi (1 + (z+1) e^-u))`, `u = pi tan phi`.
pub fn stieltjes_log_inverse(z: CutPlanePoint, cfg: &QuadratureConfig) -> Result<Complex64> {
    cfg.validate()?;
    let c = shifted(z)?;
    let kernel = |u: f64| {
        if u >= 0.0 {
            (1.0 + c * (-u).exp()).inv()
        } else {
            let e = u.exp();
            e / (c + e)
        }
    };
    // the kernel varies fastest where e^u ~ |c|
    let split = (c.norm().ln() / PI).atan();
    let mut total = Complex64::new(0.0, 0.0);
    for (a, b) in [(-FRAC_PI_2, split), (split, FRAC_PI_2)] {
        let r = integrate(a, b, cfg.tolerance, MAX_LEVEL, |nd| {
            let tan_phi = if nd.left < 0.5 && a == -FRAC_PI_2 {
                -1.0 / nd.left.tan()
            } else if nd.right < 0.5 && b == FRAC_PI_2 {
                1.0 / nd.right.tan()
            } else {
                nd.x.tan()
            };
            kernel(PI * tan_phi)
        })?;
        total += r.value;
    }
    Ok(z.z().inv() + total / PI)
}

/// `log g_n(z) = log(sqrt pi)/Log z - f_n(z)` for `z` off `(-inf, 0]` and `z != 1`.
pub fn g_n_log_at(z: CutPlanePoint, n: Order) -> Result<Complex64> {
    let w = z.z();
    if (w - 1.0).norm() < 1e-10 {
        return Err(Error::Domain {
            re: w.re,
            im: w.im,
            reason: "Log z vanishes",
        });
    }
    Ok(CONSTANTS.log_sqrt_pi() / w.ln() - f_n_eval(z, n)?)
}

/// `log g_n(z+1)`; see [`g_n_log_at`].
pub fn g_n_log_eval(z: CutPlanePoint, n: Order) -> Result<Complex64> {
    let c = shifted(z)?;
    g_n_log_at(CutPlanePoint::from_complex(c)?, n)
}

/// `log g_n(z+1)` as `log(sqrt pi)/Log(z+1) - 1/n! + int_0^inf d_n(-t)/(t+z+1) dt`,
/// both integrals done by quadrature, compared with [`g_n_log_eval`].
pub fn g_n_stieltjes_reconstruct(
    z: CutPlanePoint,
    n: Order,
    cfg: &QuadratureConfig,
) -> Result<ReconstructionResult> {
    let c = shifted(z)?;
    let inv_log = stieltjes_log_inverse(z, cfg)?;
    let f = stieltjes_reconstruct(CutPlanePoint::from_complex(c)?, n, cfg)?;
    let value = CONSTANTS.log_sqrt_pi() * inv_log - f.value;
    let direct = g_n_log_eval(z, n)?;
    Ok(ReconstructionResult {
        value,
        direct,
        residual: (value - direct).norm(),
        tail_estimate: -f.tail_estimate,
        ..f
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigamma::log_g3;

    fn p(re: f64, im: f64) -> CutPlanePoint {
        CutPlanePoint::new(re, im).unwrap()
    }

    #[test]
    fn log_inverse_closed_forms() {
        let cfg = QuadratureConfig {
            tolerance: 1e-12,
            ..Default::default()
        };
        let e = std::f64::consts::E;
        let v = stieltjes_log_inverse(p(1.0, 0.0), &cfg).unwrap();
        assert!((v.re - 1.0 / 2f64.ln()).abs() < 1e-11 && v.im.abs() < 1e-12);
        let v = stieltjes_log_inverse(p(e - 1.0, 0.0), &cfg).unwrap();
        assert!((v - 1.0).norm() < 1e-11);
        for &(re, im) in &[
            (0.0, 1.0),
            (-0.9, 0.01),
            (-3.0, 0.5),
            (1e4, -2.0),
            (-0.5, 1e-3),
            (0.01, 0.0),
        ] {
            let v = stieltjes_log_inverse(p(re, im), &cfg).unwrap();
            let want = (Complex64::new(re, im) + 1.0).ln().inv();
            assert!((v - want).norm() < 1e-10, "z=({re},{im}) {v} {want}");
        }
    }

    #[test]
    fn log_inverse_domain() {
        let cfg = QuadratureConfig::default();
        assert!(stieltjes_log_inverse(p(1e-11, 0.0), &cfg).is_err());
        assert!(stieltjes_log_inverse(p(-2.0, 1e-7), &cfg).is_err());
    }

    #[test]
    fn g3_examples() {
        let n = Order::new(3).unwrap();
        let v = g_n_log_eval(p(1.0, 0.0), n).unwrap();
        assert!((v.re - CONSTANTS.log_sqrt_pi() / 2f64.ln()).abs() < 1e-13);
        let e = std::f64::consts::E;
        let v = g_n_log_eval(p(e - 1.0, 0.0), n).unwrap();
        let want =
            CONSTANTS.log_sqrt_pi() - log_g3(Complex64::new(e, 0.0)).unwrap().value.re / e.powi(3);
        assert!((v.re - want).abs() < 1e-12);
        let gap = |x: f64| (g_n_log_eval(p(x, 0.0), n).unwrap().re + 1.0 / 6.0).abs();
        assert!(
            gap(1e2) > gap(1e4) && gap(1e4) > gap(1e6),
            "{} {} {}",
            gap(1e2),
            gap(1e4),
            gap(1e6)
        );
    }

    #[test]
    fn g2_reconstructs() {
        let n = Order::new(2).unwrap();
        let cfg = QuadratureConfig::default();
        for &(re, im) in &[(2.0, 0.0), (5.0, 2.0), (-0.5, 1.0), (-1.5, 0.5)] {
            let r = g_n_stieltjes_reconstruct(p(re, im), n, &cfg).unwrap();
            assert!(r.residual < 1e-8, "z=({re},{im}) residual {:e}", r.residual);
        }
    }
}
