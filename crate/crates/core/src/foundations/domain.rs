use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: u32 = 6;
pub const MAX_ORDER_ENV: &str = "MULTIGAMMA_MAX_ORDER";

/// Largest order accepted by [`Order::new`].
///
/// Read once from `MULTIGAMMA_MAX_ORDER`; falls back to 6 when the variable
/// is unset or unparsable.
pub fn max_order() -> u32 {
    static CAP: OnceLock<u32> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(MAX_ORDER_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
            .filter(|&v| v >= 1)
            .unwrap_or(DEFAULT_MAX_ORDER)
    })
}

/// Order `n` of a multiple gamma function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Order(u32);

impl Order {
    pub fn new(n: u32) -> Result<Self> {
        Self::with_cap(n, max_order())
    }

    pub fn with_cap(n: u32, cap: u32) -> Result<Self> {
        if n == 0 || n > cap {
            return Err(Error::InvalidOrder { n, max: cap });
        }
        Ok(Order(n))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn as_usize(self) -> usize {
        self.0 as usize
    }

    /// `n!` as a float.
    pub fn factorial(self) -> f64 {
        (1..=self.0).map(f64::from).product()
    }

    /// `(-1)^n`.
    pub fn sign(self) -> f64 {
        if self.0 % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    pub fn next(self) -> Result<Order> {
        Order::new(self.0 + 1)
    }
}

impl TryFrom<u32> for Order {
    type Error = Error;
    fn try_from(n: u32) -> Result<Self> {
        Order::new(n)
    }
}

impl From<Order> for u32 {
    fn from(o: Order) -> u32 {
        o.0
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// A complex number off the closed negative real axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutPlanePoint {
    re: f64,
    im: f64,
}

impl CutPlanePoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Domain {
                re,
                im,
                reason: "non-finite coordinate",
            });
        }
        if im == 0.0 && re <= 0.0 {
            return Err(Error::Domain {
                re,
                im,
                reason: "on the closed negative real axis",
            });
        }
        Ok(CutPlanePoint { re, im })
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    pub fn real(x: f64) -> Result<Self> {
        Self::new(x, 0.0)
    }

    pub fn re(&self) -> f64 {
        self.re
    }

    pub fn im(&self) -> f64 {
        self.im
    }

    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn conj(&self) -> Self {
        CutPlanePoint {
            re: self.re,
            im: -self.im,
        }
    }
}

impl From<CutPlanePoint> for Complex64 {
    fn from(p: CutPlanePoint) -> Complex64 {
        p.z()
    }
}

/// Principal logarithm, `arg` in `(-pi, pi)`.
pub fn principal_log(z: CutPlanePoint) -> Complex64 {
    z.z().ln()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{E, FRAC_PI_2};

    #[test]
    fn log_examples() {
        assert_eq!(
            principal_log(CutPlanePoint::real(1.0).unwrap()),
            Complex64::new(0.0, 0.0)
        );
        let li = principal_log(CutPlanePoint::new(0.0, 1.0).unwrap());
        assert!(li.re.abs() < 1e-16 && (li.im - FRAC_PI_2).abs() < 1e-16);
        let l = principal_log(CutPlanePoint::real(E * E).unwrap());
        assert!((l.re - 2.0).abs() < 1e-15 && l.im == 0.0);
    }

    #[test]
    fn rejects_negative_axis() {
        assert!(CutPlanePoint::new(-1.0, 0.0).is_err());
        assert!(CutPlanePoint::new(0.0, 0.0).is_err());
        assert!(CutPlanePoint::new(-1.0, -0.0).is_err());
        assert!(CutPlanePoint::new(-1.0, 1e-300).is_ok());
        assert!(CutPlanePoint::new(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn order_bounds() {
        assert!(Order::new(0).is_err());
        assert!(Order::new(1).is_ok());
        assert!(Order::with_cap(7, 6).is_err());
        assert_eq!(Order::new(3).unwrap().factorial(), 6.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn exp_inverts_log(r in 1e-3f64..1e3, theta in -3.1f64..3.1) {
            let z = Complex64::from_polar(r, theta);
            let p = CutPlanePoint::from_complex(z).unwrap();
            let back = principal_log(p).exp();
            prop_assert!((back - z).norm() <= 1e-14 * z.norm());
        }
    }
}
