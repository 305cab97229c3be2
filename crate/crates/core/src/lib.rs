//! Barnes multiple gamma functions `G_n` on the cut plane `C \ (-inf, 0]`,
//! the ratio functions `f_n(z) = log G_n(z+1) / (z^n Log z)`, their boundary
//! densities on the negative axis, and numerical machinery for checking the
//! Stieltjes representation `f_n(z) = 1/n! - int_0^inf d_n(-t)/(t+z) dt`.
//!
//! Module layout:
//!
//! * [`foundations`]: constants, exact combinatorics, the principal logarithm,
//!   Hurwitz zeta tails.
//! * [`multigamma`]: `log Gamma`, Barnes `G`, `G_3` and general `G_n`, boundary
//!   values on the cut, recurrence residuals.
//! * [`quadrature`]: tanh-sinh rules and compensated summation.
//! * [`pick`]: `f_n`, densities, Stieltjes reconstruction, Herglotz
//!   parameters, monotonicity and upper half plane probes.
//! * [`verify`]: the verification suite, report and table writers used by the
//!   `multigamma` binary.

pub mod error;
pub mod foundations;
pub mod multigamma;
pub mod pick;
pub mod quadrature;
pub mod verify;

pub use error::{Error, Result};
pub use foundations::{CutPlanePoint, Order};
pub use num_complex::Complex64;
