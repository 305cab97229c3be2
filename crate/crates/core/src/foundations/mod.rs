//! Constants, exact combinatorics, the principal logarithm and zeta tails.

mod bernoulli;
mod combinatorics;
mod constants;
mod domain;
mod zeta;

pub use bernoulli::{bernoulli, bernoulli_f64, MAX_BERNOULLI_INDEX};
pub use combinatorics::{
    binomial, counting_n, pochhammer, southeast_diagonal_sum, southeast_diagonal_sum_exact,
    zero_multiplicity,
};
pub use constants::{ConstantsTable, CONSTANTS};
pub use domain::{
    max_order, principal_log, CutPlanePoint, Order, DEFAULT_MAX_ORDER, MAX_ORDER_ENV,
};
pub use zeta::{hurwitz_scaled, hurwitz_zeta, PolyZetaTail};
