//! The ratio functions `f_n(z) = log G_n(z+1) / (z^n Log z)`, their boundary
//! densities `d_n` on the negative axis, Stieltjes reconstruction, the
//! functions `g_n`, and probes for the Pick and monotonicity properties.

mod density;
mod herglotz;
mod inverse_log;
mod probes;
mod ratio;
mod stieltjes;

pub use density::{
    boundary_im_f_n, density_at_split, density_d_n, DensitySample, DensityValue,
    SINGULARITY_TOLERANCE,
};
pub use herglotz::{herglotz_params, HerglotzParams};
pub use inverse_log::{g_n_log_at, g_n_log_eval, g_n_stieltjes_reconstruct, stieltjes_log_inverse};
pub use probes::{
    asymptotic_limit, complete_monotonicity_probe, derivative_estimate, pick_grid_scan,
    point_mass_estimate, triple_density_cubic, AsymptoticLimit, CubicAnalysis, GridScan,
    MonotonicityReport, OrderSign, PointMass, Region,
};
pub use ratio::{f_n_eval, f_n_reference, log_g_reference};
pub use stieltjes::{
    fitted_density_decay, stieltjes_reconstruct, QuadratureConfig, ReconstructionResult,
};
