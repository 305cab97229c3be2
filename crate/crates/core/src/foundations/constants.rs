/// Mathematical constants used across the crate.
///
/// Values are stored as literals with more digits than `f64` can hold; the
/// compiler rounds them to the nearest representable double.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantsTable {
    pub euler_gamma: f64,
    pub log_two_pi: f64,
    /// `log A`, A the Glaisher-Kinkelin constant.
    pub log_glaisher: f64,
    pub zeta_prime_0: f64,
    pub zeta_prime_m1: f64,
    pub zeta_prime_m2: f64,
    pub pi_sq_over_6: f64,
}

#[allow(clippy::excessive_precision)]
const ZETA_3: f64 = 1.202056903159594285399738161511449990765;

#[allow(clippy::excessive_precision)]
pub const CONSTANTS: ConstantsTable = ConstantsTable {
    euler_gamma: 0.5772156649015328606065120900824024310422,
    log_two_pi: 1.837877066409345483560659472811235279723,
    log_glaisher: 0.2487544770337842625472529935761139760974,
    zeta_prime_0: -0.9189385332046727417803297364056176398614,
    zeta_prime_m1: -0.1654211437004509292139196602427806427640,
    // zeta'(-2) = -zeta(3) / (4 pi^2)
    zeta_prime_m2: -ZETA_3 / (4.0 * std::f64::consts::PI * std::f64::consts::PI),
    pi_sq_over_6: 1.644934066848226436472415166646025189219,
};

impl ConstantsTable {
    /// `log sqrt(pi)`.
    pub fn log_sqrt_pi(&self) -> f64 {
        0.5 * std::f64::consts::PI.ln()
    }

    /// Coefficients `(D, E, F)` of the cubic part of `log Gamma_3(1+z)`.
    pub fn triple_gamma_cubic(&self) -> (f64, f64, f64) {
        let d = -(self.euler_gamma + self.pi_sq_over_6 + 1.5) / 6.0;
        let e = (self.euler_gamma + self.log_two_pi + 0.5) / 4.0;
        let f = 0.375 - self.log_two_pi / 4.0 - self.log_glaisher;
        (d, e, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn zeta_prime_zero_identity() {
        assert!(rel(CONSTANTS.zeta_prime_0, -CONSTANTS.log_two_pi / 2.0) <= 1e-14);
    }

    #[test]
    fn glaisher_identity() {
        assert!(rel(CONSTANTS.log_glaisher, 1.0 / 12.0 - CONSTANTS.zeta_prime_m1) <= 1e-14);
    }

    #[test]
    fn published_values() {
        assert!(rel(CONSTANTS.zeta_prime_m2, -0.030448457058393270780) <= 1e-15);
        assert!(rel(CONSTANTS.pi_sq_over_6, std::f64::consts::PI.powi(2) / 6.0) <= 1e-15);
    }

    #[test]
    fn cubic_coefficients() {
        let (d, e, f) = CONSTANTS.triple_gamma_cubic();
        assert!((d + 0.62035828862495988).abs() < 1e-14);
        assert!((e - 0.72877318282771959).abs() < 1e-14);
        assert!((f + 0.33322374363612063).abs() < 1e-14);
    }
}
