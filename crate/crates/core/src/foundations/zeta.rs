use crate::foundations::bernoulli_f64;

const EM_TERMS: u64 = 12;
const EM_START: u64 = 40;

/// `a^s * sum_{k >= a} k^{-s}` for integer `s >= 2`, `a >= 1`.
///
/// Direct summation up to a cut `A = max(a, 40, s)` followed by Euler-Maclaurin.
pub fn hurwitz_scaled(s: u32, a: u64) -> f64 {
    debug_assert!(s >= 2 && a >= 1);
    let big_a = a.max(EM_START).max(u64::from(s));
    let af = a as f64;
    let si = s as i32;
    let mut sum = 0.0;
    for k in (a..big_a).rev() {
        sum += (af / k as f64).powi(si);
    }
    let capf = big_a as f64;
    let sf = f64::from(s);
    let mut em = capf / (sf - 1.0) + 0.5;
    // B_{2r}/(2r)! * s (s+1) ... (s+2r-2) * A^{-(2r-1)}
    let mut rising = sf;
    let mut fact = 2.0;
    let mut apow = capf;
    for r in 1..=EM_TERMS {
        let term = bernoulli_f64(2 * r).unwrap_or(0.0) / fact * rising / apow;
        em += term;
        if term.abs() < 1e-18 * em.abs() {
            break;
        }
        let r2 = (2 * r) as f64;
        rising *= (sf + r2 - 1.0) * (sf + r2);
        fact *= (r2 + 1.0) * (r2 + 2.0);
        apow *= capf * capf;
    }
    sum + (af / capf).powi(si) * em
}

/// Hurwitz zeta `sum_{k >= a} k^{-s}`.
pub fn hurwitz_zeta(s: u32, a: u64) -> f64 {
    hurwitz_scaled(s, a) * (a as f64).powi(-(s as i32))
}

/// Scaled power sums `v_i = a^i * sum_{k >= a} m(k) k^{-i}` for a polynomial
/// weight `m(k) = sum_p c_p k^p`.
#[derive(Debug, Clone)]
pub struct PolyZetaTail {
    pub a: u64,
    first: usize,
    values: Vec<f64>,
}

impl PolyZetaTail {
    /// Powers `i` in `first..=last`; requires `first >= deg(m) + 2`.
    pub fn new(coeffs: &[f64], a: u64, first: usize, last: usize) -> Self {
        let deg = coeffs.len().saturating_sub(1);
        assert!(first >= deg + 2 && last >= first);
        let af = a as f64;
        let values = (first..=last)
            .map(|i| {
                coeffs
                    .iter()
                    .enumerate()
                    .map(|(p, &c)| c * af.powi(p as i32) * hurwitz_scaled((i - p) as u32, a))
                    .sum()
            })
            .collect();
        PolyZetaTail { a, first, values }
    }

    pub fn get(&self, i: usize) -> f64 {
        self.values[i - self.first]
    }

    pub fn first(&self) -> usize {
        self.first
    }

    pub fn last(&self) -> usize {
        self.first + self.values.len() - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn riemann_values() {
        assert!((hurwitz_zeta(2, 1) - PI * PI / 6.0).abs() < 1e-15);
        assert!((hurwitz_zeta(4, 1) - PI.powi(4) / 90.0).abs() < 1e-15);
        assert!((hurwitz_zeta(3, 1) - 1.2020569031595942).abs() < 1e-15);
    }

    #[test]
    fn shifted_matches_direct_sum() {
        for (s, a) in [(2u32, 5u64), (3, 100), (7, 2), (30, 3), (90, 2), (5, 5000)] {
            let direct: f64 = (0..200000u64)
                .map(|j| ((a + j) as f64).powi(-(s as i32)))
                .rev()
                .sum::<f64>();
            let n = (a + 200000) as f64;
            let tail_est = n.powi(1 - s as i32) / f64::from(s - 1) + 0.5 * n.powi(-(s as i32));
            let want = direct + tail_est;
            let got = hurwitz_zeta(s, a);
            assert!(
                ((got - want) / want).abs() < 1e-10,
                "s={s} a={a} {got} {want}"
            );
        }
    }

    #[test]
    fn scaled_is_bounded() {
        let v = hurwitz_scaled(60, 20001);
        assert!(v > 1.0 && v < 400.0);
    }
}
