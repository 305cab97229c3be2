//! Tanh-sinh quadrature with exact endpoint distances, and compensated sums.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Neumaier compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ComplexSum {
    re: NeumaierSum,
    im: NeumaierSum,
}

impl ComplexSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn total(&self) -> Complex64 {
        Complex64::new(self.re.total(), self.im.total())
    }
}

impl FromIterator<Complex64> for ComplexSum {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut s = ComplexSum::default();
        for z in iter {
            s.add(z);
        }
        s
    }
}

/// A quadrature node with its distances to both interval ends, which stay
/// accurate when the node itself rounds onto an endpoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub x: f64,
    pub left: f64,
    pub right: f64,
    pub weight: f64,
    /// Also a node of the next coarser level.
    pub coarse: bool,
}

/// Half-width of the truncated `t` range of the tanh-sinh map.
pub const T_MAX: f64 = 3.5;

/// Tanh-sinh nodes on `[a, b]` with step `h = 2^-level`.
pub fn tanh_sinh_nodes(a: f64, b: f64, level: u32) -> Vec<Node> {
    let hw = 0.5 * (b - a);
    let h = 0.5f64.powi(level as i32);
    let steps = (T_MAX / h).ceil() as i64;
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut out = Vec::with_capacity(2 * steps as usize + 1);
    for k in -steps..=steps {
        let t = k as f64 * h;
        let v = half_pi * t.sinh();
        let e = (-2.0 * v.abs()).exp();
        // distance from the nearer endpoint: hw (1 - tanh|v|)
        let near = hw * 2.0 * e / (1.0 + e);
        let far = 2.0 * hw - near;
        let (left, right) = if k < 0 { (near, far) } else { (far, near) };
        let sech2 = 4.0 * e / ((1.0 + e) * (1.0 + e));
        let weight = hw * h * half_pi * t.cosh() * sech2;
        let x = if k < 0 { a + left } else { b - right };
        out.push(Node {
            x,
            left,
            right,
            weight,
            coarse: k % 2 == 0,
        });
    }
    out
}

/// Sums `f` over the nodes at the given level and the next coarser one.
pub fn tanh_sinh_pair<F>(nodes: &[Node], mut f: F) -> (Complex64, Complex64)
where
    F: FnMut(&Node) -> Complex64,
{
    let mut fine = ComplexSum::default();
    let mut coarse = ComplexSum::default();
    for nd in nodes {
        let v = f(nd) * nd.weight;
        fine.add(v);
        if nd.coarse {
            coarse.add(v * 2.0);
        }
    }
    (fine.total(), coarse.total())
}

/// Result of an adaptive tanh-sinh integration.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: Complex64,
    pub error: f64,
    pub level: u32,
}

/// Refines the level from 3 up to `max_level` until two successive levels
/// agree to `tol`.
pub fn integrate<F>(a: f64, b: f64, tol: f64, max_level: u32, mut f: F) -> Result<Integral>
where
    F: FnMut(&Node) -> Complex64,
{
    let mut last = None;
    for level in 3..=max_level.max(3) {
        let (fine, coarse) = tanh_sinh_pair(&tanh_sinh_nodes(a, b, level), &mut f);
        if !(fine.re.is_finite() && fine.im.is_finite()) {
            return Err(Error::Quadrature(format!(
                "non-finite integrand on [{a}, {b}]"
            )));
        }
        let error = (fine - coarse).norm();
        last = Some(Integral {
            value: fine,
            error,
            level,
        });
        if error <= tol {
            return Ok(Integral {
                value: fine,
                error,
                level,
            });
        }
    }
    let r = last.expect("at least one level");
    Err(Error::Quadrature(format!(
        "[{a}, {b}] level {} error {:e} above {:e}",
        r.level, r.error, tol
    )))
}
