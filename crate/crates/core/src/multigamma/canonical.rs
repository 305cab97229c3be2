use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex64;

use super::{check_cut, check_pole, LogMultiGammaValue};
use crate::error::{Error, Result};
use crate::foundations::{CutPlanePoint, Order, PolyZetaTail};
use crate::quadrature::NeumaierSum;

const DEFAULT_SERIES_CUTOFF: u64 = 8;
const DEFAULT_TAIL_ORDER: usize = 100;
const CACHED_TAILS: usize = 2048;
/// Terms of the power sums used for the derivatives at `z = 1`.
const TAYLOR_TERMS: usize = 160;

/// Canonical product data for `log Gamma_n(1+z) = Q_n(z) + S_n(z)` with
///
/// `S_n(z) = -sum_k m_k [Log(1+z/k) - sum_{j<=n} (-1)^{j-1} (z/k)^j / j]`,
/// `m_k = C(n+k-2, n-1)`.
///
/// The sum is taken directly for `k <= K = max(ceil(2|z|), series_cutoff)`
/// and the rest is expanded in powers of `z/(K+1)` with Hurwitz zeta sums.
#[derive(Debug)]
pub struct CanonicalProductParams {
    pub order: Order,
    /// Coefficients of `Q_n`, constant term first.
    pub q_poly: Vec<f64>,
    pub series_cutoff: u64,
    pub tail_order: usize,
    weight: Vec<f64>,
    tails: Vec<OnceLock<PolyZetaTail>>,
}

/// Coefficients of `m_k` as a polynomial in `k`.
fn weight_poly(n: usize) -> Vec<f64> {
    let mut c = vec![1.0];
    for j in 0..n - 1 {
        let mut next = vec![0.0; c.len() + 1];
        for (p, &v) in c.iter().enumerate() {
            next[p] += v * j as f64;
            next[p + 1] += v;
        }
        c = next;
    }
    let fact: f64 = (1..n).map(|j| j as f64).product();
    c.iter().map(|v| v / fact).collect()
}

/// `Log(1+w) - sum_{i<=n} (-1)^{i-1} w^i / i`.
fn remainder(w: Complex64, n: usize) -> Complex64 {
    if w.norm_sqr() <= 0.0625 {
        let mut p = w.powi(n as i32 + 1);
        let mut sum = Complex64::new(0.0, 0.0);
        let mut i = n + 1;
        loop {
            let term = if i % 2 == 1 {
                p / i as f64
            } else {
                -p / i as f64
            };
            sum += term;
            if term.norm_sqr() <= 1e-36 * sum.norm_sqr() || i > n + 80 {
                return sum;
            }
            p *= w;
            i += 1;
        }
    }
    let mut poly = Complex64::new(0.0, 0.0);
    let mut p = w;
    for i in 1..=n {
        let term = p / i as f64;
        poly += if i % 2 == 1 { term } else { -term };
        p *= w;
    }
    (1.0 + w).ln() - poly
}

/// Real analogue of [`remainder`] with `log|1+w|`.
fn remainder_real(w: f64, n: usize) -> f64 {
    if w.abs() <= 0.25 {
        let mut p = w.powi(n as i32 + 1);
        let mut sum = 0.0;
        let mut i = n + 1;
        loop {
            let term = if i % 2 == 1 {
                p / i as f64
            } else {
                -p / i as f64
            };
            sum += term;
            if term.abs() <= 1e-18 * sum.abs() || i > n + 80 {
                return sum;
            }
            p *= w;
            i += 1;
        }
    }
    let mut poly = 0.0;
    let mut p = w;
    for i in 1..=n {
        let term = p / i as f64;
        poly += if i % 2 == 1 { term } else { -term };
        p *= w;
    }
    (1.0 + w).abs().ln() - poly
}

/// `Q_m` for `m = 1..=n` (index `m`).
///
/// Differentiating `F_m(z+1) - F_m(z) = -F_{m-1}(z)`, `F_m(z) = log Gamma_m(1+z)`,
/// `j` times at `z = 0` gives a triangular system for the coefficients of
/// `Q_m` in terms of `S_m^{(j)}(1)` and the Taylor coefficients of `F_{m-1}`,
/// which agree with `Q_{m-1}` up to degree `m-1`. `F_0(z) = -Log(1+z)`.
fn q_polynomials(n: usize) -> Vec<Vec<f64>> {
    let mut qs: Vec<Vec<f64>> = vec![Vec::new()];
    for m in 1..=n {
        let weight = weight_poly(m);
        let first = m + 1;
        let last = m + TAYLOR_TERMS;
        let tail = PolyZetaTail::new(&weight, 2, first, last);
        let lower = |j: usize| -> f64 {
            if m == 1 {
                if j == 0 {
                    0.0
                } else {
                    let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                    s / j as f64
                }
            } else {
                qs[m - 1][j]
            }
        };
        let fact = |k: usize| -> f64 { (1..=k).map(|v| v as f64).product() };
        // (i-1)! / (i-j)!
        let falling = |i: usize, j: usize| -> f64 {
            if j == 0 {
                1.0 / i as f64
            } else {
                (i - j + 1..i).map(|v| v as f64).product()
            }
        };
        let mut rhs = vec![0.0; m];
        for (j, r) in rhs.iter_mut().enumerate() {
            // k = 1 term of S_m^{(j)}(1) in closed form
            let mut r1 = if j == 0 {
                std::f64::consts::LN_2
            } else {
                let s = if (j - 1) % 2 == 0 { 1.0 } else { -1.0 };
                s * fact(j - 1) / 2f64.powi(j as i32)
            };
            for i in j.max(1)..=m {
                let s = if (i - 1) % 2 == 0 { 1.0 } else { -1.0 };
                r1 -= s * falling(i, j);
            }
            let mut rest = NeumaierSum::default();
            for i in first..=last {
                let s = if (i - 1) % 2 == 0 { 1.0 } else { -1.0 };
                let y = tail.get(i) * 0.5f64.powi(i as i32);
                rest.add(s * falling(i, j) * y);
            }
            let s_j = -r1 - rest.total();
            *r = -s_j - fact(j) * lower(j);
        }
        let mut q = vec![0.0; m + 1];
        for j in (0..m).rev() {
            let mut acc = rhs[j];
            for i in j + 2..=m {
                let ratio: f64 = (i - j + 1..=i).map(|v| v as f64).product();
                acc -= q[i] * ratio;
            }
            q[j + 1] = acc / fact(j + 1);
        }
        qs.push(q);
    }
    qs
}

fn registry() -> &'static Mutex<HashMap<u32, &'static CanonicalProductParams>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, &'static CanonicalProductParams>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CanonicalProductParams {
    fn build(order: Order, q_poly: Vec<f64>, series_cutoff: u64, tail_order: usize) -> Self {
        let n = order.as_usize();
        CanonicalProductParams {
            order,
            q_poly,
            series_cutoff,
            tail_order,
            weight: weight_poly(n),
            tails: (0..CACHED_TAILS).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Builds and validates the parameters for `order` with default limits.
    pub fn new(order: Order) -> Result<Self> {
        Self::with_limits(order, DEFAULT_SERIES_CUTOFF, DEFAULT_TAIL_ORDER)
    }

    pub fn with_limits(order: Order, series_cutoff: u64, tail_order: usize) -> Result<Self> {
        let n = order.as_usize();
        if series_cutoff == 0 || tail_order == 0 {
            return Err(Error::Config(
                "series cutoff and tail order must be positive".into(),
            ));
        }
        let qs = q_polynomials(n);
        let params = Self::build(order, qs[n].clone(), series_cutoff, tail_order);
        let lower = if n >= 2 {
            Some(Self::build(
                Order::with_cap(order.get() - 1, order.get())?,
                qs[n - 1].clone(),
                DEFAULT_SERIES_CUTOFF,
                DEFAULT_TAIL_ORDER,
            ))
        } else {
            None
        };
        params.validate(lower.as_ref())?;
        Ok(params)
    }

    /// Shared instance for `order`, built once.
    pub fn cached(order: Order) -> Result<&'static Self> {
        let mut map = registry().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(p) = map.get(&order.get()) {
            return Ok(p);
        }
        let p: &'static Self = Box::leak(Box::new(Self::new(order)?));
        map.insert(order.get(), p);
        Ok(p)
    }

    fn validate(&self, lower: Option<&Self>) -> Result<()> {
        let n = self.order.get();
        let fail = |reason: String| Error::Construction { n, reason };
        if self.q_poly.len() != self.order.as_usize() + 1 || self.q_poly[0] != 0.0 {
            return Err(fail("Q_n has the wrong shape".into()));
        }
        if self.q_poly.iter().any(|c| !c.is_finite()) {
            return Err(fail("non-finite Q_n coefficient".into()));
        }
        let at_two = self.eval(Complex64::new(1.0, 0.0))?;
        if at_two.norm() > 1e-12 {
            return Err(fail(format!("log G_n(2) = {at_two}")));
        }
        for z in [
            Complex64::new(0.5, 0.5),
            Complex64::new(-0.5, 2.0),
            Complex64::new(3.0, -1.0),
        ] {
            let step = self.eval(z + 1.0)? - self.eval(z)?;
            let prev = match lower {
                Some(l) => l.eval(z)?,
                None => (1.0 + z).ln(),
            };
            let r = (step - prev).norm();
            if r > 1e-9 {
                return Err(fail(format!("recurrence residual {r:e} at {z}")));
            }
        }
        Ok(())
    }

    /// `(-1)^{n-1}`.
    pub fn sign(&self) -> f64 {
        -self.order.sign()
    }

    /// `m_k = C(n+k-2, n-1)`.
    pub fn multiplicity(&self, k: u64) -> f64 {
        let kf = k as f64;
        self.weight.iter().rev().fold(0.0, |acc, &c| acc * kf + c)
    }

    fn with_tail<R>(&self, a: u64, f: impl FnOnce(&PolyZetaTail) -> R) -> R {
        let n = self.order.as_usize();
        let make = || PolyZetaTail::new(&self.weight, a, n + 1, n + self.tail_order);
        if (a as usize) < CACHED_TAILS {
            f(self.tails[a as usize].get_or_init(make))
        } else {
            f(&make())
        }
    }

    fn cutoff(&self, r: f64) -> u64 {
        ((2.0 * r).ceil() as u64).max(self.series_cutoff)
    }

    fn q_value(&self, z: Complex64) -> Complex64 {
        self.q_poly
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `S_n(z)`.
    pub fn canonical_sum(&self, z: Complex64) -> Result<Complex64> {
        let n = self.order.as_usize();
        let big_k = self.cutoff(z.norm());
        let mut re = NeumaierSum::default();
        let mut im = NeumaierSum::default();
        for k in 1..=big_k {
            let t = remainder(z / k as f64, n) * self.multiplicity(k);
            re.add(-t.re);
            im.add(-t.im);
        }
        let direct = Complex64::new(re.total(), im.total());
        let a = big_k + 1;
        let u = z / a as f64;
        let tail = self.with_tail(a, |tab| -> Result<Complex64> {
            let mut acc = Complex64::new(0.0, 0.0);
            let mut p = u.powi(n as i32 + 1);
            for i in tab.first()..=tab.last() {
                let term = p * (tab.get(i) / i as f64);
                acc += if i % 2 == 0 { term } else { -term };
                if term.norm() <= 1e-17 * acc.norm() || term.norm() == 0.0 {
                    return Ok(acc);
                }
                p *= u;
            }
            Err(Error::Convergence(format!(
                "zeta tail of order {} at |z| = {} needs more than {} terms",
                n,
                z.norm(),
                self.tail_order
            )))
        })?;
        Ok(direct + tail)
    }

    /// Real part of `S_n(x + i0)` for real `x`, built from `log|1 + x/k|`.
    pub fn canonical_sum_real(&self, x: f64) -> Result<f64> {
        let n = self.order.as_usize();
        let big_k = self.cutoff(x.abs());
        let mut direct = NeumaierSum::default();
        for k in 1..=big_k {
            direct.add(-remainder_real(x / k as f64, n) * self.multiplicity(k));
        }
        let a = big_k + 1;
        let u = x / a as f64;
        let tail = self.with_tail(a, |tab| -> Result<f64> {
            let mut acc = 0.0;
            let mut p = u.powi(n as i32 + 1);
            for i in tab.first()..=tab.last() {
                let term = p * tab.get(i) / i as f64;
                acc += if i % 2 == 0 { term } else { -term };
                if term.abs() <= 1e-17 * acc.abs() || term == 0.0 {
                    return Ok(acc);
                }
                p *= u;
            }
            Err(Error::Convergence(format!("real zeta tail at x = {x}")))
        })?;
        Ok(direct.total() + tail)
    }

    /// `L_n(z) = log G_n(1+z)` without domain checks.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok((self.q_value(z) + self.canonical_sum(z)?) * self.sign())
    }

    /// `log|G_n(1+x)|` for real `x`, not a negative integer.
    pub fn eval_real(&self, x: f64) -> Result<f64> {
        let q = self.q_poly.iter().rev().fold(0.0, |acc, &c| acc * x + c);
        Ok((q + self.canonical_sum_real(x)?) * self.sign())
    }
}

/// `log G_n(1+z)` for `1+z` in the cut plane.
pub fn log_gn(
    z: Complex64,
    n: Order,
    params: &CanonicalProductParams,
) -> Result<LogMultiGammaValue> {
    if params.order != n {
        return Err(Error::Config(format!(
            "parameters for order {} used with order {}",
            params.order, n
        )));
    }
    let w = z + 1.0;
    check_cut(w, "1+z on the closed negative axis")?;
    check_pole(w)?;
    Ok(LogMultiGammaValue::new(params.eval(z)?, n))
}

/// [`log_gn`] with the shared parameters for `n`.
pub fn log_gn_shifted(z: Complex64, n: Order) -> Result<LogMultiGammaValue> {
    log_gn(z, n, CanonicalProductParams::cached(n)?)
}

/// `log G_n(z)` for `z` in the cut plane.
pub fn log_gn_at(z: CutPlanePoint, n: Order) -> Result<LogMultiGammaValue> {
    log_gn_shifted(z.z() - 1.0, n)
}

/// `log|G_n(1+x)|` for real `x` that is not a negative integer; the real
/// value of `log G_n(1+x)` when `x > -1`.
pub fn log_gn_real(x: f64, n: Order) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain {
            re: x,
            im: 0.0,
            reason: "non-finite argument",
        });
    }
    check_pole(Complex64::new(1.0 + x, 0.0))?;
    CanonicalProductParams::cached(n)?.eval_real(x)
}
