use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::density::density_at_split;
use super::ratio::{f_n_eval, f_n_reference};
use crate::error::{Error, Result};
use crate::foundations::{CutPlanePoint, Order};
use crate::multigamma::{log_abs_gn_near, CanonicalProductParams, SplitPoint};
use crate::quadrature::{tanh_sinh_nodes, ComplexSum, Node};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Target absolute error.
    pub tolerance: f64,
    /// Upper limit `T` of the direct quadrature.
    pub cutoff_t: f64,
    /// Finest tanh-sinh step `2^-levels`.
    pub levels: u32,
    /// Fractions of `T` bounding the window used by [`fitted_density_decay`].
    pub tail_exponent_fit_window: (f64, f64),
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig {
            tolerance: 1e-8,
            cutoff_t: 399.5,
            levels: 10,
            tail_exponent_fit_window: (0.5, 1.0),
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.cutoff_t >= 10.0) || !self.cutoff_t.is_finite() {
            return Err(Error::Config(format!(
                "cutoff {} must be >= 10",
                self.cutoff_t
            )));
        }
        if !(self.tolerance >= 1e-14) || !self.tolerance.is_finite() {
            return Err(Error::Config(format!(
                "tolerance {} must be >= 1e-14",
                self.tolerance
            )));
        }
        if !(3..=12).contains(&self.levels) {
            return Err(Error::Config(format!(
                "levels {} outside 3..=12",
                self.levels
            )));
        }
        let (a, b) = self.tail_exponent_fit_window;
        if !(0.0 < a && a < b && b <= 1.0) {
            return Err(Error::Config(format!(
                "fit window ({a}, {b}) must satisfy 0 < a < b <= 1"
            )));
        }
        Ok(())
    }

    /// Cutoff moved off the integers so that the closing arc avoids the
    /// logarithmic singularities of `f_n` on the negative axis.
    pub fn effective_cutoff(&self) -> f64 {
        let t = self.cutoff_t;
        let frac = t - t.floor();
        if (0.1..=0.9).contains(&frac) {
            t
        } else {
            t.round() - 0.5
        }
    }
}

/// Both sides of `f_n(z) = 1/n! - int_0^inf d_n(-t)/(t+z) dt`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReconstructionResult {
    /// `1/n! - int_0^T - tail`.
    pub value: Complex64,
    pub direct: Complex64,
    pub residual: f64,
    /// `int_T^inf d_n(-t)/(t+z) dt`.
    pub tail_estimate: Complex64,
    pub subintervals_used: usize,
    pub cutoff_used: f64,
    /// Difference between the two finest tanh-sinh levels.
    pub quadrature_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Piece {
    /// `t` in `(0, 1)` through `t = exp(pi tan phi)`, `phi` in `[lo, hi]` within `[-pi/2, 0]`.
    Origin { lo: f64, hi: f64 },
    /// `t` in `[a, b]` inside `[k-1, k]`.
    Unit { a: f64, b: f64, k: u64 },
}

impl Piece {
    fn nodes(&self, level: u32) -> Vec<Node> {
        match *self {
            Piece::Origin { lo, hi } => tanh_sinh_nodes(lo, hi, level),
            Piece::Unit { a, b, .. } => tanh_sinh_nodes(a, b, level),
        }
    }

    fn contains(&self, t: f64) -> bool {
        match *self {
            Piece::Origin { lo, hi } => {
                let phi = (t.ln() / PI).atan();
                t < 1.0 && lo < phi && phi < hi
            }
            Piece::Unit { a, b, .. } => a < t && t < b,
        }
    }

    fn split(&self, t: f64) -> (Piece, Piece) {
        match *self {
            Piece::Origin { lo, hi } => {
                let phi = (t.ln() / PI).atan();
                (Piece::Origin { lo, hi: phi }, Piece::Origin { lo: phi, hi })
            }
            Piece::Unit { a, b, k } => (Piece::Unit { a, b: t, k }, Piece::Unit { a: t, b, k }),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct GridNode {
    t: f64,
    weight: f64,
    coarse: bool,
    dens: f64,
}

#[derive(Debug, Clone, Copy)]
struct ArcNode {
    w: Complex64,
    weight: f64,
    coarse: bool,
    /// `f_n(w) - 1/n!`.
    h: Complex64,
}

const BASE_LEVEL: u32 = 6;

#[derive(Debug)]
struct Grid {
    n: Order,
    level: u32,
    pieces: Vec<(Piece, Vec<GridNode>)>,
    arc: Vec<ArcNode>,
}

/// `s d_n(-s) (log^2 s + pi^2) = (-1)^{n+1} log G_n(1-s) / s^{n-1}` on `(0, 1)`.
fn origin_weight(n: Order, s: f64, one_minus_s: f64) -> Result<f64> {
    let params = CanonicalProductParams::cached(n)?;
    let sign = if n.get() % 2 == 1 { 1.0 } else { -1.0 };
    // below 1e-100 the limit is exact to working precision
    if s < 1e-100 {
        return Ok(match n.get() {
            1 => 0.0,
            // L_2(-s) / s -> -L_2'(0)
            2 => -sign * params.sign() * params.q_poly[1],
            _ => f64::INFINITY,
        });
    }
    let l = if s < 0.5 {
        params.eval_real(-s)?
    } else {
        log_abs_gn_near(n, SplitPoint::new(0, one_minus_s, s)?)?
    };
    Ok(sign * l / s.powi(n.get() as i32 - 1))
}

fn piece_nodes(n: Order, piece: Piece, level: u32) -> Result<Vec<GridNode>> {
    piece
        .nodes(level)
        .iter()
        .map(|nd| -> Result<GridNode> {
            let (t, weight, dens) = match piece {
                Piece::Origin { lo, hi } => {
                    let tan_phi = if lo == -FRAC_PI_2 && nd.left < 0.5 {
                        -1.0 / nd.left.tan()
                    } else if hi == 0.0 && nd.right < 0.5 {
                        -nd.right.tan()
                    } else {
                        nd.x.tan()
                    };
                    let e = PI * tan_phi;
                    let s = e.exp();
                    (s, nd.weight / PI, origin_weight(n, s, -e.exp_m1())?)
                }
                Piece::Unit { a, b, k } => {
                    let kf = k as f64;
                    let delta = (kf - b) + nd.right;
                    let eps = (a - (kf - 1.0)) + nd.left;
                    (a + nd.left, nd.weight, density_at_split(n, k, delta, eps)?)
                }
            };
            if !dens.is_finite() {
                return Err(Error::Quadrature(format!(
                    "density of order {n} is not integrable at t = 0 (t d_n(-t) log^2 t unbounded at t = {t:e})"
                )));
            }
            Ok(GridNode { t, weight, coarse: nd.coarse, dens })
        })
        .collect()
}

fn arc_nodes(n: Order, cutoff: f64, level: u32) -> Result<Vec<ArcNode>> {
    let inv_fact = 1.0 / n.factorial();
    tanh_sinh_nodes(0.0, PI, level)
        .par_iter()
        .map(|nd| -> Result<ArcNode> {
            let w = if nd.right < FRAC_PI_2 {
                Complex64::new(-cutoff * nd.right.cos(), cutoff * nd.right.sin())
            } else {
                Complex64::from_polar(cutoff, nd.x)
            };
            let h = f_n_reference(w, n)? - inv_fact;
            if !(h.re.is_finite() && h.im.is_finite()) {
                return Err(Error::Quadrature(format!(
                    "non-finite f_{n} on the arc at {w}"
                )));
            }
            Ok(ArcNode {
                w,
                weight: nd.weight,
                coarse: nd.coarse,
                h,
            })
        })
        .collect()
}

fn pieces_for(cutoff: f64) -> Vec<Piece> {
    let mut out = vec![Piece::Origin {
        lo: -FRAC_PI_2,
        hi: 0.0,
    }];
    let whole = cutoff.floor() as u64;
    for k in 2..=whole {
        out.push(Piece::Unit {
            a: (k - 1) as f64,
            b: k as f64,
            k,
        });
    }
    if cutoff > whole as f64 {
        out.push(Piece::Unit {
            a: whole as f64,
            b: cutoff,
            k: whole + 1,
        });
    }
    out
}

impl Grid {
    fn build(n: Order, cutoff: f64, level: u32) -> Result<Grid> {
        let pieces = pieces_for(cutoff);
        let first = piece_nodes(n, pieces[0], level)?;
        let rest: Vec<Vec<GridNode>> = pieces[1..]
            .par_iter()
            .map(|p| piece_nodes(n, *p, level))
            .collect::<Result<_>>()?;
        let mut all = Vec::with_capacity(pieces.len());
        all.push((pieces[0], first));
        all.extend(pieces[1..].iter().copied().zip(rest));
        Ok(Grid {
            n,
            level,
            pieces: all,
            arc: arc_nodes(n, cutoff, level)?,
        })
    }

    fn cached(n: Order, cutoff: f64, level: u32) -> Result<Arc<Grid>> {
        type Key = (u32, u64, u32);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Grid>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        let key = (n.get(), cutoff.to_bits(), level);
        if let Some(g) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&key) {
            return Ok(g.clone());
        }
        let g = Arc::new(Grid::build(n, cutoff, level)?);
        let mut map = cache.lock().unwrap_or_else(|e| e.into_inner());
        Ok(map.entry(key).or_insert(g).clone())
    }
}

fn density_sums(nodes: &[GridNode], z: Complex64) -> (Complex64, Complex64) {
    let mut fine = ComplexSum::default();
    let mut coarse = ComplexSum::default();
    for nd in nodes {
        let v = (z + nd.t).inv() * (nd.weight * nd.dens);
        fine.add(v);
        if nd.coarse {
            coarse.add(v * 2.0);
        }
    }
    (fine.total(), coarse.total())
}

/// `-(1/2pi) int (f_n(w) - 1/n!) w/(w-z) dtheta` over `|w| = T`, which equals
/// `int_T^inf d_n(-t)/(t+z) dt` for `|z| < T`.
fn arc_sums(nodes: &[ArcNode], z: Complex64) -> (Complex64, Complex64) {
    let mut fine = ComplexSum::default();
    let mut coarse = ComplexSum::default();
    for nd in nodes {
        let wc = nd.w.conj();
        let v =
            (nd.h * nd.w / (nd.w - z) + nd.h.conj() * wc / (wc - z)) * (-nd.weight / (2.0 * PI));
        fine.add(v);
        if nd.coarse {
            coarse.add(v * 2.0);
        }
    }
    (fine.total(), coarse.total())
}

enum PartKind {
    Density(Vec<Piece>),
    Arc,
}

struct Part {
    kind: PartKind,
    level: u32,
    fine: Complex64,
    coarse: Complex64,
}

impl Part {
    fn error(&self) -> f64 {
        (self.fine - self.coarse).norm()
    }

    fn refine(&mut self, n: Order, cutoff: f64, z: Complex64) -> Result<()> {
        self.level += 1;
        let (fine, coarse) = match &self.kind {
            PartKind::Density(pieces) => {
                let mut f = Complex64::new(0.0, 0.0);
                let mut c = Complex64::new(0.0, 0.0);
                for p in pieces {
                    let (a, b) = density_sums(&piece_nodes(n, *p, self.level)?, z);
                    f += a;
                    c += b;
                }
                (f, c)
            }
            PartKind::Arc => arc_sums(&arc_nodes(n, cutoff, self.level)?, z),
        };
        self.fine = fine;
        self.coarse = coarse;
        Ok(())
    }
}

/// Sums over the cached grid, with pieces that contain the peak `t = -Re z`
/// of the kernel split there, then refines the parts with the largest
/// level-difference estimates until their total is below `tol` or every part
/// has reached `max_level`.
fn integrate_parts(
    grid: &Grid,
    cutoff: f64,
    z: Complex64,
    tol: f64,
    max_level: u32,
) -> Result<Vec<Part>> {
    let peak = -z.re;
    let near_cut = z.im.abs() < 1.0;
    let mut parts = Vec::with_capacity(grid.pieces.len() + 1);
    for (piece, nodes) in &grid.pieces {
        if near_cut && peak > 0.0 && piece.contains(peak) {
            let (p, q) = piece.split(peak);
            let (f1, c1) = density_sums(&piece_nodes(grid.n, p, grid.level)?, z);
            let (f2, c2) = density_sums(&piece_nodes(grid.n, q, grid.level)?, z);
            parts.push(Part {
                kind: PartKind::Density(vec![p, q]),
                level: grid.level,
                fine: f1 + f2,
                coarse: c1 + c2,
            });
        } else {
            let (fine, coarse) = density_sums(nodes, z);
            parts.push(Part {
                kind: PartKind::Density(vec![*piece]),
                level: grid.level,
                fine,
                coarse,
            });
        }
    }
    let (fine, coarse) = arc_sums(&grid.arc, z);
    parts.push(Part {
        kind: PartKind::Arc,
        level: grid.level,
        fine,
        coarse,
    });
    loop {
        let total: f64 = parts.iter().map(Part::error).sum();
        if total <= tol {
            break;
        }
        let worst = parts
            .iter_mut()
            .filter(|p| p.level < max_level)
            .max_by(|a, b| a.error().total_cmp(&b.error()));
        match worst {
            Some(p) => p.refine(grid.n, cutoff, z)?,
            None => break,
        }
    }
    Ok(parts)
}

fn check_near_cut(z: Complex64) -> Result<()> {
    if z.norm() < 1e-6 || (z.re <= 0.0 && z.im.abs() < 1e-6) {
        return Err(Error::Domain {
            re: z.re,
            im: z.im,
            reason: "within 1e-6 of the cut",
        });
    }
    Ok(())
}

/// Evaluates `1/n! - int_0^T d_n(-t)/(t+z) dt - tail` and compares with `f_n(z)`.
///
/// The integral over `(0, T]` is split at every integer (logarithmic endpoint
/// singularities of the density) and, on `(0, 1)`, taken in the variable
/// `phi = atan(log(t)/pi)`. The remainder beyond `T` is obtained exactly from
/// Cauchy's formula on the circle `|w| = T`, which needs `|z| < T/2`; `T` is
/// doubled (at most four times) until that holds. Tanh-sinh sums start at
/// step `2^-6` and are refined up to `2^-levels` where the difference between
/// successive levels is largest.
pub fn stieltjes_reconstruct(
    z: CutPlanePoint,
    n: Order,
    cfg: &QuadratureConfig,
) -> Result<ReconstructionResult> {
    cfg.validate()?;
    let w = z.z();
    check_near_cut(w)?;
    let mut cutoff = cfg.effective_cutoff();
    let mut doublings = 0;
    while w.norm() >= 0.5 * cutoff {
        if doublings == 4 {
            return Err(Error::Config(format!(
                "|z| = {} too large for cutoff {}",
                w.norm(),
                cfg.cutoff_t
            )));
        }
        cutoff = 2.0 * cutoff.floor() + 0.5;
        doublings += 1;
    }
    let grid = Grid::cached(n, cutoff, BASE_LEVEL.min(cfg.levels))?;
    let parts = integrate_parts(&grid, cutoff, w, cfg.tolerance, cfg.levels)?;
    let quadrature_error: f64 = parts.iter().map(Part::error).sum();
    if !(quadrature_error <= cfg.tolerance) {
        return Err(Error::Quadrature(format!(
            "level {} estimate {:e} above tolerance {:e} at z = {}",
            cfg.levels, quadrature_error, cfg.tolerance, w
        )));
    }
    let mut q = ComplexSum::default();
    let mut tail = Complex64::new(0.0, 0.0);
    let mut used = 0;
    for p in &parts {
        match &p.kind {
            PartKind::Density(pieces) => {
                q.add(p.fine);
                used += pieces.len();
            }
            PartKind::Arc => tail = p.fine,
        }
    }
    let value = 1.0 / n.factorial() - q.total() - tail;
    let direct = f_n_eval(z, n)?;
    Ok(ReconstructionResult {
        value,
        direct,
        residual: (value - direct).norm(),
        tail_estimate: tail,
        subintervals_used: used,
        cutoff_used: cutoff,
        quadrature_error,
    })
}

/// Least-squares exponent `p` in `d_n(-t) (log^2 t + pi^2) ~ C t^-p` over the
/// configured window of `[0, T]`, sampled at half-integers.
pub fn fitted_density_decay(n: Order, cfg: &QuadratureConfig) -> Result<f64> {
    cfg.validate()?;
    let cutoff = cfg.effective_cutoff();
    let (lo, hi) = cfg.tail_exponent_fit_window;
    let first = (lo * cutoff).ceil().max(1.0) as u64;
    let last = ((hi * cutoff).floor() as u64).max(first + 1);
    let mut pts = Vec::new();
    for k in first..last {
        let t = k as f64 + 0.5;
        let d = density_at_split(n, k + 1, 0.5, 0.5)?;
        if d <= 0.0 {
            return Err(Error::Convergence(format!(
                "nonpositive density at t = -{t}"
            )));
        }
        let lt = t.ln();
        pts.push((lt, (d * (lt * lt + PI * PI)).ln()));
    }
    let m = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let (sxy, sxx) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| {
        (a + (x - mx) * (y - my), b + (x - mx) * (x - mx))
    });
    Ok(-sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(n: u32) -> Order {
        Order::new(n).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(QuadratureConfig::default().validate().is_ok());
        let bad = QuadratureConfig {
            cutoff_t: 5.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = QuadratureConfig {
            tolerance: 1e-16,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        assert_eq!(
            QuadratureConfig {
                cutoff_t: 400.0,
                ..Default::default()
            }
            .effective_cutoff(),
            399.5
        );
    }

    #[test]
    fn orders_one_and_two_reconstruct() {
        let cfg = QuadratureConfig::default();
        for n in 1..=2 {
            for &(re, im) in &[
                (2.0, 0.0),
                (2.0, 3.0),
                (0.1, 0.0),
                (-5.5, 0.2),
                (-50.0, 40.0),
                (80.0, -60.0),
            ] {
                let r = stieltjes_reconstruct(CutPlanePoint::new(re, im).unwrap(), ord(n), &cfg)
                    .unwrap();
                assert!(
                    r.residual <= 1e-8,
                    "n={n} z=({re},{im}) residual {:e}",
                    r.residual
                );
            }
        }
    }

    #[test]
    fn order_three_density_not_integrable() {
        let cfg = QuadratureConfig::default();
        let r = stieltjes_reconstruct(CutPlanePoint::real(2.0).unwrap(), ord(3), &cfg);
        assert!(matches!(r, Err(Error::Quadrature(_))));
    }

    #[test]
    fn tail_shrinks_with_cutoff() {
        let z = CutPlanePoint::real(3.0).unwrap();
        let mut last = f64::INFINITY;
        for t in [50.0, 100.0, 200.0] {
            let cfg = QuadratureConfig {
                cutoff_t: t,
                ..Default::default()
            };
            let r = stieltjes_reconstruct(z, ord(2), &cfg).unwrap();
            assert!(r.tail_estimate.re > 0.0 && r.tail_estimate.re < last);
            assert!(r.residual <= 1e-8);
            last = r.tail_estimate.re;
        }
    }

    #[test]
    fn density_decays_like_inverse_log_squared() {
        let p = fitted_density_decay(ord(2), &QuadratureConfig::default()).unwrap();
        assert!(p.abs() < 0.2, "fitted exponent {p}");
    }
}
