//! Exit criteria, run in order. Each prints one `PASS`/`FAIL` line, which
//! includes its runtime budget; the process fails if any criterion does.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use multigamma::foundations::{max_order, pochhammer, southeast_diagonal_sum_exact};
use multigamma::multigamma::{boundary_log_gn, log_gn_at, recurrence_residual};
use multigamma::pick::{
    asymptotic_limit, complete_monotonicity_probe, density_d_n, g_n_stieltjes_reconstruct,
    herglotz_params, pick_grid_scan, stieltjes_log_inverse, stieltjes_reconstruct,
    triple_density_cubic, QuadratureConfig, Region,
};
use multigamma::verify::{run_suite, Status, SuiteConfig};
use multigamma::{Complex64, CutPlanePoint, Order};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ord(n: u32) -> Order {
    Order::new(n).unwrap()
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// Points with `|z| <= radius`, at least `min_abs` from 0 and off the cut.
fn disc_points(seed: u64, count: usize, radius: f64, min_abs: f64) -> Vec<CutPlanePoint> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let rho = radius * r.gen::<f64>().sqrt();
        let theta = r.gen_range(-PI..PI);
        if rho < min_abs {
            continue;
        }
        if let Ok(p) = CutPlanePoint::from_complex(Complex64::from_polar(rho, theta)) {
            out.push(p);
        }
    }
    out
}

/// Half on the positive axis in `[0.01, 100]`, half complex with `|z| <= 100`.
fn sample_points(seed: u64, count: usize) -> Vec<CutPlanePoint> {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let rho = 10f64.powf(r.gen_range(-2.0..2.0));
            if i % 2 == 0 {
                CutPlanePoint::real(rho).unwrap()
            } else {
                CutPlanePoint::from_complex(Complex64::from_polar(rho, r.gen_range(-3.1..3.1)))
                    .unwrap()
            }
        })
        .collect()
}

fn recurrence_fidelity() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        for z in disc_points(11, 1000, 20.0, 0.05) {
            worst = worst.max(recurrence_residual(z, ord(n)).unwrap());
        }
    }
    outcome(worst <= 1e-9, format!("max residual {worst:e} <= 1e-9"))
}

fn normalization() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=max_order() {
        for x in [1.0, 2.0] {
            worst = worst.max(
                log_gn_at(CutPlanePoint::real(x).unwrap(), ord(n))
                    .unwrap()
                    .value
                    .norm(),
            );
        }
    }
    outcome(
        worst <= 1e-12,
        format!(
            "max |log G_n(1)|, |log G_n(2)| for n <= {} is {worst:e}",
            max_order()
        ),
    )
}

fn boundary_phases() -> Outcome {
    let mut exact = true;
    let mut worst: f64 = 0.0;
    for n in 1..=3 {
        let o = ord(n);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        for k in 1..=10u64 {
            let phase = PI * (sign * pochhammer(k as f64, n) / o.factorial());
            for frac in [0.1, 0.5, 0.9] {
                let t = -(k as f64) + frac;
                let b = boundary_log_gn(t, o).unwrap();
                exact &= b.imag_part == phase;
                // limit y -> 0 of log G_n(t + iy) through heights 1e-6 and 2e-6
                let y1 = log_gn_at(CutPlanePoint::new(t, 1e-6).unwrap(), o)
                    .unwrap()
                    .value;
                let y2 = log_gn_at(CutPlanePoint::new(t, 2e-6).unwrap(), o)
                    .unwrap()
                    .value;
                worst = worst.max((2.0 * y1 - y2 - b.value()).norm());
            }
        }
    }
    outcome(
        exact && worst <= 1e-5,
        format!("phases exact: {exact}, max |limit - boundary value| {worst:e} <= 1e-5"),
    )
}

fn density_nonnegativity() -> Outcome {
    let mut r = ChaCha8Rng::seed_from_u64(13);
    let mut min = f64::INFINITY;
    for n in 1..=3 {
        let mut count = 0;
        while count < 10_000 {
            let t: f64 = r.gen_range(-25.0..0.0);
            if t == t.round() {
                continue;
            }
            min = min.min(density_d_n(t, ord(n)).unwrap().value());
            count += 1;
        }
    }
    outcome(min >= -1e-12, format!("min density {min:e} >= -1e-12"))
}

fn stieltjes_reconstruction() -> Outcome {
    let cfg = QuadratureConfig::default();
    assert!(cfg.cutoff_t <= 400.0);
    let mut lines = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        let mut worst: f64 = 0.0;
        let mut error = None;
        for z in sample_points(17, 50) {
            match stieltjes_reconstruct(z, ord(n), &cfg) {
                Ok(r) => worst = worst.max(r.residual),
                Err(e) => {
                    error = Some(e.to_string());
                    break;
                }
            }
        }
        match error {
            Some(e) => {
                ok = false;
                lines.push(format!("n={n}: {e}"));
            }
            None => {
                ok &= worst <= 1e-6;
                lines.push(format!("n={n}: max residual {worst:e}"));
            }
        }
    }
    outcome(ok, lines.join("; "))
}

fn asymptotic_limit_of_order_three() -> Outcome {
    let a = asymptotic_limit(ord(3)).unwrap();
    let gap = (a.samples[2].1 - 1.0 / 6.0).abs();
    let extrapolated = (a.extrapolated - 1.0 / 6.0).abs();
    outcome(a.monotone && gap <= 3e-2 && extrapolated <= 1e-3,
        format!(
            "monotone: {}, |f_3(1e4) - 1/6| = {gap:.6} (<= 3e-2), |extrapolated - 1/6| = {extrapolated:e} (<= 1e-3)",
            a.monotone
        ),
    )
}

fn order_three_cubic() -> Outcome {
    let c = triple_density_cubic().unwrap();
    outcome(
        c.critical_points == 1 && (c.t0 + 1.50615).abs() <= 5e-5 && c.g_t0 > 0.0 && c.g2_t0 > 0.0,
        format!(
            "t0 = {:.9}, g(t0) = {:.6}, g''(t0) = {:.6}",
            c.t0, c.g_t0, c.g2_t0
        ),
    )
}

fn pick_property_scan() -> Outcome {
    let region = Region {
        x0: -10.0,
        x1: 10.0,
        y0: 0.01,
        y1: 10.0,
    };
    let s = pick_grid_scan(ord(3), &region, 200).unwrap();
    outcome(
        s.min_im >= -1e-10,
        format!(
            "min Im f_3 = {:e} at {} over {} points",
            s.min_im, s.at, s.points
        ),
    )
}

fn complete_monotonicity() -> Outcome {
    let grid: Vec<f64> = (0..100)
        .map(|i| 0.5 * 100f64.powf(i as f64 / 99.0))
        .collect();
    let rep = complete_monotonicity_probe(ord(3), 5, &grid).unwrap();
    let detail = rep
        .signs
        .iter()
        .map(|s| {
            format!(
                "m={} min {:.3e} at x={:.3} ({})",
                s.order,
                s.min_signed,
                s.at,
                if s.holds { "ok" } else { "violated" }
            )
        })
        .collect::<Vec<_>>()
        .join("; ");
    outcome(rep.all_hold, detail)
}

fn log_inverse_and_g3() -> Outcome {
    let cfg = QuadratureConfig::default();
    let mut inverse: f64 = 0.0;
    for z in sample_points(19, 20) {
        let want = (z.z() + 1.0).ln().inv();
        inverse = inverse.max((stieltjes_log_inverse(z, &cfg).unwrap() - want).norm());
    }
    let mut g3 = Ok(0.0f64);
    for z in sample_points(23, 20) {
        match g_n_stieltjes_reconstruct(z, ord(3), &cfg) {
            Ok(r) => g3 = g3.map(|w| w.max(r.residual)),
            Err(e) => {
                g3 = Err(e.to_string());
                break;
            }
        }
    }
    let (g3_ok, g3_detail) = match &g3 {
        Ok(w) => (*w <= 1e-5, format!("g_3 max residual {w:e} (<= 1e-5)")),
        Err(e) => (false, format!("g_3: {e}")),
    };
    outcome(
        inverse <= 1e-8 && g3_ok,
        format!("1/Log max error {inverse:e} (<= 1e-8); {g3_detail}"),
    )
}

fn herglotz_linear_term() -> Outcome {
    let p = herglotz_params(ord(3)).unwrap();
    outcome(p.a.abs() <= 1e-4, format!("a = {:e}, b = {}", p.a, p.b))
}

fn order_four_evidence() -> Outcome {
    let cfg = SuiteConfig {
        orders: vec![ord(4)],
        ..Default::default()
    };
    let report = run_suite(&cfg).unwrap();
    let mut found = Vec::new();
    let mut ok = true;
    for name in [
        "pick-property",
        "density-nonnegativity",
        "stieltjes-representation",
    ] {
        match report
            .checks
            .iter()
            .find(|c| c.name == name && c.order == Some(4))
        {
            Some(c) => {
                ok &= c.status == Status::Evidence;
                found.push(format!("{name}: {} ({})", c.status.as_str(), c.detail));
            }
            None => {
                ok = false;
                found.push(format!("{name}: missing"));
            }
        }
    }
    outcome(ok, found.join("; "))
}

fn southeast_diagonal_sums() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=20 {
        for m in 1..=20 {
            let (l, r) = southeast_diagonal_sum_exact(k, m).unwrap();
            if l != r {
                bad.push((k, m));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} mismatches over 1 <= k, m <= 20", bad.len()),
    )
}

type Criterion = (&'static str, u64, fn() -> Outcome);

const CRITERIA: [Criterion; 13] = [
    ("recurrence fidelity", 60, recurrence_fidelity),
    ("normalization", 5, normalization),
    ("boundary phases", 60, boundary_phases),
    ("density nonnegativity", 120, density_nonnegativity),
    ("stieltjes reconstruction", 600, stieltjes_reconstruction),
    ("asymptotic limit", 60, asymptotic_limit_of_order_three),
    ("order-3 density cubic", 5, order_three_cubic),
    ("pick property scan", 120, pick_property_scan),
    ("complete monotonicity", 60, complete_monotonicity),
    (
        "log-inverse kernel and g_3 representation",
        300,
        log_inverse_and_g3,
    ),
    ("herglotz linear term", 60, herglotz_linear_term),
    ("order-4 evidence report", 600, order_four_evidence),
    ("southeast diagonal sums", 1, southeast_diagonal_sums),
];

fn main() {
    let mut failed = 0;
    for (name, budget, run) in CRITERIA {
        let start = Instant::now();
        let out =
            std::panic::catch_unwind(run).unwrap_or_else(|_| outcome(false, "panicked".into()));
        let elapsed = start.elapsed();
        let ok = out.ok && elapsed <= secs(budget);
        if !ok {
            failed += 1;
        }
        println!(
            "{} {name}: {} [{:.2} s of {budget} s]",
            if ok { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        CRITERIA.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
