use std::f64::consts::PI;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::json;

use super::report::fmt17;
use crate::error::{Error, Result};
use crate::foundations::{CutPlanePoint, Order};
use crate::multigamma::{boundary_phase_over_pi, log_gn_at};
use crate::pick::{
    density_d_n, derivative_estimate, f_n_eval, stieltjes_reconstruct, DensityValue,
    QuadratureConfig, Region,
};

/// Writes `bytes` to a temporary file next to `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| Error::Io(e.to_string()))?;
    Ok(())
}

/// CSV table `t,d_value,interval_k,is_singular` of `d_n` at `steps` equally
/// spaced points of `[t_min, t_max]`. Rows at negative integers are flagged
/// and leave `d_value` empty. Returns the number of rows.
pub fn emit_density_table(
    n: Order,
    t_min: f64,
    t_max: f64,
    steps: usize,
    out: &mut dyn Write,
) -> Result<usize> {
    if !(t_min < t_max) || !t_min.is_finite() || !t_max.is_finite() {
        return Err(Error::Config(format!("range [{t_min}, {t_max}] is empty")));
    }
    if steps < 2 {
        return Err(Error::Config(format!("steps {steps} must be at least 2")));
    }
    writeln!(out, "t,d_value,interval_k,is_singular")?;
    for i in 0..steps {
        let t = if i + 1 == steps {
            t_max
        } else {
            t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64
        };
        match density_d_n(t, n) {
            Ok(DensityValue::Vanishing) => writeln!(out, "{},{},0,false", fmt17(t), fmt17(0.0))?,
            Ok(DensityValue::Support(s)) => {
                writeln!(out, "{},{},{},false", fmt17(t), fmt17(s.value), s.k)?
            }
            Err(Error::Singularity { .. }) => writeln!(out, "{},,{},true", fmt17(t), (-t).round())?,
            Err(e) => return Err(e),
        }
    }
    Ok(steps)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    ImFHeatmap,
    ReconstructionResidual,
    Monotonicity,
    BoundaryPhase,
}

impl PlotKind {
    pub fn name(&self) -> &'static str {
        match self {
            PlotKind::ImFHeatmap => "im_f_heatmap",
            PlotKind::ReconstructionResidual => "reconstruction_residual",
            PlotKind::Monotonicity => "monotonicity",
            PlotKind::BoundaryPhase => "boundary_phase",
        }
    }

    fn anchor(&self) -> &'static str {
        match self {
            PlotKind::ImFHeatmap => "pick-property",
            PlotKind::ReconstructionResidual => "stieltjes-representation",
            PlotKind::Monotonicity => "complete-monotonicity",
            PlotKind::BoundaryPhase => "boundary-phase",
        }
    }
}

impl FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            PlotKind::ImFHeatmap,
            PlotKind::ReconstructionResidual,
            PlotKind::Monotonicity,
            PlotKind::BoundaryPhase,
        ]
        .into_iter()
        .find(|k| k.name() == s)
        .ok_or_else(|| Error::Config(format!("unknown plot kind {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotOptions {
    pub n: Order,
    /// Heatmap region and points per side.
    pub region: Region,
    pub resolution: usize,
    pub quadrature: QuadratureConfig,
    /// Evaluation point and cutoffs of the residual plot.
    pub z: CutPlanePoint,
    pub cutoffs: Vec<f64>,
    /// Highest derivative of the monotonicity plot.
    pub max_derivative: u32,
    /// Intervals `(-k, -k+1)`, `k = 1..=k_max`, of the phase plot.
    pub k_max: u64,
}

impl PlotOptions {
    pub fn new(n: Order) -> Self {
        PlotOptions {
            n,
            region: Region::default(),
            resolution: 50,
            quadrature: QuadratureConfig::default(),
            z: CutPlanePoint::real(2.0).expect("2 is off the cut"),
            cutoffs: vec![50.0, 100.0, 200.0],
            max_derivative: 5,
            k_max: 10,
        }
    }
}

fn heatmap(o: &PlotOptions, notes: &mut Vec<String>) -> Result<(Vec<&'static str>, String)> {
    o.region.validate()?;
    if o.resolution < 2 {
        return Err(Error::Config("resolution must be at least 2".into()));
    }
    let r = &o.region;
    let res = o.resolution;
    let at = |lo: f64, hi: f64, i: usize| lo + (hi - lo) * i as f64 / (res - 1) as f64;
    let rows: Vec<String> = (0..res)
        .into_par_iter()
        .map(|j| -> Result<String> {
            let y = at(r.y0, r.y1, j);
            let mut s = String::new();
            for i in 0..res {
                let x = at(r.x0, r.x1, i);
                let v = f_n_eval(CutPlanePoint::new(x, y)?, o.n)?.im;
                s.push_str(&format!("{} {} {}\n", fmt17(x), fmt17(y), fmt17(v)));
            }
            Ok(s)
        })
        .collect::<Result<_>>()?;
    let min = rows
        .iter()
        .flat_map(|b| b.lines())
        .filter_map(|l| l.split(' ').nth(2)?.parse::<f64>().ok())
        .fold(f64::INFINITY, f64::min);
    notes.push(format!("min Im f = {}", fmt17(min)));
    Ok((vec!["x", "y", "im_f"], rows.join("\n")))
}

fn residuals(o: &PlotOptions, notes: &mut Vec<String>) -> Result<(Vec<&'static str>, String)> {
    let mut s = String::new();
    for &t in &o.cutoffs {
        let cfg = QuadratureConfig {
            cutoff_t: t,
            ..o.quadrature
        };
        match stieltjes_reconstruct(o.z, o.n, &cfg) {
            Ok(r) => s.push_str(&format!(
                "{} {} {} {}\n",
                fmt17(t),
                fmt17(r.residual),
                fmt17(r.tail_estimate.re),
                fmt17(r.tail_estimate.im)
            )),
            Err(e @ (Error::Quadrature(_) | Error::Config(_))) => {
                notes.push(format!("cutoff {t}: {e}"));
                s.push_str(&format!("{} NaN NaN NaN\n", fmt17(t)));
            }
            Err(e) => return Err(e),
        }
    }
    notes.push(format!("z = {}", o.z.z()));
    Ok((vec!["cutoff", "residual", "tail_re", "tail_im"], s))
}

fn monotonicity(o: &PlotOptions) -> Result<(Vec<&'static str>, String)> {
    const COLS: [&str; 9] = ["x", "d1", "d2", "d3", "d4", "d5", "d6", "d7", "d8"];
    if o.max_derivative == 0 || o.max_derivative > 8 {
        return Err(Error::Config(format!(
            "derivative order {} outside 1..=8",
            o.max_derivative
        )));
    }
    let rows: Vec<String> = (0..100)
        .into_par_iter()
        .map(|i| -> Result<String> {
            let x = 0.5 * 100f64.powf(i as f64 / 99.0);
            let mut s = fmt17(x);
            for m in 1..=o.max_derivative {
                s.push(' ');
                s.push_str(&fmt17(derivative_estimate(o.n, x, m)?));
            }
            s.push('\n');
            Ok(s)
        })
        .collect::<Result<_>>()?;
    Ok((COLS[..=o.max_derivative as usize].to_vec(), rows.concat()))
}

fn phases(o: &PlotOptions) -> Result<(Vec<&'static str>, String)> {
    let mut s = String::new();
    for k in 1..=o.k_max {
        let t = -(k as f64) + 0.5;
        let numeric = log_gn_at(CutPlanePoint::new(t, 1e-6)?, o.n)?.value.im / PI;
        s.push_str(&format!(
            "{} {} {}\n",
            k,
            fmt17(boundary_phase_over_pi(o.n, k)?),
            fmt17(numeric)
        ));
    }
    Ok((vec!["k", "phase_over_pi", "numeric_over_pi"], s))
}

/// Writes whitespace separated columns to `path` and a JSON description of
/// them to `path.json`; returns the sidecar path.
pub fn emit_plot_data(kind: PlotKind, opts: &PlotOptions, path: &Path) -> Result<PathBuf> {
    let mut notes = Vec::new();
    let (columns, body) = match kind {
        PlotKind::ImFHeatmap => heatmap(opts, &mut notes)?,
        PlotKind::ReconstructionResidual => residuals(opts, &mut notes)?,
        PlotKind::Monotonicity => monotonicity(opts)?,
        PlotKind::BoundaryPhase => phases(opts)?,
    };
    let data = format!("# {}\n{}", columns.join(" "), body);
    write_atomic(path, data.as_bytes())?;
    let sidecar = json!({
        "kind": kind.name(),
        "order": opts.n.get(),
        "columns": columns,
        "anchor": kind.anchor(),
        "notes": notes,
    });
    let mut side = path.as_os_str().to_owned();
    side.push(".json");
    let side = PathBuf::from(side);
    write_atomic(
        &side,
        serde_json::to_string_pretty(&sidecar)
            .expect("json value")
            .as_bytes(),
    )?;
    Ok(side)
}
