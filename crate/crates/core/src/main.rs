use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use multigamma::multigamma::log_gn_at;
use multigamma::pick::{f_n_eval, g_n_log_at, QuadratureConfig, Region};
use multigamma::verify::{
    emit_density_table, emit_plot_data, fmt17, run_suite, write_atomic, OutputFormat, PlotKind,
    PlotOptions, SuiteConfig,
};
use multigamma::{CutPlanePoint, Error, Order};

#[derive(Parser)]
#[command(
    name = "multigamma",
    version,
    about = "Multiple gamma functions and Stieltjes density checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    #[value(name = "logGn")]
    LogGn,
    #[value(name = "fn")]
    Fn,
    #[value(name = "gn")]
    Gn,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite.
    Verify {
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        orders: Vec<u32>,
        /// x0,x1,y0,y1 of the upper half plane scan.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        region: Option<Vec<f64>>,
        #[arg(long, default_value_t = 200)]
        resolution: usize,
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        #[arg(long, default_value_t = 399.5)]
        cutoff: f64,
        #[arg(long, default_value_t = 20_240_101)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the density d_n on an interval.
    Density {
        #[arg(long)]
        n: u32,
        /// A,B
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        range: Vec<f64>,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write plot-ready columns and a JSON sidecar.
    Plot {
        /// im_f_heatmap, reconstruction_residual, monotonicity or boundary_phase.
        #[arg(long)]
        kind: String,
        #[arg(long, default_value_t = 3)]
        n: u32,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        region: Option<Vec<f64>>,
        #[arg(long, default_value_t = 50)]
        resolution: usize,
        /// Evaluation point RE,IM of the residual plot.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',')]
        cutoffs: Option<Vec<f64>>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Evaluate log G_n(z), f_n(z) or log g_n(z).
    Eval {
        #[arg(long = "fn", value_enum)]
        function: Function,
        #[arg(long)]
        n: u32,
        /// RE,IM
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<f64>,
    },
}

fn values<const N: usize>(name: &str, v: &[f64]) -> multigamma::Result<[f64; N]> {
    v.try_into().map_err(|_| {
        Error::Config(format!(
            "--{name} takes {N} comma separated numbers, got {}",
            v.len()
        ))
    })
}

fn region(v: Option<Vec<f64>>) -> multigamma::Result<Region> {
    match v {
        Some(v) => {
            let [x0, x1, y0, y1] = values("region", &v)?;
            Ok(Region { x0, x1, y0, y1 })
        }
        None => Ok(Region::default()),
    }
}

fn point(v: &[f64]) -> multigamma::Result<CutPlanePoint> {
    let [re, im] = values("z", v)?;
    CutPlanePoint::new(re, im)
}

fn output(out: Option<PathBuf>, text: &str) -> multigamma::Result<()> {
    match out {
        Some(p) => write_atomic(&p, text.as_bytes()),
        None => Ok(std::io::stdout().write_all(text.as_bytes())?),
    }
}

fn run(cmd: Command) -> multigamma::Result<u8> {
    match cmd {
        Command::Verify {
            orders,
            region: r,
            resolution,
            tolerance,
            cutoff,
            seed,
            format,
            out,
        } => {
            let cfg = SuiteConfig {
                orders: orders
                    .into_iter()
                    .map(Order::new)
                    .collect::<multigamma::Result<_>>()?,
                region: region(r)?,
                grid_resolution: resolution,
                quadrature: QuadratureConfig {
                    tolerance,
                    cutoff_t: cutoff,
                    ..Default::default()
                },
                output_format: match format {
                    Format::Csv => OutputFormat::Csv,
                    Format::Json => OutputFormat::Json,
                },
                seed,
            };
            let report = run_suite(&cfg)?;
            let text = match cfg.output_format {
                OutputFormat::Csv => report.to_csv(),
                OutputFormat::Json => report.to_json() + "\n",
            };
            output(out, &text)?;
            Ok(report.exit_code() as u8)
        }
        Command::Density {
            n,
            range,
            steps,
            out,
        } => {
            let [a, b] = values("range", &range)?;
            let mut buf = Vec::new();
            emit_density_table(Order::new(n)?, a, b, steps, &mut buf)?;
            output(out, &String::from_utf8(buf).expect("ascii table"))?;
            Ok(0)
        }
        Command::Plot {
            kind,
            n,
            region: r,
            resolution,
            z,
            cutoffs,
            out,
        } => {
            let mut opts = PlotOptions::new(Order::new(n)?);
            opts.region = region(r)?;
            opts.resolution = resolution;
            if let Some(z) = z {
                opts.z = point(&z)?;
            }
            if let Some(c) = cutoffs {
                opts.cutoffs = c;
            }
            let kind: PlotKind = kind.parse()?;
            let side = emit_plot_data(kind, &opts, &out)?;
            eprintln!("wrote {} and {}", out.display(), side.display());
            Ok(0)
        }
        Command::Eval { function, n, z } => {
            let n = Order::new(n)?;
            let z = point(&z)?;
            let v = match function {
                Function::LogGn => log_gn_at(z, n)?.value,
                Function::Fn => f_n_eval(z, n)?,
                Function::Gn => g_n_log_at(z, n)?,
            };
            println!("{} {}", fmt17(v.re), fmt17(v.im));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Config(_) | Error::InvalidOrder { .. } | Error::Domain { .. } => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
