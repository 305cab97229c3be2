//! Verification suite, reports, density tables and plot data.

mod config;
mod report;
mod suite;
mod tables;

pub use config::{OutputFormat, SuiteConfig};
pub use report::{
    fmt17, is_known_anchor, CheckResult, Metadata, Status, VerificationReport, ANCHORS,
};
pub use suite::{run_suite, status_class, StatusClass};
pub use tables::{emit_density_table, emit_plot_data, write_atomic, PlotKind, PlotOptions};
