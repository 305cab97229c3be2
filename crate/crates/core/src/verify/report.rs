use serde::Serialize;

use super::config::SuiteConfig;
use crate::error::{Error, Result};

/// Identifiers of the mathematical statements a check can refer to.
pub const ANCHORS: &[&str] = &[
    "recurrence",
    "normalization",
    "boundary-phase",
    "density-boundary-identity",
    "density-nonnegativity",
    "stieltjes-representation",
    "asymptotic-limit",
    "order3-density-cubic",
    "pick-property",
    "complete-monotonicity",
    "log-inverse-stieltjes",
    "unit-ball-stieltjes",
    "herglotz-linear-term",
    "vanishing-point-mass",
    "southeast-diagonal-sum",
    "pick-conjecture",
];

pub fn is_known_anchor(anchor: &str) -> bool {
    ANCHORS.contains(&anchor)
}

/// `x` with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Evidence,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Evidence => "evidence",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub anchor: String,
    pub order: Option<u32>,
    pub status: Status,
    /// Worst observed deviation; absent when the check could not be evaluated.
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub runtime_ms: u64,
    pub detail: String,
}

impl CheckResult {
    pub fn new(
        name: &str,
        anchor: &str,
        order: Option<u32>,
        status: Status,
        residual: Option<f64>,
        tolerance: f64,
    ) -> Result<Self> {
        if !is_known_anchor(anchor) {
            return Err(Error::Construction {
                n: order.unwrap_or(0),
                reason: format!("unknown anchor {anchor:?} for check {name}"),
            });
        }
        Ok(CheckResult {
            name: name.to_string(),
            anchor: anchor.to_string(),
            order,
            status,
            residual,
            tolerance,
            runtime_ms: 0,
            detail: String::new(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub version: String,
    pub seed: u64,
    pub config_hash: String,
}

impl Metadata {
    pub fn for_config(cfg: &SuiteConfig) -> Self {
        Metadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: cfg.seed,
            config_hash: cfg.hash(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub metadata: Metadata,
}

impl VerificationReport {
    /// `0` when no proved-case check failed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out =
            String::from("name,anchor,order,status,residual,tolerance,runtime_ms,detail\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},\"{}\"\n",
                c.name,
                c.anchor,
                c.order.map(|n| n.to_string()).unwrap_or_default(),
                c.status.as_str(),
                c.residual.map(fmt17).unwrap_or_default(),
                fmt17(c.tolerance),
                c.runtime_ms,
                c.detail.replace('"', "\"\""),
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_anchor_is_rejected() {
        assert!(
            CheckResult::new("x", "recurrence", Some(1), Status::Pass, Some(0.0), 1e-9).is_ok()
        );
        let e = CheckResult::new("x", "no-such-anchor", Some(1), Status::Pass, None, 1e-9);
        assert!(matches!(e, Err(Error::Construction { .. })));
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(fmt17(0.1), "1.0000000000000001e-1");
        assert_eq!(fmt17(0.1).parse::<f64>().unwrap(), 0.1);
        assert_eq!(fmt17(-2.0), "-2.0000000000000000e0");
    }

    #[test]
    fn csv_quotes_detail() {
        let mut c = CheckResult::new("a", "normalization", None, Status::Fail, None, 1.0).unwrap();
        c.detail = "say \"hi\", twice".into();
        let r = VerificationReport {
            checks: vec![c],
            metadata: Metadata {
                version: "0".into(),
                seed: 1,
                config_hash: String::new(),
            },
        };
        assert!(r.to_csv().ends_with(
            "a,normalization,,fail,,1.0000000000000000e0,0,\"say \"\"hi\"\", twice\"\n"
        ));
        assert_eq!(r.exit_code(), 1);
    }
}
