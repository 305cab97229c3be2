use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::foundations::Order;
use crate::pick::{QuadratureConfig, Region};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            _ => Err(Error::Config(format!("unknown format {s:?} (csv or json)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub orders: Vec<Order>,
    pub region: Region,
    pub grid_resolution: usize,
    pub quadrature: QuadratureConfig,
    pub output_format: OutputFormat,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            orders: [1, 2, 3]
                .iter()
                .map(|&n| Order::new(n).expect("orders 1..=3 are always valid"))
                .collect(),
            region: Region::default(),
            grid_resolution: 200,
            quadrature: QuadratureConfig::default(),
            output_format: OutputFormat::Json,
            seed: 20_240_101,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.orders.is_empty() {
            return Err(Error::Config("no orders given".into()));
        }
        if self.grid_resolution < 16 {
            return Err(Error::Config(format!(
                "resolution {} must be at least 16",
                self.grid_resolution
            )));
        }
        self.region.validate()?;
        self.quadrature.validate()
    }

    /// Hex SHA-256 of the JSON form of the configuration.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("configuration serializes");
        Sha256::digest(&json)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
