//! Finite distributions stored as JSON: `{"support": [p1, p2, ...]}`.

use std::fs;
use std::path::Path;

use ndigits_core::distributions::DEFAULT_MASS_TOLERANCE;
use ndigits_core::summation::CompensatedSum;
use ndigits_core::Distribution;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CustomDocument {
    pub support: Vec<f64>,
}

impl CustomDocument {
    /// Builds the distribution; the masses must sum to 1 within 1e-12.
    pub fn into_distribution(self) -> Result<Distribution, CliError> {
        if self.support.is_empty() {
            return Err(CliError::Domain("custom support is empty".into()));
        }
        let total: CompensatedSum = self.support.iter().copied().collect();
        if (total.value() - 1.0).abs() > DEFAULT_MASS_TOLERANCE {
            return Err(CliError::Domain(format!(
                "custom support sums to {}, not 1 within {DEFAULT_MASS_TOLERANCE:e}",
                total.value()
            )));
        }
        Ok(Distribution::finite(self.support)?)
    }
}

pub fn parse_custom(text: &str) -> Result<Distribution, CliError> {
    let doc: CustomDocument =
        serde_json::from_str(text).map_err(|e| CliError::Domain(format!("malformed custom distribution: {e}")))?;
    doc.into_distribution()
}

pub fn load_custom(path: &Path) -> Result<Distribution, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_custom(&text)
}
