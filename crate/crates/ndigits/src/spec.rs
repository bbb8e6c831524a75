//! One-token specs for distributions, frequency targets and digit sets.

use std::path::Path;

use ndigits_core::{Distribution, FrequencyTarget};

use crate::custom::load_custom;
use crate::CliError;

fn number(text: &str, what: &str) -> Result<f64, CliError> {
    text.trim().parse::<f64>().map_err(|_| CliError::usage(format!("{what}: `{text}` is not a number")))
}

fn integer(text: &str, what: &str) -> Result<u64, CliError> {
    text.trim().parse::<u64>().map_err(|_| CliError::usage(format!("{what}: `{text}` is not a non-negative integer")))
}

/// `geometric:<p>`, `poisson:<lambda>`, `zeta:<s>` or `custom:<path.json>`.
pub fn parse_distribution(spec: &str) -> Result<Distribution, CliError> {
    let (kind, arg) = spec
        .split_once(':')
        .ok_or_else(|| CliError::usage(format!("distribution spec `{spec}` must look like family:parameter")))?;
    let dist = match kind.trim() {
        "geometric" => Distribution::geometric(number(arg, "geometric p")?)?,
        "poisson" => Distribution::poisson(number(arg, "poisson lambda")?)?,
        "zeta" => Distribution::zeta(number(arg, "zeta s")?)?,
        "custom" => load_custom(Path::new(arg))?,
        other => return Err(CliError::usage(format!("unknown distribution family `{other}`"))),
    };
    Ok(dist)
}

/// `uniform:<n>`, `pointmass:<n>`, `self`, or a comma list of frequencies
/// (optionally prefixed `list:`).
pub fn parse_target(spec: &str, dist: &Distribution) -> Result<FrequencyTarget, CliError> {
    let spec = spec.trim();
    if spec == "self" {
        return Ok(FrequencyTarget::matching(dist));
    }
    if let Some(n) = spec.strip_prefix("uniform:") {
        return Ok(FrequencyTarget::uniform(integer(n, "uniform n")?)?);
    }
    if let Some(n) = spec.strip_prefix("pointmass:") {
        return Ok(FrequencyTarget::point_mass(integer(n, "pointmass digit")?)?);
    }
    let list = spec.strip_prefix("list:").unwrap_or(spec);
    if list.is_empty() || list.contains(':') {
        return Err(CliError::usage(format!("unrecognised frequency spec `{spec}`")));
    }
    let q = list.split(',').map(|t| number(t, "frequency")).collect::<Result<Vec<_>, _>>()?;
    Ok(FrequencyTarget::finite(q)?)
}

/// Comma-separated positive digits, e.g. `1,2,5`.
pub fn parse_digit_set(spec: &str) -> Result<Vec<u64>, CliError> {
    let digits = spec.split(',').map(|t| integer(t, "digit")).collect::<Result<Vec<_>, _>>()?;
    if digits.contains(&0) {
        return Err(CliError::Domain("digits must be positive integers".into()));
    }
    Ok(digits)
}
