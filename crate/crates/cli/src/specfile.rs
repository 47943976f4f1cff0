//! Constraint specs for `spin-search`, stored as TOML:
//!
//! ```toml
//! mode = "self"                 # or "conjugate"
//! pairs = [[1, 0, 0, 0],        # λ1, λ2, μ1, μ2
//!          [0, 0, 1, 0]]
//! charge_filter = "1"           # optional q̃, a rational
//! class_filter = "completely_degenerate"   # optional
//! ```

use serde::Deserialize;
use w3cft::charge::FieldClass;
use w3cft::fusion::FusionMode;
use w3cft::rational::parse_rational;
use w3cft::sl3::Weight;
use w3cft::spin::ConstraintSpec;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    mode: String,
    pairs: Vec<[i64; 4]>,
    charge_filter: Option<toml::Value>,
    class_filter: Option<String>,
}

pub fn parse_spec(text: &str) -> Result<ConstraintSpec, CliError> {
    let raw: RawSpec =
        toml::from_str(text).map_err(|e| CliError::Usage(format!("malformed spec file: {e}")))?;
    let mode = FusionMode::parse(&raw.mode)?;
    let pairs = raw
        .pairs
        .iter()
        .map(|[a, b, c, d]| (Weight::int(*a, *b), Weight::int(*c, *d)))
        .collect();
    let charge_filter = match raw.charge_filter {
        None => None,
        Some(toml::Value::Integer(n)) => Some(w3cft::rational::int(n)),
        Some(toml::Value::String(s)) => Some(parse_rational(&s)?),
        Some(other) => {
            return Err(CliError::Usage(format!(
                "charge_filter must be an integer or a \"num/den\" string, got {other}"
            )))
        }
    };
    let class_filter = raw
        .class_filter
        .as_deref()
        .map(FieldClass::parse)
        .transpose()?;
    let spec = ConstraintSpec {
        rep_pairs: pairs,
        mode,
        charge_filter,
        class_filter,
    };
    spec.validate()?;
    Ok(spec)
}
