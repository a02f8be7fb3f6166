//! `key=value,key=value` cap overrides.

use qst_core::Caps;

use crate::error::CliError;

/// Name of the environment variable holding default cap overrides.
pub const CAPS_ENV: &str = "QST_CAPS";

pub const CAP_KEYS: [&str; 6] = [
    "lattice_elements",
    "table_elements",
    "subalgebras",
    "subobject_bits",
    "generated_elements",
    "valuations",
];

/// Applies overrides such as `subobject_bits=24,valuations=100000`.
pub fn apply_overrides(mut caps: Caps, text: &str) -> Result<Caps, CliError> {
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::input(format!("cap override `{item}` is not key=value")))?;
        let value: u64 = value.trim().parse().map_err(|_| {
            CliError::input(format!(
                "cap `{key}` needs a nonnegative integer, got `{value}`"
            ))
        })?;
        let small = || {
            usize::try_from(value).map_err(|_| CliError::input(format!("cap `{key}` too large")))
        };
        match key.trim() {
            "lattice_elements" => caps.lattice_elements = small()?,
            "table_elements" => caps.table_elements = small()?,
            "subalgebras" => caps.subalgebras = small()?,
            "subobject_bits" => caps.subobject_bits = small()?,
            "generated_elements" => caps.generated_elements = small()?,
            "valuations" => caps.valuations = value,
            other => {
                return Err(CliError::input(format!(
                    "unknown cap `{other}`; expected one of {}",
                    CAP_KEYS.join(", ")
                )))
            }
        }
    }
    Ok(caps)
}

/// Defaults, then the environment override, then the command line.
pub fn resolve(env: Option<&str>, flag: Option<&str>) -> Result<Caps, CliError> {
    let mut caps = Caps::default();
    if let Some(e) = env {
        caps = apply_overrides(caps, e)?;
    }
    if let Some(f) = flag {
        caps = apply_overrides(caps, f)?;
    }
    Ok(caps)
}
