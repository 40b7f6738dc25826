//! Search caps and the randomized-check seed, overridable from the
//! environment (`YBE_LIMITS`, `YBE_SEED`).

use thiserror::Error;

pub const DEFAULT_SEED: u64 = 0x5eed_2015;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest cycle set for which congruences are enumerated.
    pub congruence_size: usize,
    /// Largest permutation group `closure` will build.
    pub group_elements: usize,
    /// Largest group order accepted by the exact isomorphism search.
    pub group_iso_order: usize,
    /// Bound on `(m!)^n` for the cohomology search.
    pub cohomology_leaves: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            congruence_size: 12,
            group_elements: 1_000_000,
            group_iso_order: 64,
            cohomology_leaves: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitsError {
    #[error("malformed limit {0:?}, expected key=value")]
    Malformed(String),
    #[error("unknown limit key {0:?}")]
    UnknownKey(String),
    #[error("bad value for {key}: {value:?}")]
    BadValue { key: String, value: String },
}

impl Limits {
    /// Applies `key=value` pairs separated by commas or whitespace on top of
    /// the defaults. Keys: `congruence_size`, `group_elements`,
    /// `group_iso_order`, `cohomology_leaves`.
    pub fn parse(spec: &str) -> Result<Limits, LimitsError> {
        let mut limits = Limits::default();
        for item in spec
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
        {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| LimitsError::Malformed(item.to_string()))?;
            let bad = || LimitsError::BadValue {
                key: key.to_string(),
                value: value.to_string(),
            };
            match key {
                "congruence_size" => limits.congruence_size = value.parse().map_err(|_| bad())?,
                "group_elements" => limits.group_elements = value.parse().map_err(|_| bad())?,
                "group_iso_order" => limits.group_iso_order = value.parse().map_err(|_| bad())?,
                "cohomology_leaves" => {
                    limits.cohomology_leaves = value.parse().map_err(|_| bad())?
                }
                _ => return Err(LimitsError::UnknownKey(key.to_string())),
            }
        }
        Ok(limits)
    }

    pub fn from_env() -> Result<Limits, LimitsError> {
        match std::env::var("YBE_LIMITS") {
            Ok(spec) => Limits::parse(&spec),
            Err(_) => Ok(Limits::default()),
        }
    }
}

/// Seed for randomized checks: `YBE_SEED` if set and numeric, else the default.
pub fn seed_from_env() -> u64 {
    std::env::var("YBE_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        let l = Limits::parse("congruence_size=16, cohomology_leaves=10").unwrap();
        assert_eq!(l.congruence_size, 16);
        assert_eq!(l.cohomology_leaves, 10);
        assert_eq!(l.group_elements, Limits::default().group_elements);
        assert_eq!(Limits::parse("").unwrap(), Limits::default());
        assert!(matches!(Limits::parse("nope=1"), Err(LimitsError::UnknownKey(_))));
        assert!(matches!(Limits::parse("congruence_size"), Err(LimitsError::Malformed(_))));
        assert!(matches!(
            Limits::parse("group_elements=x"),
            Err(LimitsError::BadValue { .. })
        ));
    }
}
