//! Resource caps shared by every exhaustive procedure in the crate.
//!
//! Exceeding a cap is always an error, never a silent approximation. The
//! defaults can be overridden through the `CESARO_CA_CAPS` environment
//! variable, e.g. `CESARO_CA_CAPS=table_entries=1000000,rkm_length=11`.

use crate::error::{Error, Result};

pub const CAPS_ENV: &str = "CESARO_CA_CAPS";

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Caps {
    /// Entries of a dense local-rule table, |A|^(2r+1).
    pub table_entries: u64,
    /// States created while building one layer-reduced preimage diagram.
    pub diagram_states: u64,
    /// Word length 2(k+m)+1 for R(k,m) enumeration.
    pub rkm_length: usize,
    /// Strip width of the blocking-word abstraction.
    pub strip_width: usize,
    /// Size of one abstract strip set.
    pub strip_states: usize,
    /// Steps of the strip abstraction before giving up.
    pub strip_steps: usize,
    /// Extension pairs enumerated by the exhaustive falsifier.
    pub exhaustive_extensions: u64,
    /// Samples drawn by the randomized falsifier.
    pub random_samples: usize,
    /// Subsets visited by subset constructions.
    pub subset_states: usize,
    /// Steps allowed when searching for an orbit cycle.
    pub orbit_steps: usize,
    /// Words enumerated when listing a language or a word space.
    pub enumeration: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            table_entries: 10_000_000,
            diagram_states: 4_000_000,
            rkm_length: 13,
            strip_width: 12,
            strip_states: 1 << 20,
            strip_steps: 10_000,
            exhaustive_extensions: 1 << 20,
            random_samples: 4096,
            subset_states: 1 << 20,
            orbit_steps: 1 << 20,
            enumeration: 1 << 24,
        }
    }
}

impl Caps {
    /// Defaults with overrides from `CESARO_CA_CAPS`, if set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAPS_ENV) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    /// Applies `key=value` pairs separated by commas or whitespace.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
        {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("cap override `{item}`")))?;
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("cap value `{value}`")))?;
            if value == 0 {
                return Err(Error::InvalidParameter(format!("cap `{key}` must be positive")));
            }
            match key.trim() {
                "table_entries" => self.table_entries = value,
                "diagram_states" => self.diagram_states = value,
                "rkm_length" => self.rkm_length = value as usize,
                "strip_width" => self.strip_width = value as usize,
                "strip_states" => self.strip_states = value as usize,
                "strip_steps" => self.strip_steps = value as usize,
                "exhaustive_extensions" => self.exhaustive_extensions = value,
                "random_samples" => self.random_samples = value as usize,
                "subset_states" => self.subset_states = value as usize,
                "orbit_steps" => self.orbit_steps = value as usize,
                "enumeration" => self.enumeration = value,
                other => {
                    return Err(Error::InvalidParameter(format!("unknown cap `{other}`")))
                }
            }
        }
        Ok(self)
    }
}

/// `base^exp`, saturating at `u64::MAX`.
pub(crate) fn pow_saturating(base: usize, exp: usize) -> u64 {
    let mut acc: u64 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u64);
    }
    acc
}
