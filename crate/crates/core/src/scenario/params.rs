//! Global model parameters and their textual `key = value` form.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Names of the parameters accepted in scenario files and on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamKey {
    KS,
    KP,
    KW,
    R,
    Mu,
    Seed,
    MaxSteps,
}

impl ParamKey {
    /// Canonical order, used when serializing.
    pub const ALL: [ParamKey; 7] = [
        ParamKey::KS,
        ParamKey::KP,
        ParamKey::KW,
        ParamKey::R,
        ParamKey::Mu,
        ParamKey::Seed,
        ParamKey::MaxSteps,
    ];

    pub const fn as_str(self) -> &'static str {
        match self {
            ParamKey::KS => "k_S",
            ParamKey::KP => "k_P",
            ParamKey::KW => "k_W",
            ParamKey::R => "r",
            ParamKey::Mu => "mu",
            ParamKey::Seed => "seed",
            ParamKey::MaxSteps => "max_steps",
        }
    }
}

impl fmt::Display for ParamKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ParamKey {
    type Err = ParamError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ParamKey::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| ParamError::UnknownKey(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("unknown parameter `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`: {reason}")]
    InvalidValue {
        key: ParamKey,
        value: String,
        reason: &'static str,
    },
    #[error("missing required parameter `{0}`")]
    Missing(ParamKey),
}

/// Sensitivity parameters, visibility radius, friction and run controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Drive toward the exit along the static field.
    pub k_s: f64,
    /// Aversion to crowded directions.
    pub k_p: f64,
    /// Aversion to walls ahead.
    pub k_w: f64,
    /// Visibility radius in cells.
    pub r: u32,
    /// Probability that a contested cell stays empty.
    pub mu: f64,
    pub seed: u64,
    pub max_steps: u64,
}

impl ModelParams {
    /// Parses and range-checks one value, then stores it.
    pub fn set(&mut self, key: ParamKey, value: &str) -> Result<(), ParamError> {
        let value = value.trim();
        let invalid = |reason| ParamError::InvalidValue {
            key,
            value: value.to_string(),
            reason,
        };
        match key {
            ParamKey::KS | ParamKey::KP | ParamKey::KW => {
                let v: f64 = value.parse().map_err(|_| invalid("not a number"))?;
                if !v.is_finite() || v < 0.0 {
                    return Err(invalid("must be a finite non-negative number"));
                }
                match key {
                    ParamKey::KS => self.k_s = v,
                    ParamKey::KP => self.k_p = v,
                    _ => self.k_w = v,
                }
            }
            ParamKey::R => {
                let v: u32 = value.parse().map_err(|_| invalid("not a non-negative integer"))?;
                if v == 0 {
                    return Err(invalid("must be at least 1"));
                }
                self.r = v;
            }
            ParamKey::Mu => {
                let v: f64 = value.parse().map_err(|_| invalid("not a number"))?;
                if !(0.0..=1.0).contains(&v) {
                    return Err(invalid("must lie in [0, 1]"));
                }
                self.mu = v;
            }
            ParamKey::Seed => {
                self.seed = value.parse().map_err(|_| invalid("not a 64-bit unsigned integer"))?;
            }
            ParamKey::MaxSteps => {
                let v: u64 = value.parse().map_err(|_| invalid("not a non-negative integer"))?;
                if v == 0 {
                    return Err(invalid("must be at least 1"));
                }
                self.max_steps = v;
            }
        }
        Ok(())
    }

    /// The value of `key` formatted the way `set` reads it back.
    pub fn get(&self, key: ParamKey) -> String {
        match key {
            ParamKey::KS => format_real(self.k_s),
            ParamKey::KP => format_real(self.k_p),
            ParamKey::KW => format_real(self.k_w),
            ParamKey::R => self.r.to_string(),
            ParamKey::Mu => format_real(self.mu),
            ParamKey::Seed => self.seed.to_string(),
            ParamKey::MaxSteps => self.max_steps.to_string(),
        }
    }

    /// Soft constraints: the crowd and wall sensitivities are expected to be
    /// at least the exit drive. Violations are allowed but reported.
    pub fn warnings(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.k_p < self.k_s {
            out.push(format!(
                "k_P = {} is below k_S = {}; crowd avoidance will be weaker than the exit drive",
                self.get(ParamKey::KP),
                self.get(ParamKey::KS)
            ));
        }
        if self.k_w < self.k_s {
            out.push(format!(
                "k_W = {} is below k_S = {}; wall avoidance will be weaker than the exit drive",
                self.get(ParamKey::KW),
                self.get(ParamKey::KS)
            ));
        }
        out
    }
}

/// Shortest decimal that round-trips through `f64::from_str`.
fn format_real(v: f64) -> String {
    format!("{v:?}")
}

/// Collects `key = value` pairs until every key is present.
#[derive(Debug, Default)]
pub(crate) struct ParamsBuilder {
    params: Option<ModelParams>,
    seen: [bool; 7],
}

impl ParamsBuilder {
    pub fn set(&mut self, key: ParamKey, value: &str) -> Result<(), ParamError> {
        let params = self.params.get_or_insert(ModelParams {
            k_s: 0.0,
            k_p: 0.0,
            k_w: 0.0,
            r: 1,
            mu: 0.0,
            seed: 0,
            max_steps: 1,
        });
        params.set(key, value)?;
        self.seen[key_slot(key)] = true;
        Ok(())
    }

    pub fn seen(&self, key: ParamKey) -> bool {
        self.seen[key_slot(key)]
    }

    pub fn finish(self) -> Result<ModelParams, ParamError> {
        if let Some(missing) = ParamKey::ALL.into_iter().find(|k| !self.seen(*k)) {
            return Err(ParamError::Missing(missing));
        }
        Ok(self.params.expect("all keys seen"))
    }
}

fn key_slot(key: ParamKey) -> usize {
    ParamKey::ALL.iter().position(|k| *k == key).unwrap()
}
