//! Pipeline configuration.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cone::ConeOptions;
use crate::graphmap::DEFAULT_PATH_CAP;
use crate::numberfield::FieldOptions;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{0} must be positive")]
    NotPositive(&'static str),
    #[error("{cap} must be at least {start}")]
    CapBelowStart { cap: &'static str, start: &'static str },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Working precision in bits for root isolation.
    pub precision: u64,
    pub degree_cap: usize,
    /// Largest power tried when looking for a Perron power.
    pub n_max: u32,
    pub cone_scale_start: u64,
    pub cone_scale_cap: u64,
    pub polygon_k: usize,
    pub p_cap: u64,
    pub enumeration_cap: u64,
    pub path_cap: u64,
}

impl Default for Config {
    fn default() -> Self {
        let cone = ConeOptions::default();
        Config {
            precision: 256,
            degree_cap: 8,
            n_max: 64,
            cone_scale_start: cone.scale_start,
            cone_scale_cap: cone.scale_cap,
            polygon_k: cone.polygon_k,
            p_cap: 10_000,
            enumeration_cap: 1_000_000,
            path_cap: DEFAULT_PATH_CAP,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = [
            ("precision", self.precision),
            ("degree_cap", self.degree_cap as u64),
            ("n_max", u64::from(self.n_max)),
            ("cone_scale_start", self.cone_scale_start),
            ("cone_scale_cap", self.cone_scale_cap),
            ("polygon_k", self.polygon_k as u64),
            ("p_cap", self.p_cap),
            ("enumeration_cap", self.enumeration_cap),
            ("path_cap", self.path_cap),
        ];
        if let Some((name, _)) = positive.iter().find(|(_, v)| *v == 0) {
            return Err(ConfigError::NotPositive(name));
        }
        if self.cone_scale_cap < self.cone_scale_start {
            return Err(ConfigError::CapBelowStart {
                cap: "cone_scale_cap",
                start: "cone_scale_start",
            });
        }
        Ok(())
    }

    pub fn field_options(&self) -> FieldOptions {
        FieldOptions {
            degree_cap: self.degree_cap,
            n_max: self.n_max,
            ..FieldOptions::with_precision(self.precision)
        }
    }

    pub fn cone_options(&self) -> ConeOptions {
        ConeOptions {
            scale_start: self.cone_scale_start,
            scale_cap: self.cone_scale_cap,
            polygon_k: self.polygon_k,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let c = Config::default();
        assert!(c.validate().is_ok());
        assert_eq!((c.precision, c.degree_cap, c.n_max), (256, 8, 64));
        assert_eq!((c.p_cap, c.enumeration_cap, c.path_cap), (10_000, 1_000_000, 10_000_000));
        let bad = Config {
            cone_scale_start: 100,
            cone_scale_cap: 10,
            ..Config::default()
        };
        assert!(matches!(bad.validate(), Err(ConfigError::CapBelowStart { .. })));
        let zero = Config {
            p_cap: 0,
            ..Config::default()
        };
        assert_eq!(zero.validate(), Err(ConfigError::NotPositive("p_cap")));
    }

    #[test]
    fn partial_documents_use_defaults() {
        let c: Config = serde_json::from_str(r#"{"precision": 128}"#).unwrap();
        assert_eq!(c.precision, 128);
        assert_eq!(c.n_max, 64);
        assert!(serde_json::from_str::<Config>(r#"{"precison": 128}"#).is_err());
    }
}
