//! Covering configuration files: `{"translates": [["p/q","p/q","p/q"], ...]}`
//! with an optional `"label"`.

use serde::de::{self, Deserializer};
use serde::Deserialize;
use serde_json::{json, Value};
use simplex_cover_core::covering::{CoveringConfig, CoveringError};
use simplex_cover_core::{Rat, Vec3};

use crate::report::{to_canonical_string, vec_json};

const BAD_RATIONAL: &str = "bad rational";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("malformed rational on line {line}")]
    BadRational { line: usize },
    #[error("duplicate translate at index {0}")]
    DuplicateTranslate(usize),
    #[error("invalid configuration: {0}")]
    Malformed(String),
}

struct RatStr(Rat);

impl<'de> Deserialize<'de> for RatStr {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<RatStr, D::Error> {
        let s = String::deserialize(d)?;
        s.parse::<Rat>()
            .map(RatStr)
            .map_err(|_| de::Error::custom(format!("{BAD_RATIONAL} {s:?}")))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    translates: Vec<[RatStr; 3]>,
    #[serde(default)]
    label: Option<String>,
}

pub fn parse_config(text: &str) -> Result<CoveringConfig, ConfigError> {
    let file: ConfigFile = serde_json::from_str(text).map_err(|e| {
        if e.to_string().starts_with(BAD_RATIONAL) {
            ConfigError::BadRational { line: e.line() }
        } else {
            ConfigError::Malformed(e.to_string())
        }
    })?;
    let translates = file
        .translates
        .into_iter()
        .map(|[x, y, z]| Vec3::new(x.0, y.0, z.0))
        .collect();
    CoveringConfig::new(translates, file.label).map_err(|e| match e {
        CoveringError::DuplicateTranslate(i) => ConfigError::DuplicateTranslate(i),
        other => ConfigError::Malformed(other.to_string()),
    })
}

pub fn config_json(cfg: &CoveringConfig) -> Value {
    let translates: Vec<Value> = cfg.translates().iter().map(vec_json).collect();
    match &cfg.label {
        Some(label) => json!({ "label": label, "translates": translates }),
        None => json!({ "translates": translates }),
    }
}

/// Canonical text form; `parse_config` inverts it.
pub fn serialize_config(cfg: &CoveringConfig) -> String {
    to_canonical_string(&config_json(cfg))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_origin() {
        let cfg = parse_config(r#"{"translates":[["0/1","0/1","0/1"]]}"#).unwrap();
        assert_eq!(cfg.translates(), &[Vec3::zero()]);
    }

    #[test]
    fn normalizes_and_round_trips() {
        let cfg = parse_config(r#"{"translates":[["2/2","-3/-3","0"]], "label": "demo"}"#).unwrap();
        assert_eq!(cfg.translates(), &[Vec3::from_ints(1, 1, 0)]);
        let text = serialize_config(&cfg);
        assert!(text.contains("\"1/1\""));
        assert_eq!(parse_config(&text).unwrap(), cfg);
        assert_eq!(serialize_config(&parse_config(&text).unwrap()), text);
    }

    #[test]
    fn reports_bad_rational_line() {
        let text = "{\n  \"translates\": [\n    [\"0/1\", \"0/1\", \"0/1\"],\n    [\"1/0\", \"0/1\", \"0/1\"]\n  ]\n}";
        assert_eq!(parse_config(text), Err(ConfigError::BadRational { line: 4 }));
        assert!(matches!(
            parse_config(r#"{"translates":[["1.5","0","0"]]}"#),
            Err(ConfigError::BadRational { line: 1 })
        ));
    }

    #[test]
    fn rejects_duplicates_and_junk() {
        assert_eq!(
            parse_config(r#"{"translates":[["1","0","0"],["2/2","0","0"]]}"#),
            Err(ConfigError::DuplicateTranslate(1))
        );
        assert!(matches!(parse_config("[]"), Err(ConfigError::Malformed(_))));
        assert!(matches!(
            parse_config(r#"{"translates":[["1","0"]]}"#),
            Err(ConfigError::Malformed(_))
        ));
        assert!(matches!(
            parse_config(r#"{"translates":[], "extra": 1}"#),
            Err(ConfigError::Malformed(_))
        ));
    }
}
