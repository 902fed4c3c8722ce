//! Line-based scene files.
//!
//! ```text
//! # quadric cone at its vertex
//! monoid.generators = [[2,0],[1,1],[0,2]]
//! subscheme.monomials = [[2,0],[1,1],[0,2]]
//! options.truncation = 10
//! ```
//!
//! Each non-blank, non-comment line is `key = value` with a JSON value.
//! Rational point coordinates may be written as strings `"a/b"`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use logcoh::scene::{DEFAULT_TRUNCATION, DEFAULT_WINDOW};
use logcoh::{FsMonoid, LogScene, MonoidPrime, SceneOptions, Q};
use num_bigint::BigInt;
use serde_json::Value;
use sha2::{Digest, Sha256};

const KNOWN_KEYS: &[&str] = &[
    "monoid.generators",
    "smooth.count",
    "subscheme.monomials",
    "subscheme.point.log",
    "subscheme.point.smooth",
    "options.truncation",
    "options.window",
    "options.assert_saturated",
    "prime.face",
    "stalk.t_bound",
    "stalk.adic_bound",
    "check.level",
    "check.key_degree",
    "cech.order",
    "cech.width",
    "cech.level",
    "expected.dims",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SceneError {
    Parse { line: usize, message: String },
    Validation { key: String, message: String },
    Io(String),
}

impl fmt::Display for SceneError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SceneError::Parse { line, message } => write!(f, "parse error on line {line}: {message}"),
            SceneError::Validation { key, message } => write!(f, "invalid value for `{key}`: {message}"),
            SceneError::Io(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for SceneError {}

fn invalid(key: &str, message: impl Into<String>) -> SceneError {
    SceneError::Validation { key: key.to_string(), message: message.into() }
}

/// Parsed key-value document, keys sorted.
#[derive(Debug, Clone, PartialEq)]
pub struct SceneFile {
    entries: BTreeMap<String, Value>,
}

impl SceneFile {
    pub fn parse(text: &str) -> Result<Self, SceneError> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(SceneError::Parse { line: i + 1, message: "expected `key = value`".into() });
            };
            let key = key.trim();
            if !KNOWN_KEYS.contains(&key) {
                return Err(SceneError::Parse { line: i + 1, message: format!("unknown key `{key}`") });
            }
            let value: Value = serde_json::from_str(value.trim())
                .map_err(|e| SceneError::Parse { line: i + 1, message: format!("value of `{key}`: {e}") })?;
            if entries.insert(key.to_string(), value).is_some() {
                return Err(SceneError::Parse { line: i + 1, message: format!("duplicate key `{key}`") });
            }
        }
        if !entries.contains_key("monoid.generators") {
            return Err(invalid("monoid.generators", "missing"));
        }
        Ok(Self { entries })
    }

    pub fn read(path: &Path) -> Result<Self, SceneError> {
        let text = std::fs::read_to_string(path).map_err(|e| SceneError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Normalized form: sorted keys, compact JSON values.
    pub fn serialize(&self) -> String {
        self.entries.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    pub fn digest(&self) -> String {
        let hash = Sha256::digest(self.serialize().as_bytes());
        format!("sha256:{}", hash.iter().map(|b| format!("{b:02x}")).collect::<String>())
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.get(key)
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.entries.insert(key.to_string(), value);
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize, SceneError> {
        match self.entries.get(key) {
            None => Ok(default),
            Some(v) => v.as_u64().map(|x| x as usize).ok_or_else(|| invalid(key, "expected a non-negative integer")),
        }
    }

    pub fn truncation(&self) -> Result<usize, SceneError> {
        self.usize_or("options.truncation", DEFAULT_TRUNCATION)
    }

    pub fn window(&self) -> Result<usize, SceneError> {
        self.usize_or("options.window", DEFAULT_WINDOW)
    }

    pub fn check_level(&self) -> Result<usize, SceneError> {
        self.usize_or("check.level", 5)
    }

    pub fn check_key_degree(&self) -> Result<usize, SceneError> {
        self.usize_or("check.key_degree", 2)
    }

    pub fn cech_params(&self) -> Result<(usize, usize, usize), SceneError> {
        Ok((self.usize_or("cech.width", 2)?, self.usize_or("cech.order", 2)?, self.usize_or("cech.level", 2)?))
    }

    pub fn stalk_bound(&self) -> Result<usize, SceneError> {
        Ok(self.usize_or("stalk.t_bound", 8)?.min(self.usize_or("stalk.adic_bound", 8)?))
    }

    pub fn expected_dims(&self) -> Result<Option<Vec<usize>>, SceneError> {
        match self.entries.get("expected.dims") {
            None => Ok(None),
            Some(v) => {
                let arr = v.as_array().ok_or_else(|| invalid("expected.dims", "expected an array"))?;
                arr.iter()
                    .map(|x| {
                        x.as_u64().map(|d| d as usize).ok_or_else(|| invalid("expected.dims", "expected integers"))
                    })
                    .collect::<Result<Vec<_>, _>>()
                    .map(Some)
            }
        }
    }

    pub fn monoid(&self) -> Result<FsMonoid, SceneError> {
        let gens = int_matrix(self.entries.get("monoid.generators").expect("checked at parse"), "monoid.generators")?;
        let d = gens.first().map(Vec::len).unwrap_or(0);
        if d == 0 || gens.iter().any(|g| g.len() != d) {
            return Err(invalid("monoid.generators", "need a nonempty list of equal-length vectors"));
        }
        let p = FsMonoid::new(d, gens).map_err(|e| invalid("monoid.generators", e.to_string()))?;
        p.require_grading().map_err(|e| invalid("monoid.generators", e.to_string()))?;
        if self.entries.get("options.assert_saturated").and_then(Value::as_bool).unwrap_or(false) {
            p.check_saturated().map_err(|e| invalid("monoid.generators", e.to_string()))?;
        }
        Ok(p)
    }

    pub fn to_scene(&self) -> Result<LogScene, SceneError> {
        let monoid = self.monoid()?;
        let options = SceneOptions { truncation: self.truncation()?, window: self.window()? };
        let has_point =
            self.entries.contains_key("subscheme.point.log") || self.entries.contains_key("subscheme.point.smooth");
        let scene = match (self.entries.get("subscheme.monomials"), has_point) {
            (Some(_), true) => {
                return Err(invalid("subscheme.monomials", "give either monomials or a point, not both"));
            }
            (Some(v), false) => {
                let s = self.usize_or("smooth.count", 0)?;
                let gens = int_matrix(v, "subscheme.monomials")?;
                LogScene::monomial(monoid, s, gens).map_err(|e| invalid("subscheme.monomials", e.to_string()))?
            }
            (None, true) => {
                let log = rational_list(self.entries.get("subscheme.point.log"), "subscheme.point.log")?;
                let smooth = rational_list(self.entries.get("subscheme.point.smooth"), "subscheme.point.smooth")?;
                if let Some(Value::Number(n)) = self.entries.get("smooth.count") {
                    if n.as_u64() != Some(smooth.len() as u64) {
                        return Err(invalid("smooth.count", "disagrees with subscheme.point.smooth"));
                    }
                }
                LogScene::fat_point(monoid, log, smooth).map_err(|e| invalid("subscheme.point.log", e.to_string()))?
            }
            (None, false) => return Err(invalid("subscheme.monomials", "missing subscheme")),
        };
        Ok(scene.with_options(options))
    }

    pub fn prime(&self, scene: &LogScene) -> Result<MonoidPrime, SceneError> {
        let v = self.entries.get("prime.face").ok_or_else(|| invalid("prime.face", "missing"))?;
        let face = v
            .as_array()
            .ok_or_else(|| invalid("prime.face", "expected an array of generator indices"))?
            .iter()
            .map(|x| x.as_u64().map(|i| i as usize).ok_or_else(|| invalid("prime.face", "expected indices")))
            .collect::<Result<Vec<_>, _>>()?;
        MonoidPrime::new(scene.monoid.clone(), face).map_err(|e| invalid("prime.face", e.to_string()))
    }
}

fn int_matrix(v: &Value, key: &str) -> Result<Vec<Vec<i64>>, SceneError> {
    let rows = v.as_array().ok_or_else(|| invalid(key, "expected an array of integer vectors"))?;
    rows.iter()
        .map(|row| {
            row.as_array()
                .ok_or_else(|| invalid(key, "expected an array of integer vectors"))?
                .iter()
                .map(|x| x.as_i64().ok_or_else(|| invalid(key, "expected integers")))
                .collect()
        })
        .collect()
}

fn rational_list(v: Option<&Value>, key: &str) -> Result<Vec<Q>, SceneError> {
    let Some(v) = v else {
        return Ok(Vec::new());
    };
    let items = v.as_array().ok_or_else(|| invalid(key, "expected an array"))?;
    items.iter().map(|x| rational(x).ok_or_else(|| invalid(key, format!("`{x}` is not a rational number")))).collect()
}

fn rational(v: &Value) -> Option<Q> {
    match v {
        Value::Number(n) => n.as_i64().map(|i| Q::from_integer(BigInt::from(i))),
        Value::String(s) => {
            let (num, den) = s.split_once('/').unwrap_or((s.as_str(), "1"));
            let num: BigInt = num.trim().parse().ok()?;
            let den: BigInt = den.trim().parse().ok()?;
            (den != BigInt::from(0)).then(|| Q::new(num, den))
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_file() {
        let f = SceneFile::parse("monoid.generators = [[1]]\nsubscheme.monomials = [[1]]\n").unwrap();
        let s = f.to_scene().unwrap();
        assert_eq!(s.omega_rank(), 1);
        assert_eq!(s.options, SceneOptions::default());
    }

    #[test]
    fn round_trip() {
        let text = "# cone\nsubscheme.monomials = [[2, 0], [1, 1], [0, 2]]\nmonoid.generators = [[2,0],[1,1],[0,2]]\noptions.window = 3\n";
        let f = SceneFile::parse(text).unwrap();
        let again = SceneFile::parse(&f.serialize()).unwrap();
        assert_eq!(f, again);
        assert_eq!(f.serialize(), again.serialize());
        assert_eq!(f.digest(), again.digest());
    }

    #[test]
    fn diagnostics_name_the_key() {
        let e = SceneFile::parse("monoid.generators = [[1]]\nsubscheme.monomials = [[0]]\n")
            .unwrap()
            .to_scene()
            .unwrap_err();
        assert!(matches!(e, SceneError::Validation { ref key, .. } if key == "subscheme.monomials"));
        let e = SceneFile::parse("monoid.generators = [[1]]\nfoo = 1\n").unwrap_err();
        assert!(e.to_string().contains("foo"));
        let e = SceneFile::parse("monoid.generators = [[1, 0], [-1, 0]]\nsubscheme.monomials = [[1, 0]]\n")
            .unwrap()
            .to_scene()
            .unwrap_err();
        assert!(e.to_string().contains("monoid.generators"));
    }

    #[test]
    fn rational_points() {
        let f = SceneFile::parse("monoid.generators = [[1,0],[0,1]]\nsubscheme.point.log = [0, \"1/2\"]\n").unwrap();
        let s = f.to_scene().unwrap();
        assert_eq!(s.omega_rank(), 2);
        assert!(rational(&Value::String("1/0".into())).is_none());
    }
}
