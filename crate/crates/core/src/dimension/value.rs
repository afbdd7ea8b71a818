use std::fmt;

use serde::{Deserialize, Serialize};

/// Extended integer value of a dimension function: `-1 < 0 < 1 < … < ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DimValue {
    NegOne,
    Finite(u32),
    Infinite,
}

impl DimValue {
    /// The value one step up (`∞` stays `∞`).
    pub fn succ(self) -> Self {
        match self {
            DimValue::NegOne => DimValue::Finite(0),
            DimValue::Finite(k) => DimValue::Finite(k + 1),
            DimValue::Infinite => DimValue::Infinite,
        }
    }

    pub fn is_zero(self) -> bool {
        self == DimValue::Finite(0)
    }

    /// `Some(-1)`, `Some(k)`, or `None` for `∞`.
    pub fn as_i64(self) -> Option<i64> {
        match self {
            DimValue::NegOne => Some(-1),
            DimValue::Finite(k) => Some(k as i64),
            DimValue::Infinite => None,
        }
    }
}

impl fmt::Display for DimValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimValue::NegOne => f.write_str("-1"),
            DimValue::Finite(k) => write!(f, "{k}"),
            DimValue::Infinite => f.write_str("inf"),
        }
    }
}

impl std::str::FromStr for DimValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "inf" | "∞" => Ok(DimValue::Infinite),
            "-1" => Ok(DimValue::NegOne),
            t => t
                .parse::<u32>()
                .map(DimValue::Finite)
                .map_err(|_| format!("`{s}` is not a dimension value")),
        }
    }
}

// -1 and k serialize as numbers, ∞ as the string "inf"
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Wire {
    Num(i64),
    Text(String),
}

impl Serialize for DimValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.as_i64() {
            Some(v) => Wire::Num(v),
            None => Wire::Text("inf".into()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DimValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Wire::deserialize(d)? {
            Wire::Num(-1) => Ok(DimValue::NegOne),
            Wire::Num(k) if k >= 0 => Ok(DimValue::Finite(k as u32)),
            Wire::Num(k) => Err(serde::de::Error::custom(format!("bad dimension {k}"))),
            Wire::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}
