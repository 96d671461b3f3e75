//! Extended-real exponents for p-norms: values in [1, inf] with an explicit
//! point at infinity, using the convention 1/0 = inf and 1/inf = 0.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// An exponent in `[0, inf]`. Most norm contexts restrict to `[1, inf]`;
/// Rényi orders additionally allow `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ext {
    Finite(f64),
    Inf,
}

impl Ext {
    pub fn finite(v: f64) -> Self {
        Ext::Finite(v)
    }

    pub fn is_inf(self) -> bool {
        matches!(self, Ext::Inf)
    }

    /// 1/p with 1/inf = 0.
    pub fn recip(self) -> f64 {
        match self {
            Ext::Finite(v) => 1.0 / v,
            Ext::Inf => 0.0,
        }
    }

    /// Hölder conjugate p' = p/(p-1); 1 <-> inf.
    pub fn conjugate(self) -> Ext {
        match self {
            Ext::Inf => Ext::Finite(1.0),
            Ext::Finite(v) if v == 1.0 => Ext::Inf,
            Ext::Finite(v) => Ext::Finite(v / (v - 1.0)),
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Ext::Finite(v) => v,
            Ext::Inf => f64::INFINITY,
        }
    }

    /// Checks membership in [1, inf].
    pub fn norm_exponent(self) -> Result<Ext> {
        match self {
            Ext::Finite(v) if !(v >= 1.0) || !v.is_finite() => Err(Error::BadNormExponent(v)),
            other => Ok(other),
        }
    }

    pub fn parse(s: &str) -> Result<Ext> {
        match s.trim() {
            "inf" | "infinity" | "oo" => Ok(Ext::Inf),
            other => other
                .parse::<f64>()
                .map(Ext::Finite)
                .map_err(|_| Error::BadParameter(format!("cannot parse exponent {other:?}"))),
        }
    }
}

impl From<f64> for Ext {
    fn from(v: f64) -> Self {
        if v.is_infinite() {
            Ext::Inf
        } else {
            Ext::Finite(v)
        }
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::Finite(v) => write!(f, "{v}"),
            Ext::Inf => write!(f, "inf"),
        }
    }
}

impl Serialize for Ext {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ext::Finite(v) => ser.serialize_f64(*v),
            Ext::Inf => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(v) => Ok(Ext::from(v)),
            Raw::Str(s) => Ext::parse(&s).map_err(serde::de::Error::custom),
        }
    }
}
