use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Every vertex outside the set has at least `k` neighbors inside it.
    #[serde(rename = "kdom")]
    KDom,
    /// Every vertex has at least `k` neighbors inside the set.
    Total,
}

impl Variant {
    pub const ALL: [Variant; 2] = [Variant::KDom, Variant::Total];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::KDom => "kdom",
            Variant::Total => "total",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kdom" => Ok(Variant::KDom),
            "total" => Ok(Variant::Total),
            other => Err(Error::Param(format!("unknown variant {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Brute,
    Naive,
    Fast,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::Naive => "naive",
            Engine::Fast => "fast",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute" => Ok(Engine::Brute),
            "naive" => Ok(Engine::Naive),
            "fast" => Ok(Engine::Fast),
            other => Err(Error::Param(format!("unknown engine {other:?}"))),
        }
    }
}

/// One optimization question: minimum (total) `k`-domination, with vertex
/// costs when `weighted` is set (unit costs if the model carries none).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Problem {
    pub k: usize,
    pub variant: Variant,
    pub weighted: bool,
}

impl Problem {
    pub fn new(k: usize, variant: Variant, weighted: bool) -> Result<Self> {
        if k == 0 {
            return Err(Error::Param("k must be at least 1".into()));
        }
        Ok(Problem { k, variant, weighted })
    }

    pub fn unweighted(k: usize, variant: Variant) -> Self {
        Self::new(k, variant, false).expect("k >= 1")
    }

    pub fn weighted(k: usize, variant: Variant) -> Self {
        Self::new(k, variant, true).expect("k >= 1")
    }
}
