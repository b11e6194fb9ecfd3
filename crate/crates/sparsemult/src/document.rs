//! JSON documents read and written by the CLI.
//!
//! Output is serialized through [`serde_json::Value`], whose maps are ordered, so keys
//! always come out sorted. Rationals are written as canonical `"p/q"` strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sparsemult_core::num::format_rational;
use sparsemult_core::{LatticePoint, PointSet, Rational, SupportFamily};

use crate::error::CliError;

/// A support family plus optional run parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub n: usize,
    /// `supports[j]` lists the exponent vectors of the `j`-th polynomial.
    pub supports: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, rename = "K_max", skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        if text.trim().is_empty() {
            return Err(CliError::Input("empty input".into()));
        }
        Ok(serde_json::from_str(text)?)
    }

    /// Validates shapes and exponents and builds the family.
    pub fn family(&self) -> Result<SupportFamily, CliError> {
        let n = self.n;
        if n == 0 {
            return Err(CliError::Input("n must be at least 1".into()));
        }
        if self.supports.len() != n {
            return Err(CliError::Input(format!("expected {n} supports, found {}", self.supports.len())));
        }
        let mut sets = Vec::with_capacity(n);
        for (j, s) in self.supports.iter().enumerate() {
            if s.is_empty() {
                return Err(CliError::Input(format!("support {} is empty", j + 1)));
            }
            for v in s {
                if v.len() != n {
                    return Err(CliError::Input(format!(
                        "support {}: exponent vector {v:?} has length {}, expected {n}",
                        j + 1,
                        v.len()
                    )));
                }
                if v.iter().any(|&e| e < 0) {
                    return Err(CliError::Input(format!("support {}: negative exponent in {v:?}", j + 1)));
                }
            }
            sets.push(PointSet::new(n, s.iter().map(|v| LatticePoint::new(v.clone())))?);
        }
        Ok(SupportFamily::new(sets)?)
    }

    pub fn from_family(a: &SupportFamily) -> Self {
        InputDocument {
            n: a.n(),
            supports: a.supports().iter().map(|s| s.iter().map(|p| p.coords().to_vec()).collect()).collect(),
            seed: None,
            bound: None,
            m: None,
            k_max: None,
        }
    }
}

/// Run parameters after merging flags over the input document.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kmax: Option<usize>,
}

impl Options {
    /// Flags win over document fields.
    pub fn merged(&self, input: &InputDocument) -> Options {
        Options {
            m: self.m.or(input.m),
            seed: self.seed.or(input.seed),
            bound: self.bound.or(input.bound),
            trials: self.trials,
            kmax: self.kmax.or(input.k_max),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub input: Option<InputDocument>,
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionSection {
    pub h1: bool,
    pub h2: bool,
    pub h3: bool,
    /// First coordinate subset violating H2, 1-based.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_i: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumRow {
    pub i: String,
    pub j: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<u64>,
    #[serde(default, rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub routes: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mult0Section {
    pub value: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub routes: BTreeMap<String, String>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub mv: u64,
    pub sm: u64,
    pub mv_a0: u64,
    pub total_with_multiplicity: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    /// The stratum whose zero is checked; the full set means the origin.
    pub stratum: String,
    pub trial: u32,
    /// Seed of the instance that produced the verdict.
    pub seed: u64,
    pub resamples: u32,
    pub expected: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<usize>,
    pub verdict: String,
}

impl OracleCheck {
    pub fn is_match(&self) -> bool {
        self.observed == Some(self.expected)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleSection {
    pub seed: u64,
    pub bound: u64,
    pub kmax: usize,
    pub trials: u32,
    pub checks: Vec<OracleCheck>,
    pub matches: usize,
    pub mismatches: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: CommandEcho,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conditions: Option<ConditionSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strata: Option<Vec<StratumRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult0: Option<Mult0Section>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub totals: Option<Totals>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub version: String,
    pub exit_status: i32,
}

impl OutputDocument {
    pub fn new(name: &str, input: Option<InputDocument>, options: Options) -> Self {
        OutputDocument {
            command: CommandEcho { name: name.into(), input, options },
            conditions: None,
            strata: None,
            mult0: None,
            totals: None,
            oracle: None,
            error: None,
            version: env!("CARGO_PKG_VERSION").into(),
            exit_status: 0,
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("documents serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }
}

pub fn rational_string(v: u64) -> String {
    format_rational(&Rational::from_integer(v.into()))
}
