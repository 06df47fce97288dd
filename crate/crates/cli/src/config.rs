//! Run configuration shared by the flag parser and the optional JSON
//! config file. Every field is optional; unset fields take command defaults.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// A complex flag value, written `re` or `re,im`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cplx(pub Complex64);

impl FromStr for Cplx {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad number {t:?}: {e}"))
        };
        let z = match s.split_once(',') {
            Some((re, im)) => Complex64::new(parse(re)?, parse(im)?),
            None => Complex64::new(parse(s)?, 0.0),
        };
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(format!("non-finite value {s:?}"));
        }
        Ok(Cplx(z))
    }
}

impl fmt::Display for Cplx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.0.re, self.0.im)
    }
}

impl Serialize for Cplx {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.0.re, self.0.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cplx {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Real(f64),
            Pair([f64; 2]),
        }
        Ok(match Repr::deserialize(d)? {
            Repr::Real(re) => Cplx(Complex64::new(re, 0.0)),
            Repr::Pair([re, im]) => Cplx(Complex64::new(re, im)),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum FunctionKind {
    #[value(name = "F41")]
    F41,
    #[value(name = "F42")]
    F42,
    #[value(name = "F4")]
    F4,
    #[value(name = "KdF")]
    #[serde(rename = "KdF")]
    Kdf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum RepChoice {
    A,
    B,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModeChoice {
    Coefficientwise,
    SummedTerminating,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(default, deny_unknown_fields)]
pub struct EvalConfig {
    /// Function to evaluate.
    #[arg(long = "fn", value_enum, ignore_case = true)]
    pub function: Option<FunctionKind>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub t2: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<Cplx>,
    #[arg(long)]
    pub k1: Option<u32>,
    #[arg(long)]
    pub k2: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<Cplx>,
    /// Coupled numerator entry of a general double series (repeatable).
    #[arg(long, allow_hyphen_values = true)]
    pub coupled_num: Vec<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_num: Vec<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub y_num: Vec<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub coupled_den: Vec<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub x_den: Vec<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub y_den: Vec<Cplx>,
    /// Stop early once three anti-diagonals fall below the tolerance.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub adaptive: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(default, deny_unknown_fields)]
pub struct AuditConfig {
    /// Parameter points per identity.
    #[arg(long)]
    pub draws: Option<usize>,
    /// Family letter or name (repeatable).
    #[arg(long)]
    pub family: Vec<String>,
    /// F41 or F42 (repeatable).
    #[arg(long)]
    pub target: Vec<String>,
    /// Also audit suspected entries and their corrected variants.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub include_suspected: Option<bool>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeChoice>,
    /// Discrete parameter used in summed mode.
    #[arg(long)]
    pub terminating_t: Option<u32>,
    /// Run on one thread.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub sequential: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(default, deny_unknown_fields)]
pub struct QuadConfig {
    #[arg(long, value_enum)]
    pub rep: Option<RepChoice>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub t2: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<Cplx>,
    /// Number of rule nodes.
    #[arg(long)]
    pub order: Option<usize>,
    /// Exponent of the rule weight; defaults to Re(p) − 1 for the outer parameter p.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(default, deny_unknown_fields)]
pub struct SweepConfig {
    #[arg(long, allow_hyphen_values = true)]
    pub x_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub y_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub step: Option<f64>,
    /// Order used for both discrete factors.
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub t1: Option<Cplx>,
    #[arg(long, allow_hyphen_values = true)]
    pub t2: Option<Cplx>,
}

/// Settings shared by every command.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(default, deny_unknown_fields)]
pub struct CommonConfig {
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Truncation rows.
    #[arg(long = "m")]
    pub max_m: Option<usize>,
    /// Truncation columns.
    #[arg(long = "n")]
    pub max_n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub tolerance: Option<f64>,
}

/// Contents of a config file; flags override it field by field.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub common: CommonConfig,
    pub eval: EvalConfig,
    pub audit: AuditConfig,
    pub quadcheck: QuadConfig,
    pub sweep: SweepConfig,
}

/// Recursively lay the non-null, non-empty parts of `top` over `base`.
fn overlay(base: Value, top: Value) -> Value {
    match (base, top) {
        (Value::Object(mut b), Value::Object(t)) => {
            for (k, v) in t {
                let merged = match b.remove(&k) {
                    Some(old) => overlay(old, v),
                    None => v,
                };
                b.insert(k, merged);
            }
            Value::Object(b)
        }
        (b, Value::Null) => b,
        (b, Value::Array(a)) if a.is_empty() => b,
        (_, t) => t,
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self, String> {
        serde_json::from_str(text).map_err(|e| format!("config: {e}"))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// `self` with every field set in `flags` replaced.
    pub fn overridden_by(&self, flags: &RunConfig) -> RunConfig {
        let base = serde_json::to_value(self).expect("config serializes");
        let top = serde_json::to_value(flags).expect("config serializes");
        serde_json::from_value(overlay(base, top)).expect("merged config deserializes")
    }
}
