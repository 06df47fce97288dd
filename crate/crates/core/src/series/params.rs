use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{is_nonpositive_integer, ComplexScalar};

/// Parameters of the first discrete analogue, with separate discrete
/// parameters `t1`, `t2` and orders `k1`, `k2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F41Params {
    pub a: ComplexScalar,
    pub b: ComplexScalar,
    pub c1: ComplexScalar,
    pub c2: ComplexScalar,
    pub t1: ComplexScalar,
    pub t2: ComplexScalar,
    pub k1: u32,
    pub k2: u32,
    pub x: ComplexScalar,
    pub y: ComplexScalar,
}

/// Parameters of the second discrete analogue, with one coupled discrete
/// parameter `t` of order `k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F42Params {
    pub a: ComplexScalar,
    pub b: ComplexScalar,
    pub c1: ComplexScalar,
    pub c2: ComplexScalar,
    pub t: ComplexScalar,
    pub k: u32,
    pub x: ComplexScalar,
    pub y: ComplexScalar,
}

/// Parameters of the classical Appell F4 series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct F4Params {
    pub a: ComplexScalar,
    pub b: ComplexScalar,
    pub c1: ComplexScalar,
    pub c2: ComplexScalar,
    pub x: ComplexScalar,
    pub y: ComplexScalar,
}

/// Parameters of a general Kampé de Fériet double series.
///
/// Numerator sequences: `coupled_num` carries `(·)_{m+n}`, `x_num` carries
/// `(·)_m`, `y_num` carries `(·)_n`; the `*_den` sequences are the matching
/// denominators.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct KdfParams {
    pub coupled_num: Vec<ComplexScalar>,
    pub x_num: Vec<ComplexScalar>,
    pub y_num: Vec<ComplexScalar>,
    pub coupled_den: Vec<ComplexScalar>,
    pub x_den: Vec<ComplexScalar>,
    pub y_den: Vec<ComplexScalar>,
    pub x: ComplexScalar,
    pub y: ComplexScalar,
}

/// Named continuous and discrete parameters that operators may shift.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    A,
    B,
    C1,
    C2,
    T1,
    T2,
    T,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::C1 => "c1",
            Param::C2 => "c2",
            Param::T1 => "t1",
            Param::T2 => "t2",
            Param::T => "t",
        }
    }
}

/// Discrete orders `k1`, `k2`, `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Order {
    K1,
    K2,
    K,
}

/// Any series the engine can expand into a coefficient grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum SeriesSpec {
    F41(F41Params),
    F42(F42Params),
    F4(F4Params),
    Kdf(KdfParams),
}

impl From<F41Params> for SeriesSpec {
    fn from(p: F41Params) -> Self {
        SeriesSpec::F41(p)
    }
}

impl From<F42Params> for SeriesSpec {
    fn from(p: F42Params) -> Self {
        SeriesSpec::F42(p)
    }
}

impl From<F4Params> for SeriesSpec {
    fn from(p: F4Params) -> Self {
        SeriesSpec::F4(p)
    }
}

impl From<KdfParams> for SeriesSpec {
    fn from(p: KdfParams) -> Self {
        SeriesSpec::Kdf(p)
    }
}

fn missing(spec: &SeriesSpec, what: &str) -> Error {
    Error::InvalidOp(format!("{} has no parameter {what}", spec.family_name()))
}

impl SeriesSpec {
    pub fn family_name(&self) -> &'static str {
        match self {
            SeriesSpec::F41(_) => "F41",
            SeriesSpec::F42(_) => "F42",
            SeriesSpec::F4(_) => "F4",
            SeriesSpec::Kdf(_) => "KdF",
        }
    }

    pub fn x(&self) -> ComplexScalar {
        match self {
            SeriesSpec::F41(p) => p.x,
            SeriesSpec::F42(p) => p.x,
            SeriesSpec::F4(p) => p.x,
            SeriesSpec::Kdf(p) => p.x,
        }
    }

    pub fn y(&self) -> ComplexScalar {
        match self {
            SeriesSpec::F41(p) => p.y,
            SeriesSpec::F42(p) => p.y,
            SeriesSpec::F4(p) => p.y,
            SeriesSpec::Kdf(p) => p.y,
        }
    }

    pub fn with_args(&self, x: ComplexScalar, y: ComplexScalar) -> SeriesSpec {
        let mut s = self.clone();
        match &mut s {
            SeriesSpec::F41(p) => (p.x, p.y) = (x, y),
            SeriesSpec::F42(p) => (p.x, p.y) = (x, y),
            SeriesSpec::F4(p) => (p.x, p.y) = (x, y),
            SeriesSpec::Kdf(p) => (p.x, p.y) = (x, y),
        }
        s
    }

    pub fn get(&self, param: Param) -> Result<ComplexScalar> {
        let v = match (self, param) {
            (SeriesSpec::F41(p), Param::A) => p.a,
            (SeriesSpec::F41(p), Param::B) => p.b,
            (SeriesSpec::F41(p), Param::C1) => p.c1,
            (SeriesSpec::F41(p), Param::C2) => p.c2,
            (SeriesSpec::F41(p), Param::T1) => p.t1,
            (SeriesSpec::F41(p), Param::T2) => p.t2,
            (SeriesSpec::F42(p), Param::A) => p.a,
            (SeriesSpec::F42(p), Param::B) => p.b,
            (SeriesSpec::F42(p), Param::C1) => p.c1,
            (SeriesSpec::F42(p), Param::C2) => p.c2,
            (SeriesSpec::F42(p), Param::T) => p.t,
            (SeriesSpec::F4(p), Param::A) => p.a,
            (SeriesSpec::F4(p), Param::B) => p.b,
            (SeriesSpec::F4(p), Param::C1) => p.c1,
            (SeriesSpec::F4(p), Param::C2) => p.c2,
            _ => return Err(missing(self, param.name())),
        };
        Ok(v)
    }

    fn slot(&mut self, param: Param) -> Option<&mut ComplexScalar> {
        match (self, param) {
            (SeriesSpec::F41(p), Param::A) => Some(&mut p.a),
            (SeriesSpec::F41(p), Param::B) => Some(&mut p.b),
            (SeriesSpec::F41(p), Param::C1) => Some(&mut p.c1),
            (SeriesSpec::F41(p), Param::C2) => Some(&mut p.c2),
            (SeriesSpec::F41(p), Param::T1) => Some(&mut p.t1),
            (SeriesSpec::F41(p), Param::T2) => Some(&mut p.t2),
            (SeriesSpec::F42(p), Param::A) => Some(&mut p.a),
            (SeriesSpec::F42(p), Param::B) => Some(&mut p.b),
            (SeriesSpec::F42(p), Param::C1) => Some(&mut p.c1),
            (SeriesSpec::F42(p), Param::C2) => Some(&mut p.c2),
            (SeriesSpec::F42(p), Param::T) => Some(&mut p.t),
            (SeriesSpec::F4(p), Param::A) => Some(&mut p.a),
            (SeriesSpec::F4(p), Param::B) => Some(&mut p.b),
            (SeriesSpec::F4(p), Param::C1) => Some(&mut p.c1),
            (SeriesSpec::F4(p), Param::C2) => Some(&mut p.c2),
            _ => None,
        }
    }

    /// Copy with `param` replaced by `value`.
    pub fn with(&self, param: Param, value: ComplexScalar) -> Result<SeriesSpec> {
        let mut s = self.clone();
        match s.slot(param) {
            Some(slot) => *slot = value,
            None => return Err(missing(self, param.name())),
        }
        Ok(s)
    }

    /// Copy with `param` moved by an integer offset.
    pub fn shifted(&self, param: Param, delta: i64) -> Result<SeriesSpec> {
        let v = self.get(param)?;
        self.with(param, v + delta as f64)
    }

    pub fn order(&self, order: Order) -> Result<u32> {
        match (self, order) {
            (SeriesSpec::F41(p), Order::K1) => Ok(p.k1),
            (SeriesSpec::F41(p), Order::K2) => Ok(p.k2),
            (SeriesSpec::F42(p), Order::K) => Ok(p.k),
            _ => Err(missing(
                self,
                match order {
                    Order::K1 => "k1",
                    Order::K2 => "k2",
                    Order::K => "k",
                },
            )),
        }
    }
}

pub(crate) fn check_lower_param(name: &str, c: ComplexScalar, len: usize) -> Result<()> {
    // (c)_l vanishes for some l ≤ len exactly when c ∈ {0, −1, …, −(len−1)}.
    if len > 0 && is_nonpositive_integer(c) && -c.re < len as f64 {
        return Err(Error::Pole(format!("({name})_l vanishes for {name} = {c}")));
    }
    Ok(())
}
