use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{pochhammer, sign_pow, ComplexScalar};
use crate::series::{Order, Param, SeriesSpec};

/// `konst + k1·K1 + k2·K2 + k·K`, resolved against a parameter point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct IntExpr {
    pub konst: i64,
    pub k1: i64,
    pub k2: i64,
    pub k: i64,
}

impl IntExpr {
    pub const fn konst(v: i64) -> Self {
        IntExpr {
            konst: v,
            k1: 0,
            k2: 0,
            k: 0,
        }
    }

    pub const fn order(o: Order) -> Self {
        match o {
            Order::K1 => IntExpr {
                konst: 0,
                k1: 1,
                k2: 0,
                k: 0,
            },
            Order::K2 => IntExpr {
                konst: 0,
                k1: 0,
                k2: 1,
                k: 0,
            },
            Order::K => IntExpr {
                konst: 0,
                k1: 0,
                k2: 0,
                k: 1,
            },
        }
    }

    pub fn eval(&self, spec: &SeriesSpec) -> Result<i64> {
        let mut v = self.konst;
        for (c, o) in [(self.k1, Order::K1), (self.k2, Order::K2), (self.k, Order::K)] {
            if c != 0 {
                v += c * spec.order(o)? as i64;
            }
        }
        Ok(v)
    }
}

impl From<i64> for IntExpr {
    fn from(v: i64) -> Self {
        IntExpr::konst(v)
    }
}

impl From<Order> for IntExpr {
    fn from(o: Order) -> Self {
        IntExpr::order(o)
    }
}

impl Add for IntExpr {
    type Output = IntExpr;
    fn add(self, o: IntExpr) -> IntExpr {
        IntExpr {
            konst: self.konst + o.konst,
            k1: self.k1 + o.k1,
            k2: self.k2 + o.k2,
            k: self.k + o.k,
        }
    }
}

impl Neg for IntExpr {
    type Output = IntExpr;
    fn neg(self) -> IntExpr {
        IntExpr {
            konst: -self.konst,
            k1: -self.k1,
            k2: -self.k2,
            k: -self.k,
        }
    }
}

impl Sub for IntExpr {
    type Output = IntExpr;
    fn sub(self, o: IntExpr) -> IntExpr {
        self + (-o)
    }
}

/// Scalar coefficient expression in the symbolic parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Coef {
    Const(ComplexScalar),
    Param(Param),
    Int(IntExpr),
    Add(Box<Coef>, Box<Coef>),
    Sub(Box<Coef>, Box<Coef>),
    Mul(Box<Coef>, Box<Coef>),
    Div(Box<Coef>, Box<Coef>),
    Neg(Box<Coef>),
    /// `(base)_len`.
    Poch(Box<Coef>, IntExpr),
    /// `(−1)^e`.
    SignPow(IntExpr),
}

impl Coef {
    pub fn one() -> Coef {
        Coef::from(1.0)
    }

    pub fn p(param: Param) -> Coef {
        Coef::Param(param)
    }

    pub fn int(e: impl Into<IntExpr>) -> Coef {
        Coef::Int(e.into())
    }

    pub fn poch(self, len: impl Into<IntExpr>) -> Coef {
        Coef::Poch(Box::new(self), len.into())
    }

    pub fn sign_pow(e: impl Into<IntExpr>) -> Coef {
        Coef::SignPow(e.into())
    }

    pub fn eval(&self, spec: &SeriesSpec) -> Result<ComplexScalar> {
        Ok(match self {
            Coef::Const(c) => *c,
            Coef::Param(p) => spec.get(*p)?,
            Coef::Int(e) => ComplexScalar::new(e.eval(spec)? as f64, 0.0),
            Coef::Add(a, b) => a.eval(spec)? + b.eval(spec)?,
            Coef::Sub(a, b) => a.eval(spec)? - b.eval(spec)?,
            Coef::Mul(a, b) => a.eval(spec)? * b.eval(spec)?,
            Coef::Div(a, b) => {
                let d = b.eval(spec)?;
                if d == ComplexScalar::new(0.0, 0.0) {
                    return Err(Error::Pole(format!("coefficient denominator {b:?}")));
                }
                a.eval(spec)? / d
            }
            Coef::Neg(a) => -a.eval(spec)?,
            Coef::Poch(base, len) => {
                let l = len.eval(spec)?;
                if l < 0 {
                    return Err(Error::InvalidArgument(format!(
                        "negative shifted-factorial length {l}"
                    )));
                }
                pochhammer(base.eval(spec)?, l as usize)?
            }
            Coef::SignPow(e) => ComplexScalar::new(sign_pow(e.eval(spec)?), 0.0),
        })
    }

    /// Whether the value changes when `param` moves.
    pub fn depends_on(&self, param: Param) -> bool {
        match self {
            Coef::Const(_) | Coef::Int(_) | Coef::SignPow(_) => false,
            Coef::Param(p) => *p == param,
            Coef::Add(a, b) | Coef::Sub(a, b) | Coef::Mul(a, b) | Coef::Div(a, b) => {
                a.depends_on(param) || b.depends_on(param)
            }
            Coef::Neg(a) => a.depends_on(param),
            Coef::Poch(base, _) => base.depends_on(param),
        }
    }
}

impl From<f64> for Coef {
    fn from(v: f64) -> Self {
        Coef::Const(ComplexScalar::new(v, 0.0))
    }
}

impl From<ComplexScalar> for Coef {
    fn from(v: ComplexScalar) -> Self {
        Coef::Const(v)
    }
}

impl From<Param> for Coef {
    fn from(p: Param) -> Self {
        Coef::Param(p)
    }
}

impl From<IntExpr> for Coef {
    fn from(e: IntExpr) -> Self {
        Coef::Int(e)
    }
}

macro_rules! coef_binop {
    ($tr:ident, $method:ident, $variant:ident) => {
        impl<R: Into<Coef>> $tr<R> for Coef {
            type Output = Coef;
            fn $method(self, rhs: R) -> Coef {
                Coef::$variant(Box::new(self), Box::new(rhs.into()))
            }
        }
    };
}

coef_binop!(Add, add, Add);
coef_binop!(Sub, sub, Sub);
coef_binop!(Mul, mul, Mul);
coef_binop!(Div, div, Div);

impl Neg for Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        Coef::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::F42Params;

    fn spec() -> SeriesSpec {
        let r = |v: f64| ComplexScalar::new(v, 0.0);
        SeriesSpec::F42(F42Params {
            a: r(2.0),
            b: r(3.0),
            c1: r(0.0),
            c2: r(1.0),
            t: r(5.0),
            k: 2,
            x: r(0.1),
            y: r(0.1),
        })
    }

    #[test]
    fn evaluates_against_the_point() {
        let c = Coef::p(Param::A) * Coef::p(Param::B) - Coef::int(IntExpr::order(Order::K));
        assert_eq!(c.eval(&spec()).unwrap(), ComplexScalar::new(4.0, 0.0));
        let d = Coef::sign_pow(IntExpr::order(Order::K) + IntExpr::konst(1));
        assert_eq!(d.eval(&spec()).unwrap(), ComplexScalar::new(-1.0, 0.0));
        let e = (-Coef::p(Param::T)).poch(IntExpr::order(Order::K));
        assert_eq!(e.eval(&spec()).unwrap(), ComplexScalar::new(20.0, 0.0));
        assert!(e.depends_on(Param::T) && !e.depends_on(Param::A));
    }

    #[test]
    fn zero_denominator_is_a_pole() {
        let c = Coef::one() / Coef::p(Param::C1);
        assert!(matches!(c.eval(&spec()), Err(Error::Pole(_))));
        let neg = Coef::p(Param::A).poch(IntExpr::konst(-1));
        assert!(matches!(neg.eval(&spec()), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn missing_order_is_an_error() {
        let e = IntExpr::order(Order::K1);
        assert!(e.eval(&spec()).is_err());
    }
}
