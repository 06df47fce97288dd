use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::coef::{Coef, IntExpr};
use crate::numerics::ComplexScalar;
use crate::series::{Order, Param};

/// A discrete parameter together with its order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TParam {
    T1,
    T2,
    T,
}

impl TParam {
    pub fn param(self) -> Param {
        match self {
            TParam::T1 => Param::T1,
            TParam::T2 => Param::T2,
            TParam::T => Param::T,
        }
    }

    pub fn order(self) -> Order {
        match self {
            TParam::T1 => Order::K1,
            TParam::T2 => Order::K2,
            TParam::T => Order::K,
        }
    }
}

/// One factor of an operator product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PrimitiveOp {
    /// `Δ_t f(t) = f(t+1) − f(t)`.
    DeltaT(TParam),
    /// `ρ_t^p f(t) = f(t − p)`.
    Rho { t: TParam, power: IntExpr },
    /// `Θ_t = t ρ_t Δ_t`.
    BigTheta(TParam),
    /// `(1/k) Θ_t` with `k` the order attached to `t`.
    ScaledBigTheta(TParam),
    /// `θ = x ∂/∂x`.
    ThetaX,
    /// `φ = y ∂/∂y`.
    PhiY,
    DerivX,
    DerivY,
    Shift(Param, IntExpr),
    Scale(ComplexScalar),
    /// Multiplication by a parameter-dependent scalar evaluated where it stands.
    Coef(Coef),
    MulX,
    MulY,
    /// Multiplication by `x^e`.
    MulXPow(Coef),
    /// Multiplication by `y^e`.
    MulYPow(Coef),
}

/// Sum of scaled operator products; each product is applied right to left.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OperatorExpr {
    pub terms: Vec<(ComplexScalar, Vec<PrimitiveOp>)>,
}

impl OperatorExpr {
    pub fn identity() -> Self {
        OperatorExpr {
            terms: vec![(ComplexScalar::new(1.0, 0.0), vec![])],
        }
    }

    pub fn zero() -> Self {
        OperatorExpr { terms: vec![] }
    }

    pub fn prim(op: PrimitiveOp) -> Self {
        OperatorExpr {
            terms: vec![(ComplexScalar::new(1.0, 0.0), vec![op])],
        }
    }

    pub fn coef(c: impl Into<Coef>) -> Self {
        Self::prim(PrimitiveOp::Coef(c.into()))
    }

    pub fn scalar(c: f64) -> Self {
        OperatorExpr {
            terms: vec![(ComplexScalar::new(c, 0.0), vec![])],
        }
    }

    /// `self^p` as an ordered product.
    pub fn pow(&self, p: usize) -> Self {
        (0..p).fold(Self::identity(), |acc, _| acc * self.clone())
    }

    /// Longest factor list.
    pub fn depth(&self) -> usize {
        self.terms.iter().map(|(_, f)| f.len()).max().unwrap_or(0)
    }
}

impl From<PrimitiveOp> for OperatorExpr {
    fn from(op: PrimitiveOp) -> Self {
        OperatorExpr::prim(op)
    }
}

impl From<Coef> for OperatorExpr {
    fn from(c: Coef) -> Self {
        OperatorExpr::coef(c)
    }
}

impl From<Param> for OperatorExpr {
    fn from(p: Param) -> Self {
        OperatorExpr::coef(Coef::Param(p))
    }
}

impl From<f64> for OperatorExpr {
    fn from(c: f64) -> Self {
        OperatorExpr::scalar(c)
    }
}

impl<R: Into<OperatorExpr>> Add<R> for OperatorExpr {
    type Output = OperatorExpr;
    fn add(mut self, rhs: R) -> OperatorExpr {
        self.terms.extend(rhs.into().terms);
        self
    }
}

impl Neg for OperatorExpr {
    type Output = OperatorExpr;
    fn neg(mut self) -> OperatorExpr {
        for (c, _) in &mut self.terms {
            *c = -*c;
        }
        self
    }
}

impl<R: Into<OperatorExpr>> Sub<R> for OperatorExpr {
    type Output = OperatorExpr;
    fn sub(self, rhs: R) -> OperatorExpr {
        self + (-rhs.into())
    }
}

impl<R: Into<OperatorExpr>> Mul<R> for OperatorExpr {
    type Output = OperatorExpr;
    fn mul(self, rhs: R) -> OperatorExpr {
        let rhs = rhs.into();
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (ca, fa) in &self.terms {
            for (cb, fb) in &rhs.terms {
                let mut f = fa.clone();
                f.extend(fb.iter().cloned());
                terms.push((ca * cb, f));
            }
        }
        OperatorExpr { terms }
    }
}

/// Short constructors used when spelling out relations.
pub mod ops {
    use super::*;

    pub fn theta() -> OperatorExpr {
        PrimitiveOp::ThetaX.into()
    }

    pub fn phi() -> OperatorExpr {
        PrimitiveOp::PhiY.into()
    }

    pub fn dx() -> OperatorExpr {
        PrimitiveOp::DerivX.into()
    }

    pub fn dy() -> OperatorExpr {
        PrimitiveOp::DerivY.into()
    }

    pub fn x() -> OperatorExpr {
        PrimitiveOp::MulX.into()
    }

    pub fn y() -> OperatorExpr {
        PrimitiveOp::MulY.into()
    }

    pub fn x_pow(e: impl Into<Coef>) -> OperatorExpr {
        PrimitiveOp::MulXPow(e.into()).into()
    }

    pub fn y_pow(e: impl Into<Coef>) -> OperatorExpr {
        PrimitiveOp::MulYPow(e.into()).into()
    }

    pub fn delta(t: TParam) -> OperatorExpr {
        PrimitiveOp::DeltaT(t).into()
    }

    pub fn big_theta(t: TParam) -> OperatorExpr {
        PrimitiveOp::BigTheta(t).into()
    }

    /// `(1/k) Θ_t`.
    pub fn stheta(t: TParam) -> OperatorExpr {
        PrimitiveOp::ScaledBigTheta(t).into()
    }

    pub fn rho(t: TParam, power: impl Into<IntExpr>) -> OperatorExpr {
        PrimitiveOp::Rho {
            t,
            power: power.into(),
        }
        .into()
    }

    pub fn shift(p: Param, by: impl Into<IntExpr>) -> OperatorExpr {
        PrimitiveOp::Shift(p, by.into()).into()
    }

    pub fn c(c: impl Into<Coef>) -> OperatorExpr {
        OperatorExpr::coef(c)
    }
}
