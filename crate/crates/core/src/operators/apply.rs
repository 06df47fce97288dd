use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::coef::IntExpr;
use super::expr::{OperatorExpr, PrimitiveOp, TParam};
use super::series::PowerSeries;
use crate::error::{Error, Result};
use crate::numerics::ComplexScalar;
use crate::series::{coefficient_grid, CoefficientGrid, Param, SeriesSpec};

/// How the instance's own arguments depend on the outer variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum ArgMap {
    /// `F(x, y)`.
    #[default]
    Plain,
    /// `F(x, x·y)`.
    XxY,
    /// `F(x·y, y)`.
    XyY,
}

/// A function instance `F(params + shifts; args)`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Instance {
    pub shifts: Vec<(Param, IntExpr)>,
    pub args: ArgMap,
}

impl Instance {
    pub fn base() -> Self {
        Instance::default()
    }

    pub fn shifted(shifts: &[(Param, IntExpr)]) -> Self {
        Instance {
            shifts: shifts.to_vec(),
            args: ArgMap::Plain,
        }
    }

    pub fn with_args(mut self, args: ArgMap) -> Self {
        self.args = args;
        self
    }

    pub fn resolve(&self, spec: &SeriesSpec) -> Result<SeriesSpec> {
        let mut s = spec.clone();
        for (p, d) in &self.shifts {
            s = s.shifted(*p, d.eval(spec)?)?;
        }
        Ok(s)
    }

    pub fn touches(&self, param: Param) -> bool {
        self.shifts.iter().any(|(p, _)| *p == param)
    }

    /// Coefficients of this instance as a series in the outer variables.
    pub fn series(&self, spec: &SeriesSpec, shape: GridShape) -> Result<PowerSeries> {
        let grid = coefficient_grid(&self.resolve(spec)?, shape.max_m, shape.max_n)?;
        Ok(PowerSeries::from_grid(remap(&grid.coeffs, self.args)))
    }
}

fn remap(a: &Array2<ComplexScalar>, args: ArgMap) -> Array2<ComplexScalar> {
    match args {
        ArgMap::Plain => a.clone(),
        ArgMap::XxY => Array2::from_shape_fn(a.dim(), |(m, n)| {
            if m >= n {
                a[[m - n, n]]
            } else {
                ComplexScalar::new(0.0, 0.0)
            }
        }),
        ArgMap::XyY => Array2::from_shape_fn(a.dim(), |(m, n)| {
            if n >= m {
                a[[m, n - m]]
            } else {
                ComplexScalar::new(0.0, 0.0)
            }
        }),
    }
}

/// Rectangle on which instances are expanded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridShape {
    pub max_m: usize,
    pub max_n: usize,
}

impl GridShape {
    pub fn square(m: usize) -> Self {
        GridShape { max_m: m, max_n: m }
    }
}

/// What an operator acts on: an instance, or another operator's output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Operand {
    Instance(Instance),
    Applied(OperatorExpr, Box<Operand>),
}

impl From<Instance> for Operand {
    fn from(i: Instance) -> Self {
        Operand::Instance(i)
    }
}

fn order_of(spec: &SeriesSpec, t: TParam) -> Result<u32> {
    spec.order(t.order())
}

fn scaled_theta_k(spec: &SeriesSpec, t: TParam) -> Result<f64> {
    let k = order_of(spec, t)?;
    if k == 0 {
        return Err(Error::InvalidOp(format!(
            "(1/k)Θ_{} needs k ≥ 1",
            t.param().name()
        )));
    }
    Ok(k as f64)
}

/// Exact realization: discrete operators through parameter-shifted
/// re-expansion, Euler operators through exponent weights.
pub fn apply_shifted(
    expr: &OperatorExpr,
    operand: &Operand,
    spec: &SeriesSpec,
    shape: GridShape,
) -> Result<PowerSeries> {
    let mut acc: Option<PowerSeries> = None;
    for (c, factors) in &expr.terms {
        let part = apply_factors(factors, operand, spec, shape)?.scale(*c);
        acc = Some(match acc {
            None => part,
            Some(prev) => prev.add(&part)?,
        });
    }
    match acc {
        Some(s) => Ok(s),
        None => {
            let base = eval_operand(operand, spec, shape)?;
            Ok(base.scale(ComplexScalar::new(0.0, 0.0)))
        }
    }
}

fn eval_operand(operand: &Operand, spec: &SeriesSpec, shape: GridShape) -> Result<PowerSeries> {
    match operand {
        Operand::Instance(i) => i.series(spec, shape),
        Operand::Applied(e, inner) => apply_shifted(e, inner, spec, shape),
    }
}

fn apply_factors(
    factors: &[PrimitiveOp],
    operand: &Operand,
    spec: &SeriesSpec,
    shape: GridShape,
) -> Result<PowerSeries> {
    let Some((head, rest)) = factors.split_first() else {
        return eval_operand(operand, spec, shape);
    };
    let inner = |s: &SeriesSpec| apply_factors(rest, operand, s, shape);
    match head {
        PrimitiveOp::DeltaT(t) => {
            let up = inner(&spec.shifted(t.param(), 1)?)?;
            up.sub(&inner(spec)?)
        }
        PrimitiveOp::Rho { t, power } => inner(&spec.shifted(t.param(), -power.eval(spec)?)?),
        PrimitiveOp::BigTheta(t) | PrimitiveOp::ScaledBigTheta(t) => {
            let tv = spec.get(t.param())?;
            let here = inner(spec)?;
            let down = inner(&spec.shifted(t.param(), -1)?)?;
            let mut w = tv;
            if let PrimitiveOp::ScaledBigTheta(_) = head {
                w /= scaled_theta_k(spec, *t)?;
            }
            Ok(here.sub(&down)?.scale(w))
        }
        PrimitiveOp::ThetaX => Ok(inner(spec)?.theta_x()),
        PrimitiveOp::PhiY => Ok(inner(spec)?.phi_y()),
        PrimitiveOp::DerivX => Ok(inner(spec)?.deriv_x()),
        PrimitiveOp::DerivY => Ok(inner(spec)?.deriv_y()),
        PrimitiveOp::MulX => Ok(inner(spec)?.mul_x_pow(ComplexScalar::new(1.0, 0.0))),
        PrimitiveOp::MulY => Ok(inner(spec)?.mul_y_pow(ComplexScalar::new(1.0, 0.0))),
        PrimitiveOp::MulXPow(e) => Ok(inner(spec)?.mul_x_pow(e.eval(spec)?)),
        PrimitiveOp::MulYPow(e) => Ok(inner(spec)?.mul_y_pow(e.eval(spec)?)),
        PrimitiveOp::Shift(p, d) => inner(&spec.shifted(*p, d.eval(spec)?)?),
        PrimitiveOp::Scale(c) => Ok(inner(spec)?.scale(*c)),
        PrimitiveOp::Coef(c) => Ok(inner(spec)?.scale(c.eval(spec)?)),
    }
}

/// Shift of a summation index `(dm, dn)` or of a parameter, as produced by
/// one factor acting on a single term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermAction {
    pub weight: ComplexScalar,
    pub param_shift: Option<(Param, i64)>,
    pub index_shift: (i64, i64),
}

impl TermAction {
    fn weight(w: ComplexScalar) -> Self {
        TermAction {
            weight: w,
            param_shift: None,
            index_shift: (0, 0),
        }
    }
}

fn real(v: f64) -> ComplexScalar {
    ComplexScalar::new(v, 0.0)
}

/// Index that a discrete factor `(−t)_{l k}` is attached to.
fn discrete_index(spec: &SeriesSpec, t: TParam, m: usize, n: usize) -> Result<usize> {
    match (spec, t) {
        (SeriesSpec::F41(_), TParam::T1) => Ok(m),
        (SeriesSpec::F41(_), TParam::T2) => Ok(n),
        (SeriesSpec::F42(_), TParam::T) => Ok(m + n),
        _ => Err(Error::InvalidOp(format!(
            "{} has no discrete parameter {}",
            spec.family_name(),
            t.param().name()
        ))),
    }
}

/// Action of one factor on the coefficient of `x^m y^n`.
///
/// Diagonal factors return a weight; `ρ`, `Δ` and shifts also name the
/// parameter move whose regenerated coefficient the weight multiplies.
pub fn termwise_weight(op: &PrimitiveOp, m: usize, n: usize, spec: &SeriesSpec) -> Result<TermAction> {
    Ok(match op {
        PrimitiveOp::ThetaX => TermAction::weight(real(m as f64)),
        PrimitiveOp::PhiY => TermAction::weight(real(n as f64)),
        PrimitiveOp::BigTheta(t) => {
            let l = discrete_index(spec, *t, m, n)?;
            TermAction::weight(real((l as u64 * order_of(spec, *t)? as u64) as f64))
        }
        PrimitiveOp::ScaledBigTheta(t) => {
            let l = discrete_index(spec, *t, m, n)?;
            scaled_theta_k(spec, *t)?;
            TermAction::weight(real(l as f64))
        }
        PrimitiveOp::Rho { t, power } => TermAction {
            weight: real(1.0),
            param_shift: Some((t.param(), -power.eval(spec)?)),
            index_shift: (0, 0),
        },
        PrimitiveOp::DeltaT(t) => {
            let k = order_of(spec, *t)?;
            if k != 1 {
                return Err(Error::InvalidOp(format!(
                    "Δ_{} acts diagonally only for order 1, got {k}",
                    t.param().name()
                )));
            }
            let l = discrete_index(spec, *t, m, n)?;
            let tv = spec.get(t.param())?;
            if tv == real(-1.0) {
                return Err(Error::Pole("Δ weight at t = −1".into()));
            }
            TermAction {
                weight: real(l as f64) / (tv + 1.0),
                param_shift: Some((t.param(), 1)),
                index_shift: (0, 0),
            }
        }
        PrimitiveOp::Shift(p, d) => TermAction {
            weight: real(1.0),
            param_shift: Some((*p, d.eval(spec)?)),
            index_shift: (0, 0),
        },
        PrimitiveOp::Scale(c) => TermAction::weight(*c),
        PrimitiveOp::Coef(c) => TermAction::weight(c.eval(spec)?),
        PrimitiveOp::MulX => TermAction {
            weight: real(1.0),
            param_shift: None,
            index_shift: (1, 0),
        },
        PrimitiveOp::MulY => TermAction {
            weight: real(1.0),
            param_shift: None,
            index_shift: (0, 1),
        },
        PrimitiveOp::DerivX => TermAction {
            weight: real(m as f64),
            param_shift: None,
            index_shift: (-1, 0),
        },
        PrimitiveOp::DerivY => TermAction {
            weight: real(n as f64),
            param_shift: None,
            index_shift: (0, -1),
        },
        PrimitiveOp::MulXPow(_) | PrimitiveOp::MulYPow(_) => {
            return Err(Error::InvalidOp(
                "non-integer power multipliers have no index form".into(),
            ))
        }
    })
}

/// Which discrete parameters a partially applied operand still depends on
/// only through its own `(−t)_{lk}` factors.
#[derive(Debug, Clone, Copy)]
struct Pristine {
    t1: bool,
    t2: bool,
    t: bool,
}

impl Pristine {
    fn of(inst: &Instance) -> Self {
        Pristine {
            t1: !inst.touches(Param::T1),
            t2: !inst.touches(Param::T2),
            t: !inst.touches(Param::T),
        }
    }

    fn get(&self, t: TParam) -> bool {
        match t {
            TParam::T1 => self.t1,
            TParam::T2 => self.t2,
            TParam::T => self.t,
        }
    }

    fn taint(&mut self, p: Param) {
        match p {
            Param::T1 => self.t1 = false,
            Param::T2 => self.t2 = false,
            Param::T => self.t = false,
            _ => {}
        }
    }

    fn taint_coef(&mut self, c: &super::coef::Coef) {
        for p in [Param::T1, Param::T2, Param::T] {
            if c.depends_on(p) {
                self.taint(p);
            }
        }
    }
}

/// Termwise realization: `Θ` and `Δ` act through the diagonal weights of
/// [`termwise_weight`] on the series built from the instance.
///
/// Fails with [`Error::InvalidOp`] when a `Θ_t` or `Δ_t` factor meets an
/// operand whose `t`-dependence is no longer that of a bare instance.
pub fn apply_termwise(
    expr: &OperatorExpr,
    instance: &Instance,
    spec: &SeriesSpec,
    shape: GridShape,
) -> Result<PowerSeries> {
    let mut acc: Option<PowerSeries> = None;
    for (c, factors) in &expr.terms {
        let (part, _) = termwise_factors(factors, instance, spec, shape)?;
        let part = part.scale(*c);
        acc = Some(match acc {
            None => part,
            Some(prev) => prev.add(&part)?,
        });
    }
    match acc {
        Some(s) => Ok(s),
        None => Ok(instance.series(spec, shape)?.scale(real(0.0))),
    }
}

fn termwise_factors(
    factors: &[PrimitiveOp],
    instance: &Instance,
    spec: &SeriesSpec,
    shape: GridShape,
) -> Result<(PowerSeries, Pristine)> {
    let Some((head, rest)) = factors.split_first() else {
        return Ok((instance.series(spec, shape)?, Pristine::of(instance)));
    };
    let diag = |t: TParam, pristine: &Pristine| -> Result<()> {
        if !pristine.get(t) {
            return Err(Error::InvalidOp(format!(
                "termwise Θ/Δ in {} needs an operand free of earlier {} shifts",
                spec.family_name(),
                t.param().name()
            )));
        }
        Ok(())
    };
    match head {
        PrimitiveOp::BigTheta(t) | PrimitiveOp::ScaledBigTheta(t) => {
            let (mut s, pr) = termwise_factors(rest, instance, spec, shape)?;
            diag(*t, &pr)?;
            weigh(&mut s, head, spec)?;
            Ok((s, pr))
        }
        PrimitiveOp::DeltaT(t) => {
            let shifted = spec.shifted(t.param(), 1)?;
            let (mut s, mut pr) = termwise_factors(rest, instance, &shifted, shape)?;
            diag(*t, &pr)?;
            weigh(&mut s, head, spec)?;
            pr.taint(t.param());
            Ok((s, pr))
        }
        PrimitiveOp::Rho { .. } | PrimitiveOp::Shift(..) => {
            let act = termwise_weight(head, 0, 0, spec)?;
            let (p, d) = act.param_shift.expect("shift factor");
            let (s, mut pr) = termwise_factors(rest, instance, &spec.shifted(p, d)?, shape)?;
            pr.taint(p);
            Ok((s, pr))
        }
        PrimitiveOp::Coef(c) => {
            let (s, mut pr) = termwise_factors(rest, instance, spec, shape)?;
            pr.taint_coef(c);
            Ok((s.scale(c.eval(spec)?), pr))
        }
        PrimitiveOp::MulXPow(e) => {
            let (s, mut pr) = termwise_factors(rest, instance, spec, shape)?;
            pr.taint_coef(e);
            Ok((s.mul_x_pow(e.eval(spec)?), pr))
        }
        PrimitiveOp::MulYPow(e) => {
            let (s, mut pr) = termwise_factors(rest, instance, spec, shape)?;
            pr.taint_coef(e);
            Ok((s.mul_y_pow(e.eval(spec)?), pr))
        }
        PrimitiveOp::ThetaX => {
            let (s, pr) = termwise_factors(rest, instance, spec, shape)?;
            Ok((s.theta_x(), pr))
        }
        PrimitiveOp::PhiY => {
            let (s, pr) = termwise_factors(rest, instance, spec, shape)?;
            Ok((s.phi_y(), pr))
        }
        PrimitiveOp::DerivX => {
            let (s, pr) = termwise_factors(rest, instance, spec, shape)?;
            Ok((s.deriv_x(), pr))
        }
        PrimitiveOp::DerivY => {
            let (s, pr) = termwise_factors(rest, instance, spec, shape)?;
            Ok((s.deriv_y(), pr))
        }
        PrimitiveOp::MulX => {
            let (s, pr) = termwise_factors(rest, instance, spec, shape)?;
            Ok((s.mul_x_pow(real(1.0)), pr))
        }
        PrimitiveOp::MulY => {
            let (s, pr) = termwise_factors(rest, instance, spec, shape)?;
            Ok((s.mul_y_pow(real(1.0)), pr))
        }
        PrimitiveOp::Scale(c) => {
            let (s, pr) = termwise_factors(rest, instance, spec, shape)?;
            Ok((s.scale(*c), pr))
        }
    }
}

/// Multiply every cell by the diagonal weight of `op`. The series must be a
/// bare expansion (zero exponents, indices equal to summation indices).
fn weigh(s: &mut PowerSeries, op: &PrimitiveOp, spec: &SeriesSpec) -> Result<()> {
    if s.ex != real(0.0) || s.ey != real(0.0) {
        return Err(Error::InvalidOp(
            "termwise Θ/Δ after an argument power".into(),
        ));
    }
    let cells: Vec<(usize, usize)> = s.coeffs.indexed_iter().map(|(i, _)| i).collect();
    for (m, n) in cells {
        let w = termwise_weight(op, m, n, spec)?.weight;
        s.coeffs[[m, n]] *= w;
    }
    Ok(())
}

/// Termwise application to an already built grid; parameter moves
/// regenerate grids from its provenance.
pub fn apply_expr_grid(expr: &OperatorExpr, grid: &CoefficientGrid) -> Result<PowerSeries> {
    let shape = GridShape {
        max_m: grid.max_m(),
        max_n: grid.max_n(),
    };
    apply_termwise(expr, &Instance::base(), &grid.provenance, shape)
}

/// Finite-difference step for `θ`, `φ`, `∂x`, `∂y` at argument `z`.
pub fn fd_step(z: ComplexScalar) -> f64 {
    1e-5 * z.norm().max(1.0)
}

/// Scalar realization of one factor on an evaluation closure.
pub fn apply_numeric(
    op: &PrimitiveOp,
    f: &dyn Fn(&SeriesSpec) -> Result<ComplexScalar>,
    spec: &SeriesSpec,
) -> Result<ComplexScalar> {
    let central_x = |spec: &SeriesSpec| -> Result<ComplexScalar> {
        let (x, y) = (spec.x(), spec.y());
        let h = fd_step(x);
        Ok((f(&spec.with_args(x + h, y))? - f(&spec.with_args(x - h, y))?) / (2.0 * h))
    };
    let central_y = |spec: &SeriesSpec| -> Result<ComplexScalar> {
        let (x, y) = (spec.x(), spec.y());
        let h = fd_step(y);
        Ok((f(&spec.with_args(x, y + h))? - f(&spec.with_args(x, y - h))?) / (2.0 * h))
    };
    Ok(match op {
        PrimitiveOp::DeltaT(t) => f(&spec.shifted(t.param(), 1)?)? - f(spec)?,
        PrimitiveOp::Rho { t, power } => f(&spec.shifted(t.param(), -power.eval(spec)?)?)?,
        PrimitiveOp::BigTheta(t) => {
            spec.get(t.param())? * (f(spec)? - f(&spec.shifted(t.param(), -1)?)?)
        }
        PrimitiveOp::ScaledBigTheta(t) => {
            let k = scaled_theta_k(spec, *t)?;
            spec.get(t.param())? * (f(spec)? - f(&spec.shifted(t.param(), -1)?)?) / k
        }
        PrimitiveOp::ThetaX => spec.x() * central_x(spec)?,
        PrimitiveOp::PhiY => spec.y() * central_y(spec)?,
        PrimitiveOp::DerivX => central_x(spec)?,
        PrimitiveOp::DerivY => central_y(spec)?,
        PrimitiveOp::Shift(p, d) => f(&spec.shifted(*p, d.eval(spec)?)?)?,
        PrimitiveOp::Scale(c) => c * f(spec)?,
        PrimitiveOp::Coef(c) => c.eval(spec)? * f(spec)?,
        PrimitiveOp::MulX => spec.x() * f(spec)?,
        PrimitiveOp::MulY => spec.y() * f(spec)?,
        PrimitiveOp::MulXPow(e) => {
            let x = spec.x();
            (e.eval(spec)? * x.ln()).exp() * f(spec)?
        }
        PrimitiveOp::MulYPow(e) => {
            let y = spec.y();
            (e.eval(spec)? * y.ln()).exp() * f(spec)?
        }
    })
}
