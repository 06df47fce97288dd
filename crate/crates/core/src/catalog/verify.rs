use serde::{Deserialize, Serialize};

use super::identity::{Family, Identity, RelTerm, Relation, Target};
use crate::error::{Error, Result};
use crate::numerics::ComplexScalar;
use crate::operators::{apply_shifted, GridShape, Operand, PowerSeries};
use crate::series::{Order, Param, SeriesSpec};

/// Default relative tolerance for coefficient-wise checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyMode {
    /// Compare coefficients on the truncation rectangle.
    #[default]
    Coefficientwise,
    /// Compare exact finite sums at the sampled arguments.
    SummedTerminating,
}

/// A parameter point together with the free integer `r` or `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SamplePoint {
    pub spec: SeriesSpec,
    pub index: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    pub mode: VerifyMode,
    pub shape: GridShape,
    pub tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: VerifyMode::Coefficientwise,
            shape: GridShape::square(12),
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

impl VerifyOptions {
    pub fn summed(shape: GridShape) -> Self {
        VerifyOptions {
            mode: VerifyMode::SummedTerminating,
            shape,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelationReport {
    pub identity_id: String,
    pub params: SamplePoint,
    pub mode: VerifyMode,
    pub max_abs_residual: f64,
    pub scale: f64,
    pub rel_residual: f64,
    pub pass: bool,
    pub cells_checked: usize,
    pub tolerance: f64,
}

fn term_series(t: &RelTerm, spec: &SeriesSpec, shape: GridShape) -> Result<PowerSeries> {
    let c = t.coef.eval(spec)?;
    let s = apply_shifted(&t.op, &Operand::Instance(t.instance.clone()), spec, shape)?;
    Ok(s.scale(c))
}

/// `Σ coef · op F(shift)` over one side, on the common exact window.
pub fn side_series(terms: &[RelTerm], spec: &SeriesSpec, shape: GridShape) -> Result<PowerSeries> {
    let all = terms
        .iter()
        .map(|t| term_series(t, spec, shape))
        .collect::<Result<Vec<_>>>()?;
    let refs: Vec<&PowerSeries> = all.iter().collect();
    let aligned = PowerSeries::align(&refs)?;
    let mut it = aligned.into_iter();
    let mut acc = it
        .next()
        .ok_or_else(|| Error::InvalidArgument("empty relation side".into()))?;
    for s in it {
        acc.coeffs += &s.coeffs;
    }
    Ok(acc)
}

/// `(max |lhs − rhs|, scale, cells)` for one relation.
fn residual(
    rel: &Relation,
    spec: &SeriesSpec,
    opts: &VerifyOptions,
) -> Result<(f64, f64, usize)> {
    let lhs = rel
        .lhs
        .iter()
        .map(|t| term_series(t, spec, opts.shape))
        .collect::<Result<Vec<_>>>()?;
    let rhs = rel
        .rhs
        .iter()
        .map(|t| term_series(t, spec, opts.shape))
        .collect::<Result<Vec<_>>>()?;
    match opts.mode {
        VerifyMode::Coefficientwise => {
            let refs: Vec<&PowerSeries> = lhs.iter().chain(rhs.iter()).collect();
            let aligned = PowerSeries::align(&refs)?;
            let scale = aligned.iter().map(PowerSeries::max_abs).fold(0.0, f64::max);
            let mut diff = aligned[0].coeffs.clone();
            diff.fill(ComplexScalar::new(0.0, 0.0));
            for (i, s) in aligned.iter().enumerate() {
                if i < lhs.len() {
                    diff += &s.coeffs;
                } else {
                    diff -= &s.coeffs;
                }
            }
            let max_abs = diff.iter().map(|v| v.norm()).fold(0.0, f64::max);
            Ok((max_abs, scale, diff.len()))
        }
        VerifyMode::SummedTerminating => {
            let (x, y) = (spec.x(), spec.y());
            let mut total = ComplexScalar::new(0.0, 0.0);
            let mut scale = 0.0f64;
            let mut cells = 0;
            for (i, s) in lhs.iter().chain(rhs.iter()).enumerate() {
                ensure_terminating(s)?;
                let v = s.sum_at(x, y);
                if i < lhs.len() {
                    total += v;
                } else {
                    total -= v;
                }
                scale = scale.max(s.max_weighted(x, y)).max(v.norm());
                cells += s.coeffs.len();
            }
            Ok((total.norm(), scale, cells))
        }
    }
}

fn ensure_terminating(s: &PowerSeries) -> Result<()> {
    let (r, c) = s.coeffs.dim();
    let zero = ComplexScalar::new(0.0, 0.0);
    let last_row = (0..c).all(|n| s.coeffs[[r - 1, n]] == zero);
    let last_col = (0..r).all(|m| s.coeffs[[m, c - 1]] == zero);
    if last_row && last_col {
        Ok(())
    } else {
        Err(Error::NotTerminating(format!(
            "nonzero coefficients on the boundary of the {r}x{c} rectangle"
        )))
    }
}

fn check_constraints(ident: &Identity, point: &SamplePoint) -> Result<()> {
    let spec = &point.spec;
    let family_ok = matches!(
        (ident.target, spec),
        (Target::F41, SeriesSpec::F41(_)) | (Target::F42, SeriesSpec::F42(_))
    );
    if !family_ok {
        return Err(Error::Constraint(format!(
            "{} needs a {} parameter point, got {}",
            ident.id,
            ident.target,
            spec.family_name()
        )));
    }
    let c = &ident.constraints;
    let need_one = |o: Order, name: &str| -> Result<()> {
        if spec.order(o)? != 1 {
            return Err(Error::Constraint(format!("{} requires {name} = 1", ident.id)));
        }
        Ok(())
    };
    if c.k1_one {
        need_one(Order::K1, "k1")?;
    }
    if c.k2_one {
        need_one(Order::K2, "k2")?;
    }
    if c.k_one {
        need_one(Order::K, "k")?;
    }
    if c.k_parity_differs && (spec.order(Order::K1)? + spec.order(Order::K2)?) % 2 == 0 {
        return Err(Error::Constraint(format!(
            "{} requires k1 and k2 of opposite parity",
            ident.id
        )));
    }
    if c.indexed && point.index < c.min_index {
        return Err(Error::Constraint(format!(
            "{} requires index >= {}, got {}",
            ident.id, c.min_index, point.index
        )));
    }
    if ident.family == Family::A_ddeq {
        let orders: &[Order] = match ident.target {
            Target::F41 => &[Order::K1, Order::K2],
            Target::F42 => &[Order::K],
        };
        for o in orders {
            if spec.order(*o)? == 0 {
                return Err(Error::Constraint(format!("{} requires orders >= 1", ident.id)));
            }
        }
    }
    for p in [Param::C1, Param::C2] {
        let v = spec.get(p)?;
        if v.im == 0.0 && v.re <= 0.0 && v.re == v.re.round() {
            return Err(Error::Constraint(format!(
                "{} = {v} is a pole of the series",
                p.name()
            )));
        }
    }
    Ok(())
}

/// Check one identity at one parameter point.
pub fn verify_identity(
    ident: &Identity,
    point: &SamplePoint,
    opts: &VerifyOptions,
) -> Result<RelationReport> {
    check_constraints(ident, point)?;
    let rel = ident.relation(point.index);
    let (max_abs, scale, cells) = residual(&rel, &point.spec, opts)?;
    let rel_residual = max_abs / scale.max(1e-300);
    Ok(RelationReport {
        identity_id: ident.id.clone(),
        params: point.clone(),
        mode: opts.mode,
        max_abs_residual: max_abs,
        scale,
        rel_residual,
        pass: rel_residual <= opts.tolerance,
        cells_checked: cells,
        tolerance: opts.tolerance,
    })
}

/// Check a recursion-sum identity at summation depth `s`.
pub fn verify_recursion_sum(
    ident: &Identity,
    spec: &SeriesSpec,
    s: i64,
    opts: &VerifyOptions,
) -> Result<RelationReport> {
    if ident.family != Family::D_recursion_sums {
        return Err(Error::InvalidArgument(format!(
            "{} is not a recursion-sum identity",
            ident.id
        )));
    }
    if s < 1 {
        return Err(Error::Constraint(format!("summation depth must be >= 1, got {s}")));
    }
    verify_identity(
        ident,
        &SamplePoint {
            spec: spec.clone(),
            index: s,
        },
        opts,
    )
}
