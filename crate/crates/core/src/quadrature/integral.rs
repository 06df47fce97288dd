use serde::{Deserialize, Serialize};

use super::laguerre::LaguerreRule;
use crate::error::{Error, Result};
use crate::numerics::{ln_gamma, rel_diff, ComplexScalar};
use crate::series::{eval_f41, eval_kdf, F41Params, KdfParams, TruncationPolicy};

/// Which numerator shifted factorial is traded for the Gamma integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    /// Weight `u^{a−1}`, inner coupled numerator `b`.
    RepA,
    /// Weight `u^{b−1}`, inner coupled numerator `a`.
    RepB,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralRepSpec {
    pub which: Representation,
    pub k: u32,
    pub params: F41Params,
}

impl IntegralRepSpec {
    pub fn new(which: Representation, k: u32, params: F41Params) -> Self {
        let mut params = params;
        params.k1 = k;
        params.k2 = k;
        IntegralRepSpec { which, k, params }
    }

    /// `(outer, inner)`: the exponent parameter and the inner coupled numerator.
    fn split(&self) -> (ComplexScalar, ComplexScalar) {
        match self.which {
            Representation::RepA => (self.params.a, self.params.b),
            Representation::RepB => (self.params.b, self.params.a),
        }
    }

    /// The `alpha` that makes the rule's weight match `u^{Re(outer)−1}`.
    pub fn natural_alpha(&self) -> f64 {
        self.split().0.re - 1.0
    }

    fn validate(&self) -> Result<()> {
        let p = &self.params;
        if p.k1 != self.k || p.k2 != self.k {
            return Err(Error::Constraint(format!(
                "integral representation needs k1 = k2 = k = {}, got ({}, {})",
                self.k, p.k1, p.k2
            )));
        }
        let (outer, _) = self.split();
        if outer.re <= 0.0 {
            return Err(Error::Constraint(format!(
                "Gamma integral needs a positive real part, got {outer}"
            )));
        }
        if self.k >= 1 {
            for (name, t) in [("t1", p.t1), ("t2", p.t2)] {
                if t.im != 0.0 || t.re < 0.0 || t.re != t.re.round() {
                    return Err(Error::NotTerminating(format!(
                        "{name} = {t} must be a nonnegative integer when k >= 1"
                    )));
                }
            }
        }
        Ok(())
    }

    /// The inner double series at `u`.
    fn inner(&self, u: f64) -> KdfParams {
        let p = &self.params;
        let k = self.k;
        let (_, num) = self.split();
        let kf = k as f64;
        let seq = |t: ComplexScalar| -> Vec<ComplexScalar> {
            (0..k).map(|i| (-t + i as f64) / kf).collect()
        };
        let scale = (-kf).powi(k as i32) * u;
        KdfParams {
            coupled_num: vec![num],
            x_num: seq(p.t1),
            y_num: seq(p.t2),
            coupled_den: vec![],
            x_den: vec![p.c1],
            y_den: vec![p.c2],
            x: p.x * scale,
            y: p.y * scale,
        }
    }
}

/// The inner series value at `u`.
pub fn integrand_kdf(spec: &IntegralRepSpec, u: f64, pol: &TruncationPolicy) -> Result<ComplexScalar> {
    spec.validate()?;
    Ok(eval_kdf(&spec.inner(u), pol)?.value)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadCheckReport {
    pub which: Representation,
    pub k: u32,
    pub params: F41Params,
    pub order: usize,
    pub alpha: f64,
    pub quadrature_value: ComplexScalar,
    pub series_value: ComplexScalar,
    pub abs_residual: f64,
    pub rel_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Acceptance threshold used when none is given.
pub fn default_tolerance(k: u32) -> f64 {
    if k == 0 {
        1e-8
    } else {
        1e-10
    }
}

/// `(1/Γ(p)) Σ wᵢ uᵢ^{p−1−α} · inner(uᵢ)` with `p` the outer parameter.
pub fn integral_rep_value(
    spec: &IntegralRepSpec,
    rule: &LaguerreRule,
    pol: &TruncationPolicy,
) -> Result<ComplexScalar> {
    spec.validate()?;
    let (outer, _) = spec.split();
    let lg = ln_gamma(outer);
    let expo = outer - 1.0 - rule.alpha;
    let mut total = ComplexScalar::new(0.0, 0.0);
    for (u, lw) in rule.nodes.iter().zip(&rule.log_weights) {
        let f = eval_kdf(&spec.inner(*u), pol)?.value;
        if f == ComplexScalar::new(0.0, 0.0) {
            continue;
        }
        let w = (expo * u.ln() + *lw - lg).exp();
        total += w * f;
    }
    Ok(total)
}

/// Compare the quadrature value with the direct series.
pub fn integral_rep_check(
    spec: &IntegralRepSpec,
    rule: &LaguerreRule,
    pol: &TruncationPolicy,
) -> Result<QuadCheckReport> {
    integral_rep_check_tol(spec, rule, pol, default_tolerance(spec.k))
}

pub fn integral_rep_check_tol(
    spec: &IntegralRepSpec,
    rule: &LaguerreRule,
    pol: &TruncationPolicy,
    tolerance: f64,
) -> Result<QuadCheckReport> {
    let quadrature_value = integral_rep_value(spec, rule, pol)?;
    let series_value = eval_f41(&spec.params, pol)?.value;
    let rel_residual = rel_diff(quadrature_value, series_value);
    Ok(QuadCheckReport {
        which: spec.which,
        k: spec.k,
        params: spec.params,
        order: rule.order,
        alpha: rule.alpha,
        quadrature_value,
        series_value,
        abs_residual: (quadrature_value - series_value).norm(),
        rel_residual,
        tolerance,
        pass: rel_residual <= tolerance,
    })
}
