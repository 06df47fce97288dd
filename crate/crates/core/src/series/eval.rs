use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::diagnostics::{diagonal_maxima, diagonal_ratios, final_quartile};
use super::grid::Kernel;
use super::params::{F41Params, F42Params, F4Params, KdfParams, SeriesSpec};
use crate::error::{Error, Result};
use crate::numerics::ComplexScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationMode {
    FixedRectangle,
    Adaptive,
}

/// Summation rectangle `0..=max_m × 0..=max_n` and the stopping rule.
///
/// In adaptive mode anti-diagonals are summed in order and summation stops
/// once three consecutive diagonals each add less than `tail_tol` times the
/// running sum; the rectangle is then only an upper bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationPolicy {
    pub max_m: usize,
    pub max_n: usize,
    pub tail_tol: f64,
    pub mode: TruncationMode,
}

impl TruncationPolicy {
    pub fn fixed(max_m: usize, max_n: usize) -> Self {
        TruncationPolicy {
            max_m,
            max_n,
            tail_tol: 1e-16,
            mode: TruncationMode::FixedRectangle,
        }
    }

    pub fn adaptive(max_m: usize, max_n: usize, tail_tol: f64) -> Self {
        TruncationPolicy {
            max_m,
            max_n,
            tail_tol,
            mode: TruncationMode::Adaptive,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.tail_tol.is_nan() || self.tail_tol <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "tail tolerance must be positive, got {}",
                self.tail_tol
            )));
        }
        Ok(())
    }
}

impl Default for TruncationPolicy {
    fn default() -> Self {
        TruncationPolicy::fixed(40, 40)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationResult {
    pub value: ComplexScalar,
    /// Nonzero terms that entered the sum.
    pub terms_used: usize,
    /// Geometric bound on the omitted tail; `+∞` when ratios do not decay.
    pub tail_estimate: f64,
    pub divergence_flag: bool,
    pub max_term_ratio: f64,
    /// Set for classical F4 outside `√|x| + √|y| < 1`.
    pub region_warning: bool,
}

/// `inside = √|x| + √|y| < 1`, `margin = 1 − √|x| − √|y|`.
pub fn convergence_region(x: ComplexScalar, y: ComplexScalar) -> (bool, f64) {
    let margin = 1.0 - x.norm().sqrt() - y.norm().sqrt();
    (margin > 0.0, margin)
}

pub fn eval(spec: &SeriesSpec, pol: &TruncationPolicy) -> Result<EvaluationResult> {
    pol.validate()?;
    let terms = Kernel::new(spec).weighted_grid(pol.max_m, pol.max_n, spec.x(), spec.y())?;
    let mut res = sum_grid(&terms, pol)?;
    if let SeriesSpec::F4(_) = spec {
        res.region_warning = !convergence_region(spec.x(), spec.y()).0;
    }
    Ok(res)
}

pub fn eval_f41(p: &F41Params, pol: &TruncationPolicy) -> Result<EvaluationResult> {
    eval(&SeriesSpec::F41(*p), pol)
}

pub fn eval_f42(p: &F42Params, pol: &TruncationPolicy) -> Result<EvaluationResult> {
    eval(&SeriesSpec::F42(*p), pol)
}

pub fn eval_kdf(p: &KdfParams, pol: &TruncationPolicy) -> Result<EvaluationResult> {
    eval(&SeriesSpec::Kdf(p.clone()), pol)
}

pub fn eval_f4_classic(
    a: ComplexScalar,
    b: ComplexScalar,
    c1: ComplexScalar,
    c2: ComplexScalar,
    x: ComplexScalar,
    y: ComplexScalar,
    pol: &TruncationPolicy,
) -> Result<EvaluationResult> {
    eval(&SeriesSpec::F4(F4Params { a, b, c1, c2, x, y }), pol)
}

fn sum_grid(terms: &Array2<ComplexScalar>, pol: &TruncationPolicy) -> Result<EvaluationResult> {
    let (rows, cols) = terms.dim();
    let last_diag = rows + cols - 2;
    let mut value = ComplexScalar::new(0.0, 0.0);
    let mut terms_used = 0usize;
    let mut quiet = 0usize;
    let mut last_summed = last_diag;
    for d in 0..=last_diag {
        let mut diag = ComplexScalar::new(0.0, 0.0);
        for m in d.saturating_sub(cols - 1)..=d.min(rows - 1) {
            let t = terms[[m, d - m]];
            if t != ComplexScalar::new(0.0, 0.0) {
                terms_used += 1;
            }
            diag += t;
        }
        value += diag;
        if pol.mode == TruncationMode::Adaptive {
            if diag.norm() < pol.tail_tol * value.norm() {
                quiet += 1;
            } else {
                quiet = 0;
            }
            if quiet >= 3 {
                last_summed = d;
                break;
            }
        }
    }
    if !(value.re.is_finite() && value.im.is_finite()) {
        return Err(Error::Overflow("partial sum".into()));
    }

    let maxima = diagonal_maxima(terms);
    let ratios = diagonal_ratios(&maxima);
    let tail = final_quartile(&ratios);
    let divergence_flag = !tail.is_empty() && tail.iter().all(|r| *r > 1.0);
    let max_term_ratio = ratios
        .iter()
        .copied()
        .filter(|r| r.is_finite())
        .fold(0.0, f64::max);

    let full = rows.min(cols) - 1;
    let probe = full.min(last_summed);
    let tail_estimate = tail_bound(terms, probe, &ratios);
    Ok(EvaluationResult {
        value,
        terms_used,
        tail_estimate,
        divergence_flag,
        max_term_ratio,
        region_warning: false,
    })
}

fn tail_bound(terms: &Array2<ComplexScalar>, d: usize, ratios: &[f64]) -> f64 {
    let (rows, cols) = terms.dim();
    let weight: f64 = (d.saturating_sub(cols - 1)..=d.min(rows - 1))
        .map(|m| terms[[m, d - m]].norm())
        .sum();
    if weight == 0.0 {
        return 0.0;
    }
    match d.checked_sub(1).and_then(|i| ratios.get(i)) {
        Some(&r) if r < 1.0 => weight * r / (1.0 - r),
        _ => f64::INFINITY,
    }
}
