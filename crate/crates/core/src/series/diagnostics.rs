use ndarray::Array2;
use serde::{Deserialize, Serialize};

use super::grid::Kernel;
use super::params::SeriesSpec;
use crate::error::{Error, Result};
use crate::numerics::ComplexScalar;

/// Empirical term-ratio profile of one series.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceReport {
    /// `r_d = max|T| on diagonal d+1 / max|T| on diagonal d`.
    pub ratios: Vec<f64>,
    /// The final quartile of `ratios` is strictly increasing and above 1.
    pub growth_flag: bool,
    /// Every ratio of the final quartile exceeds 1.
    pub divergence_flag: bool,
}

/// Largest term magnitude on each complete anti-diagonal `m + n = d`,
/// `d = 0..=min(M, N)`.
pub(crate) fn diagonal_maxima(terms: &Array2<ComplexScalar>) -> Vec<f64> {
    let (rows, cols) = terms.dim();
    let full = rows.min(cols) - 1;
    (0..=full)
        .map(|d| (0..=d).map(|m| terms[[m, d - m]].norm()).fold(0.0, f64::max))
        .collect()
}

pub(crate) fn diagonal_ratios(maxima: &[f64]) -> Vec<f64> {
    maxima
        .windows(2)
        .map(|w| match (w[0], w[1]) {
            (_, 0.0) => 0.0,
            (0.0, _) => f64::INFINITY,
            (a, b) => b / a,
        })
        .collect()
}

pub(crate) fn final_quartile(ratios: &[f64]) -> &[f64] {
    if ratios.is_empty() {
        return ratios;
    }
    let len = ratios.len().div_ceil(4);
    &ratios[ratios.len() - len..]
}

/// Term-ratio profile on the square `0..=M × 0..=M` at the spec's arguments.
pub fn divergence_diagnostic(spec: &SeriesSpec, max_m: usize) -> Result<DivergenceReport> {
    if max_m < 8 {
        return Err(Error::InvalidArgument(format!(
            "diagnostic needs M >= 8, got {max_m}"
        )));
    }
    let terms = Kernel::new(spec).weighted_grid(max_m, max_m, spec.x(), spec.y())?;
    let ratios = diagonal_ratios(&diagonal_maxima(&terms));
    let tail = final_quartile(&ratios);
    let above = tail.iter().all(|r| *r > 1.0);
    let increasing = tail.windows(2).all(|w| w[1] > w[0]);
    Ok(DivergenceReport {
        growth_flag: above && increasing,
        divergence_flag: above,
        ratios,
    })
}
