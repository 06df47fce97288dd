//! Term generation, coefficient grids, truncated summation, convergence
//! diagnostics and the order-zero/one reductions.

mod diagnostics;
mod eval;
mod grid;
mod params;
mod reduce;

pub use diagnostics::{divergence_diagnostic, DivergenceReport};
pub use eval::{
    convergence_region, eval, eval_f41, eval_f42, eval_f4_classic, eval_kdf, EvaluationResult,
    TruncationMode, TruncationPolicy,
};
pub use grid::{
    coefficient_grid, scratch_grid, term, term_f41, term_f42, CoefficientGrid, REFRESH_STRIDE,
};
pub use params::{F41Params, F42Params, F4Params, KdfParams, Order, Param, SeriesSpec};
pub use reduce::{reduce_to_kdf, KdfReduction};
