//! Gauss–Laguerre rules built from the Jacobi matrix, and cross-checks of
//! the Gamma-integral representations of the first discrete analogue.

mod integral;
mod laguerre;

pub use integral::{
    default_tolerance, integral_rep_check, integral_rep_check_tol, integral_rep_value,
    integrand_kdf, IntegralRepSpec, QuadCheckReport, Representation,
};
pub use laguerre::{
    generalized_laguerre_rule, laguerre_rule, LaguerreRule, MAX_ORDER, MIN_ORDER,
};
