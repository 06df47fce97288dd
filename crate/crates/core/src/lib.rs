//! Evaluation, operator calculus and identity auditing for two discrete
//! analogues of the Appell F4 double hypergeometric series.
//!
//! The crate is organised bottom-up:
//!
//! * [`numerics`]: shifted factorials, complex log-gamma, polar-log scalars.
//! * [`series`]: coefficient grids, truncated evaluation, reductions and
//!   divergence diagnostics.
//! * [`operators`]: the difference/differential operator calculus acting on
//!   function instances, realized termwise or by parameter shifts.
//! * [`catalog`]: the registry of relations, the coefficient-wise verifier
//!   and the seeded auditor.
//! * [`quadrature`]: Gauss–Laguerre rules and integral-representation checks.

pub mod catalog;
pub mod error;
pub mod exec;
pub mod numerics;
pub mod operators;
pub mod quadrature;
pub mod series;

pub use error::{Error, Result};
pub use numerics::ComplexScalar;
