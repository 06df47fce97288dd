//! Operator calculus on function instances.
//!
//! An [`OperatorExpr`] is a sum of ordered products of [`PrimitiveOp`]s. It
//! acts on an [`Operand`] (a parameter-shifted, argument-remapped instance of
//! the series) and yields a [`PowerSeries`] on the truncation rectangle.
//!
//! Two realizations are provided:
//!
//! * [`apply_shifted`] evaluates `Δ`, `ρ` and `Θ` through their definitions
//!   as parameter-shifted re-expansions and is exact for every expression.
//! * [`apply_termwise`] uses the diagonal action of `Θ` and order-one `Δ` on
//!   individual terms; it is restricted to operands whose discrete parameter
//!   has not already been moved.
//!
//! [`apply_numeric`] is the scalar counterpart on an evaluation closure and
//! uses central differences for the Euler operators.

mod apply;
mod coef;
mod expr;
mod series;

pub use apply::{
    apply_expr_grid, apply_numeric, apply_shifted, apply_termwise, fd_step, termwise_weight,
    ArgMap, GridShape, Instance, Operand, TermAction,
};
pub use coef::{Coef, IntExpr};
pub use expr::{ops, OperatorExpr, PrimitiveOp, TParam};
pub use series::PowerSeries;
