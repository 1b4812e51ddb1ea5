//! Exact arithmetic in `Q(q)` and `Q(q)[u, u^{-1}]`, plus the q-combinatorial
//! primitives every other module builds on.

mod laurent;
mod qcomb;
mod ratfunc;
mod serial;
mod series;
mod upoly;

pub use laurent::LaurentPoly;
pub use qcomb::{gaussian_binomial, pochhammer_q2, q_factorial, q_integer, qpoch, qpoch_inv};
pub use ratfunc::RationalFunction;
pub(crate) use ratfunc::SumAcc;
pub use series::{series_expand, QSeries};
pub use upoly::UPoly;

/// Truncation order used by positivity checks unless overridden.
pub const DEFAULT_SERIES_ORDER: i64 = 30;
