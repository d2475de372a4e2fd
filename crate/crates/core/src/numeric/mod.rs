//! Floating-point machinery: double-double, intervals and the scalar
//! backends selected by a [`PrecisionPolicy`].

mod dd;
mod interval;
mod precision;
mod real;

pub use dd::{two_prod, two_sum, Dd};
pub use interval::Interval;
pub use precision::{Precision, PrecisionPolicy};
pub use real::{CompensatedSum, DdBall, Real};
