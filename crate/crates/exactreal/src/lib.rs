//! Exact dyadic scalars, outward-rounded interval arithmetic, certified
//! enclosures of elementary functions, and the precision-query contract for
//! computable reals.
//!
//! Everything downstream (quadrature, distribution evaluation, norm oracles)
//! reduces to the primitives in this crate. The contracts are:
//!
//! * [`Dyadic`]: exact `m * 2^e` arithmetic for `+`, `-`, `*`; directed
//!   rounding everywhere an operation is inexact.
//! * [`DyadicInterval`]: every operation returns an enclosure of the exact
//!   image of its inputs (outward rounding, never inward).
//! * [`CReal`]: `|query(k) - x| < 2^-k` for the represented real `x`.

mod creal;
mod dyadic;
mod elem;
mod error;
mod interval;
mod jet;
mod rational;

pub mod consts;

pub use creal::{separate, CReal, Separation};
pub use dyadic::Dyadic;
pub use elem::{
    interval_abs, interval_cos, interval_exp, interval_ln, interval_pow, interval_powi,
    interval_sin, interval_sqrt, interval_tan,
};
pub use error::RealError;
pub use interval::DyadicInterval;
pub use jet::Jet;
pub use rational::{rat, rat_to_dyadic_interval, CScalar, Rational};

/// Result alias used across the numeric kernels.
pub type Result<T> = std::result::Result<T, RealError>;
