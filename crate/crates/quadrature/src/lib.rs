//! Certified integration: adaptive bounded quadrature with enclosure cells,
//! dominated improper integrals via verified tail cutoffs, parametric
//! integrals, cumulative integrals with computable moduli of continuity, and
//! expectations from tail-distribution functions.
//!
//! The only quadrature rule is interval-based: a cell `[a,b]` contributes
//! either `width * f([a,b])` (zeroth order) or a midpoint value plus a
//! rigorous `f''` remainder when the integrand exposes Taylor jets. Both are
//! enclosures, never estimates; hitting a budget is an error, not a wide
//! answer silently accepted.

mod dominator;
mod integrand;
mod integrate;
mod ops;

pub use dominator::{Dominator, DominatorFamily};
pub use integrand::{ClosureFn, ClosureFn2, IntervalFn, IntervalFn2};
pub use integrate::{integrate_bounded, integrate_bounded_lenient, QuadBudget};
pub use ops::{
    cumulative_integral, exp_power_integral, expectation_from_tail, integrate_dominated,
    integrate_dominated_interval, parametric_integral, CumulativeIntegral, Modulus,
    ParametricIntegral,
};
