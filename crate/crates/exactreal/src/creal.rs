//! Computable reals under the precision-query contract
//! `|query(k) - x| < 2^-k`.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::dyadic::{Dir, Dyadic};
use crate::error::RealError;
use crate::interval::DyadicInterval;
use crate::rational::{dyadic_to_rational, rat_to_dyadic, Rational};
use crate::Result;

enum Repr {
    Exact(Rational),
    Thunk {
        refiner: Box<dyn Fn(u32) -> Result<DyadicInterval> + Send + Sync>,
        // Last enclosure seen, for the pairwise-intersection contract check.
        last: Mutex<Option<DyadicInterval>>,
    },
}

/// A real number accessed through precision queries.
///
/// `query(k)` returns a dyadic `q` with `|q - x| < 2^-k`. Exact rationals
/// answer by directed rounding; refiner-backed reals answer by midpoints of
/// shrinking enclosures and detect contract violations (non-intersecting
/// enclosures) as they are observed.
#[derive(Clone)]
pub struct CReal(Arc<Repr>);

impl CReal {
    pub fn from_rational(r: Rational) -> CReal {
        CReal(Arc::new(Repr::Exact(r)))
    }

    pub fn from_int(n: i64) -> CReal {
        CReal::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_dyadic(d: &Dyadic) -> CReal {
        CReal::from_rational(dyadic_to_rational(d))
    }

    /// Wraps a refiner `k -> enclosure of x with width < 2^-k`.
    ///
    /// The refiner's enclosures must pairwise intersect; a detected
    /// violation surfaces as [`RealError::ContractViolation`].
    pub fn from_refiner<F>(refiner: F) -> CReal
    where
        F: Fn(u32) -> Result<DyadicInterval> + Send + Sync + 'static,
    {
        CReal(Arc::new(Repr::Thunk {
            refiner: Box::new(refiner),
            last: Mutex::new(None),
        }))
    }

    /// Is this real stored as an exact rational?
    pub fn as_exact(&self) -> Option<&Rational> {
        match &*self.0 {
            Repr::Exact(r) => Some(r),
            Repr::Thunk { .. } => None,
        }
    }

    /// `|result - x| < 2^-k`.
    pub fn query(&self, k: u32) -> Result<Dyadic> {
        match &*self.0 {
            Repr::Exact(r) => rat_to_dyadic(r, -i64::from(k) - 1, Dir::Down),
            Repr::Thunk { refiner, last } => {
                let enc = refiner(k + 1)?;
                if !enc.width_le_pow2(i64::from(k) + 1) {
                    return Err(RealError::ContractViolation(format!(
                        "refiner enclosure at k={} wider than 2^-{}",
                        k + 1,
                        k + 1
                    )));
                }
                let mut guard = last.lock().unwrap();
                if let Some(prev) = &*guard {
                    if prev.is_disjoint(&enc) {
                        return Err(RealError::ContractViolation(
                            "refiner produced non-intersecting enclosures".into(),
                        ));
                    }
                    if enc.width_up() < prev.width_up() {
                        *guard = Some(enc);
                    }
                } else {
                    *guard = Some(enc);
                }
                Ok(enc.mid())
            }
        }
    }

    /// Enclosure of the real with width at most `2^-k`.
    pub fn enclose(&self, k: u32) -> Result<DyadicInterval> {
        match &*self.0 {
            Repr::Exact(r) => {
                let lo = rat_to_dyadic(r, -i64::from(k) - 1, Dir::Down)?;
                let hi = rat_to_dyadic(r, -i64::from(k) - 1, Dir::Up)?;
                DyadicInterval::new(lo, hi)
            }
            _ => {
                let q = self.query(k + 2)?;
                Ok(DyadicInterval::point(q).widen_pow2(i64::from(k) + 2))
            }
        }
    }

    /// Float approximation for heuristics only.
    pub fn to_f64(&self) -> f64 {
        self.query(48).map(|d| d.to_f64()).unwrap_or(f64::NAN)
    }
}

impl fmt::Debug for CReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Repr::Exact(r) => write!(f, "CReal({r})"),
            Repr::Thunk { .. } => write!(f, "CReal(~{})", self.to_f64()),
        }
    }
}

/// Outcome of comparing two computable reals at precision `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Separation {
    Less,
    Greater,
    /// The `k`-enclosures overlap; equality is only semidecidable.
    Undecided,
}

/// Decides `a < b` or `a > b` when the `k`-enclosures are disjoint.
/// Never wrong when decided.
pub fn separate(a: &CReal, b: &CReal, k: u32) -> Result<Separation> {
    let ea = a.enclose(k)?;
    let eb = b.enclose(k)?;
    if ea.hi() < eb.lo() {
        Ok(Separation::Less)
    } else if eb.hi() < ea.lo() {
        Ok(Separation::Greater)
    } else {
        Ok(Separation::Undecided)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use num_traits::Signed;

    #[test]
    fn exact_query_contract() {
        let x = CReal::from_rational(rat(1, 3));
        for k in [0u32, 5, 20, 50] {
            let q = x.query(k).unwrap();
            let err = (dyadic_to_rational(&q) - rat(1, 3)).abs();
            assert!(err < rat(1, 1) / Rational::from_integer((1i64 << k.min(62)).into()));
        }
    }

    #[test]
    fn query_consistency() {
        let x = CReal::from_rational(rat(-7, 11));
        for k in [1u32, 3, 9] {
            for j in [0u32, 2, 5] {
                let a = dyadic_to_rational(&x.query(k).unwrap());
                let b = dyadic_to_rational(&x.query(k + j).unwrap());
                let bound = rat(1, 1) / Rational::from_integer((1i64 << k).into())
                    + rat(1, 1) / Rational::from_integer((1i64 << (k + j).min(62)).into());
                assert!((a - b).abs() < bound);
            }
        }
    }

    #[test]
    fn refiner_constant() {
        let one = CReal::from_refiner(|_k| Ok(DyadicInterval::ONE));
        assert_eq!(one.query(10).unwrap(), Dyadic::ONE);
    }

    #[test]
    fn refiner_contract_violation() {
        // Disjoint enclosures at successive calls must be detected.
        let broken = CReal::from_refiner(|k| {
            if k <= 4 {
                DyadicInterval::new(Dyadic::ZERO, Dyadic::pow2(-i64::from(k)))
            } else {
                DyadicInterval::new(Dyadic::from_int(1), Dyadic::from_int(1))
            }
        });
        let first = broken.query(3);
        assert!(first.is_ok());
        let second = broken.query(9);
        assert!(matches!(second, Err(RealError::ContractViolation(_))));
    }

    #[test]
    fn separate_decides_and_abstains() {
        let zero = CReal::from_int(0);
        let one = CReal::from_int(1);
        assert_eq!(separate(&zero, &one, 2).unwrap(), Separation::Less);
        assert_eq!(separate(&zero, &zero, 30).unwrap(), Separation::Undecided);
        let tiny = CReal::from_rational(rat(1, 256));
        assert_eq!(separate(&zero, &tiny, 4).unwrap(), Separation::Undecided);
        assert_eq!(separate(&zero, &tiny, 10).unwrap(), Separation::Less);
    }
}
