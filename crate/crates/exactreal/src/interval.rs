use std::fmt;

use crate::dyadic::{Dir, Dyadic};
use crate::error::RealError;
use crate::Result;

/// A closed interval with dyadic endpoints, `lo <= hi`.
///
/// Every operation encloses the exact image of its operands. Exact endpoint
/// arithmetic is used when it fits; otherwise endpoints are rounded outward
/// (`lo` down, `hi` up), so soundness never depends on representability.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct DyadicInterval {
    lo: Dyadic,
    hi: Dyadic,
}

/// Default significand size kept by rounded interval operations.
pub(crate) const DEFAULT_SIG: u32 = 64;

impl DyadicInterval {
    pub const ZERO: DyadicInterval = DyadicInterval { lo: Dyadic::ZERO, hi: Dyadic::ZERO };
    pub const ONE: DyadicInterval = DyadicInterval { lo: Dyadic::ONE, hi: Dyadic::ONE };

    pub fn new(lo: Dyadic, hi: Dyadic) -> Result<DyadicInterval> {
        if lo > hi {
            return Err(RealError::ContractViolation(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(DyadicInterval { lo, hi })
    }

    pub fn point(x: Dyadic) -> DyadicInterval {
        DyadicInterval { lo: x, hi: x }
    }

    pub fn from_int(n: i64) -> DyadicInterval {
        DyadicInterval::point(Dyadic::from_int(n))
    }

    /// `[-2^e, 2^e]`, the standard slack interval.
    pub fn pm_pow2(e: i64) -> DyadicInterval {
        DyadicInterval { lo: Dyadic::pow2(e).neg(), hi: Dyadic::pow2(e) }
    }

    pub fn lo(&self) -> Dyadic {
        self.lo
    }

    pub fn hi(&self) -> Dyadic {
        self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Dyadic) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Dyadic::ZERO)
    }

    pub fn encloses(&self, other: &DyadicInterval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn strictly_positive(&self) -> bool {
        self.lo.signum() > 0
    }

    pub fn strictly_negative(&self) -> bool {
        self.hi.signum() < 0
    }

    pub fn is_disjoint(&self, other: &DyadicInterval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Upper bound on the width `hi - lo` (exact when representable).
    pub fn width_up(&self) -> Dyadic {
        self.hi.add_rounded(&self.lo.neg(), Dir::Up, DEFAULT_SIG)
    }

    /// `width <= 2^-k`?
    pub fn width_le_pow2(&self, k: i64) -> bool {
        self.width_up() <= Dyadic::pow2(-k)
    }

    /// Midpoint rounded to the default significand, clamped inside.
    pub fn mid(&self) -> Dyadic {
        self.lo
            .add_rounded(&self.hi, Dir::Down, DEFAULT_SIG + 2)
            .mul_pow2(-1)
            .max(self.lo)
            .min(self.hi)
    }

    /// Upper bound on `max(|lo|, |hi|)`.
    pub fn mag(&self) -> Dyadic {
        self.lo.abs().max(self.hi.abs())
    }

    /// Lower bound on `min |x|` over the interval (zero if it spans zero).
    pub fn mig(&self) -> Dyadic {
        if self.contains_zero() {
            Dyadic::ZERO
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    pub fn hull(&self, other: &DyadicInterval) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    pub fn intersect(&self, other: &DyadicInterval) -> Option<DyadicInterval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if lo <= hi {
            Some(DyadicInterval { lo, hi })
        } else {
            None
        }
    }

    pub fn neg(&self) -> DyadicInterval {
        DyadicInterval { lo: self.hi.neg(), hi: self.lo.neg() }
    }

    /// Exact scaling by `2^e`.
    pub fn mul_pow2(&self, e: i64) -> DyadicInterval {
        DyadicInterval { lo: self.lo.mul_pow2(e), hi: self.hi.mul_pow2(e) }
    }

    /// Exact image of `|.|`.
    pub fn abs(&self) -> DyadicInterval {
        if self.lo.signum() >= 0 {
            *self
        } else if self.hi.signum() <= 0 {
            self.neg()
        } else {
            DyadicInterval { lo: Dyadic::ZERO, hi: self.mag() }
        }
    }

    /// Exact sum of intervals; errors on overflow (see [`Dyadic::add`]).
    pub fn add_exact(&self, rhs: &DyadicInterval) -> Result<DyadicInterval> {
        Ok(DyadicInterval {
            lo: self.lo.add(&rhs.lo)?,
            hi: self.hi.add(&rhs.hi)?,
        })
    }

    pub fn sub_exact(&self, rhs: &DyadicInterval) -> Result<DyadicInterval> {
        self.add_exact(&rhs.neg())
    }

    /// Exact product; errors on overflow.
    pub fn mul_exact(&self, rhs: &DyadicInterval) -> Result<DyadicInterval> {
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&rhs.lo, &rhs.hi] {
                let p = a.mul(b)?;
                lo = Some(match lo {
                    None => p,
                    Some(v) => v.min(p),
                });
                hi = Some(match hi {
                    None => p,
                    Some(v) => v.max(p),
                });
            }
        }
        Ok(DyadicInterval { lo: lo.unwrap(), hi: hi.unwrap() })
    }

    /// Outward-rounded sum keeping `sig` significant bits.
    pub fn add_out(&self, rhs: &DyadicInterval, sig: u32) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.add_rounded(&rhs.lo, Dir::Down, sig),
            hi: self.hi.add_rounded(&rhs.hi, Dir::Up, sig),
        }
    }

    pub fn sub_out(&self, rhs: &DyadicInterval, sig: u32) -> DyadicInterval {
        self.add_out(&rhs.neg(), sig)
    }

    /// Outward-rounded product.
    pub fn mul_out(&self, rhs: &DyadicInterval, sig: u32) -> DyadicInterval {
        let mut lo: Option<Dyadic> = None;
        let mut hi: Option<Dyadic> = None;
        for a in [&self.lo, &self.hi] {
            for b in [&rhs.lo, &rhs.hi] {
                let down = a.mul_rounded(b, Dir::Down, sig);
                let up = a.mul_rounded(b, Dir::Up, sig);
                lo = Some(match lo {
                    None => down,
                    Some(v) => v.min(down),
                });
                hi = Some(match hi {
                    None => up,
                    Some(v) => v.max(up),
                });
            }
        }
        DyadicInterval { lo: lo.unwrap(), hi: hi.unwrap() }
    }

    pub fn mul_dyadic_out(&self, c: &Dyadic, sig: u32) -> DyadicInterval {
        self.mul_out(&DyadicInterval::point(*c), sig)
    }

    /// Outward-rounded quotient. Errors when `rhs` contains zero.
    pub fn div_out(&self, rhs: &DyadicInterval, sig: u32) -> Result<DyadicInterval> {
        if rhs.contains_zero() {
            return Err(RealError::DivisionByZero);
        }
        let rec = DyadicInterval {
            lo: recip_dir(&rhs.hi, Dir::Down, sig),
            hi: recip_dir(&rhs.lo, Dir::Up, sig),
        };
        Ok(self.mul_out(&rec, sig))
    }

    /// Enclosure of the exact image of an integer power (monotonicity in
    /// the endpoints, not the naive interval product).
    pub fn powi(&self, n: u32, sig: u32) -> DyadicInterval {
        if n == 0 {
            return DyadicInterval::ONE;
        }
        let point_pow = |x: &Dyadic| DyadicInterval::point(*x).powi_repeated(n, sig);
        if n % 2 == 1 {
            // Odd powers are increasing.
            let lo = point_pow(&self.lo);
            let hi = point_pow(&self.hi);
            DyadicInterval { lo: lo.lo, hi: hi.hi }
        } else if self.contains_zero() {
            let top = point_pow(&self.mag());
            DyadicInterval { lo: Dyadic::ZERO, hi: top.hi }
        } else {
            let top = point_pow(&self.mag());
            let bot = point_pow(&self.mig());
            DyadicInterval { lo: bot.lo, hi: top.hi }
        }
    }

    // Repeated-squaring power; tight for point intervals.
    fn powi_repeated(&self, n: u32, sig: u32) -> DyadicInterval {
        let mut acc = DyadicInterval::ONE;
        let mut base = *self;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_out(&base, sig);
            }
            base = base.mul_out(&base, sig);
            n >>= 1;
        }
        acc
    }

    /// Rounds both endpoints outward to `sig` significant bits.
    pub fn round_out(&self, sig: u32) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.round_to_bits(sig, Dir::Down),
            hi: self.hi.round_to_bits(sig, Dir::Up),
        }
    }

    /// Widens by `2^-k` on both sides.
    pub fn widen_pow2(&self, k: i64) -> DyadicInterval {
        DyadicInterval {
            lo: self.lo.add_rounded(&Dyadic::pow2(-k).neg(), Dir::Down, DEFAULT_SIG),
            hi: self.hi.add_rounded(&Dyadic::pow2(-k), Dir::Up, DEFAULT_SIG),
        }
    }

    pub fn to_f64_mid(&self) -> f64 {
        self.mid().to_f64()
    }
}

/// Directed reciprocal of a nonzero dyadic.
fn recip_dir(x: &Dyadic, dir: Dir, sig: u32) -> Dyadic {
    debug_assert!(!x.is_zero());
    // 1/x is decreasing on each half-axis, so the operand always rounds
    // opposite to the requested result direction.
    let xr = x.round_to_bits(62, dir.flip());
    let m = xr.mantissa();
    let bits = 128 - m.unsigned_abs().leading_zeros();
    let shift = bits + sig.min(62);
    let num: i128 = 1i128 << shift;
    let q = num / m;
    let exact = q * m == num;
    let adjust = match (dir, exact) {
        (_, true) => 0,
        (Dir::Down, false) => {
            // i128 division truncates toward zero; fix up for negatives.
            if (num < 0) != (m < 0) {
                -1
            } else {
                0
            }
        }
        (Dir::Up, false) => {
            if (num < 0) != (m < 0) {
                0
            } else {
                1
            }
        }
    };
    Dyadic::new(q + adjust, -xr.exponent() - i64::from(shift))
}

impl fmt::Display for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for DyadicInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} ~ [{:.6e}, {:.6e}]", self.lo.to_f64(), self.hi.to_f64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> DyadicInterval {
        DyadicInterval::new(Dyadic::from_f64(lo).unwrap(), Dyadic::from_f64(hi).unwrap()).unwrap()
    }

    #[test]
    fn exact_add() {
        let r = iv(1.0, 2.0).add_exact(&iv(3.0, 4.0)).unwrap();
        assert_eq!(r, iv(4.0, 6.0));
    }

    #[test]
    fn sign_case_product() {
        let r = iv(-1.0, 1.0).mul_exact(&iv(-1.0, 1.0)).unwrap();
        assert_eq!(r, iv(-1.0, 1.0));
    }

    #[test]
    fn division_by_zero_interval() {
        let e = iv(1.0, 2.0).div_out(&iv(0.0, 1.0), 53);
        assert_eq!(e.unwrap_err(), RealError::DivisionByZero);
    }

    #[test]
    fn division_encloses() {
        let q = iv(1.0, 1.0).div_out(&iv(3.0, 3.0), 53).unwrap();
        assert!(q.lo().to_f64() < 1.0 / 3.0 + 1e-15);
        assert!(q.hi().to_f64() > 1.0 / 3.0 - 1e-15);
        assert!(q.width_le_pow2(50));
    }

    #[test]
    fn abs_mixed() {
        assert_eq!(iv(-3.0, 2.0).abs(), iv(0.0, 3.0));
    }

    #[test]
    fn even_power_tightening() {
        let r = iv(-2.0, 1.0).powi(2, 53);
        assert_eq!(r, iv(0.0, 4.0));
        let r3 = iv(-2.0, 1.0).powi(3, 53);
        assert_eq!(r3, iv(-8.0, 1.0));
    }

    #[test]
    fn midpoint_inside() {
        let x = iv(1.0, 2.0);
        assert!(x.contains(&x.mid()));
    }
}
