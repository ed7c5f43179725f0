use std::cmp::Ordering;
use std::fmt;

use crate::error::RealError;
use crate::Result;

/// Rounding direction for inexact operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Dir {
    /// Toward -infinity.
    Down,
    /// Toward +infinity.
    Up,
}

impl Dir {
    pub(crate) fn flip(self) -> Dir {
        match self {
            Dir::Down => Dir::Up,
            Dir::Up => Dir::Down,
        }
    }
}

/// An exact dyadic rational `mantissa * 2^exponent`.
///
/// Canonical form: the mantissa is odd, or the value is zero with exponent
/// zero. Addition, subtraction and multiplication are exact; they fail with
/// [`RealError::Overflow`] instead of rounding. Directed rounding is explicit
/// via [`Dyadic::round_to_gran`] and the `*_rounded` operations.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dyadic {
    mantissa: i128,
    exponent: i64,
}

/// Largest mantissa bit-length accepted by exact operations. Products of two
/// in-range mantissas must still fit in `i128`.
const MAX_BITS: u32 = 126;

fn bits_i128(m: i128) -> u32 {
    128 - m.unsigned_abs().leading_zeros()
}

impl Dyadic {
    pub const ZERO: Dyadic = Dyadic { mantissa: 0, exponent: 0 };
    pub const ONE: Dyadic = Dyadic { mantissa: 1, exponent: 0 };

    /// Builds `mantissa * 2^exponent`, reducing to canonical form.
    pub fn new(mantissa: i128, exponent: i64) -> Dyadic {
        if mantissa == 0 {
            return Dyadic::ZERO;
        }
        let tz = mantissa.trailing_zeros();
        Dyadic {
            mantissa: mantissa >> tz,
            exponent: exponent + i64::from(tz),
        }
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic::new(i128::from(n), 0)
    }

    /// `2^e`.
    pub fn pow2(e: i64) -> Dyadic {
        Dyadic { mantissa: 1, exponent: e }
    }

    /// Exact conversion: every finite `f64` is dyadic.
    pub fn from_f64(x: f64) -> Result<Dyadic> {
        if !x.is_finite() {
            return Err(RealError::Overflow);
        }
        if x == 0.0 {
            return Ok(Dyadic::ZERO);
        }
        let bits = x.to_bits();
        let sign = if bits >> 63 == 1 { -1i128 } else { 1i128 };
        let exp_field = ((bits >> 52) & 0x7ff) as i64;
        let frac = (bits & ((1u64 << 52) - 1)) as i128;
        let (m, e) = if exp_field == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), exp_field - 1075)
        };
        Ok(Dyadic::new(sign * m, e))
    }

    /// Nearest `f64`; used only by heuristics, never by certified paths.
    pub fn to_f64(&self) -> f64 {
        let mut m = self.mantissa;
        let mut e = self.exponent;
        // Keep the mantissa within f64's exactly-representable range.
        while m.unsigned_abs() >= (1u128 << 53) {
            m >>= 1;
            e += 1;
        }
        (m as f64) * (e as f64).exp2()
    }

    pub fn mantissa(&self) -> i128 {
        self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0
    }

    pub fn signum(&self) -> i32 {
        match self.mantissa.cmp(&0) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Smallest `b` with `|self| < 2^b` (`None` for zero).
    pub fn mag_exp(&self) -> Option<i64> {
        if self.mantissa == 0 {
            None
        } else {
            Some(self.exponent + i64::from(bits_i128(self.mantissa)))
        }
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { mantissa: -self.mantissa, exponent: self.exponent }
    }

    pub fn abs(&self) -> Dyadic {
        Dyadic { mantissa: self.mantissa.abs(), exponent: self.exponent }
    }

    /// Exact multiplication by `2^e`.
    pub fn mul_pow2(&self, e: i64) -> Dyadic {
        if self.mantissa == 0 {
            Dyadic::ZERO
        } else {
            Dyadic { mantissa: self.mantissa, exponent: self.exponent + e }
        }
    }

    /// Exact sum; errors instead of rounding when it does not fit.
    pub fn add(&self, rhs: &Dyadic) -> Result<Dyadic> {
        if self.mantissa == 0 {
            return Ok(*rhs);
        }
        if rhs.mantissa == 0 {
            return Ok(*self);
        }
        let e = self.exponent.min(rhs.exponent);
        let s1 = (self.exponent - e) as u32;
        let s2 = (rhs.exponent - e) as u32;
        if s1 + bits_i128(self.mantissa) > MAX_BITS || s2 + bits_i128(rhs.mantissa) > MAX_BITS {
            return Err(RealError::Overflow);
        }
        let m = (self.mantissa << s1)
            .checked_add(rhs.mantissa << s2)
            .ok_or(RealError::Overflow)?;
        Ok(Dyadic::new(m, e))
    }

    pub fn sub(&self, rhs: &Dyadic) -> Result<Dyadic> {
        self.add(&rhs.neg())
    }

    /// Exact product; errors instead of rounding when it does not fit.
    pub fn mul(&self, rhs: &Dyadic) -> Result<Dyadic> {
        let m = self
            .mantissa
            .checked_mul(rhs.mantissa)
            .ok_or(RealError::Overflow)?;
        Ok(Dyadic::new(m, self.exponent.checked_add(rhs.exponent).ok_or(RealError::Overflow)?))
    }

    /// Rounds to an integer multiple of `2^gran` in direction `dir`.
    /// Exact whenever the value already is such a multiple.
    pub(crate) fn round_to_gran(&self, gran: i64, dir: Dir) -> Dyadic {
        if self.mantissa == 0 || self.exponent >= gran {
            return *self;
        }
        let shift = gran - self.exponent;
        if shift >= 128 + i64::from(bits_i128(self.mantissa)) {
            // The value is far below one granule.
            return match (dir, self.mantissa > 0) {
                (Dir::Down, true) | (Dir::Up, false) => Dyadic::ZERO,
                (Dir::Up, true) => Dyadic::pow2(gran),
                (Dir::Down, false) => Dyadic::pow2(gran).neg(),
            };
        }
        let shift = shift as u32;
        let q = match dir {
            // Arithmetic shift right is floor division by 2^shift.
            Dir::Down => {
                if shift >= 127 {
                    if self.mantissa < 0 {
                        -1
                    } else {
                        0
                    }
                } else {
                    self.mantissa >> shift
                }
            }
            Dir::Up => {
                if shift >= 127 {
                    if self.mantissa > 0 {
                        1
                    } else {
                        0
                    }
                } else {
                    -((-self.mantissa) >> shift)
                }
            }
        };
        Dyadic::new(q, gran)
    }

    /// Rounds to at most `sig` significant bits in direction `dir`.
    pub(crate) fn round_to_bits(&self, sig: u32, dir: Dir) -> Dyadic {
        let b = bits_i128(self.mantissa);
        if b <= sig {
            *self
        } else {
            self.round_to_gran(self.exponent + i64::from(b - sig), dir)
        }
    }

    /// Directed sum: exact when possible, otherwise rounded toward `dir`
    /// keeping roughly `sig` significant bits.
    pub(crate) fn add_rounded(&self, rhs: &Dyadic, dir: Dir, sig: u32) -> Dyadic {
        if let Ok(x) = self.add(rhs) {
            return x.round_to_bits(sig.max(8), dir);
        }
        let mag = self.mag_exp().unwrap_or(i64::MIN).max(rhs.mag_exp().unwrap_or(i64::MIN));
        let gran = mag - i64::from(sig) - 2;
        let a = self.round_to_gran(gran, dir);
        let b = rhs.round_to_gran(gran, dir);
        a.add(&b).expect("aligned dyadic add cannot overflow")
    }

    /// Directed product with `sig` significant bits.
    pub(crate) fn mul_rounded(&self, rhs: &Dyadic, dir: Dir, sig: u32) -> Dyadic {
        let a = self.round_to_bits(62, dir_for_mul(self, rhs, dir, true));
        let b = rhs.round_to_bits(62, dir_for_mul(self, rhs, dir, false));
        a.mul(&b)
            .expect("62-bit dyadic product cannot overflow")
            .round_to_bits(sig, dir)
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, rhs: &Dyadic) -> Ordering {
        match (self.mantissa.signum(), rhs.mantissa.signum()) {
            (a, b) if a != b => a.cmp(&b),
            (0, 0) => Ordering::Equal,
            _ => {
                // Same nonzero sign: compare magnitudes via mag_exp first.
                let ma = self.mag_exp().unwrap();
                let mb = rhs.mag_exp().unwrap();
                let positive = self.mantissa > 0;
                if ma != mb {
                    let mag_ord = ma.cmp(&mb);
                    return if positive { mag_ord } else { mag_ord.reverse() };
                }
                // Equal magnitude exponents: align within 126 bits.
                let e = self.exponent.min(rhs.exponent);
                let s1 = (self.exponent - e) as u32;
                let s2 = (rhs.exponent - e) as u32;
                debug_assert!(s1 + bits_i128(self.mantissa) <= 127);
                debug_assert!(s2 + bits_i128(rhs.mantissa) <= 127);
                (self.mantissa << s1).cmp(&(rhs.mantissa << s2))
            }
        }
    }

    /// Largest integer `<= self`, if it fits an `i64`.
    pub fn floor_i64(&self) -> Result<i64> {
        let r = self.round_to_gran(0, Dir::Down);
        let shifted = if r.exponent >= 64 {
            return Err(RealError::Overflow);
        } else {
            r.mantissa.checked_shl(r.exponent as u32).ok_or(RealError::Overflow)?
        };
        i64::try_from(shifted).map_err(|_| RealError::Overflow)
    }
}

fn dir_for_mul(a: &Dyadic, b: &Dyadic, dir: Dir, first: bool) -> Dir {
    // Rounding a factor toward `dir`-consistency depends on the sign of the
    // other factor.
    let other_nonneg = if first { b.mantissa >= 0 } else { a.mantissa >= 0 };
    if other_nonneg {
        dir
    } else {
        dir.flip()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_exact(other)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 0 {
            write!(f, "{}", self.mantissa)
        } else {
            write!(f, "{}*2^{}", self.mantissa, self.exponent)
        }
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(m: i128, e: i64) -> Dyadic {
        Dyadic::new(m, e)
    }

    #[test]
    fn canonical_form() {
        let x = d(12, 0);
        assert_eq!(x.mantissa(), 3);
        assert_eq!(x.exponent(), 2);
        assert_eq!(d(0, 5), Dyadic::ZERO);
    }

    #[test]
    fn exact_arithmetic() {
        let a = d(3, -1); // 1.5
        let b = d(5, -2); // 1.25
        assert_eq!(a.add(&b).unwrap(), d(11, -2));
        assert_eq!(a.sub(&b).unwrap(), d(1, -2));
        assert_eq!(a.mul(&b).unwrap(), d(15, -3));
    }

    #[test]
    fn rounding_directions() {
        let x = d(5, -2); // 1.25
        assert_eq!(x.round_to_gran(0, Dir::Down), d(1, 0));
        assert_eq!(x.round_to_gran(0, Dir::Up), d(2, 0));
        let y = x.neg();
        assert_eq!(y.round_to_gran(0, Dir::Down), d(-2, 0));
        assert_eq!(y.round_to_gran(0, Dir::Up), d(-1, 0));
    }

    #[test]
    fn tiny_value_rounding() {
        let tiny = Dyadic::pow2(-500);
        assert_eq!(tiny.round_to_gran(-10, Dir::Down), Dyadic::ZERO);
        assert_eq!(tiny.round_to_gran(-10, Dir::Up), Dyadic::pow2(-10));
    }

    #[test]
    fn add_rounded_is_directional() {
        let one = Dyadic::ONE;
        let tiny = Dyadic::pow2(-500);
        let lo = one.add_rounded(&tiny, Dir::Down, 53);
        let hi = one.add_rounded(&tiny, Dir::Up, 53);
        assert!(lo <= hi);
        assert!(lo >= one.sub(&Dyadic::pow2(-40)).unwrap());
        assert!(hi > one);
    }

    #[test]
    fn f64_round_trip() {
        for v in [0.0, 1.0, -2.5, 0.1, 1e300, -3.7e-12] {
            let x = Dyadic::from_f64(v).unwrap();
            assert_eq!(x.to_f64(), v);
        }
    }

    #[test]
    fn comparisons() {
        assert!(d(1, -3) < d(1, 0));
        assert!(d(-1, 10) < d(1, -10));
        assert!(d(7, -2) > d(13, -3)); // 1.75 > 1.625
        assert_eq!(d(4, 0).cmp_exact(&d(1, 2)), Ordering::Equal);
    }

    #[test]
    fn floor() {
        assert_eq!(d(7, -2).floor_i64().unwrap(), 1);
        assert_eq!(d(-7, -2).floor_i64().unwrap(), -2);
        assert_eq!(d(12, 0).floor_i64().unwrap(), 12);
    }
}
