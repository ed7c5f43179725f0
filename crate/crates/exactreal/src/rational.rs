use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::dyadic::{Dir, Dyadic};
use crate::error::RealError;
use crate::interval::DyadicInterval;
use crate::Result;

/// Exact rational scalars. Re-exported so downstream crates share one type.
pub type Rational = num_rational::BigRational;

/// Shorthand for small rational literals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn dyadic_to_rational(d: &Dyadic) -> Rational {
    let num = BigInt::from(d.mantissa());
    if d.exponent() >= 0 {
        Rational::from(num << d.exponent() as usize)
    } else {
        Rational::new(num, BigInt::from(1) << (-d.exponent()) as usize)
    }
}

/// Rounds an exact rational to a multiple of `2^gran` in direction `dir`.
pub(crate) fn rat_to_dyadic(r: &Rational, gran: i64, dir: Dir) -> Result<Dyadic> {
    // q = round(r * 2^-gran)
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    if gran <= 0 {
        num <<= (-gran) as usize;
    } else {
        den <<= gran as usize;
    }
    let (q, rem) = num_integer::Integer::div_rem(&num, &den);
    let q = if rem.is_zero() {
        q
    } else {
        match dir {
            Dir::Down => {
                if rem.is_negative() != den.is_negative() {
                    q - 1
                } else {
                    q
                }
            }
            Dir::Up => {
                if rem.is_negative() != den.is_negative() {
                    q
                } else {
                    q + 1
                }
            }
        }
    };
    let m = i128::try_from(&q).map_err(|_| RealError::Overflow)?;
    Ok(Dyadic::new(m, gran))
}

/// Encloses an exact rational in an interval of width at most `2^(gran+1)`.
pub fn rat_to_dyadic_interval(r: &Rational, gran: i64) -> Result<DyadicInterval> {
    let lo = rat_to_dyadic(r, gran, Dir::Down)?;
    let hi = rat_to_dyadic(r, gran, Dir::Up)?;
    DyadicInterval::new(lo, hi)
}

/// A Gaussian-rational scalar `re + i*im` with exact field arithmetic.
///
/// The imaginary part is identically zero when the scalar field is real;
/// real-field code paths simply never construct an imaginary component.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CScalar {
    pub re: Rational,
    pub im: Rational,
}

impl CScalar {
    pub fn zero() -> CScalar {
        CScalar { re: Rational::zero(), im: Rational::zero() }
    }

    pub fn one() -> CScalar {
        CScalar { re: rat(1, 1), im: Rational::zero() }
    }

    pub fn from_real(re: Rational) -> CScalar {
        CScalar { re, im: Rational::zero() }
    }

    pub fn new(re: Rational, im: Rational) -> CScalar {
        CScalar { re, im }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn neg(&self) -> CScalar {
        CScalar { re: -self.re.clone(), im: -self.im.clone() }
    }

    pub fn add(&self, rhs: &CScalar) -> CScalar {
        CScalar { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }

    pub fn sub(&self, rhs: &CScalar) -> CScalar {
        CScalar { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }

    pub fn mul(&self, rhs: &CScalar) -> CScalar {
        CScalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    /// `|z|^2`, exact.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_rounding_brackets() {
        let third = rat(1, 3);
        let iv = rat_to_dyadic_interval(&third, -30).unwrap();
        assert!(dyadic_to_rational(&iv.lo()) <= third);
        assert!(dyadic_to_rational(&iv.hi()) >= third);
        assert!(iv.width_le_pow2(29));
    }

    #[test]
    fn negative_rounding() {
        let x = rat(-1, 3);
        let lo = rat_to_dyadic(&x, -10, Dir::Down).unwrap();
        let hi = rat_to_dyadic(&x, -10, Dir::Up).unwrap();
        assert!(dyadic_to_rational(&lo) <= x);
        assert!(dyadic_to_rational(&hi) >= x);
    }

    #[test]
    fn complex_mul() {
        let i = CScalar::new(rat(0, 1), rat(1, 1));
        let sq = i.mul(&i);
        assert_eq!(sq, CScalar::from_real(rat(-1, 1)));
        assert_eq!(i.norm_sqr(), rat(1, 1));
    }
}
