//! Independent reference oracles for tests: closed-form special functions
//! evaluated by their own series (not by the code paths under test).
//!
//! These are verification-only. Production code never depends on this crate.

use exactreal::consts;
use exactreal::{
    interval_exp, interval_sqrt, interval_tan, Dyadic, DyadicInterval, RealError, Result,
};

/// Enclosure of `sqrt(pi)`.
pub fn sqrt_pi(bits: u32) -> DyadicInterval {
    interval_sqrt(&consts::pi(bits + 4), bits).expect("pi > 0")
}

/// Enclosure of `erf` over an interval via the alternating Maclaurin series
/// `(2/sqrt(pi)) sum (-1)^n x^(2n+1) / (n! (2n+1))`.
///
/// Practical for `|x|` up to about 6; the remainder is bounded by the first
/// omitted term once the terms decrease.
pub fn erf(x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    let xmag = x.mag();
    if xmag > Dyadic::from_int(8) {
        return Err(RealError::Domain("erf oracle only below |x| <= 8"));
    }
    let x2mag = xmag.mul(&xmag)?;
    // Guard digits absorb the cancellation hump ~ e^(x^2) of the series.
    let sig = k + 32 + (x2mag.to_f64() * 1.5) as u32;
    let x2 = x.powi(2, sig);
    let mut term = *x; // x^(2n+1) / n!
    let mut sum = DyadicInterval::ZERO;
    let mut n: i64 = 0;
    loop {
        let contrib = term.div_out(&DyadicInterval::from_int(2 * n + 1), sig)?;
        sum = sum.add_out(&contrib, sig);
        n += 1;
        term = term
            .mul_out(&x2, sig)
            .div_out(&DyadicInterval::from_int(n), sig)?
            .neg();
        let decreasing = Dyadic::from_int(n) > x2mag;
        if decreasing && term.mag() <= Dyadic::pow2(-i64::from(k) - 10) {
            sum = sum.add_out(&DyadicInterval::pm_pow2(-i64::from(k) - 9), sig);
            break;
        }
        if n > 4000 {
            return Err(RealError::PrecisionUnreachable("erf series stalled".into()));
        }
    }
    let two_over_sqrt_pi = DyadicInterval::from_int(2).div_out(&sqrt_pi(k + 24), sig)?;
    let out = sum.mul_out(&two_over_sqrt_pi, sig);
    let unit = DyadicInterval::new(Dyadic::from_int(-1), Dyadic::from_int(1))?;
    Ok(out.intersect(&unit).unwrap_or(out))
}

/// Standard normal CDF `Phi(x) = (1 + erf(x / sqrt 2)) / 2`.
pub fn std_normal_cdf(x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    let sig = k + 32;
    let sqrt2 = interval_sqrt(&DyadicInterval::from_int(2), k + 24)?;
    let arg = x.div_out(&sqrt2, sig)?;
    let e = erf(&arg, k + 4)?;
    Ok(e.add_out(&DyadicInterval::ONE, sig).mul_pow2(-1))
}

/// Density of `N(0, v)` at `y`: `exp(-y^2 / (2v)) / sqrt(2 pi v)`.
pub fn normal_density(y: &DyadicInterval, v: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    let sig = k + 32;
    let arg = y
        .powi(2, sig)
        .div_out(&v.mul_pow2(1), sig)?
        .neg();
    let num = interval_exp(&arg, k + 8)?;
    let den = interval_sqrt(
        &consts::pi(k + 24).mul_out(&v.mul_pow2(1), sig),
        k + 16,
    )?;
    num.div_out(&den, sig)
}

/// Series part of arctan, valid for `|x| <= 1/2` (point interval input).
fn arctan_series(x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    let sig = k + 32;
    let x2 = x.powi(2, sig);
    let mut term = *x;
    let mut sum = DyadicInterval::ZERO;
    let mut n: i64 = 0;
    loop {
        let contrib = term.div_out(&DyadicInterval::from_int(2 * n + 1), sig)?;
        sum = sum.add_out(&contrib, sig);
        term = term.mul_out(&x2, sig).neg();
        n += 1;
        if term.mag() <= Dyadic::pow2(-i64::from(k) - 8) {
            sum = sum.add_out(&DyadicInterval::pm_pow2(-i64::from(k) - 7), sig);
            return Ok(sum);
        }
        if n > 4000 {
            return Err(RealError::PrecisionUnreachable("arctan series stalled".into()));
        }
    }
}

fn arctan_point(x: &Dyadic, k: u32) -> Result<DyadicInterval> {
    let sig = k + 32;
    if x.signum() < 0 {
        return Ok(arctan_point(&x.neg(), k)?.neg());
    }
    let xi = DyadicInterval::point(*x);
    if *x <= Dyadic::new(1, -1) {
        arctan_series(&xi, k)
    } else if *x <= Dyadic::from_int(2) {
        // arctan x = pi/4 + arctan((x-1)/(x+1)), argument within [-1/3, 1/3]
        let num = xi.sub_out(&DyadicInterval::ONE, sig);
        let den = xi.add_out(&DyadicInterval::ONE, sig);
        let arg = num.div_out(&den, sig)?;
        let pi4 = consts::pi(k + 16).mul_pow2(-2);
        Ok(pi4.add_out(&arctan_series(&arg, k + 2)?, sig))
    } else {
        // arctan x = pi/2 - arctan(1/x), argument below 1/2
        let inv = DyadicInterval::ONE.div_out(&xi, sig)?;
        let pi2 = consts::pi(k + 16).mul_pow2(-1);
        Ok(pi2.sub_out(&arctan_series(&inv, k + 2)?, sig))
    }
}

/// Enclosure of `arctan` over an interval (monotone in the endpoints).
pub fn arctan(x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    let lo = arctan_point(&x.lo(), k + 2)?;
    let hi = arctan_point(&x.hi(), k + 2)?;
    DyadicInterval::new(lo.lo(), hi.hi())
}

/// Standard Cauchy CDF `1/2 + arctan(x)/pi`.
pub fn cauchy_cdf(x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    let sig = k + 32;
    let at = arctan(x, k + 4)?;
    let half = DyadicInterval::point(Dyadic::new(1, -1));
    Ok(half.add_out(&at.div_out(&consts::pi(k + 16), sig)?, sig))
}

/// Standard Cauchy density `1 / (pi (1 + x^2))`.
pub fn cauchy_density(x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    let sig = k + 32;
    let den = DyadicInterval::ONE
        .add_out(&x.powi(2, sig), sig)
        .mul_out(&consts::pi(k + 16), sig);
    DyadicInterval::ONE.div_out(&den, sig)
}

/// Standard Cauchy quantile `tan(pi (t - 1/2))` for rational `t` in (0,1).
pub fn cauchy_quantile(t: &exactreal::Rational, k: u32) -> Result<DyadicInterval> {
    let sig = k + 32;
    let shifted = t - exactreal::rat(1, 2);
    let tiv = exactreal::rat_to_dyadic_interval(&shifted, -i64::from(k) - 24)?;
    let arg = tiv.mul_out(&consts::pi(k + 24), sig);
    interval_tan(&arg, k + 4)
}

/// CDF of the Levy distribution with scale `c` (support `(0, inf)`):
/// `F(y) = erfc(sqrt(c / (2y))) = 1 - erf(sqrt(c/(2y)))`.
pub fn levy_cdf(y: &DyadicInterval, c: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    if y.lo().signum() <= 0 {
        return Err(RealError::Domain("levy cdf oracle needs y > 0"));
    }
    let sig = k + 32;
    let arg = interval_sqrt(&c.div_out(&y.mul_pow2(1), sig)?, k + 16)?;
    let e = erf(&arg, k + 4)?;
    Ok(DyadicInterval::ONE.sub_out(&e, sig))
}

/// `E|N(0,1)| = sqrt(2/pi)`.
pub fn mean_abs_std_normal(k: u32) -> Result<DyadicInterval> {
    let two_over_pi = DyadicInterval::from_int(2).div_out(&consts::pi(k + 24), k + 32)?;
    interval_sqrt(&two_over_pi, k + 8)
}
