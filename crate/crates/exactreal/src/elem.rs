//! Certified enclosures of elementary functions on dyadic intervals.
//!
//! Every function reduces its argument, sums a Taylor/atanh series with an
//! explicit remainder bound, and rounds outward. The precision parameter `k`
//! asks for enclosure width about `2^-k` plus the documented amplification
//! of the input width (e.g. `exp` amplifies by `e^sup`, `ln` by `1/inf`).

use crate::consts;
use crate::dyadic::{Dir, Dyadic};
use crate::error::RealError;
use crate::interval::DyadicInterval;
use crate::Result;

/// Enclosure of `e^x` at a dyadic point, width `<= 2^-k * max(1, e^x)`.
pub(crate) fn exp_point(x: &Dyadic, k: u32) -> Result<DyadicInterval> {
    if x.is_zero() {
        return Ok(DyadicInterval::ONE);
    }
    if *x <= Dyadic::from_int(-(i64::from(k)) - 2) {
        // e^x < 2^-(k+2) because e > 2.
        return DyadicInterval::new(Dyadic::ZERO, Dyadic::pow2(-i64::from(k) - 2));
    }
    if *x >= Dyadic::from_int(1 << 21) {
        return Err(RealError::Overflow);
    }
    // Halve until |y| <= 1/2, sum the series, square back.
    let j = x.mag_exp().map(|m| (m + 1).max(0)).unwrap_or(0) as u32;
    let y = DyadicInterval::point(x.mul_pow2(-i64::from(j)));
    let sig = k + 2 * j + 20;
    let gran = -i64::from(k + 2 * j + 14);
    let mut sum = DyadicInterval::ONE;
    let mut term = y;
    let mut n: i64 = 1;
    loop {
        sum = sum.add_out(&term, sig);
        if term.mag() <= Dyadic::pow2(gran) {
            // |y| <= 1/2, so the tail is below the last added term.
            sum = sum.add_out(&DyadicInterval::pm_pow2(gran), sig);
            break;
        }
        n += 1;
        term = term
            .mul_out(&y, sig)
            .div_out(&DyadicInterval::from_int(n), sig)
            .expect("n > 0");
    }
    let mut s = sum;
    for _ in 0..j {
        s = s.mul_out(&s, sig);
    }
    let lo = s.lo().max(Dyadic::ZERO);
    DyadicInterval::new(lo, s.hi())
}

/// Enclosure of `ln x` at a positive dyadic point, width about `2^-k`.
pub(crate) fn ln_point(x: &Dyadic, k: u32) -> Result<DyadicInterval> {
    if x.signum() <= 0 {
        return Err(RealError::Domain("ln of a nonpositive value"));
    }
    let n = x.mag_exp().unwrap() - 1;
    let m = x.mul_pow2(-n); // in [1, 2)
    let sig = k + 24;
    let one = DyadicInterval::ONE;
    let miv = DyadicInterval::point(m);
    let num = miv.sub_out(&one, sig);
    let den = miv.add_out(&one, sig);
    let u = num.div_out(&den, sig)?; // in [0, 1/3)
    // ln m = 2 atanh(u) = 2 sum u^(2i+1)/(2i+1)
    let u2 = u.mul_out(&u, sig);
    let gran = -i64::from(k + 12);
    let mut power = u;
    let mut s = DyadicInterval::ZERO;
    let mut i: i64 = 0;
    loop {
        let contrib = power
            .div_out(&DyadicInterval::from_int(2 * i + 1), sig)
            .expect("odd denominator");
        s = s.add_out(&contrib, sig);
        if power.mag() <= Dyadic::pow2(gran) {
            // tail <= power * u^2/(1-u^2) <= power / 8
            s = s.add_out(&DyadicInterval::pm_pow2(gran), sig);
            break;
        }
        power = power.mul_out(&u2, sig);
        i += 1;
    }
    let mut r = s.add_out(&s, sig); // 2s
    if n != 0 {
        let nbits = 64 - n.unsigned_abs().leading_zeros();
        let l2 = consts::ln2(k + 16 + nbits);
        r = r.add_out(&l2.mul_dyadic_out(&Dyadic::from_int(n), sig), sig);
    }
    Ok(r)
}

/// Enclosures of `(sin y, cos y)` on a short interval `|y| <= 1.1` via the
/// alternating Taylor series.
fn sincos_short(y: &DyadicInterval, k: u32) -> (DyadicInterval, DyadicInterval) {
    let sig = k + 16;
    let gran = -i64::from(k + 8);
    let y2 = y.mul_out(y, sig);
    // sin
    let mut term = *y;
    let mut s = DyadicInterval::ZERO;
    let mut n: i64 = 1; // term = +-y^n / n!
    loop {
        s = s.add_out(&term, sig);
        term = term
            .mul_out(&y2, sig)
            .div_out(&DyadicInterval::from_int((n + 1) * (n + 2)), sig)
            .expect("positive factorial step")
            .neg();
        n += 2;
        if term.mag() <= Dyadic::pow2(gran) {
            s = s.add_out(&DyadicInterval::pm_pow2(gran), sig);
            break;
        }
    }
    // cos
    let mut term = DyadicInterval::ONE;
    let mut c = DyadicInterval::ZERO;
    let mut n: i64 = 0;
    loop {
        c = c.add_out(&term, sig);
        term = term
            .mul_out(&y2, sig)
            .div_out(&DyadicInterval::from_int((n + 1) * (n + 2)), sig)
            .expect("positive factorial step")
            .neg();
        n += 2;
        if term.mag() <= Dyadic::pow2(gran) {
            c = c.add_out(&DyadicInterval::pm_pow2(gran), sig);
            break;
        }
    }
    let unit = DyadicInterval::new(Dyadic::from_int(-1), Dyadic::from_int(1)).unwrap();
    (
        s.intersect(&unit).unwrap_or(unit),
        c.intersect(&unit).unwrap_or(unit),
    )
}

/// `(sin x, cos x)` at a dyadic point via range reduction mod pi/2.
pub(crate) fn sincos_point(x: &Dyadic, k: u32) -> Result<(DyadicInterval, DyadicInterval)> {
    let mag = x.mag_exp().unwrap_or(0).max(0);
    if mag > 48 {
        return Err(RealError::Overflow);
    }
    let bits = k + mag as u32 + 20;
    let pi2 = consts::pi(bits).mul_pow2(-1);
    let q = DyadicInterval::point(*x).div_out(&pi2, 64)?;
    let n = q
        .mid()
        .add_rounded(&Dyadic::new(1, -1), Dir::Down, 64)
        .floor_i64()?;
    let y = DyadicInterval::point(*x).sub_out(&pi2.mul_dyadic_out(&Dyadic::from_int(n), bits), k + 24);
    let (s, c) = sincos_short(&y, k);
    Ok(match n.rem_euclid(4) {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    })
}

fn unit_interval() -> DyadicInterval {
    DyadicInterval::new(Dyadic::from_int(-1), Dyadic::from_int(1)).unwrap()
}

/// Enclosure of `exp` over an interval (monotone in the endpoints).
pub fn interval_exp(a: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    let lo = exp_point(&a.lo(), k + 2)?;
    let hi = exp_point(&a.hi(), k + 2)?;
    DyadicInterval::new(lo.lo(), hi.hi())
}

/// Enclosure of `ln` over a strictly positive interval.
pub fn interval_ln(a: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    if a.lo().signum() <= 0 {
        return Err(RealError::Domain("ln of an interval reaching 0"));
    }
    let lo = ln_point(&a.lo(), k + 2)?;
    let hi = ln_point(&a.hi(), k + 2)?;
    DyadicInterval::new(lo.lo(), hi.hi())
}

/// Shared extremum logic: encloses sin or cos over an interval by endpoint
/// evaluation plus any interior critical points.
fn interval_trig(a: &DyadicInterval, k: u32, is_sin: bool) -> Result<DyadicInterval> {
    if a.width_up() >= Dyadic::from_int(7) {
        return Ok(unit_interval());
    }
    let (slo, clo) = sincos_point(&a.lo(), k + 2)?;
    let (shi, chi) = sincos_point(&a.hi(), k + 2)?;
    let mut out = if is_sin { slo.hull(&shi) } else { clo.hull(&chi) };
    // Critical points: sin' = 0 at (m + 1/2) pi, cos' = 0 at m pi.
    let mag = a.mag().mag_exp().unwrap_or(0).max(0) as u32;
    let pi_iv = consts::pi(k + mag + 16);
    let half = Dyadic::new(1, -1);
    let approx_lo = a.lo().to_f64() / std::f64::consts::PI - if is_sin { 0.5 } else { 0.0 };
    let approx_hi = a.hi().to_f64() / std::f64::consts::PI - if is_sin { 0.5 } else { 0.0 };
    let m_lo = approx_lo.floor() as i64 - 1;
    let m_hi = approx_hi.ceil() as i64 + 1;
    for m in m_lo..=m_hi {
        let offset = if is_sin {
            Dyadic::from_int(m).add(&half).expect("small add")
        } else {
            Dyadic::from_int(m)
        };
        let crit = pi_iv.mul_dyadic_out(&offset, 64);
        let overlaps = crit.lo() <= a.hi() && crit.hi() >= a.lo();
        if overlaps {
            let v = if m.rem_euclid(2) == 0 { 1 } else { -1 };
            out = out.hull(&DyadicInterval::from_int(v));
        }
    }
    Ok(out.intersect(&unit_interval()).unwrap_or_else(unit_interval))
}

pub fn interval_sin(a: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    interval_trig(a, k, true)
}

pub fn interval_cos(a: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    interval_trig(a, k, false)
}

/// Enclosure of `tan` over an interval avoiding poles.
pub fn interval_tan(a: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    let c = interval_cos(a, k + 4)?;
    if c.contains_zero() {
        return Err(RealError::Domain("tan across a pole"));
    }
    // tan is increasing between poles, so endpoint quotients bracket it.
    let (slo, clo) = sincos_point(&a.lo(), k + 6)?;
    let (shi, chi) = sincos_point(&a.hi(), k + 6)?;
    let lo = slo.div_out(&clo, k + 12)?;
    let hi = shi.div_out(&chi, k + 12)?;
    Ok(lo.hull(&hi))
}

pub fn interval_abs(a: &DyadicInterval) -> DyadicInterval {
    a.abs()
}

fn isqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = ((n as f64).sqrt() as u128).max(1) + 2;
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            break;
        }
        x = y;
    }
    while x.checked_mul(x).map(|s| s > n).unwrap_or(true) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).map(|s| s <= n).unwrap_or(false) {
        x += 1;
    }
    x
}

fn sqrt_point(x: &Dyadic, sig: u32) -> DyadicInterval {
    if x.is_zero() {
        return DyadicInterval::ZERO;
    }
    debug_assert!(x.signum() > 0);
    let m = x.mantissa();
    let b = 128 - m.unsigned_abs().leading_zeros();
    let mut t = (2 * sig.min(60) + 2).saturating_sub(b);
    if (x.exponent() - i64::from(t)) % 2 != 0 {
        t += 1;
    }
    if b + t > 126 {
        t -= 2 * ((b + t - 126 + 1) / 2);
    }
    let y = (m as u128) << t;
    let e_half = (x.exponent() - i64::from(t)) / 2;
    let r = isqrt_u128(y);
    DyadicInterval::new(
        Dyadic::new(r as i128, e_half),
        Dyadic::new((r + 1) as i128, e_half),
    )
    .unwrap()
}

/// Enclosure of the square root over a nonnegative interval.
pub fn interval_sqrt(a: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    if a.lo().signum() < 0 {
        return Err(RealError::Domain("sqrt of a negative interval"));
    }
    let lo = sqrt_point(&a.lo(), k + 4);
    let hi = sqrt_point(&a.hi(), k + 4);
    DyadicInterval::new(lo.lo(), hi.hi())
}

/// Exact-image enclosure of an integer power.
pub fn interval_powi(a: &DyadicInterval, n: i32, sig: u32) -> Result<DyadicInterval> {
    if n >= 0 {
        Ok(a.powi(n as u32, sig))
    } else {
        DyadicInterval::ONE.div_out(&a.powi((-n) as u32, sig), sig)
    }
}

/// Enclosure of `x^q` for a nonnegative base interval and an exponent
/// enclosure `q` with `q >= 0` (realized as `exp(q ln x)`, with the boundary
/// cases at `x = 0` handled by monotonicity in the base).
pub fn interval_pow(a: &DyadicInterval, q: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
    if a.lo().signum() < 0 {
        return Err(RealError::Domain("fractional power of a negative base"));
    }
    if q.lo().signum() < 0 {
        return Err(RealError::Domain("negative exponent in pow"));
    }
    // Integer point exponents go through the exact power.
    if q.is_point() && q.lo().exponent() >= 0 {
        if let Ok(n) = q.lo().floor_i64() {
            if n <= 512 {
                return Ok(a.powi(n as u32, k + 16));
            }
        }
    }
    if a.lo().signum() > 0 {
        let ln_a = interval_ln(a, k + 8)?;
        let prod = q.mul_out(&ln_a, k + 16);
        return interval_exp(&prod, k + 2);
    }
    // Base interval touches zero.
    let mut out = DyadicInterval::ZERO;
    if a.hi().signum() > 0 {
        let top = interval_pow(&DyadicInterval::point(a.hi()), q, k)?;
        out = out.hull(&DyadicInterval::new(Dyadic::ZERO, top.hi()).unwrap());
    }
    if q.lo().is_zero() {
        // x^0 = 1 is inside the image when the exponent window reaches 0.
        out = out.hull(&DyadicInterval::ONE);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: f64, hi: f64) -> DyadicInterval {
        DyadicInterval::new(Dyadic::from_f64(lo).unwrap(), Dyadic::from_f64(hi).unwrap()).unwrap()
    }

    fn assert_encloses(r: &DyadicInterval, v: f64) {
        assert!(
            r.lo().to_f64() <= v && v <= r.hi().to_f64(),
            "{r:?} should contain {v}"
        );
    }

    #[test]
    fn exp_zero_is_tight() {
        let r = interval_exp(&DyadicInterval::ZERO, 10).unwrap();
        assert_encloses(&r, 1.0);
        assert!(r.width_le_pow2(10));
    }

    #[test]
    fn exp_matches_reference() {
        for x in [-20.0, -3.5, -1.0, 0.25, 1.0, 4.0, 11.5] {
            let r = interval_exp(&iv(x, x), 30).unwrap();
            assert_encloses(&r, x.exp());
            let rel = r.width_up().to_f64() / x.exp();
            assert!(rel < 1e-8, "x={x} rel width {rel}");
        }
    }

    #[test]
    fn ln_matches_reference() {
        for x in [0.0625, 0.3, 1.0, 2.0, 7.5, 1e6] {
            let r = interval_ln(&iv(x, x), 40).unwrap();
            assert_encloses(&r, x.ln());
            assert!(r.width_le_pow2(38));
        }
        assert!(interval_ln(&iv(-1.0, 2.0), 10).is_err());
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = iv(3.0, 3.0);
        let r = interval_exp(&interval_ln(&x, 40).unwrap(), 38).unwrap();
        assert_encloses(&r, 3.0);
        assert!(r.width_le_pow2(30));
    }

    #[test]
    fn sin_cos_reference_points() {
        for x in [-7.3, -1.0, 0.0, 0.5, 1.5707963, 3.14159, 100.0, 12345.678] {
            let (s, c) = sincos_point(&Dyadic::from_f64(x).unwrap(), 40).unwrap();
            assert_encloses(&s, x.sin());
            assert_encloses(&c, x.cos());
            assert!(s.width_le_pow2(35), "x={x}");
        }
    }

    #[test]
    fn sin_interval_hits_extremum() {
        let r = interval_sin(&iv(1.0, 2.0), 20).unwrap();
        // max of sin on [1,2] is 1 (at pi/2), min is sin(1)
        assert!(r.hi().to_f64() >= 1.0 - 1e-6);
        assert_encloses(&r, 1.0f64.sin());
        assert!(r.lo().to_f64() <= 1.0f64.sin() + 1e-6);
        assert!(r.lo().to_f64() >= 1.0f64.sin() - 1e-4);
    }

    #[test]
    fn cos_interval_wide() {
        let r = interval_cos(&iv(0.0, 10.0), 20).unwrap();
        assert_eq!(r.lo().to_f64(), -1.0);
        assert_eq!(r.hi().to_f64(), 1.0);
    }

    #[test]
    fn tan_reference_and_pole() {
        let r = interval_tan(&iv(1.0, 1.0), 30).unwrap();
        assert_encloses(&r, 1.0f64.tan());
        assert!(interval_tan(&iv(1.5, 1.7), 20).is_err());
    }

    #[test]
    fn sqrt_exact_square() {
        let r = interval_sqrt(&iv(4.0, 4.0), 30).unwrap();
        assert_encloses(&r, 2.0);
        assert!(r.width_le_pow2(28));
    }

    #[test]
    fn pow_half_of_four() {
        let q = iv(0.5, 0.5);
        let r = interval_pow(&iv(4.0, 4.0), &q, 24).unwrap();
        assert_encloses(&r, 2.0);
        assert!(r.width_le_pow2(20));
    }

    #[test]
    fn pow_base_touching_zero() {
        let q = iv(1.5, 1.5);
        let r = interval_pow(&iv(0.0, 2.0), &q, 20).unwrap();
        assert_encloses(&r, 0.0);
        assert_encloses(&r, 2.0f64.powf(1.5));
        assert!(r.lo().signum() >= 0);
    }

    #[test]
    fn pow_rejects_negative_base() {
        let q = iv(0.5, 0.5);
        assert!(interval_pow(&iv(-1.0, 1.0), &q, 10).is_err());
    }

    #[test]
    fn powi_negative() {
        let r = interval_powi(&iv(2.0, 2.0), -2, 53).unwrap();
        assert_encloses(&r, 0.25);
    }
}
