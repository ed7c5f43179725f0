//! Interval Taylor coefficients ("jets") over a cell.
//!
//! A `Jet<M>` over a cell `T` carries enclosures `c[j]` of the scaled
//! derivatives `f^(j)(t)/j!` valid for every `t` in `T`. The arithmetic and
//! composition rules below are the pointwise Leibniz/chain recurrences, so
//! enclosure validity is preserved coefficient by coefficient.
//!
//! `Jet<3>` (value, first, half second derivative) drives the midpoint
//! quadrature rule; higher orders drive integration-by-parts tail control.

use crate::elem::{interval_exp, interval_ln, interval_pow};
use crate::elem::{interval_cos, interval_sin};
use crate::error::RealError;
use crate::interval::DyadicInterval;
use crate::Result;

#[derive(Clone, Copy, Debug)]
pub struct Jet<const M: usize> {
    pub c: [DyadicInterval; M],
}

impl<const M: usize> Jet<M> {
    pub fn constant(v: DyadicInterval) -> Jet<M> {
        let mut c = [DyadicInterval::ZERO; M];
        c[0] = v;
        Jet { c }
    }

    /// The identity function on the cell.
    pub fn var(cell: DyadicInterval) -> Jet<M> {
        let mut c = [DyadicInterval::ZERO; M];
        c[0] = cell;
        if M > 1 {
            c[1] = DyadicInterval::ONE;
        }
        Jet { c }
    }

    pub fn value(&self) -> DyadicInterval {
        self.c[0]
    }

    /// Enclosure of `f''/2` (None when the jet order is too small).
    pub fn half_second(&self) -> Option<DyadicInterval> {
        if M >= 3 {
            Some(self.c[2])
        } else {
            None
        }
    }

    pub fn neg(&self) -> Jet<M> {
        let mut c = self.c;
        for v in &mut c {
            *v = v.neg();
        }
        Jet { c }
    }

    pub fn add(&self, rhs: &Jet<M>, sig: u32) -> Jet<M> {
        let mut c = self.c;
        for (a, b) in c.iter_mut().zip(rhs.c.iter()) {
            *a = a.add_out(b, sig);
        }
        Jet { c }
    }

    pub fn sub(&self, rhs: &Jet<M>, sig: u32) -> Jet<M> {
        self.add(&rhs.neg(), sig)
    }

    pub fn scale(&self, v: &DyadicInterval, sig: u32) -> Jet<M> {
        let mut c = self.c;
        for a in &mut c {
            *a = a.mul_out(v, sig);
        }
        Jet { c }
    }

    pub fn mul(&self, rhs: &Jet<M>, sig: u32) -> Jet<M> {
        let mut c = [DyadicInterval::ZERO; M];
        for n in 0..M {
            let mut acc = DyadicInterval::ZERO;
            for i in 0..=n {
                acc = acc.add_out(&self.c[i].mul_out(&rhs.c[n - i], sig), sig);
            }
            c[n] = acc;
        }
        Jet { c }
    }

    /// Quotient; requires the divisor's value enclosure to exclude zero.
    pub fn div(&self, rhs: &Jet<M>, sig: u32) -> Result<Jet<M>> {
        if rhs.c[0].contains_zero() {
            return Err(RealError::DivisionByZero);
        }
        let mut q = [DyadicInterval::ZERO; M];
        for n in 0..M {
            let mut acc = self.c[n];
            for i in 1..=n {
                acc = acc.sub_out(&rhs.c[i].mul_out(&q[n - i], sig), sig);
            }
            q[n] = acc.div_out(&rhs.c[0], sig)?;
        }
        Ok(Jet { c: q })
    }

    /// `exp(u)` via `(exp u)' = u' exp(u)`.
    pub fn exp(&self, sig: u32) -> Result<Jet<M>> {
        let mut h = [DyadicInterval::ZERO; M];
        h[0] = interval_exp(&self.c[0], sig)?;
        for n in 0..M.saturating_sub(1) {
            // (n+1) h_{n+1} = sum_{i=0..n} (i+1) u_{i+1} h_{n-i}
            let mut acc = DyadicInterval::ZERO;
            for i in 0..=n {
                if i + 1 >= M {
                    continue;
                }
                let t = self.c[i + 1]
                    .mul_dyadic_out(&crate::Dyadic::from_int((i + 1) as i64), sig)
                    .mul_out(&h[n - i], sig);
                acc = acc.add_out(&t, sig);
            }
            h[n + 1] = acc
                .div_out(&DyadicInterval::from_int((n + 1) as i64), sig)
                .expect("n+1 > 0");
        }
        Ok(Jet { c: h })
    }

    /// `ln(u)` for strictly positive `u`.
    pub fn ln(&self, sig: u32) -> Result<Jet<M>> {
        if !self.c[0].strictly_positive() {
            return Err(RealError::Domain("jet ln needs a positive value range"));
        }
        let mut h = [DyadicInterval::ZERO; M];
        h[0] = interval_ln(&self.c[0], sig)?;
        for n in 1..M {
            // h_n = (u_n - (1/n) sum_{i=1..n-1} i h_i u_{n-i}) / u_0
            let mut acc = self.c[n];
            for i in 1..n {
                let t = h[i]
                    .mul_dyadic_out(&crate::Dyadic::from_int(i as i64), sig)
                    .mul_out(&self.c[n - i], sig)
                    .div_out(&DyadicInterval::from_int(n as i64), sig)
                    .expect("n > 0");
                acc = acc.sub_out(&t, sig);
            }
            h[n] = acc.div_out(&self.c[0], sig)?;
        }
        Ok(Jet { c: h })
    }

    /// `(sin u, cos u)` jointly.
    pub fn sincos(&self, sig: u32) -> Result<(Jet<M>, Jet<M>)> {
        let mut s = [DyadicInterval::ZERO; M];
        let mut c = [DyadicInterval::ZERO; M];
        s[0] = interval_sin(&self.c[0], sig)?;
        c[0] = interval_cos(&self.c[0], sig)?;
        for n in 0..M.saturating_sub(1) {
            let mut sa = DyadicInterval::ZERO;
            let mut ca = DyadicInterval::ZERO;
            for i in 0..=n {
                if i + 1 >= M {
                    continue;
                }
                let du = self.c[i + 1].mul_dyadic_out(&crate::Dyadic::from_int((i + 1) as i64), sig);
                sa = sa.add_out(&du.mul_out(&c[n - i], sig), sig);
                ca = ca.sub_out(&du.mul_out(&s[n - i], sig), sig);
            }
            let den = DyadicInterval::from_int((n + 1) as i64);
            s[n + 1] = sa.div_out(&den, sig).expect("n+1 > 0");
            c[n + 1] = ca.div_out(&den, sig).expect("n+1 > 0");
        }
        Ok((Jet { c: s }, Jet { c }))
    }

    /// `u^gamma` for a constant exponent enclosure and strictly positive `u`.
    pub fn pow_const(&self, gamma: &DyadicInterval, sig: u32) -> Result<Jet<M>> {
        if !self.c[0].strictly_positive() {
            return Err(RealError::Domain("jet pow needs a positive value range"));
        }
        let mut h = [DyadicInterval::ZERO; M];
        h[0] = interval_pow(&self.c[0], gamma, sig)?;
        for n in 0..M.saturating_sub(1) {
            // (n+1) u_0 h_{n+1} =
            //   gamma sum_{i=0..n} (i+1) u_{i+1} h_{n-i}
            //   - sum_{i=1..n} (n+1-i) u_i h_{n+1-i}
            let mut acc = DyadicInterval::ZERO;
            for i in 0..=n {
                if i + 1 >= M {
                    continue;
                }
                let t = self.c[i + 1]
                    .mul_dyadic_out(&crate::Dyadic::from_int((i + 1) as i64), sig)
                    .mul_out(&h[n - i], sig);
                acc = acc.add_out(&t, sig);
            }
            acc = acc.mul_out(gamma, sig);
            for i in 1..=n {
                if n + 1 - i >= M {
                    continue;
                }
                let t = self.c[i]
                    .mul_dyadic_out(&crate::Dyadic::from_int((n + 1 - i) as i64), sig)
                    .mul_out(&h[n + 1 - i], sig);
                acc = acc.sub_out(&t, sig);
            }
            let den = self.c[0].mul_dyadic_out(&crate::Dyadic::from_int((n + 1) as i64), sig);
            h[n + 1] = acc.div_out(&den, sig)?;
        }
        Ok(Jet { c: h })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Dyadic;

    fn iv(lo: f64, hi: f64) -> DyadicInterval {
        DyadicInterval::new(Dyadic::from_f64(lo).unwrap(), Dyadic::from_f64(hi).unwrap()).unwrap()
    }

    fn contains(j: &DyadicInterval, v: f64) -> bool {
        j.lo().to_f64() <= v + 1e-12 && v - 1e-12 <= j.hi().to_f64()
    }

    #[test]
    fn polynomial_jet() {
        // f(t) = t^2 + 3t on [1, 1]: f=4, f'=5, f''/2=1
        let t = Jet::<3>::var(iv(1.0, 1.0));
        let f = t.mul(&t, 53).add(&t.scale(&iv(3.0, 3.0), 53), 53);
        assert!(contains(&f.c[0], 4.0));
        assert!(contains(&f.c[1], 5.0));
        assert!(contains(&f.c[2], 1.0));
    }

    #[test]
    fn exp_jet_derivatives() {
        // f = exp(-t^2) at t=1: f = e^-1, f' = -2 e^-1, f''/2 = e^-1
        let t = Jet::<3>::var(iv(1.0, 1.0));
        let f = t.mul(&t, 53).neg().exp(40).unwrap();
        let e1 = (-1.0f64).exp();
        assert!(contains(&f.c[0], e1));
        assert!(contains(&f.c[1], -2.0 * e1));
        assert!(contains(&f.c[2], e1));
    }

    #[test]
    fn sin_jet_derivatives() {
        let t = Jet::<4>::var(iv(0.7, 0.7));
        let (s, c) = t.sincos(45).unwrap();
        assert!(contains(&s.c[0], 0.7f64.sin()));
        assert!(contains(&s.c[1], 0.7f64.cos()));
        assert!(contains(&s.c[2], -0.7f64.sin() / 2.0));
        assert!(contains(&c.c[3], 0.7f64.sin() / 6.0));
    }

    #[test]
    fn pow_jet_derivatives() {
        // f = t^(3/2) at t=4: f=8, f'=3, f''/2 = (3/4) t^(-1/2) / 2 = 3/16
        let t = Jet::<3>::var(iv(4.0, 4.0));
        let f = t.pow_const(&iv(1.5, 1.5), 45).unwrap();
        assert!(contains(&f.c[0], 8.0));
        assert!(contains(&f.c[1], 3.0));
        assert!(contains(&f.c[2], 3.0 / 16.0));
    }

    #[test]
    fn div_jet() {
        // f = 1/t at t=2: f=0.5, f'=-0.25, f''/2=0.125
        let t = Jet::<3>::var(iv(2.0, 2.0));
        let f = Jet::<3>::constant(DyadicInterval::ONE).div(&t, 50).unwrap();
        assert!(contains(&f.c[0], 0.5));
        assert!(contains(&f.c[1], -0.25));
        assert!(contains(&f.c[2], 0.125));
    }

    #[test]
    fn jet_over_wide_cell_encloses_range() {
        // f = exp(t) on [0, 1]: f'' / 2 ranges over [0.5, e/2]
        let t = Jet::<3>::var(iv(0.0, 1.0));
        let f = t.exp(40).unwrap();
        assert!(contains(&f.c[2], 0.5));
        assert!(contains(&f.c[2], std::f64::consts::E / 2.0));
    }
}
