use exactreal::{
    interval_exp, interval_pow, CReal, Dyadic, DyadicInterval, Jet, RealError, Result,
};

use crate::integrand::IntervalFn;

/// The built-in dominating-function families. Each has a closed-form (or
/// block-sum) certified tail bound, which is what makes improper integrals
/// computable through truncation.
#[derive(Clone)]
pub enum DominatorFamily {
    /// `c * exp(-q x^2)`
    ExpSquare { c: Dyadic, q: Dyadic },
    /// `c * exp(-q |x|^r)`, `r > 0`
    ExpPower { c: Dyadic, q: Dyadic, r: CReal },
    /// `c / (1 + x^2)`
    Cauchy { c: Dyadic },
    /// `c * |x|^-s` for `|x| >= x0` (and the constant `c * x0^-s` inside);
    /// requires `s > 1`.
    PowerTail { c: Dyadic, s: CReal, x0: Dyadic },
}

/// A nonnegative integrable majorant `psi` together with a certified tail
/// cutoff: `cutoff(k)` returns `a` with `int_{x >= a} psi dx < 2^-k` (one
/// tail; symmetric families double it for both tails).
pub struct Dominator {
    family: DominatorFamily,
}

impl Dominator {
    pub fn new(family: DominatorFamily) -> Dominator {
        Dominator { family }
    }

    pub fn exp_square(c: Dyadic, q: Dyadic) -> Dominator {
        Dominator::new(DominatorFamily::ExpSquare { c, q })
    }

    pub fn exp_power(c: Dyadic, q: Dyadic, r: CReal) -> Dominator {
        Dominator::new(DominatorFamily::ExpPower { c, q, r })
    }

    pub fn cauchy(c: Dyadic) -> Dominator {
        Dominator::new(DominatorFamily::Cauchy { c })
    }

    pub fn power_tail(c: Dyadic, s: CReal, x0: Dyadic) -> Dominator {
        Dominator::new(DominatorFamily::PowerTail { c, s, x0 })
    }

    /// Upper bound on `int_a^infty psi`, certified by interval arithmetic.
    fn tail_mass_upper(&self, a: &Dyadic, k: u32) -> Result<Dyadic> {
        let sig = k + 24;
        let aiv = DyadicInterval::point(*a);
        match &self.family {
            DominatorFamily::ExpSquare { c, q } => {
                // int_a^inf c e^{-q x^2} <= c e^{-q a^2} / (2 q a)
                if a.signum() <= 0 {
                    return Err(RealError::Domain("tail bound needs a > 0"));
                }
                let qa2 = aiv.powi(2, sig).mul_dyadic_out(q, sig).neg();
                let e = interval_exp(&qa2, k + 8)?;
                let den = DyadicInterval::point(*q)
                    .mul_out(&aiv, sig)
                    .mul_pow2(1);
                let b = e.mul_dyadic_out(c, sig).div_out(&den, sig)?;
                Ok(b.hi())
            }
            DominatorFamily::ExpPower { c, q, r } => {
                let riv = r.enclose(k + 8)?;
                if riv.lo() >= Dyadic::ONE {
                    // x^{r-1} >= a^{r-1} on the tail:
                    // int <= c e^{-q a^r} / (q r a^{r-1})
                    if a.signum() <= 0 {
                        return Err(RealError::Domain("tail bound needs a > 0"));
                    }
                    let ar = interval_pow(&aiv, &riv, k + 8)?;
                    let e = interval_exp(&ar.mul_dyadic_out(q, sig).neg(), k + 8)?;
                    let r1 = riv.sub_out(&DyadicInterval::ONE, sig);
                    let ar1 = interval_pow(&aiv, &r1, k + 8)?;
                    let den = DyadicInterval::point(*q).mul_out(&riv, sig).mul_out(&ar1, sig);
                    let b = e.mul_dyadic_out(c, sig).div_out(&den, sig)?;
                    Ok(b.hi())
                } else {
                    // 0 < r < 1: dyadic block sum with a certified
                    // geometric remainder once the ratio drops below 1/2.
                    if riv.lo().signum() <= 0 {
                        return Err(RealError::Domain("exp-power dominator needs r > 0"));
                    }
                    let mut total = Dyadic::ZERO;
                    let mut bj = *a;
                    for _ in 0..200 {
                        let bj_iv = DyadicInterval::point(bj);
                        let bjr = interval_pow(&bj_iv, &riv, k + 8)?;
                        let e = interval_exp(&bjr.mul_dyadic_out(q, sig).neg(), k + 8)?;
                        // term_j = b_j * c * e^{-q b_j^r}
                        let term = e.mul_dyadic_out(c, sig).mul_dyadic_out(&bj, sig).hi();
                        // ratio bound 2 e^{-q b_j^r (2^r - 1)}
                        let two_r = interval_pow(&DyadicInterval::from_int(2), &riv, k + 8)?;
                        let factor = two_r.sub_out(&DyadicInterval::ONE, sig);
                        let expo = bjr.mul_dyadic_out(q, sig).mul_out(&factor, sig).neg();
                        let rho = interval_exp(&expo, k + 8)?.mul_pow2(1).hi();
                        total = DyadicInterval::point(total)
                            .add_out(&DyadicInterval::point(term), sig)
                            .hi();
                        if rho < Dyadic::new(1, -1) {
                            // Ratios only shrink as b_j grows, so the
                            // remaining blocks are below term * rho/(1-rho)
                            // <= term.
                            let rem = term;
                            return Ok(DyadicInterval::point(total)
                                .add_out(&DyadicInterval::point(rem), sig)
                                .hi());
                        }
                        bj = bj.mul_pow2(1);
                    }
                    Err(RealError::PrecisionUnreachable(
                        "exp-power block tail did not contract".into(),
                    ))
                }
            }
            DominatorFamily::Cauchy { c } => {
                // int_a^inf c/(1+x^2) <= c / a
                if a.signum() <= 0 {
                    return Err(RealError::Domain("tail bound needs a > 0"));
                }
                Ok(DyadicInterval::point(*c).div_out(&aiv, sig)?.hi())
            }
            DominatorFamily::PowerTail { c, s, x0 } => {
                let siv = s.enclose(k + 8)?;
                if siv.lo() <= Dyadic::ONE {
                    return Err(RealError::Domain("power tail needs s > 1"));
                }
                if a < x0 {
                    return Err(RealError::Domain("power tail bound valid only beyond x0"));
                }
                // int_a^inf c x^-s = c a^{1-s} / (s - 1)
                let s1 = siv.sub_out(&DyadicInterval::ONE, sig);
                let a_pow = interval_pow(&aiv, &s1, k + 8)?;
                let b = DyadicInterval::point(*c)
                    .div_out(&a_pow, sig)?
                    .div_out(&s1, sig)?;
                Ok(b.hi())
            }
        }
    }

    /// Smallest power-of-two `a` (searched as 1, 2, 4, ...) certified to
    /// satisfy `int_a^inf psi < 2^-k`.
    pub fn cutoff(&self, k: u32) -> Result<Dyadic> {
        let mut a = Dyadic::ONE;
        for _ in 0..64 {
            if let Ok(m) = self.tail_mass_upper(&a, k + 2) {
                if m < Dyadic::pow2(-i64::from(k)) {
                    return Ok(a);
                }
            }
            a = a.mul_pow2(1);
        }
        Err(RealError::PrecisionUnreachable(
            "dominator tail cutoff not found below 2^64".into(),
        ))
    }

    /// Pointwise enclosure of `psi` (used for domination spot-checks and as
    /// an integrand bound).
    pub fn psi(&self, x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
        let sig = k + 16;
        let ax = x.abs();
        match &self.family {
            DominatorFamily::ExpSquare { c, q } => {
                let e = interval_exp(&ax.powi(2, sig).mul_dyadic_out(q, sig).neg(), k + 4)?;
                Ok(e.mul_dyadic_out(c, sig))
            }
            DominatorFamily::ExpPower { c, q, r } => {
                let riv = r.enclose(k + 8)?;
                let p = interval_pow(&ax, &riv, k + 4)?;
                let e = interval_exp(&p.mul_dyadic_out(q, sig).neg(), k + 4)?;
                Ok(e.mul_dyadic_out(c, sig))
            }
            DominatorFamily::Cauchy { c } => {
                let den = DyadicInterval::ONE.add_out(&ax.powi(2, sig), sig);
                DyadicInterval::point(*c).div_out(&den, sig)
            }
            DominatorFamily::PowerTail { c, s, x0 } => {
                let siv = s.enclose(k + 8)?;
                let clipped = if ax.lo() < *x0 {
                    // Constant plateau inside |x| < x0.
                    DyadicInterval::new(*x0, ax.hi().max(*x0))?
                } else {
                    ax
                };
                let p = interval_pow(&clipped, &siv, k + 4)?;
                DyadicInterval::point(*c).div_out(&p, sig)
            }
        }
    }
}

impl IntervalFn for Dominator {
    fn eval(&self, x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
        self.psi(x, k)
    }

    fn eval_jet2(&self, x: &DyadicInterval, k: u32) -> Option<Result<Jet<3>>> {
        // Jets for the two families whose expectation integrals are hot.
        let sig = k + 16;
        match &self.family {
            DominatorFamily::ExpSquare { c, q } => {
                let t = Jet::<3>::var(*x);
                let r = t
                    .mul(&t, sig)
                    .scale(&DyadicInterval::point(*q), sig)
                    .neg()
                    .exp(k + 4)
                    .map(|j| j.scale(&DyadicInterval::point(*c), sig));
                Some(r)
            }
            DominatorFamily::Cauchy { c } => {
                let t = Jet::<3>::var(*x);
                let den = t.mul(&t, sig).add(&Jet::constant(DyadicInterval::ONE), sig);
                let r = Jet::constant(DyadicInterval::point(*c)).div(&den, sig);
                Some(r)
            }
            _ => None,
        }
    }
}
