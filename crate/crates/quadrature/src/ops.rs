use std::sync::Arc;

use exactreal::{
    interval_exp, interval_pow, CReal, Dyadic, DyadicInterval, Jet, RealError, Result,
};

use crate::dominator::Dominator;
use crate::integrand::{IntervalFn, IntervalFn2};
use crate::integrate::{integrate_bounded, integrate_bounded_lenient, QuadBudget};

/// Spot-checks `|f| <= psi` at a few points of the tail region. This can
/// only refute the caller's domination claim, never prove it; a refutation
/// is a contract violation.
fn spot_check_domination(
    f: &dyn IntervalFn,
    d: &Dominator,
    a: &Dyadic,
    k: u32,
    both_sides: bool,
) -> Result<()> {
    let signs: &[i64] = if both_sides { &[1, -1] } else { &[1] };
    for mult in [1i64, 2, 3, 5, 8] {
        for &sign in signs {
            let p = match a.mul(&Dyadic::from_int(mult * sign)) {
                Ok(p) => p,
                Err(_) => continue,
            };
            let x = DyadicInterval::point(p);
            let fv = f.eval(&x, k).map(|v| v.abs());
            let pv = d.psi(&x, k);
            if let (Ok(fv), Ok(pv)) = (fv, pv) {
                if fv.mig() > pv.hi() {
                    return Err(RealError::ContractViolation(format!(
                        "domination fails near x = {}: |f| >= {} but psi <= {}",
                        x.lo(),
                        fv.mig(),
                        pv.hi()
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Enclosure form of [`integrate_dominated`].
pub fn integrate_dominated_interval(
    f: &dyn IntervalFn,
    d: &Dominator,
    k: u32,
    budget: &QuadBudget,
) -> Result<DyadicInterval> {
    let a = d.cutoff(k + 2)?;
    spot_check_domination(f, d, &a, k.min(20), true)?;
    let body = integrate_bounded(f, &a.neg(), &a, k + 1, budget)?;
    // Both tails carry at most 2^-(k+2) each of |f| <= psi mass.
    Ok(body.add_out(&DyadicInterval::pm_pow2(-i64::from(k) - 1), k + 32))
}

/// `q` with `|q - int_R f| < 2^-k`, via truncation at the dominator's
/// certified cutoff plus bounded quadrature.
pub fn integrate_dominated(
    f: &dyn IntervalFn,
    d: &Dominator,
    k: u32,
    budget: &QuadBudget,
) -> Result<Dyadic> {
    let enc = integrate_dominated_interval(f, d, k + 1, budget)?;
    Ok(enc.mid())
}

/// The interval extension `x -> int_R f(x, y) dm(y)` of a parametric
/// integral with a `y`-uniform dominator.
pub struct ParametricIntegral {
    f: Arc<dyn IntervalFn2>,
    d: Arc<Dominator>,
    budget: QuadBudget,
}

/// Builds the parametric integral of a dominated two-variable integrand:
/// `|f(x, y)| <= psi(y)` for all `x`. Uniform truncation in `y` gives the
/// interval extension a computable modulus of convergence in `x`.
pub fn parametric_integral(
    f: Arc<dyn IntervalFn2>,
    d: Arc<Dominator>,
    budget: QuadBudget,
) -> ParametricIntegral {
    ParametricIntegral { f, d, budget }
}

struct Slice {
    f: Arc<dyn IntervalFn2>,
    x: DyadicInterval,
}

impl IntervalFn for Slice {
    fn eval(&self, y: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
        self.f.eval(&self.x, y, k)
    }

    fn eval_jet2(&self, y: &DyadicInterval, k: u32) -> Option<Result<Jet<3>>> {
        self.f.eval_jet2_y(&self.x, y, k)
    }
}

impl IntervalFn for ParametricIntegral {
    fn eval(&self, x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
        let a = self.d.cutoff(k + 2)?;
        let slice = Slice { f: Arc::clone(&self.f), x: *x };
        // Lenient: an x-cell of positive width bounds how tight the y
        // integral can get; the result is still an enclosure.
        let body = integrate_bounded_lenient(&slice, &a.neg(), &a, k + 1, &self.budget)?;
        Ok(body.add_out(&DyadicInterval::pm_pow2(-i64::from(k) - 1), k + 32))
    }
}

/// `int_{-inf}^{inf} exp(-|t|^r) dt` to within `2^-k`, for computable
/// `r > 0` bounded away from zero.
pub fn exp_power_integral(r: &CReal, k: u32, budget: &QuadBudget) -> Result<Dyadic> {
    let riv = r.enclose(k + 8)?;
    if riv.lo().signum() <= 0 {
        return Err(RealError::Domain("exp_power_integral needs r > 0"));
    }
    let d = Dominator::exp_power(Dyadic::ONE, Dyadic::ONE, r.clone());
    let a = d.cutoff(k + 3)?;
    let f = crate::integrand::ClosureFn::with_jet(
        move |t: &DyadicInterval, kk: u32| {
            let p = interval_pow(&t.abs(), &riv, kk + 4)?;
            interval_exp(&p.neg(), kk + 2)
        },
        move |t: &DyadicInterval, kk: u32| {
            let sig = kk + 16;
            if t.mig().is_zero() {
                return Err(RealError::Domain("jet at the |t|^r cusp"));
            }
            let tt = if t.hi().signum() < 0 { t.neg() } else { *t };
            let jt = Jet::<3>::var(tt);
            jt.pow_const(&riv, sig)?.neg().exp(kk + 4)
        },
    );
    // Even integrand: integrate [0, a] and double.
    let body = integrate_bounded(&f, &Dyadic::ZERO, &a, k + 2, budget)?;
    let enc = body.mul_pow2(1).add_out(
        &DyadicInterval::new(Dyadic::ZERO, Dyadic::pow2(-i64::from(k) - 2))?,
        k + 32,
    );
    Ok(enc.mid())
}

/// Modulus of continuity: `|y1 - y2| < 2^-modulus(k)` implies
/// `|F(y1) - F(y2)| < 2^-k`.
#[derive(Clone, Debug)]
pub struct Modulus {
    sup_bits: i64,
}

impl Modulus {
    pub fn apply(&self, k: u32) -> u32 {
        (i64::from(k) + 1 + self.sup_bits.max(0)) as u32
    }
}

/// The cumulative integral `F(y) = int_{-inf}^y f` as an interval
/// extension, with a computable modulus of continuity.
pub struct CumulativeIntegral {
    f: Arc<dyn IntervalFn>,
    d: Arc<Dominator>,
    budget: QuadBudget,
}

impl CumulativeIntegral {
    fn eval_impl(&self, y: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
        let a = self.d.cutoff(k + 2)?;
        let slack = DyadicInterval::pm_pow2(-i64::from(k) - 2);
        if y.hi() <= a.neg() {
            // Entirely inside the certified left tail.
            return Ok(slack);
        }
        let lo_at = y.lo().max(a.neg());
        let base = integrate_bounded_lenient(&*self.f, &a.neg(), &lo_at, k + 2, &self.budget)?;
        let var = if y.hi() <= lo_at {
            DyadicInterval::ZERO
        } else {
            // The increment over the y-cell: width x range, hulled with 0
            // because the evaluation point ranges over the cell.
            let cell = DyadicInterval::new(lo_at, y.hi())?;
            let range = self.f.eval(&cell, k + 2)?;
            let w = DyadicInterval::point(y.hi().sub(&lo_at)?);
            range.mul_out(&w, k + 16).hull(&DyadicInterval::ZERO)
        };
        Ok(base.add_out(&var, k + 32).add_out(&slack, k + 32))
    }
}

impl IntervalFn for CumulativeIntegral {
    fn eval(&self, y: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
        self.eval_impl(y, k)
    }
}

/// Builds `y -> int_{-inf}^y f` for a dominated computable `f`, returning
/// the interval extension and a modulus of continuity for it.
pub fn cumulative_integral(
    f: Arc<dyn IntervalFn>,
    d: Arc<Dominator>,
    budget: QuadBudget,
) -> Result<(CumulativeIntegral, Modulus)> {
    // A global sup bound for |f|: coarse range over the k=3 window hulled
    // with the dominator value at its edge.
    let a = d.cutoff(3)?;
    let coarse = f.eval(&DyadicInterval::new(a.neg(), a)?, 3)?.abs().hi();
    let edge = d.psi(&DyadicInterval::point(a), 3)?.abs().hi();
    let sup = coarse.max(edge);
    let modulus = Modulus { sup_bits: sup.mag_exp().unwrap_or(0) };
    Ok((CumulativeIntegral { f, d, budget }, modulus))
}

/// `E[|X|]` to within `2^-k` from the tail-distribution function
/// `psi(x) = P[|X| >= x]`, truncated by a dominator on `[0, inf)`.
pub fn expectation_from_tail(
    psi: &dyn IntervalFn,
    h: &Dominator,
    k: u32,
    budget: &QuadBudget,
) -> Result<Dyadic> {
    let a = h.cutoff(k + 2)?;
    // psi must be nonnegative and nonincreasing; spot-check a few pairs.
    let mut prev: Option<DyadicInterval> = None;
    for xv in [0i64, 1, 2, 4, 8] {
        let x = DyadicInterval::from_int(xv);
        if let Ok(v) = psi.eval(&x, 8) {
            if v.hi().signum() < 0 {
                return Err(RealError::ContractViolation(
                    "tail distribution went negative".into(),
                ));
            }
            if let Some(p) = &prev {
                if v.lo() > p.hi() {
                    return Err(RealError::ContractViolation(
                        "tail distribution is increasing".into(),
                    ));
                }
            }
            prev = Some(v);
        }
    }
    spot_check_domination(psi, h, &a, k.min(16), false)?;
    let body = integrate_bounded(psi, &Dyadic::ZERO, &a, k + 2, budget)?;
    let enc = body.add_out(
        &DyadicInterval::new(Dyadic::ZERO, Dyadic::pow2(-i64::from(k) - 2))?,
        k + 32,
    );
    Ok(enc.mid())
}
