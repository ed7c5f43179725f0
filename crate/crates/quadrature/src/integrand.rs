use exactreal::{DyadicInterval, Jet, Result};

/// An interval extension of a real function: `eval` must enclose the exact
/// image of its input interval, with tightness improving as `k` grows.
///
/// `eval_jet2` optionally returns order-2 Taylor coefficients over the cell
/// (value range, derivative range, half second derivative range). Returning
/// `None`, or an error, makes the integrator fall back to the zeroth-order
/// cell rule; it never affects soundness.
pub trait IntervalFn: Send + Sync {
    fn eval(&self, x: &DyadicInterval, k: u32) -> Result<DyadicInterval>;

    fn eval_jet2(&self, _x: &DyadicInterval, _k: u32) -> Option<Result<Jet<3>>> {
        None
    }
}

/// A two-argument interval extension, used by parametric integrals.
pub trait IntervalFn2: Send + Sync {
    fn eval(&self, x: &DyadicInterval, y: &DyadicInterval, k: u32) -> Result<DyadicInterval>;

    /// Jet in `y` for fixed `x`-cell.
    fn eval_jet2_y(
        &self,
        _x: &DyadicInterval,
        _y: &DyadicInterval,
        _k: u32,
    ) -> Option<Result<Jet<3>>> {
        None
    }
}

type EvalFn = dyn Fn(&DyadicInterval, u32) -> Result<DyadicInterval> + Send + Sync;
type JetFn = dyn Fn(&DyadicInterval, u32) -> Result<Jet<3>> + Send + Sync;

/// Closure-backed [`IntervalFn`].
pub struct ClosureFn {
    eval: Box<EvalFn>,
    jet: Option<Box<JetFn>>,
}

impl ClosureFn {
    pub fn new<F>(eval: F) -> ClosureFn
    where
        F: Fn(&DyadicInterval, u32) -> Result<DyadicInterval> + Send + Sync + 'static,
    {
        ClosureFn { eval: Box::new(eval), jet: None }
    }

    pub fn with_jet<F, G>(eval: F, jet: G) -> ClosureFn
    where
        F: Fn(&DyadicInterval, u32) -> Result<DyadicInterval> + Send + Sync + 'static,
        G: Fn(&DyadicInterval, u32) -> Result<Jet<3>> + Send + Sync + 'static,
    {
        ClosureFn { eval: Box::new(eval), jet: Some(Box::new(jet)) }
    }
}

impl IntervalFn for ClosureFn {
    fn eval(&self, x: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
        (self.eval)(x, k)
    }

    fn eval_jet2(&self, x: &DyadicInterval, k: u32) -> Option<Result<Jet<3>>> {
        self.jet.as_ref().map(|j| j(x, k))
    }
}

type EvalFn2 = dyn Fn(&DyadicInterval, &DyadicInterval, u32) -> Result<DyadicInterval> + Send + Sync;
type JetFn2 = dyn Fn(&DyadicInterval, &DyadicInterval, u32) -> Result<Jet<3>> + Send + Sync;

/// Closure-backed [`IntervalFn2`].
pub struct ClosureFn2 {
    eval: Box<EvalFn2>,
    jet_y: Option<Box<JetFn2>>,
}

impl ClosureFn2 {
    pub fn new<F>(eval: F) -> ClosureFn2
    where
        F: Fn(&DyadicInterval, &DyadicInterval, u32) -> Result<DyadicInterval>
            + Send
            + Sync
            + 'static,
    {
        ClosureFn2 { eval: Box::new(eval), jet_y: None }
    }

    pub fn with_jet_y<F, G>(eval: F, jet_y: G) -> ClosureFn2
    where
        F: Fn(&DyadicInterval, &DyadicInterval, u32) -> Result<DyadicInterval>
            + Send
            + Sync
            + 'static,
        G: Fn(&DyadicInterval, &DyadicInterval, u32) -> Result<Jet<3>> + Send + Sync + 'static,
    {
        ClosureFn2 { eval: Box::new(eval), jet_y: Some(Box::new(jet_y)) }
    }
}

impl IntervalFn2 for ClosureFn2 {
    fn eval(&self, x: &DyadicInterval, y: &DyadicInterval, k: u32) -> Result<DyadicInterval> {
        (self.eval)(x, y, k)
    }

    fn eval_jet2_y(
        &self,
        x: &DyadicInterval,
        y: &DyadicInterval,
        k: u32,
    ) -> Option<Result<Jet<3>>> {
        self.jet_y.as_ref().map(|j| j(x, y, k))
    }
}
