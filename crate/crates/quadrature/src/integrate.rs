use std::collections::BinaryHeap;

use exactreal::{Dyadic, DyadicInterval, RealError, Result};

use crate::integrand::IntervalFn;

/// Subdivision budget for the adaptive integrator. Exhausting it is an
/// explicit error (or, in lenient mode, a sound but wide enclosure).
#[derive(Clone, Copy, Debug)]
pub struct QuadBudget {
    pub max_cells: u64,
    pub max_depth: u32,
}

impl Default for QuadBudget {
    fn default() -> Self {
        QuadBudget { max_cells: 4_000_000, max_depth: 70 }
    }
}

impl QuadBudget {
    pub fn quick() -> Self {
        QuadBudget { max_cells: 200_000, max_depth: 50 }
    }
}

struct Cell {
    lo: Dyadic,
    hi: Dyadic,
    enc: DyadicInterval,
    width_f64: f64,
    depth: u32,
}

/// Enclosure of one cell's integral contribution: midpoint rule with a
/// rigorous `f''/2` remainder when a jet is available, otherwise
/// `width x range`. Whichever enclosure is narrower wins.
fn evaluate_cell(f: &dyn IntervalFn, lo: &Dyadic, hi: &Dyadic, k_eval: u32, depth: u32) -> Result<Cell> {
    let cell_iv = DyadicInterval::new(*lo, *hi)?;
    let w = hi.sub(lo)?;
    let sig = k_eval + 16;
    let wiv = DyadicInterval::point(w);

    let mut best: Option<DyadicInterval> = None;
    if let Some(jet) = f.eval_jet2(&cell_iv, k_eval) {
        if let Ok(jet) = jet {
            if let Some(half_second) = jet.half_second() {
                // integral = w f(mid) + [f''/2 over cell] * w^3/12
                let mid = cell_iv.mid();
                let fmid = f.eval(&DyadicInterval::point(mid), k_eval)?;
                let w3_12 = wiv
                    .powi(3, sig)
                    .div_out(&DyadicInterval::from_int(12), sig)
                    .expect("12 != 0");
                let enc = fmid.mul_out(&wiv, sig).add_out(&half_second.mul_out(&w3_12, sig), sig);
                best = Some(enc);
            }
            let zeroth = jet.value().mul_out(&wiv, sig);
            best = Some(match best {
                Some(b) => {
                    if zeroth.width_up() < b.width_up() {
                        zeroth
                    } else {
                        b
                    }
                }
                None => zeroth,
            });
        }
    }
    let enc = match best {
        Some(e) => e,
        None => f.eval(&cell_iv, k_eval)?.mul_out(&wiv, sig),
    };
    Ok(Cell {
        lo: *lo,
        hi: *hi,
        enc,
        width_f64: enc.width_up().to_f64(),
        depth,
    })
}

#[derive(PartialEq, Eq)]
struct HeapKey {
    width: Dyadic,
    lo: Dyadic,
    index: usize,
}

impl Ord for HeapKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Widest first; ties broken by position for determinism.
        self.width
            .cmp(&other.width)
            .then_with(|| other.lo.cmp(&self.lo))
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for HeapKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn run(
    f: &dyn IntervalFn,
    a: &Dyadic,
    b: &Dyadic,
    k: u32,
    budget: &QuadBudget,
    lenient: bool,
) -> Result<DyadicInterval> {
    if a > b {
        return Err(RealError::ContractViolation(format!(
            "integration bounds out of order: [{a}, {b}]"
        )));
    }
    if a == b {
        return Ok(DyadicInterval::ZERO);
    }
    let range_bits = b.sub(a)?.mag_exp().unwrap_or(0).max(0) as u32;
    let k_eval = k + range_bits + 8;
    let target = Dyadic::pow2(-i64::from(k)).to_f64();

    let mut cells: Vec<Option<Cell>> = Vec::new();
    let mut heap: BinaryHeap<HeapKey> = BinaryHeap::new();
    let mut total_width: f64 = 0.0;
    let mut created: u64 = 1;

    let first = evaluate_cell(f, a, b, k_eval, 0)?;
    total_width += first.width_f64;
    heap.push(HeapKey { width: first.enc.width_up(), lo: first.lo, index: 0 });
    cells.push(Some(first));

    let finish = |cells: &[Option<Cell>], k: u32| -> DyadicInterval {
        let sig = k + 48;
        let mut acc = DyadicInterval::ZERO;
        for c in cells.iter().flatten() {
            acc = acc.add_out(&c.enc, sig);
        }
        acc
    };

    // The f64 tally is a scheduling heuristic; the enclosure returned is
    // re-summed with directed rounding in `finish`. `check_at` retreats
    // whenever a directed re-sum comes back too wide, so the O(cells)
    // re-sum happens O(log) times.
    let mut check_at = target * 0.85;
    loop {
        if total_width <= check_at {
            let out = finish(&cells, k);
            if out.width_le_pow2(i64::from(k)) {
                return Ok(out);
            }
            total_width = cells
                .iter()
                .flatten()
                .map(|c| c.width_f64)
                .sum();
            check_at *= 0.5;
        }
        let top = match heap.pop() {
            Some(t) => t,
            None => {
                let out = finish(&cells, k);
                if lenient || out.width_le_pow2(i64::from(k)) {
                    return Ok(out);
                }
                return Err(RealError::PrecisionUnreachable(format!(
                    "no cells left to split; width {}",
                    out.width_up()
                )));
            }
        };
        let cell = match cells[top.index].take() {
            Some(c) => c,
            None => continue,
        };
        if created + 2 > budget.max_cells || cell.depth + 1 > budget.max_depth {
            let depth = cell.depth;
            cells[top.index] = Some(cell);
            let out = finish(&cells, k);
            if lenient || out.width_le_pow2(i64::from(k)) {
                return Ok(out);
            }
            return Err(RealError::PrecisionUnreachable(format!(
                "quadrature budget exhausted ({created} cells, depth {depth}), width {}",
                out.width_up()
            )));
        }
        let mid = DyadicInterval::new(cell.lo, cell.hi)?.mid();
        if mid == cell.lo || mid == cell.hi {
            // Cannot split further at this precision.
            cells[top.index] = Some(cell);
            let out = finish(&cells, k);
            if lenient || out.width_le_pow2(i64::from(k)) {
                return Ok(out);
            }
            return Err(RealError::PrecisionUnreachable(
                "cell width reached dyadic resolution".into(),
            ));
        }
        total_width -= cell.width_f64;
        created += 2;
        let left = evaluate_cell(f, &cell.lo, &mid, k_eval, cell.depth + 1)?;
        let right = evaluate_cell(f, &mid, &cell.hi, k_eval, cell.depth + 1)?;
        total_width += left.width_f64 + right.width_f64;
        heap.push(HeapKey { width: left.enc.width_up(), lo: left.lo, index: top.index });
        cells[top.index] = Some(left);
        heap.push(HeapKey { width: right.enc.width_up(), lo: right.lo, index: cells.len() });
        cells.push(Some(right));
    }
}

/// Enclosure of the definite integral of `f` over `[a, b]` with width
/// `< 2^-k`, by adaptive bisection on enclosure cells.
pub fn integrate_bounded(
    f: &dyn IntervalFn,
    a: &Dyadic,
    b: &Dyadic,
    k: u32,
    budget: &QuadBudget,
) -> Result<DyadicInterval> {
    run(f, a, b, k, budget, false)
}

/// Like [`integrate_bounded`], but budget exhaustion returns the (sound,
/// possibly wide) enclosure reached instead of an error. Used where the
/// caller is itself an interval extension and wideness is acceptable.
pub fn integrate_bounded_lenient(
    f: &dyn IntervalFn,
    a: &Dyadic,
    b: &Dyadic,
    k: u32,
    budget: &QuadBudget,
) -> Result<DyadicInterval> {
    run(f, a, b, k, budget, true)
}
