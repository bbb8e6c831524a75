//! Bracketed root finding for strictly decreasing functions.

/// Final bracket `[lo, hi]` with `g(lo) ≥ 0 ≥ g(hi)` as evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub iterations: u32,
}

/// Finds the zero of a strictly decreasing `g` inside `[lo, hi]`.
///
/// `g` returns its value and, optionally, its derivative. With a
/// derivative, each iteration takes a Newton step from the left end and
/// then probes past it by the same distance, which pins the root from both
/// sides at quadratic rate when `g` is convex. Any iteration that fails to
/// halve the bracket is followed by a bisection step, so the bracket always
/// shrinks at least geometrically.
///
/// The caller guarantees `g(lo) ≥ 0 ≥ g(hi)`.
pub fn solve_decreasing<G>(g: G, mut lo: f64, mut hi: f64, tol: f64, max_iter: u32) -> Bracket
where
    G: Fn(f64) -> (f64, Option<f64>),
{
    let (mut g_lo, mut dg_lo) = g(lo);
    if g_lo == 0.0 {
        return Bracket { lo, hi: lo, iterations: 0 };
    }
    if g(hi).0 == 0.0 {
        return Bracket { lo: hi, hi, iterations: 0 };
    }
    let mut iterations = 0;
    while hi - lo > tol && iterations < max_iter {
        iterations += 1;
        let start = hi - lo;

        let newton = match dg_lo {
            Some(d) if d < 0.0 => lo - g_lo / d,
            _ => f64::NAN,
        };
        let candidate = if newton > lo && newton < hi { newton } else { 0.5 * (lo + hi) };
        let before = lo;
        match update(&g, candidate, &mut lo, &mut hi, &mut g_lo, &mut dg_lo) {
            Step::Root => break,
            Step::Left if dg_lo.is_some() => {
                let probe = lo + (lo - before);
                if probe > lo && probe < hi {
                    if let Step::Root = update(&g, probe, &mut lo, &mut hi, &mut g_lo, &mut dg_lo) {
                        break;
                    }
                }
            }
            _ => {}
        }

        if hi - lo > 0.5 * start {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if let Step::Root = update(&g, mid, &mut lo, &mut hi, &mut g_lo, &mut dg_lo) {
                break;
            }
        }
    }
    Bracket { lo, hi, iterations }
}

enum Step {
    Left,
    Right,
    Root,
}

fn update<G>(g: &G, x: f64, lo: &mut f64, hi: &mut f64, g_lo: &mut f64, dg_lo: &mut Option<f64>) -> Step
where
    G: Fn(f64) -> (f64, Option<f64>),
{
    let (gx, dgx) = g(x);
    if gx == 0.0 {
        *lo = x;
        *hi = x;
        Step::Root
    } else if gx > 0.0 {
        *lo = x;
        *g_lo = gx;
        *dg_lo = dgx;
        Step::Left
    } else {
        *hi = x;
        Step::Right
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn newton_and_bisection_agree() {
        // t + t² = 1 with t = 2^{-d}
        let ln2 = core::f64::consts::LN_2;
        let g = |d: f64| {
            let t = libm::exp(-d * ln2);
            (t + t * t - 1.0, Some(-ln2 * (t + 2.0 * t * t)))
        };
        let exact = libm::log2((1.0 + libm::sqrt(5.0)) / 2.0);
        let newton = solve_decreasing(g, 0.0, 1.0, 1e-14, 200);
        let plain = solve_decreasing(|d| (g(d).0, None), 0.0, 1.0, 1e-14, 200);
        for b in [newton, plain] {
            assert!(b.hi - b.lo <= 1e-14);
            assert!(b.lo <= exact + 1e-15 && exact - 1e-15 <= b.hi);
            assert!(g(b.lo).0 >= 0.0 && g(b.hi).0 <= 0.0);
        }
        assert!(newton.iterations < plain.iterations);
    }

    #[test]
    fn iteration_cap_is_respected() {
        let b = solve_decreasing(|x| (0.3 - x, None), 0.0, 1.0, 0.0, 7);
        assert_eq!(b.iterations, 7);
        assert!(b.lo <= 0.3 && 0.3 <= b.hi);
    }
}
