//! Hausdorff dimensions of digit-restricted and frequency-prescribed sets.
//!
//! The set of points whose digits all lie in a finite `D` is the attractor
//! of `{T_i : i ∈ D}`, and its dimension is the root `d` of the Moran
//! equation `Σ_{i∈D} p_i^d = 1`. The set of points with digit frequencies
//! `q` has dimension `H(q) / E(I_p(q))`. All logarithms are natural.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::distributions::{Distribution, Family, FrequencyTarget, TailEstimate};
use crate::error::{Error, Result};
use crate::roots::solve_decreasing;
use crate::summation::CompensatedSum;

pub const DEFAULT_TOLERANCE: f64 = 1e-13;
pub const MAX_ITERATIONS: u32 = 200;
/// Series for `H` and `E` stop once the certified tail is below this.
pub const SERIES_TOLERANCE: f64 = 1e-12;
/// Largest index summed for infinite-support series.
pub const SERIES_HORIZON: u64 = crate::distributions::DEFAULT_MAX_DIGIT;

/// A dimension value with its enclosing bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DimensionResult {
    pub value: f64,
    pub bracket: (f64, f64),
    pub iterations: u32,
    /// `|f(value) - 1|` for Moran roots; zero for closed-form ratios.
    pub residual: f64,
}

impl DimensionResult {
    fn exact(value: f64) -> Self {
        Self { value, bracket: (value, value), iterations: 0, residual: 0.0 }
    }
}

/// `Σ_{i∈D} p_i^d` with the logarithms `ln p_i` precomputed.
#[derive(Debug, Clone)]
pub struct MoranSum {
    ln_masses: Vec<f64>,
}

impl MoranSum {
    pub fn new(dist: &Distribution, digits: &[u64]) -> Result<Self> {
        let set: BTreeSet<u64> = digits.iter().copied().collect();
        if set.is_empty() {
            return Err(Error::Domain("digit set is empty"));
        }
        let ln_masses = set
            .into_iter()
            .map(|i| {
                let lp = dist.ln_pmf(i)?;
                if lp == f64::NEG_INFINITY {
                    Err(Error::OutsideSupport(i))
                } else {
                    Ok(lp)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { ln_masses })
    }

    pub fn len(&self) -> usize {
        self.ln_masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ln_masses.is_empty()
    }

    pub fn eval(&self, d: f64) -> f64 {
        self.ln_masses.iter().map(|&lp| libm::exp(d * lp)).collect::<CompensatedSum>().value()
    }

    /// Value and derivative at `d`.
    pub fn eval_with_slope(&self, d: f64) -> (f64, f64) {
        let mut f = CompensatedSum::new();
        let mut df = CompensatedSum::new();
        for &lp in &self.ln_masses {
            let t = libm::exp(d * lp);
            f.add(t);
            df.add(lp * t);
        }
        (f.value(), df.value())
    }
}

/// Root of a strictly decreasing `f` with `f(0) ≥ 1` on `[0, 1]`.
fn moran_root<F>(f: F, slope: bool, tol: f64) -> Result<DimensionResult>
where
    F: Fn(f64) -> (f64, Option<f64>),
{
    if !(tol > 0.0) {
        return Err(Error::Domain("tolerance must be positive"));
    }
    let at_one = f(1.0).0;
    if at_one >= 1.0 {
        // D exhausts a finite support
        return Ok(DimensionResult { residual: (at_one - 1.0).abs(), ..DimensionResult::exact(1.0) });
    }
    let g = |d: f64| {
        let (v, dv) = f(d);
        (v - 1.0, if slope { dv } else { None })
    };
    let b = solve_decreasing(g, 0.0, 1.0, tol, MAX_ITERATIONS);
    let value = 0.5 * (b.lo + b.hi);
    if b.hi - b.lo > tol {
        return Err(Error::NonConvergent { horizon: MAX_ITERATIONS as u64, tail_bound: b.hi - b.lo });
    }
    Ok(DimensionResult {
        value,
        bracket: (b.lo, b.hi),
        iterations: b.iterations,
        residual: (f(value).0 - 1.0).abs(),
    })
}

/// Dimension of the set of points using only digits from `digits`.
pub fn moran_dimension(dist: &Distribution, digits: &[u64], tol: f64) -> Result<DimensionResult> {
    let sum = MoranSum::new(dist, digits)?;
    if sum.len() == 1 {
        return Ok(DimensionResult::exact(0.0));
    }
    moran_root(
        |d| {
            let (v, dv) = sum.eval_with_slope(d);
            (v, Some(dv))
        },
        true,
        tol,
    )
}

/// Closed-form left-hand side of the Moran equation for `D = {1, …, n}`.
pub fn family_moran_lhs(family: &Family, n: u64, d: f64, zeta_s: f64) -> f64 {
    match *family {
        Family::Geometric { p } => {
            if d == 0.0 {
                return n as f64;
            }
            let pd = libm::pow(p, d);
            (1.0 - libm::pow(pd, n as f64)) * libm::pow(1.0 - p, d) / (1.0 - pd)
        }
        Family::Poisson { lambda } => {
            let mut sum = CompensatedSum::new();
            let mut fact = 1.0;
            for i in 1..=n {
                if i > 1 {
                    fact *= (i - 1) as f64;
                }
                sum.add(libm::exp(-lambda * d) * libm::pow(lambda, d * (i - 1) as f64) / libm::pow(fact, d));
            }
            sum.value()
        }
        Family::Zeta { s } => {
            let partial: CompensatedSum = (1..=n).map(|i| libm::pow(i as f64, -s * d)).collect();
            libm::pow(zeta_s, -d) * partial.value()
        }
        Family::Finite(_) | Family::Rule(_) => f64::NAN,
    }
}

/// Same root as `moran_dimension(dist, {1..n})`, found by bisection on the
/// family's closed-form equation.
pub fn moran_dimension_family(dist: &Distribution, n: u64, tol: f64) -> Result<DimensionResult> {
    if n == 0 {
        return Err(Error::Domain("digit set is empty"));
    }
    let family = dist.family();
    if matches!(family, Family::Finite(_) | Family::Rule(_)) {
        return Err(Error::Unsupported("closed-form Moran equation needs a built-in family"));
    }
    if n == 1 {
        return Ok(DimensionResult::exact(0.0));
    }
    let z = dist.zeta_normalizer().unwrap_or(f64::NAN);
    moran_root(|d| (family_moran_lhs(family, n, d, z), None), false, tol)
}

/// `d_k = dim(digits ≤ k)` for `k = 1 … k_max`.
pub fn bounded_digit_dimension_profile(dist: &Distribution, k_max: u64) -> Result<Vec<(u64, DimensionResult)>> {
    if k_max < 2 {
        return Err(Error::Domain("k_max must be at least 2"));
    }
    let digits: Vec<u64> = (1..=k_max).collect();
    (1..=k_max)
        .map(|k| Ok((k, moran_dimension(dist, &digits[..k as usize], DEFAULT_TOLERANCE)?)))
        .collect()
}

/// Partial sum of a series together with the certified error of its tail.
#[derive(Debug, Clone, Copy)]
struct Series {
    value: f64,
    error: f64,
}

/// Sums `terms(i)` for i = 1.. until `tail(n)` certifies the rest below
/// [`SERIES_TOLERANCE`].
fn sum_series(terms: impl Fn(u64) -> Result<f64>, tail: impl Fn(u64) -> TailEstimate, finite: Option<u64>) -> Result<Series> {
    let mut acc = CompensatedSum::new();
    if let Some(m) = finite {
        for i in 1..=m {
            acc.add(terms(i)?);
        }
        return Ok(Series { value: acc.value(), error: 0.0 });
    }
    let mut last = f64::INFINITY;
    for n in 1..=SERIES_HORIZON {
        let t = tail(n);
        last = t.bound;
        if t.bound < SERIES_TOLERANCE {
            acc.add(t.value);
            return Ok(Series { value: acc.value(), error: t.bound });
        }
        acc.add(terms(n)?);
    }
    Err(Error::NonConvergent { horizon: SERIES_HORIZON, tail_bound: last })
}

fn entropy_term(q: f64) -> f64 {
    if q == 0.0 {
        0.0
    } else {
        -(q * libm::log(q))
    }
}

fn information_term(q: f64, ln_p: f64) -> f64 {
    if q == 0.0 {
        0.0
    } else {
        -(q * ln_p)
    }
}

fn entropy_series(q: &FrequencyTarget) -> Result<Series> {
    match q {
        FrequencyTarget::Finite(v) => {
            sum_series(|i| Ok(entropy_term(v[(i - 1) as usize])), |_| unreachable_tail(), Some(v.len() as u64))
        }
        FrequencyTarget::Matching(d) => self_information_series(d),
        FrequencyTarget::Rule(r) => {
            let tail = r.entropy_tail.as_ref().ok_or(Error::Unsupported("entropy of an infinite target needs a tail bound"))?;
            sum_series(|i| Ok(entropy_term((r.q)(i))), |n| TailEstimate { value: 0.0, bound: tail(n) }, None)
        }
    }
}

/// `Σ -p_i ln p_i`, shared by `H(p)` and `E(I_p(p))` so the two agree bit for bit.
fn self_information_series(d: &Distribution) -> Result<Series> {
    let tail = |n| d.entropy_tail(n).unwrap_or(TailEstimate { value: 0.0, bound: f64::INFINITY });
    if d.entropy_tail(1).is_none() {
        return Err(Error::Unsupported("entropy of a rule-given distribution needs a tail bound"));
    }
    sum_series(|i| Ok(information_term(d.pmf(i)?, d.ln_pmf(i)?)), tail, d.support_len())
}

fn unreachable_tail() -> TailEstimate {
    TailEstimate { value: 0.0, bound: 0.0 }
}

fn information_series(p: &Distribution, q: &FrequencyTarget) -> Result<Series> {
    match q {
        FrequencyTarget::Finite(v) => sum_series(
            |i| {
                let qi = v[(i - 1) as usize];
                if qi == 0.0 {
                    return Ok(0.0);
                }
                let lp = p.ln_pmf(i)?;
                if lp == f64::NEG_INFINITY {
                    return Err(Error::OutsideSupport(i));
                }
                Ok(information_term(qi, lp))
            },
            |_| unreachable_tail(),
            Some(v.len() as u64),
        ),
        FrequencyTarget::Matching(d) if d == p => self_information_series(d),
        FrequencyTarget::Matching(_) => {
            Err(Error::Unsupported("cross information against a different distribution needs a tail bound"))
        }
        FrequencyTarget::Rule(r) => {
            let tail = r
                .information_tail
                .as_ref()
                .ok_or(Error::Unsupported("information of an infinite target needs a tail bound"))?;
            sum_series(
                |i| Ok(information_term((r.q)(i), p.ln_pmf(i)?)),
                |n| TailEstimate { value: 0.0, bound: tail(n) },
                None,
            )
        }
    }
}

/// `H(q) = -Σ q_i ln q_i` (with `0 ln 0 = 0`).
pub fn entropy(q: &FrequencyTarget) -> Result<f64> {
    entropy_series(q).map(|s| s.value)
}

/// `E(I_p(q)) = -Σ q_i ln p_i`.
pub fn expected_information(p: &Distribution, q: &FrequencyTarget) -> Result<f64> {
    information_series(p, q).map(|s| s.value)
}

/// `dim F(p, q) = H(q) / E(I_p(q))`; the bracket carries the series tail errors.
pub fn frequency_set_dimension(p: &Distribution, q: &FrequencyTarget) -> Result<DimensionResult> {
    let h = entropy_series(q)?;
    let e = information_series(p, q)?;
    if h.value == 0.0 && h.error == 0.0 {
        return Ok(DimensionResult::exact(0.0));
    }
    if !(e.value > 0.0) {
        return Err(Error::Domain("expected information vanishes"));
    }
    let value = h.value / e.value;
    let lo = ((h.value - h.error).max(0.0) / (e.value + e.error)).clamp(0.0, 1.0);
    let hi = ((h.value + h.error) / (e.value - e.error)).clamp(0.0, 1.0);
    Ok(DimensionResult { value, bracket: (lo.min(value), hi.max(value)), iterations: 0, residual: 0.0 })
}

/// Dimension of the points whose digits are equidistributed on `{1, …, n}`:
/// `ln n / (-(1/n) Σ_{i≤n} ln p_i)`.
pub fn equidistribution_dimension(dist: &Distribution, n: u64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Domain("equidistribution needs n >= 2"));
    }
    let mut acc = CompensatedSum::new();
    for i in 1..=n {
        let lp = dist.ln_pmf(i)?;
        if lp == f64::NEG_INFINITY {
            return Err(Error::OutsideSupport(i));
        }
        acc.add(lp);
    }
    let nf = n as f64;
    Ok(libm::log(nf) / (-acc.value() / nf))
}
