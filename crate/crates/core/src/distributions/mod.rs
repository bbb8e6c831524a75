//! Probability distributions supported by the positive integers.
//!
//! A [`Distribution`] partitions `[0, 1)` into consecutive cells
//! `[p̂_n, p̂_n + p_n)`, where `p̂_n = p_1 + … + p_{n-1}`. Prefix sums are
//! accumulated with compensated summation along a single path: the first
//! cells are tabulated when the distribution is built and every later
//! query resumes the same accumulator from the end of that table, so a
//! prefix value never depends on how it was requested.

mod target;
mod zeta;

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

pub use target::{FrequencyTarget, RuleTarget};
pub use zeta::{zeta_constant, ZetaValue};

use crate::error::{Error, Result, ValidationError};
use crate::summation::CompensatedSum;

/// Default cap on the digit index reached by `locate` and tail scans.
pub const DEFAULT_MAX_DIGIT: u64 = 1_000_000;

/// Tolerance on total mass used when a distribution is constructed.
pub const DEFAULT_MASS_TOLERANCE: f64 = 1e-12;

const TABLE_LIMIT: u64 = 4096;
const TABLE_TAIL: f64 = 1e-18;
/// Spacing of the checkpoints kept beyond the table.
const LADDER_STRIDE: u64 = 1 << 14;

pub type PmfFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;
/// `tail(n)` must bound `Σ_{i≥n} p_i` from above.
pub type TailFn = Arc<dyn Fn(u64) -> f64 + Send + Sync>;

/// A pmf given by a rule together with an upper bound on its tail mass.
#[derive(Clone)]
pub struct RulePmf {
    pub pmf: PmfFn,
    pub tail_bound: TailFn,
}

impl RulePmf {
    pub fn new(
        pmf: impl Fn(u64) -> f64 + Send + Sync + 'static,
        tail_bound: impl Fn(u64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self { pmf: Arc::new(pmf), tail_bound: Arc::new(tail_bound) }
    }
}

impl fmt::Debug for RulePmf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("RulePmf(..)")
    }
}

/// Parameterisation of a distribution.
#[derive(Clone, Debug)]
pub enum Family {
    /// `p_i = (1-p) p^{i-1}`, `0 < p < 1`.
    Geometric { p: f64 },
    /// `p_i = e^{-λ} λ^{i-1} / (i-1)!`, `λ > 0`.
    Poisson { lambda: f64 },
    /// `p_i = i^{-s} / ζ(s)`, `s > 1`.
    Zeta { s: f64 },
    /// Finite support `{1, …, m}` with the listed masses.
    Finite(Vec<f64>),
    Rule(RulePmf),
}

impl PartialEq for Family {
    fn eq(&self, other: &Self) -> bool {
        use Family::*;
        match (self, other) {
            (Geometric { p: a }, Geometric { p: b }) => a == b,
            (Poisson { lambda: a }, Poisson { lambda: b }) => a == b,
            (Zeta { s: a }, Zeta { s: b }) => a == b,
            (Finite(a), Finite(b)) => a == b,
            (Rule(a), Rule(b)) => Arc::ptr_eq(&a.pmf, &b.pmf),
            _ => false,
        }
    }
}

/// One cell of the partition: digit `index` owns `[lo, hi)`.
///
/// `hi` is the next prefix sum, so consecutive cells tile `[0, 1)` without
/// gaps; `lo + pmf` agrees with `hi` to within an ulp.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub index: u64,
    pub lo: f64,
    pub pmf: f64,
    pub hi: f64,
}

/// Outcome of a successful [`validate`] call.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// Number of pmf values inspected.
    pub checked: u64,
    /// Partial mass `Σ_{i≤checked} p_i`.
    pub mass: f64,
    /// Bound on the remaining mass.
    pub tail_bound: f64,
}

/// Estimate of a series tail `Σ_{i≥n} a_i` with an absolute error bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailEstimate {
    pub value: f64,
    pub bound: f64,
}

impl TailEstimate {
    const UNKNOWN: Self = Self { value: 0.0, bound: f64::INFINITY };
}

/// Checks a family against the axioms of a distribution supported by ℕ.
///
/// Built-in families only have their parameter ranges checked. Finite
/// supports must have every mass in `(0, 1)` and total within `tol` of one.
/// Rules are scanned for at most `horizon` indices until the partial mass
/// plus the rule's tail bound pins the total to `1 ± tol`.
pub fn validate(family: &Family, tol: f64, horizon: u64) -> Result<ValidationReport, ValidationError> {
    if !(tol > 0.0) {
        return Err(ValidationError::Tolerance(tol));
    }
    let builtin = ValidationReport { checked: 0, mass: 1.0, tail_bound: 0.0 };
    match family {
        Family::Geometric { p } => {
            if !(*p > 0.0 && *p < 1.0) {
                return Err(ValidationError::Parameter { name: "p", value: *p, expected: "0 < p < 1" });
            }
            Ok(builtin)
        }
        Family::Poisson { lambda } => {
            if !(*lambda > 0.0 && lambda.is_finite()) {
                return Err(ValidationError::Parameter {
                    name: "lambda",
                    value: *lambda,
                    expected: "lambda > 0",
                });
            }
            Ok(builtin)
        }
        Family::Zeta { s } => {
            if !(*s > 1.0 && s.is_finite()) {
                return Err(ValidationError::Parameter { name: "s", value: *s, expected: "s > 1" });
            }
            Ok(builtin)
        }
        Family::Finite(masses) => {
            if masses.is_empty() {
                return Err(ValidationError::EmptySupport);
            }
            let mut acc = CompensatedSum::new();
            for (i, &p) in masses.iter().enumerate() {
                let index = i as u64 + 1;
                check_mass(index, p)?;
                let before = acc.value();
                acc.add(p);
                let prefix = acc.value();
                if prefix > 1.0 + tol {
                    return Err(ValidationError::PrefixExceedsOne { index, prefix });
                }
                if prefix <= before {
                    return Err(ValidationError::PrefixNotIncreasing { index });
                }
            }
            let mass = acc.value();
            if (mass - 1.0).abs() > tol {
                return Err(ValidationError::MassNotCertified {
                    index: masses.len() as u64,
                    mass,
                    tail_bound: 0.0,
                });
            }
            Ok(ValidationReport { checked: masses.len() as u64, mass, tail_bound: 0.0 })
        }
        Family::Rule(rule) => {
            let mut acc = CompensatedSum::new();
            let mut tail = f64::INFINITY;
            for index in 1..=horizon {
                let p = (rule.pmf)(index);
                check_mass(index, p)?;
                let before = acc.value();
                acc.add(p);
                let mass = acc.value();
                if mass > 1.0 + tol {
                    return Err(ValidationError::PrefixExceedsOne { index, prefix: mass });
                }
                if mass < before {
                    return Err(ValidationError::PrefixNotIncreasing { index });
                }
                tail = (rule.tail_bound)(index + 1);
                if mass >= 1.0 - tol && mass + tail <= 1.0 + tol {
                    return Ok(ValidationReport { checked: index, mass, tail_bound: tail });
                }
            }
            Err(ValidationError::MassNotCertified { index: horizon, mass: acc.value(), tail_bound: tail })
        }
    }
}

fn check_mass(index: u64, p: f64) -> Result<(), ValidationError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(ValidationError::PmfOutOfRange { index, value: p })
    }
}

/// Resumable prefix-sum accumulator.
#[derive(Clone, Debug)]
struct Scanner {
    next: u64,
    acc: CompensatedSum,
    /// ln((next - 1)!), only maintained for the Poisson family.
    log_fact: f64,
}

impl Scanner {
    fn start() -> Self {
        Self { next: 1, acc: CompensatedSum::new(), log_fact: 0.0 }
    }
}

struct CellTable {
    pmf: Vec<f64>,
    /// `prefix[i] = p̂_{i+1}`; one entry longer than `pmf`.
    prefix: Vec<f64>,
    /// Scanner positioned right after the last tabulated cell.
    resume: Scanner,
    /// `ladder[k]` is the scanner `k * LADDER_STRIDE` steps after `resume`,
    /// up to `max_digit`; built on the first query that needs it.
    ladder: OnceBox<Vec<Scanner>>,
}

impl fmt::Debug for CellTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CellTable")
            .field("tabulated", &self.pmf.len())
            .field("ladder", &self.ladder.get().map(Vec::len))
            .finish()
    }
}

/// A validated distribution on ℕ = {1, 2, …}.
///
/// Immutable once built; clones share the cell table.
#[derive(Clone, Debug)]
pub struct Distribution {
    family: Family,
    /// ζ(s) for the zeta family, 1 otherwise.
    normalizer: f64,
    ln_normalizer: f64,
    max_digit: u64,
    table: Arc<CellTable>,
}

impl PartialEq for Distribution {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family
    }
}

impl Distribution {
    pub fn new(family: Family) -> Result<Self> {
        validate(&family, DEFAULT_MASS_TOLERANCE, DEFAULT_MAX_DIGIT)?;
        let normalizer = match family {
            Family::Zeta { s } => zeta_constant(s)?.value,
            _ => 1.0,
        };
        let mut dist = Distribution {
            family,
            normalizer,
            ln_normalizer: libm::log(normalizer),
            max_digit: DEFAULT_MAX_DIGIT,
            table: Arc::new(CellTable { pmf: Vec::new(), prefix: Vec::new(), resume: Scanner::start(), ladder: OnceBox::new() }),
        };
        dist.table = Arc::new(dist.build_table());
        Ok(dist)
    }

    pub fn geometric(p: f64) -> Result<Self> {
        Self::new(Family::Geometric { p })
    }

    pub fn poisson(lambda: f64) -> Result<Self> {
        Self::new(Family::Poisson { lambda })
    }

    pub fn zeta(s: f64) -> Result<Self> {
        Self::new(Family::Zeta { s })
    }

    pub fn finite(masses: Vec<f64>) -> Result<Self> {
        Self::new(Family::Finite(masses))
    }

    pub fn rule(rule: RulePmf) -> Result<Self> {
        Self::new(Family::Rule(rule))
    }

    /// Overrides the cap on digit indices scanned by [`locate`](Self::locate).
    pub fn with_max_digit(mut self, max_digit: u64) -> Self {
        self.max_digit = max_digit.max(1);
        self
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn max_digit(&self) -> u64 {
        self.max_digit
    }

    /// ζ(s) for the zeta family.
    pub fn zeta_normalizer(&self) -> Option<f64> {
        matches!(self.family, Family::Zeta { .. }).then_some(self.normalizer)
    }

    /// Number of digits with positive mass, if finite.
    pub fn support_len(&self) -> Option<u64> {
        match &self.family {
            Family::Finite(m) => Some(m.len() as u64),
            _ => None,
        }
    }

    fn build_table(&self) -> CellTable {
        let limit = match &self.family {
            Family::Finite(m) => m.len() as u64,
            _ => TABLE_LIMIT,
        };
        let mut scanner = Scanner::start();
        let mut pmf = Vec::new();
        let mut prefix = Vec::new();
        while scanner.next <= limit {
            let cell = self.step(&mut scanner);
            pmf.push(cell.pmf);
            prefix.push(cell.lo);
            if self.tail_mass_bound(scanner.next) < TABLE_TAIL {
                break;
            }
        }
        prefix.push(scanner.acc.value());
        CellTable { pmf, prefix, resume: scanner, ladder: OnceBox::new() }
    }

    /// Mass of digit `i` from the family formula; `log_fact = ln((i-1)!)`.
    fn raw_pmf(&self, i: u64, log_fact: f64) -> f64 {
        match &self.family {
            Family::Geometric { p } => (1.0 - p) * libm::pow(*p, (i - 1) as f64),
            Family::Poisson { lambda } => libm::exp(poisson_ln_pmf(*lambda, i, log_fact)),
            Family::Zeta { s } => libm::pow(i as f64, -s) / self.normalizer,
            Family::Finite(m) => m.get((i - 1) as usize).copied().unwrap_or(0.0),
            Family::Rule(r) => (r.pmf)(i),
        }
    }

    fn step(&self, scanner: &mut Scanner) -> Cell {
        let index = scanner.next;
        let pmf = self.raw_pmf(index, scanner.log_fact);
        let lo = scanner.acc.value();
        scanner.acc.add(pmf);
        if matches!(self.family, Family::Poisson { .. }) {
            scanner.log_fact += libm::log(index as f64);
        }
        scanner.next += 1;
        Cell { index, lo, pmf, hi: scanner.acc.value() }
    }

    fn ladder(&self) -> &[Scanner] {
        self.table.ladder.get_or_init(|| {
            let mut scanner = self.table.resume.clone();
            let mut ladder = alloc::vec![scanner.clone()];
            while scanner.next + LADDER_STRIDE <= self.max_digit + 1 {
                for _ in 0..LADDER_STRIDE {
                    self.step(&mut scanner);
                }
                ladder.push(scanner.clone());
            }
            Box::new(ladder)
        })
    }

    fn tabulated(&self) -> u64 {
        self.table.pmf.len() as u64
    }

    /// ln((i-1)!) along the same accumulation path the scanner uses.
    fn log_factorial_before(&self, i: u64) -> f64 {
        let resume = &self.table.resume;
        let (mut lf, from) = if i >= resume.next { (resume.log_fact, resume.next) } else { (0.0, 1) };
        for k in from..i {
            lf += libm::log(k as f64);
        }
        lf
    }

    /// `p_i`.
    pub fn pmf(&self, i: u64) -> Result<f64> {
        if i == 0 {
            return Err(Error::ZeroDigit);
        }
        if i <= self.tabulated() {
            return Ok(self.table.pmf[(i - 1) as usize]);
        }
        Ok(match &self.family {
            Family::Poisson { .. } => self.raw_pmf(i, self.log_factorial_before(i)),
            _ => self.raw_pmf(i, 0.0),
        })
    }

    /// `ln p_i`, evaluated without underflow for the built-in families.
    pub fn ln_pmf(&self, i: u64) -> Result<f64> {
        if i == 0 {
            return Err(Error::ZeroDigit);
        }
        Ok(match &self.family {
            Family::Geometric { p } => libm::log1p(-p) + (i - 1) as f64 * libm::log(*p),
            Family::Poisson { lambda } => poisson_ln_pmf(*lambda, i, self.log_factorial_before(i)),
            Family::Zeta { s } => -s * libm::log(i as f64) - self.ln_normalizer,
            Family::Finite(_) | Family::Rule(_) => libm::log(self.pmf(i)?),
        })
    }

    /// `p̂_n = Σ_{i<n} p_i`, with `p̂_1 = 0`.
    pub fn prefix(&self, n: u64) -> Result<f64> {
        Ok(self.cell(n)?.lo)
    }

    /// The cell owned by digit `n`.
    pub fn cell(&self, n: u64) -> Result<Cell> {
        if n == 0 {
            return Err(Error::ZeroDigit);
        }
        let t = self.tabulated();
        if n <= t {
            let k = (n - 1) as usize;
            return Ok(Cell {
                index: n,
                lo: self.table.prefix[k],
                pmf: self.table.pmf[k],
                hi: self.table.prefix[k + 1],
            });
        }
        let mut scanner = self.table.resume.clone();
        if n - scanner.next >= LADDER_STRIDE && n <= self.max_digit {
            let ladder = self.ladder();
            let k = (((n - scanner.next) / LADDER_STRIDE) as usize).min(ladder.len() - 1);
            scanner = ladder[k].clone();
        }
        loop {
            let cell = self.step(&mut scanner);
            if cell.index == n {
                return Ok(cell);
            }
        }
    }

    /// Iterates over cells `1, 2, …` (ending with the support if finite).
    pub fn cells(&self) -> Cells<'_> {
        Cells { dist: self, next: 1, scanner: None }
    }

    /// The digit whose cell contains `x`: the unique `n` with
    /// `p̂_n ≤ x < p̂_{n+1}`.
    pub fn locate(&self, x: f64) -> Result<u64> {
        self.locate_cell(x).map(|c| c.index)
    }

    pub fn locate_cell(&self, x: f64) -> Result<Cell> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::OutOfUnitInterval(x));
        }
        let prefix = &self.table.prefix;
        let t = self.tabulated();
        // number of prefix values ≤ x, at least one since prefix[0] = 0
        let j = prefix.partition_point(|&v| v <= x) as u64;
        if j <= t {
            if j > self.max_digit {
                return Err(Error::TailExhausted { n_max: self.max_digit });
            }
            return self.cell(j);
        }
        if let Some(m) = self.support_len() {
            // x sits in the rounding residue above the total mass
            return self.cell(m);
        }
        // last checkpoint whose prefix does not exceed x
        let ladder = self.ladder();
        let k = ladder.partition_point(|c| c.acc.value() <= x).max(1) - 1;
        let mut scanner = ladder[k].clone();
        while scanner.next <= self.max_digit {
            let cell = self.step(&mut scanner);
            if x < cell.hi {
                return Ok(cell);
            }
        }
        Err(Error::TailExhausted { n_max: self.max_digit })
    }

    /// Upper bound on `Σ_{i≥n} p_i`.
    pub fn tail_mass_bound(&self, n: u64) -> f64 {
        let n = n.max(1);
        match &self.family {
            Family::Geometric { p } => libm::pow(*p, (n - 1) as f64),
            Family::Poisson { lambda } => {
                let nf = n as f64;
                if nf > *lambda {
                    let pn = libm::exp(poisson_ln_pmf(*lambda, n, libm::lgamma(nf)));
                    (pn / (1.0 - lambda / nf)).min(1.0)
                } else {
                    1.0
                }
            }
            Family::Zeta { s } => {
                let nf = n as f64;
                ((libm::pow(nf, -s) + libm::pow(nf, 1.0 - s) / (s - 1.0)) / self.normalizer).min(1.0)
            }
            Family::Finite(m) => m.iter().skip((n - 1) as usize).sum(),
            Family::Rule(r) => (r.tail_bound)(n),
        }
    }

    /// Estimate of the self-information tail `Σ_{i≥n} -p_i ln p_i`.
    ///
    /// Geometric and Poisson report a rigorous bound with a zero estimate;
    /// zeta uses the integral plus the first Euler–Maclaurin correction,
    /// bounded by the size of that correction. Rule-given distributions
    /// carry no such information.
    pub fn entropy_tail(&self, n: u64) -> Option<TailEstimate> {
        let n = n.max(1);
        let nf = n as f64;
        match &self.family {
            Family::Geometric { p } => {
                let mass = libm::pow(*p, nf - 1.0);
                let bound = mass * -libm::log1p(-p) - libm::log(*p) * mass * ((nf - 1.0) + p / (1.0 - p));
                Some(TailEstimate { value: 0.0, bound })
            }
            Family::Poisson { lambda } => {
                if nf <= *lambda {
                    return Some(TailEstimate::UNKNOWN);
                }
                // -ln p_i ≤ (λ + |ln λ| + 1) i² and p_i ≤ p_n r^{i-n} with r = λ/n
                let r = lambda / nf;
                let pn = libm::exp(poisson_ln_pmf(*lambda, n, libm::lgamma(nf)));
                let k = lambda + libm::fabs(libm::log(*lambda)) + 1.0;
                let q = 1.0 - r;
                let series = nf * nf / q + 2.0 * nf * r / (q * q) + r * (1.0 + r) / (q * q * q);
                Some(TailEstimate { value: 0.0, bound: k * pn * series })
            }
            Family::Zeta { s } => {
                // f(x) = x^{-s}(ln ζ + s ln x)/ζ is convex for x ≥ e^2
                if n < 8 {
                    return Some(TailEstimate::UNKNOWN);
                }
                let z = self.normalizer;
                let a = self.ln_normalizer;
                let ln_n = libm::log(nf);
                let sm1 = s - 1.0;
                let p1 = libm::pow(nf, 1.0 - s);
                let integral = (a * p1 / sm1 + s * p1 * (ln_n / sm1 + 1.0 / (sm1 * sm1))) / z;
                let f_n = libm::pow(nf, -s) * (a + s * ln_n) / z;
                let df_n = s * libm::pow(nf, -s - 1.0) * (1.0 - a - s * ln_n) / z;
                Some(TailEstimate { value: integral + 0.5 * f_n - df_n / 12.0, bound: libm::fabs(df_n) / 12.0 })
            }
            Family::Finite(m) => {
                if n > m.len() as u64 {
                    Some(TailEstimate { value: 0.0, bound: 0.0 })
                } else {
                    Some(TailEstimate::UNKNOWN)
                }
            }
            Family::Rule(_) => None,
        }
    }
}

fn poisson_ln_pmf(lambda: f64, i: u64, log_fact: f64) -> f64 {
    -lambda + (i - 1) as f64 * libm::log(lambda) - log_fact
}

/// Iterator over the cells of a distribution.
pub struct Cells<'a> {
    dist: &'a Distribution,
    next: u64,
    scanner: Option<Scanner>,
}

impl Iterator for Cells<'_> {
    type Item = Cell;

    fn next(&mut self) -> Option<Cell> {
        if let Some(m) = self.dist.support_len() {
            if self.next > m {
                return None;
            }
        }
        if self.next <= self.dist.tabulated() {
            let cell = self.dist.cell(self.next).ok()?;
            self.next += 1;
            return Some(cell);
        }
        let dist = self.dist;
        let scanner = self.scanner.get_or_insert_with(|| dist.table.resume.clone());
        let cell = dist.step(scanner);
        self.next += 1;
        Some(cell)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use core::f64::consts::PI;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn pmf_examples() {
        assert_eq!(Distribution::geometric(0.5).unwrap().pmf(1).unwrap(), 0.5);
        let p = Distribution::poisson(1.0).unwrap().pmf(1).unwrap();
        assert!(close(p, (-1.0f64).exp(), 1e-16));
        let z = Distribution::zeta(2.0).unwrap().pmf(2).unwrap();
        assert!(close(z, 3.0 / (2.0 * PI * PI), 1e-16));
    }

    #[test]
    fn zero_index_is_a_domain_error() {
        let d = Distribution::geometric(0.5).unwrap();
        assert_eq!(d.pmf(0), Err(Error::ZeroDigit));
        assert_eq!(d.prefix(0), Err(Error::ZeroDigit));
        assert_eq!(d.ln_pmf(0), Err(Error::ZeroDigit));
    }

    #[test]
    fn prefix_examples() {
        for d in [
            Distribution::geometric(0.3).unwrap(),
            Distribution::poisson(2.0).unwrap(),
            Distribution::zeta(1.5).unwrap(),
        ] {
            assert_eq!(d.prefix(1).unwrap(), 0.0);
        }
        assert_eq!(Distribution::geometric(0.5).unwrap().prefix(3).unwrap(), 0.75);
        let z = Distribution::zeta(2.0).unwrap().prefix(2).unwrap();
        assert!(close(z, 6.0 / (PI * PI), 1e-16));
    }

    #[test]
    fn poisson_far_tail_does_not_overflow() {
        let d = Distribution::poisson(1.0).unwrap();
        // (i-1)! overflows binary64 past i ≈ 171
        let lp = d.ln_pmf(500).unwrap();
        assert!(lp.is_finite() && lp < -2000.0);
        assert_eq!(d.pmf(500).unwrap(), 0.0);
        let big = Distribution::poisson(300.0).unwrap();
        let p = big.pmf(301).unwrap();
        assert!(p > 0.02 && p < 0.03, "{p}");
    }

    #[test]
    fn ln_pmf_matches_pmf() {
        for d in [
            Distribution::geometric(0.7).unwrap(),
            Distribution::poisson(3.5).unwrap(),
            Distribution::zeta(2.5).unwrap(),
            Distribution::finite(vec![0.25, 0.75]).unwrap(),
        ] {
            for i in 1..=2 {
                let a = d.ln_pmf(i).unwrap();
                let b = d.pmf(i).unwrap().ln();
                assert!(close(a, b, 1e-13), "{a} {b}");
            }
        }
    }

    #[test]
    fn poisson_beyond_table_follows_same_path() {
        let d = Distribution::poisson(1.0).unwrap().with_max_digit(10);
        let t = d.tabulated();
        let via_cell = d.cell(t + 3).unwrap();
        assert_eq!(via_cell.pmf, d.pmf(t + 3).unwrap());
        let collected: Vec<Cell> = d.cells().take((t + 5) as usize).collect();
        assert_eq!(collected[(t + 2) as usize], via_cell);
    }

    #[test]
    fn locate_examples() {
        let g = Distribution::geometric(0.5).unwrap();
        assert_eq!(g.locate(0.5).unwrap(), 2);
        assert_eq!(g.locate(0.0).unwrap(), 1);
        assert_eq!(g.locate(0.75).unwrap(), 3);
        let z = Distribution::zeta(2.0).unwrap();
        assert_eq!(z.locate(0.6).unwrap(), 1);
        assert_eq!(z.locate(0.0).unwrap(), 1);
        assert!(matches!(g.locate(1.0), Err(Error::OutOfUnitInterval(_))));
        assert!(matches!(g.locate(-0.1), Err(Error::OutOfUnitInterval(_))));
    }

    #[test]
    fn locate_reports_tail_exhaustion() {
        let z = Distribution::zeta(2.0).unwrap().with_max_digit(100);
        let x = 1.0 - 1e-9;
        assert_eq!(z.locate(x), Err(Error::TailExhausted { n_max: 100 }));
        // beyond the table, scanning still finds moderately deep digits
        let z = Distribution::zeta(1.2).unwrap();
        let x = z.prefix(5000).unwrap();
        assert_eq!(z.locate(x).unwrap(), 5000);
    }

    #[test]
    fn finite_support_residue_goes_to_last_digit() {
        let d = Distribution::finite(vec![0.3, 0.3, 0.4 - 1e-13]).unwrap();
        assert_eq!(d.locate(0.999_999_999_999_99).unwrap(), 3);
        assert_eq!(d.cells().count(), 3);
        assert_eq!(d.pmf(4).unwrap(), 0.0);
    }

    #[test]
    fn validate_examples() {
        assert!(validate(&Family::Finite(vec![0.5, 0.5]), 1e-12, 10).is_ok());
        assert!(matches!(
            validate(&Family::Finite(vec![0.5, 0.6]), 1e-12, 10),
            Err(ValidationError::PrefixExceedsOne { index: 2, .. })
        ));
        assert!(matches!(
            validate(&Family::Geometric { p: 1.2 }, 1e-12, 10),
            Err(ValidationError::Parameter { name: "p", .. })
        ));
        assert!(matches!(
            validate(&Family::Finite(vec![0.5, 0.0, 0.5]), 1e-12, 10),
            Err(ValidationError::PmfOutOfRange { index: 2, .. })
        ));
        assert!(matches!(
            validate(&Family::Finite(vec![0.5, 0.4]), 1e-12, 10),
            Err(ValidationError::MassNotCertified { .. })
        ));
        assert!(validate(&Family::Zeta { s: 1.0 }, 1e-12, 10).is_err());
        assert!(validate(&Family::Poisson { lambda: 0.0 }, 1e-12, 10).is_err());
        assert!(validate(&Family::Geometric { p: 0.5 }, 0.0, 10).is_err());
        assert!(Distribution::geometric(1.2).is_err());
    }

    #[test]
    fn validate_rule_with_tail_bound() {
        // geometric(1/3) written as a rule
        let rule = RulePmf::new(
            |i| (2.0 / 3.0) * (1.0f64 / 3.0).powi(i as i32 - 1),
            |n| (1.0f64 / 3.0).powi(n as i32 - 1),
        );
        let report = validate(&Family::Rule(rule.clone()), 1e-12, 1000).unwrap();
        assert!(report.checked > 10 && report.tail_bound <= 1e-12);
        let d = Distribution::rule(rule).unwrap();
        assert_eq!(d.locate(0.7).unwrap(), 2);

        let missing = RulePmf::new(|i| 0.5f64.powi(i as i32 + 1), |n| 0.5f64.powi(n as i32));
        assert!(matches!(
            validate(&Family::Rule(missing), 1e-12, 200),
            Err(ValidationError::MassNotCertified { .. })
        ));
    }

    #[test]
    fn tail_mass_bounds_dominate() {
        for d in [
            Distribution::geometric(0.8).unwrap(),
            Distribution::poisson(4.0).unwrap(),
            Distribution::zeta(1.5).unwrap(),
        ] {
            for n in [1u64, 2, 5, 10, 30] {
                let exact = 1.0 - d.prefix(n).unwrap();
                assert!(d.tail_mass_bound(n) >= exact - 1e-15, "n={n}");
            }
        }
    }

    #[test]
    fn distribution_is_shareable() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Distribution>();
    }
}
