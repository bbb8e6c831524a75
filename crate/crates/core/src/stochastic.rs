//! Monte Carlo checks of digit statistics under Lebesgue and Bernoulli measures.
//!
//! Every sample draws from its own generator, seeded from `(seed, index)`,
//! so aggregated results do not depend on how samples are scheduled.

use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

use crate::codec::{shift_cell, DigitWord};
use crate::distributions::{Distribution, FrequencyTarget};
use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

/// Thresholds tracked by [`unboundedness_probe`].
pub const THRESHOLDS: [u64; 3] = [2, 5, 10];

/// Relative cylinder width below which an orbit is continued from fresh bits.
const REFRESH_WIDTH: f64 = 1.0 / (1u64 << 24) as f64;

/// Uniform draw from `[0, 1)` with 53 random bits.
pub fn uniform53<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Generator for sample `index` of an experiment seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> SplitMix64 {
    SplitMix64::seed_from_u64(mix64(seed ^ mix64(index.wrapping_add(0x9e37_79b9_7f4a_7c15))))
}

/// Measures digits can be drawn from.
#[derive(Debug, Clone, Copy)]
pub enum Measure<'a> {
    Distribution(&'a Distribution),
    Target(&'a FrequencyTarget),
}

impl<'a> From<&'a Distribution> for Measure<'a> {
    fn from(d: &'a Distribution) -> Self {
        Measure::Distribution(d)
    }
}

impl<'a> From<&'a FrequencyTarget> for Measure<'a> {
    fn from(q: &'a FrequencyTarget) -> Self {
        Measure::Target(q)
    }
}

fn inverse_cdf(q: &[f64], u: f64) -> Result<u64> {
    let mut acc = CompensatedSum::new();
    let mut last = None;
    for (i, &qi) in q.iter().enumerate() {
        if qi > 0.0 {
            acc.add(qi);
            last = Some(i as u64 + 1);
            if u < acc.value() {
                return Ok(i as u64 + 1);
            }
        }
    }
    last.ok_or(Error::Domain("frequency target has no mass"))
}

fn draw<R: RngCore>(measure: Measure<'_>, rng: &mut R) -> Result<u64> {
    let u = uniform53(rng);
    match measure {
        Measure::Distribution(d) | Measure::Target(FrequencyTarget::Matching(d)) => d.locate(u),
        Measure::Target(FrequencyTarget::Finite(q)) => inverse_cdf(q, u),
        Measure::Target(FrequencyTarget::Rule(r)) => {
            let mut acc = CompensatedSum::new();
            let horizon = crate::distributions::DEFAULT_MAX_DIGIT;
            for i in 1..=horizon {
                acc.add((r.q)(i));
                if u < acc.value() {
                    return Ok(i);
                }
            }
            if acc.value() == 0.0 {
                Err(Error::Domain("frequency target has no mass on the horizon"))
            } else {
                Err(Error::TailExhausted { n_max: horizon })
            }
        }
    }
}

/// `k` i.i.d. digits drawn from `measure` by inverse CDF.
pub fn sample_word<'a>(measure: impl Into<Measure<'a>>, k: usize, seed: u64) -> Result<DigitWord> {
    if k == 0 {
        return Err(Error::Domain("word length must be positive"));
    }
    let measure = measure.into();
    let mut rng = SplitMix64::seed_from_u64(seed);
    let digits = (0..k).map(|_| draw(measure, &mut rng)).collect::<Result<Vec<_>>>()?;
    DigitWord::new(digits)
}

/// Fraction of positions in `word` holding digit `n`.
pub fn empirical_frequency(word: &DigitWord, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroDigit);
    }
    if word.is_empty() {
        return Err(Error::Domain("empty word has no frequencies"));
    }
    let count = word.digits().iter().filter(|&&d| d == n).count();
    Ok(count as f64 / word.len() as f64)
}

/// Digits of a Lebesgue-uniform point, read off along the orbit of the shift map.
///
/// Binary64 resolves only about 52 bits of the point, so once the cylinder
/// read so far is narrower than 2^-24 the orbit continues from a fresh
/// uniform draw. Under Lebesgue measure the shifted point is uniform and
/// independent of the digits already read, so the resulting digit sequence
/// has exactly the law of the expansion of a uniform point.
pub struct LebesgueDigits<'a, R> {
    dist: &'a Distribution,
    rng: R,
    y: f64,
    width: f64,
}

impl<'a, R: RngCore> LebesgueDigits<'a, R> {
    pub fn new(dist: &'a Distribution, mut rng: R) -> Self {
        let y = uniform53(&mut rng);
        Self { dist, rng, y, width: 1.0 }
    }

    fn refresh(&mut self) {
        self.y = uniform53(&mut self.rng);
        self.width = 1.0;
    }

    /// Next digit, or `None` when it exceeds the distribution's digit cap.
    pub fn next_digit(&mut self) -> Result<Option<u64>> {
        if self.width < REFRESH_WIDTH {
            self.refresh();
        }
        match shift_cell(self.dist, self.y) {
            Ok((cell, y)) => {
                self.y = y;
                self.width *= cell.pmf;
                Ok(Some(cell.index))
            }
            Err(Error::TailExhausted { .. }) => {
                self.refresh();
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }
}

/// Mergeable digit counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTally {
    /// `counts[n-1]` = occurrences of digit `n`, for `n ≤ horizon`.
    pub counts: Vec<u64>,
    /// Digits above the horizon (including any beyond the digit cap).
    pub out_of_horizon: u64,
    pub total: u64,
    pub max_digit: u64,
    pub samples: u64,
}

impl FrequencyTally {
    pub fn new(horizon: u64) -> Self {
        Self { counts: vec![0; horizon as usize], out_of_horizon: 0, total: 0, max_digit: 0, samples: 0 }
    }

    fn record(&mut self, digit: Option<u64>, cap: u64) {
        self.total += 1;
        let d = digit.unwrap_or(cap.saturating_add(1));
        self.max_digit = self.max_digit.max(d);
        match digit {
            Some(n) if n as usize <= self.counts.len() => self.counts[(n - 1) as usize] += 1,
            _ => self.out_of_horizon += 1,
        }
    }

    pub fn merge(&mut self, other: &FrequencyTally) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.out_of_horizon += other.out_of_horizon;
        self.total += other.total;
        self.max_digit = self.max_digit.max(other.max_digit);
        self.samples += other.samples;
    }
}

/// Tally of the first `k` digits of sample `index`.
pub fn sample_tally(dist: &Distribution, k: usize, horizon: u64, seed: u64, index: u64) -> Result<FrequencyTally> {
    let mut tally = FrequencyTally::new(horizon);
    tally.samples = 1;
    let mut orbit = LebesgueDigits::new(dist, sample_rng(seed, index));
    for _ in 0..k {
        tally.record(orbit.next_digit()?, dist.max_digit());
    }
    Ok(tally)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DigitFrequency {
    pub digit: u64,
    pub target: f64,
    pub empirical: f64,
    pub abs_deviation: f64,
    /// Binomial standard deviation `sqrt(p(1-p)/N)` of the empirical frequency.
    pub sigma: f64,
}

/// Empirical digit frequencies against their prevalent values `p_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyReport {
    pub samples: u64,
    pub orbit_length: usize,
    pub total_digits: u64,
    pub digits: Vec<DigitFrequency>,
    pub out_of_horizon: f64,
    pub max_digit: u64,
    pub mean_abs_deviation: f64,
    pub max_abs_deviation: f64,
    pub tally: FrequencyTally,
}

impl FrequencyReport {
    pub fn from_tally(dist: &Distribution, k: usize, tally: FrequencyTally) -> Result<Self> {
        let n = tally.total as f64;
        let digits = tally
            .counts
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let target = dist.pmf(i as u64 + 1)?;
                let empirical = c as f64 / n;
                Ok(DigitFrequency {
                    digit: i as u64 + 1,
                    target,
                    empirical,
                    abs_deviation: (empirical - target).abs(),
                    sigma: libm::sqrt(target * (1.0 - target) / n),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let devs: CompensatedSum = digits.iter().map(|d| d.abs_deviation).collect();
        Ok(Self {
            samples: tally.samples,
            orbit_length: k,
            total_digits: tally.total,
            mean_abs_deviation: devs.value() / digits.len().max(1) as f64,
            max_abs_deviation: digits.iter().map(|d| d.abs_deviation).fold(0.0, f64::max),
            out_of_horizon: tally.out_of_horizon as f64 / n,
            max_digit: tally.max_digit,
            digits,
            tally,
        })
    }
}

fn check_sizes(samples: u64, k: usize) -> Result<()> {
    if samples == 0 || k == 0 {
        return Err(Error::Domain("samples and orbit length must be positive"));
    }
    Ok(())
}

/// Digit frequencies over `samples` Lebesgue-uniform points, `k` digits each.
pub fn frequency_experiment(dist: &Distribution, samples: u64, k: usize, horizon: u64, seed: u64) -> Result<FrequencyReport> {
    check_sizes(samples, k)?;
    if horizon == 0 {
        return Err(Error::Domain("digit horizon must be positive"));
    }
    let mut tally = FrequencyTally::new(horizon);
    for i in 0..samples {
        tally.merge(&sample_tally(dist, k, horizon, seed, i)?);
    }
    FrequencyReport::from_tally(dist, k, tally)
}

/// Per-prefix-length counts of samples whose running maximum digit exceeds each threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceedanceCounts {
    pub counts: Vec<[u64; 3]>,
    pub samples: u64,
}

impl ExceedanceCounts {
    pub fn new(k: usize) -> Self {
        Self { counts: vec![[0; 3]; k], samples: 0 }
    }

    pub fn merge(&mut self, other: &ExceedanceCounts) {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            for t in 0..3 {
                a[t] += b[t];
            }
        }
        self.samples += other.samples;
    }
}

pub fn sample_exceedance(dist: &Distribution, k: usize, seed: u64, index: u64) -> Result<ExceedanceCounts> {
    let mut out = ExceedanceCounts::new(k);
    out.samples = 1;
    let mut orbit = LebesgueDigits::new(dist, sample_rng(seed, index));
    let mut running_max = 0;
    for slot in out.counts.iter_mut() {
        let d = orbit.next_digit()?.unwrap_or(dist.max_digit().saturating_add(1));
        running_max = running_max.max(d);
        for (t, &threshold) in THRESHOLDS.iter().enumerate() {
            slot[t] = u64::from(running_max > threshold);
        }
    }
    Ok(out)
}

/// Fractions of sampled points whose maximum digit among the first `j`
/// exceeds each of [`THRESHOLDS`], for `j = 1 … k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthCurve {
    pub thresholds: [u64; 3],
    /// `fractions[j-1][t]`.
    pub fractions: Vec<[f64; 3]>,
    pub samples: u64,
}

impl From<&ExceedanceCounts> for GrowthCurve {
    fn from(c: &ExceedanceCounts) -> Self {
        let n = c.samples as f64;
        Self {
            thresholds: THRESHOLDS,
            fractions: c.counts.iter().map(|row| row.map(|v| v as f64 / n)).collect(),
            samples: c.samples,
        }
    }
}

pub fn unboundedness_probe(dist: &Distribution, samples: u64, k: usize, seed: u64) -> Result<GrowthCurve> {
    check_sizes(samples, k)?;
    let mut counts = ExceedanceCounts::new(k);
    for i in 0..samples {
        counts.merge(&sample_exceedance(dist, k, seed, i)?);
    }
    Ok(GrowthCurve::from(&counts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_mass_word() {
        let q = FrequencyTarget::point_mass(3).unwrap();
        assert_eq!(sample_word(&q, 4, 1).unwrap().digits(), &[3, 3, 3, 3]);
    }

    #[test]
    fn uniform_support_bound() {
        let q = FrequencyTarget::uniform(2).unwrap();
        let w = sample_word(&q, 10_000, 5).unwrap();
        assert_eq!(w.digits().iter().max(), Some(&2));
    }

    #[test]
    fn geometric_word_concentrates() {
        let g = Distribution::geometric(0.5).unwrap();
        let w = sample_word(&g, 10_000, 42).unwrap();
        let f = empirical_frequency(&w, 1).unwrap();
        assert!((0.48..=0.52).contains(&f), "{f}");
    }

    #[test]
    fn empirical_frequency_examples() {
        let w = DigitWord::new(vec![2, 1, 1, 1]).unwrap();
        assert_eq!(empirical_frequency(&w, 1).unwrap(), 0.75);
        assert_eq!(empirical_frequency(&w, 5).unwrap(), 0.0);
        let w = DigitWord::new(vec![1, 2, 1, 2]).unwrap();
        assert_eq!(empirical_frequency(&w, 2).unwrap(), 0.5);
        assert!(empirical_frequency(&DigitWord::empty(), 1).is_err());
        assert_eq!(empirical_frequency(&w, 0), Err(Error::ZeroDigit));
    }

    #[test]
    fn zero_mass_rule_target_is_rejected() {
        let q = FrequencyTarget::Rule(crate::distributions::RuleTarget::new(|_| 0.0));
        assert!(matches!(sample_word(&q, 1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn single_digit_report_is_one_hot() {
        let g = Distribution::geometric(0.5).unwrap();
        let r = frequency_experiment(&g, 1, 1, 5, 9).unwrap();
        let hot: Vec<_> = r.digits.iter().filter(|d| d.empirical == 1.0).collect();
        let cold = r.digits.iter().filter(|d| d.empirical == 0.0).count();
        assert_eq!(hot.len() + usize::from(r.out_of_horizon == 1.0), 1);
        assert_eq!(cold + hot.len(), 5);
        assert_eq!(r.total_digits, 1);
    }

    #[test]
    fn report_mass_balances() {
        let z = Distribution::zeta(2.0).unwrap();
        let r = frequency_experiment(&z, 200, 30, 6, 3).unwrap();
        let counted: u64 = r.tally.counts.iter().sum::<u64>() + r.tally.out_of_horizon;
        assert_eq!(counted, r.total_digits);
        let s: f64 = r.digits.iter().map(|d| d.empirical).sum::<f64>() + r.out_of_horizon;
        assert!((s - 1.0).abs() < 1e-12);
        assert!(r.digits.iter().all(|d| (0.0..=1.0).contains(&d.empirical)));
    }

    #[test]
    fn experiments_are_deterministic() {
        let p = Distribution::poisson(1.0).unwrap();
        let a = frequency_experiment(&p, 50, 20, 8, 11).unwrap();
        let b = frequency_experiment(&p, 50, 20, 8, 11).unwrap();
        assert_eq!(a, b);
        let c = frequency_experiment(&p, 50, 20, 8, 12).unwrap();
        assert_ne!(a.tally, c.tally);
    }

    #[test]
    fn finite_support_never_exceeds_five() {
        let d = Distribution::finite(vec![0.5, 0.5]).unwrap();
        let curve = unboundedness_probe(&d, 100, 20, 1).unwrap();
        assert!(curve.fractions.iter().all(|row| row[1] == 0.0 && row[2] == 0.0));
        assert!(curve.fractions.last().unwrap()[0] == 0.0);
    }

    #[test]
    fn growth_curve_is_monotone() {
        let g = Distribution::geometric(0.5).unwrap();
        let curve = unboundedness_probe(&g, 300, 40, 2).unwrap();
        for w in curve.fractions.windows(2) {
            for t in 0..3 {
                assert!(w[0][t] <= w[1][t]);
            }
        }
    }
}
