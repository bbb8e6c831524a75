use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{Distribution, PmfFn, TailFn};
use crate::error::{Error, Result};
use crate::summation::CompensatedSum;

const SUM_TOLERANCE: f64 = 1e-12;

/// Prescribed digit frequencies `q = (q_1, q_2, …)`, `q_i ∈ [0, 1]`, `Σ q_i = 1`.
///
/// Unlike a [`Distribution`], zero entries are allowed.
#[derive(Clone, Debug)]
pub enum FrequencyTarget {
    /// `q_1, …, q_m`, zero beyond.
    Finite(Vec<f64>),
    /// `q = p` for the given distribution.
    Matching(Distribution),
    Rule(RuleTarget),
}

/// A rule-given target. Series over an infinite support are only summed when
/// the matching tail bound is supplied.
#[derive(Clone)]
pub struct RuleTarget {
    pub q: PmfFn,
    /// Bound on `Σ_{i≥n} q_i`.
    pub mass_tail: Option<TailFn>,
    /// Bound on `Σ_{i≥n} -q_i ln q_i`.
    pub entropy_tail: Option<TailFn>,
    /// Bound on `Σ_{i≥n} -q_i ln p_i` for the distribution this target is paired with.
    pub information_tail: Option<TailFn>,
}

impl fmt::Debug for RuleTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleTarget")
            .field("mass_tail", &self.mass_tail.is_some())
            .field("entropy_tail", &self.entropy_tail.is_some())
            .field("information_tail", &self.information_tail.is_some())
            .finish()
    }
}

impl RuleTarget {
    pub fn new(q: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        Self { q: Arc::new(q), mass_tail: None, entropy_tail: None, information_tail: None }
    }

    pub fn mass_tail(mut self, f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        self.mass_tail = Some(Arc::new(f));
        self
    }

    pub fn entropy_tail(mut self, f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        self.entropy_tail = Some(Arc::new(f));
        self
    }

    pub fn information_tail(mut self, f: impl Fn(u64) -> f64 + Send + Sync + 'static) -> Self {
        self.information_tail = Some(Arc::new(f));
        self
    }
}

impl FrequencyTarget {
    /// A finitely supported target; entries must lie in `[0, 1]` and sum to one within 1e-12.
    pub fn finite(q: Vec<f64>) -> Result<Self> {
        if q.is_empty() {
            return Err(Error::Domain("frequency target is empty"));
        }
        if q.iter().any(|v| !(0.0..=1.0).contains(v)) {
            return Err(Error::Domain("frequencies must lie in [0, 1]"));
        }
        let total: CompensatedSum = q.iter().copied().collect();
        if (total.value() - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::Domain("frequencies must sum to 1"));
        }
        Ok(FrequencyTarget::Finite(q))
    }

    /// `q_i = 1/n` on `{1, …, n}`.
    pub fn uniform(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDigit);
        }
        Ok(FrequencyTarget::Finite(vec![1.0 / n as f64; n as usize]))
    }

    pub fn point_mass(digit: u64) -> Result<Self> {
        if digit == 0 {
            return Err(Error::ZeroDigit);
        }
        let mut q = vec![0.0; digit as usize];
        q[(digit - 1) as usize] = 1.0;
        Ok(FrequencyTarget::Finite(q))
    }

    pub fn matching(dist: &Distribution) -> Self {
        FrequencyTarget::Matching(dist.clone())
    }

    /// `q_i` (zero outside a finite support).
    pub fn frequency(&self, i: u64) -> Result<f64> {
        if i == 0 {
            return Err(Error::ZeroDigit);
        }
        Ok(match self {
            FrequencyTarget::Finite(q) => q.get((i - 1) as usize).copied().unwrap_or(0.0),
            FrequencyTarget::Matching(d) => d.pmf(i)?,
            FrequencyTarget::Rule(r) => (r.q)(i),
        })
    }

    /// Length of the support prefix holding all of the mass, if finite.
    pub fn support_len(&self) -> Option<u64> {
        match self {
            FrequencyTarget::Finite(q) => Some(q.len() as u64),
            FrequencyTarget::Matching(d) => d.support_len(),
            FrequencyTarget::Rule(_) => None,
        }
    }
}
