//! Monte Carlo experiments fanned out over a rayon pool.
//!
//! Sample `i` always draws from the stream seeded by `(seed, i)` and partial
//! results are merged by integer addition, so the output is bit-identical
//! for every thread count and schedule.

use ndigits_core::stochastic::{
    sample_exceedance, sample_tally, ExceedanceCounts, FrequencyReport, FrequencyTally, GrowthCurve,
};
use ndigits_core::{Distribution, Error};
use rayon::prelude::*;
use rayon::{ThreadPool, ThreadPoolBuilder};

use crate::CliError;

/// A pool with `threads` workers, or rayon's default size.
pub fn pool(threads: Option<usize>) -> Result<ThreadPool, CliError> {
    let mut builder = ThreadPoolBuilder::new();
    if let Some(n) = threads {
        if n == 0 {
            return Err(CliError::usage("--threads must be positive"));
        }
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| CliError::usage(format!("cannot start thread pool: {e}")))
}

fn check_sizes(samples: u64, k: usize) -> Result<(), Error> {
    if samples == 0 || k == 0 {
        return Err(Error::Domain("samples and orbit length must be positive"));
    }
    Ok(())
}

/// Parallel counterpart of [`ndigits_core::stochastic::frequency_experiment`]; same result.
pub fn frequency_experiment(
    pool: &ThreadPool,
    dist: &Distribution,
    samples: u64,
    k: usize,
    horizon: u64,
    seed: u64,
) -> Result<FrequencyReport, Error> {
    check_sizes(samples, k)?;
    if horizon == 0 {
        return Err(Error::Domain("digit horizon must be positive"));
    }
    let tally = pool.install(|| {
        (0..samples)
            .into_par_iter()
            .try_fold(
                || FrequencyTally::new(horizon),
                |mut acc, i| {
                    acc.merge(&sample_tally(dist, k, horizon, seed, i)?);
                    Ok::<_, Error>(acc)
                },
            )
            .try_reduce(
                || FrequencyTally::new(horizon),
                |mut a, b| {
                    a.merge(&b);
                    Ok(a)
                },
            )
    })?;
    FrequencyReport::from_tally(dist, k, tally)
}

/// Parallel counterpart of [`ndigits_core::stochastic::unboundedness_probe`]; same result.
pub fn unboundedness_probe(
    pool: &ThreadPool,
    dist: &Distribution,
    samples: u64,
    k: usize,
    seed: u64,
) -> Result<GrowthCurve, Error> {
    check_sizes(samples, k)?;
    let counts = pool.install(|| {
        (0..samples)
            .into_par_iter()
            .try_fold(
                || ExceedanceCounts::new(k),
                |mut acc, i| {
                    acc.merge(&sample_exceedance(dist, k, seed, i)?);
                    Ok::<_, Error>(acc)
                },
            )
            .try_reduce(
                || ExceedanceCounts::new(k),
                |mut a, b| {
                    a.merge(&b);
                    Ok(a)
                },
            )
    })?;
    Ok(GrowthCurve::from(&counts))
}
