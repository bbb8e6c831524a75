//! Digit representations of real numbers in `[0, 1)` induced by probability
//! distributions on ℕ = {1, 2, …}.
//!
//! A distribution `p = (p_i)` cuts `[0, 1)` into consecutive cells of widths
//! `p_1, p_2, …`; the contractions `T_n x = p_n x + p̂_n` map `[0, 1)` onto
//! those cells, and every `x` has a unique digit sequence `(n_j)` with
//! `x = lim T_{n_1} ∘ … ∘ T_{n_j}(0)`. This crate provides
//!
//! * [`distributions`]: geometric, Poisson, zeta and user-defined
//!   distributions with compensated prefix sums, plus frequency targets;
//! * [`codec`]: encoding reals to digit words and decoding words to cylinders;
//! * [`dimension`]: Hausdorff dimensions of digit-restricted sets (Moran
//!   equation) and of sets with prescribed digit frequencies;
//! * [`stochastic`]: seeded Monte Carlo checks of digit frequencies.
//!
//! The crate is `no_std` and needs only `alloc`.
//!
//! ```
//! use ndigits_core::{codec, dimension, Distribution};
//!
//! let g = Distribution::geometric(0.5)?;
//! let word = codec::encode(&g, 0.5, 4)?.word;
//! assert_eq!(word.to_string(), "2,1,1,1");
//!
//! let d = dimension::moran_dimension(&g, &[1, 2], 1e-13)?;
//! assert!((d.value - 0.6942419).abs() < 1e-7);
//! # Ok::<(), ndigits_core::Error>(())
//! ```

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod codec;
pub mod dimension;
pub mod distributions;
mod error;
pub mod roots;
pub mod stochastic;
pub mod summation;

pub use codec::{CylinderInterval, DigitWord};
pub use dimension::DimensionResult;
pub use distributions::{Distribution, Family, FrequencyTarget};
pub use error::{Error, Result, ValidationError};
