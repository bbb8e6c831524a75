//! Digit expansions: contractions `T_n x = p_n x + p̂_n`, the expanding
//! shift map, and conversion between reals and digit words.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::distributions::{Cell, Distribution};
use crate::error::{Error, Result};

/// A finite digit word `n_1 … n_k` with every digit ≥ 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct DigitWord(Vec<u64>);

impl DigitWord {
    pub fn new(digits: Vec<u64>) -> Result<Self> {
        if digits.contains(&0) {
            return Err(Error::ZeroDigit);
        }
        Ok(Self(digits))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn digits(&self) -> &[u64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, digit: u64) -> Result<()> {
        if digit == 0 {
            return Err(Error::ZeroDigit);
        }
        self.0.push(digit);
        Ok(())
    }

    pub fn into_inner(self) -> Vec<u64> {
        self.0
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Error parsing the comma-separated word syntax, e.g. `2,1,1,1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseWordError(pub String);

impl fmt::Display for ParseWordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid digit word: {}", self.0)
    }
}

impl core::error::Error for ParseWordError {}

impl FromStr for DigitWord {
    type Err = ParseWordError;

    fn from_str(s: &str) -> core::result::Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::empty());
        }
        let digits = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                match t.parse::<u64>() {
                    Ok(0) => Err(ParseWordError(alloc::format!("digit 0 in {s:?}"))),
                    Ok(d) => Ok(d),
                    Err(_) => Err(ParseWordError(alloc::format!("{t:?} is not a positive integer"))),
                }
            })
            .collect::<core::result::Result<Vec<_>, _>>()?;
        Ok(Self(digits))
    }
}

/// The half-open interval `T_{n_1} ∘ … ∘ T_{n_k}([0, 1)) = [lo, hi)`.
///
/// `lo` and `hi` are the images of 0 and 1 under the composed contractions,
/// each step clamped to its cell, so equal-length cylinders of distinct
/// words are disjoint and a cylinder contains those of its extensions.
/// `width = Π p_{n_j}` agrees with `hi - lo` up to rounding.
#[derive(Debug, Clone, PartialEq)]
pub struct CylinderInterval {
    pub lo: f64,
    pub width: f64,
    pub word: DigitWord,
    hi: f64,
}

impl CylinderInterval {
    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x < self.hi
    }
}

/// `T_n x = p_n x + p̂_n`, kept inside the cell of `n`.
pub fn apply_contraction(dist: &Distribution, n: u64, x: f64) -> Result<f64> {
    check_unit(x)?;
    let cell = dist.cell(n)?;
    Ok(contract(&cell, x))
}

fn contract(cell: &Cell, x: f64) -> f64 {
    let y = cell.pmf * x + cell.lo;
    if y >= cell.hi && cell.hi > cell.lo {
        cell.hi.next_down()
    } else {
        y.max(cell.lo)
    }
}

fn check_unit(x: f64) -> Result<()> {
    if (0.0..1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfUnitInterval(x))
    }
}

/// Horner images of 0 and 1 under `T_{n_1} ∘ … ∘ T_{n_k}`, with the product of the masses.
///
/// Each step is monotone in its argument and maps 1 to the cell's upper
/// prefix exactly, which makes sibling cylinders abut without overlap.
fn fold_cells(cells: &[Cell], word: DigitWord) -> CylinderInterval {
    let step = |acc: f64, c: &Cell| (c.pmf * acc + c.lo).min(c.hi);
    let lo = cells.iter().rev().fold(0.0, step);
    let hi = cells.iter().rev().fold(1.0, step);
    let width = cells.iter().fold(1.0, |acc, c| acc * c.pmf);
    CylinderInterval { lo, width, word, hi }
}

/// The cylinder of all points whose expansion starts with `word`.
///
/// `lo` approximates the value of any infinite continuation of `word`
/// to within `width`.
pub fn decode(dist: &Distribution, word: &DigitWord) -> Result<CylinderInterval> {
    let cells = word
        .digits()
        .iter()
        .map(|&n| {
            let cell = dist.cell(n)?;
            if cell.pmf > 0.0 {
                Ok(cell)
            } else {
                Err(Error::OutsideSupport(n))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(fold_cells(&cells, word.clone()))
}

/// One step of the expanding map: the leading digit of `x` and `σ(x)`.
pub fn shift(dist: &Distribution, x: f64) -> Result<(u64, f64)> {
    let cell = dist.locate_cell(x)?;
    Ok((cell.index, shift_in(&cell, x)))
}

/// [`shift`] returning the full cell of the leading digit.
pub(crate) fn shift_cell(dist: &Distribution, x: f64) -> Result<(Cell, f64)> {
    let cell = dist.locate_cell(x)?;
    Ok((cell, shift_in(&cell, x)))
}

fn shift_in(cell: &Cell, x: f64) -> f64 {
    let y = (x - cell.lo) / cell.pmf;
    y.clamp(0.0, 1.0f64.next_down())
}

/// Result of [`encode`].
#[derive(Debug, Clone, PartialEq)]
pub struct Encoding {
    pub word: DigitWord,
    /// Cylinder of `word` as computed by [`decode`]; contains `x`.
    pub cylinder: CylinderInterval,
    /// Set when fewer digits than requested could be certified in binary64.
    pub precision_exhausted: bool,
}

/// The first `k` digits of `x`, read off by iterating [`shift`].
///
/// After each digit the cylinder of the word so far is recomputed exactly as
/// [`decode`] does; once it no longer contains `x` within `width` of `lo`
/// (floating-point drift of the orbit, or a width below the resolution at
/// `x`) the last digit is dropped and `precision_exhausted` is set.
pub fn encode(dist: &Distribution, x: f64, k: usize) -> Result<Encoding> {
    check_unit(x)?;
    if k == 0 {
        return Err(Error::Domain("encode needs k >= 1"));
    }
    let mut cells: Vec<Cell> = Vec::with_capacity(k);
    let mut y = x;
    let mut exhausted = false;
    let mut cylinder = fold_cells(&[], DigitWord::empty());
    for _ in 0..k {
        let cell = dist.locate_cell(y)?;
        cells.push(cell);
        let next = fold_cells(&cells, DigitWord(cells.iter().map(|c| c.index).collect()));
        if !next.contains(x) || x - next.lo > next.width || next.width == 0.0 {
            cells.pop();
            exhausted = true;
            break;
        }
        cylinder = next;
        y = shift_in(&cell, y);
    }
    Ok(Encoding { word: cylinder.word.clone(), cylinder, precision_exhausted: exhausted })
}
