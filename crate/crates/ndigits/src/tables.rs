//! Moran dimension grids `d(n, θ)` for the digit sets `{1, …, n}`, `n = 2…6`.

use clap::ValueEnum;
use ndigits_core::dimension::{moran_dimension_family, DEFAULT_TOLERANCE};
use ndigits_core::{Distribution, Error};
use rayon::prelude::*;

use crate::output::{Records, Value};

/// Digit-set sizes tabulated.
pub const ROWS: [u64; 5] = [2, 3, 4, 5, 6];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFamily {
    Geometric,
    Poisson,
    Zeta,
}

impl TableFamily {
    pub fn parameters(self) -> [f64; 5] {
        match self {
            TableFamily::Geometric => [0.1, 0.25, 0.5, 0.75, 0.9],
            TableFamily::Poisson => [0.25, 0.5, 1.0, 2.0, 4.0],
            TableFamily::Zeta => [1.5, 2.0, 3.0, 4.0, 5.0],
        }
    }

    pub fn distribution(self, parameter: f64) -> Result<Distribution, Error> {
        match self {
            TableFamily::Geometric => Distribution::geometric(parameter),
            TableFamily::Poisson => Distribution::poisson(parameter),
            TableFamily::Zeta => Distribution::zeta(parameter),
        }
    }
}

/// How values are cut to a fixed number of decimals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rounding {
    /// Keep the leading decimals of the exact binary value.
    Truncate,
    /// Round half to even on the exact binary value.
    Nearest,
}

/// `x` with `decimals` digits after the point.
pub fn format_fixed(x: f64, decimals: usize, rounding: Rounding) -> String {
    match rounding {
        Rounding::Nearest => format!("{x:.decimals$}"),
        Rounding::Truncate => {
            // every binary64 has a terminating expansion of at most 1074 decimals
            let exact = format!("{:.1074}", x);
            let point = exact.find('.').expect("fixed notation has a point");
            let cut = &exact[..point + 1 + decimals];
            if decimals == 0 {
                cut.trim_end_matches('.').to_owned()
            } else {
                cut.to_owned()
            }
        }
    }
}

/// `values[r][c] = d(ROWS[r], parameters[c])`.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionTable {
    pub family: TableFamily,
    pub parameters: [f64; 5],
    pub values: [[f64; 5]; 5],
}

pub fn dimension_table(family: TableFamily) -> Result<DimensionTable, Error> {
    let parameters = family.parameters();
    let dists = parameters.iter().map(|&t| family.distribution(t)).collect::<Result<Vec<_>, _>>()?;
    let cells: Vec<f64> = (0..25)
        .into_par_iter()
        .map(|i| moran_dimension_family(&dists[i % 5], ROWS[i / 5], DEFAULT_TOLERANCE).map(|r| r.value))
        .collect::<Result<_, _>>()?;
    let mut values = [[0.0; 5]; 5];
    for (i, v) in cells.into_iter().enumerate() {
        values[i / 5][i % 5] = v;
    }
    Ok(DimensionTable { family, parameters, values })
}

impl DimensionTable {
    /// Header `n,<θ_1>,…,<θ_5>`, one row per `n`.
    pub fn records(&self, decimals: usize, rounding: Rounding) -> Records {
        let header = std::iter::once("n".to_owned()).chain(self.parameters.iter().map(|t| format!("{t}")));
        let mut r = Records::new(header);
        for (n, row) in ROWS.iter().zip(&self.values) {
            let mut cells = vec![Value::Int(*n)];
            cells.extend(row.iter().map(|&v| Value::Fixed(format_fixed(v, decimals, rounding))));
            r.push(cells);
        }
        r
    }
}
