use std::hash::{BuildHasher, RandomState};
use std::io::Write;
use std::process;

use clap::{Args, Parser, Subcommand};
use ndigits_core::codec::{decode, encode};
use ndigits_core::dimension::{
    bounded_digit_dimension_profile, frequency_set_dimension, moran_dimension, DEFAULT_TOLERANCE,
};
use ndigits_core::{DigitWord, DimensionResult};
use ndigits::output::{Format, Records, Value};
use ndigits::spec::{parse_digit_set, parse_distribution, parse_target};
use ndigits::tables::{dimension_table, Rounding, TableFamily};
use ndigits::{parallel, CliError, ExitCode};

/// Digit representations of [0,1) induced by distributions on the positive integers.
#[derive(Parser)]
#[command(name = "ndigits", version)]
struct Cli {
    /// Output format; plain for single results and csv for tables by default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Fixed number of decimals for floats instead of shortest round-trip.
    #[arg(long, global = true)]
    digits: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// First k digits of x and the cylinder that certifies them.
    Encode {
        #[arg(long)]
        dist: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        #[arg(long)]
        k: usize,
    },
    /// Cylinder interval of a digit word such as 2,1,1,1.
    Decode {
        #[arg(long)]
        dist: String,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Dimension of the points whose digits all lie in a finite set.
    Dim(DimArgs),
    /// Dimension grid for n = 2..6 against five family parameters.
    Tables {
        #[arg(long, value_enum)]
        family: TableFamily,
        #[arg(long, default_value_t = 5)]
        decimals: usize,
        #[arg(long, value_enum, default_value_t = Rounding::Truncate)]
        rounding: Rounding,
    },
    /// Dimension of the set of points with digit frequencies q.
    Freqdim {
        #[arg(long)]
        dist: String,
        /// uniform:<n>, pointmass:<n>, self, or a comma list of frequencies.
        #[arg(long)]
        q: String,
    },
    /// Empirical digit frequencies along orbits of uniform random points.
    Experiment {
        #[command(flatten)]
        mc: MonteCarlo,
        /// Digits 1..=horizon are reported individually.
        #[arg(long, default_value_t = 10)]
        horizon: u64,
    },
    /// Fraction of uniform random points whose leading digits exceed 2, 5 and 10.
    Probe {
        #[command(flatten)]
        mc: MonteCarlo,
    },
}

#[derive(Args)]
struct DimArgs {
    #[arg(long)]
    dist: String,
    /// Digit set {1, …, n}.
    #[arg(long, group = "digit_set")]
    n: Option<u64>,
    /// Explicit digit set, e.g. 1,3,4.
    #[arg(long, group = "digit_set")]
    set: Option<String>,
    /// Dimensions of {1, …, k} for k = 1..=K.
    #[arg(long, group = "digit_set")]
    profile: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
}

#[derive(Args)]
struct MonteCarlo {
    #[arg(long)]
    dist: String,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Digits read per sample.
    #[arg(long, default_value_t = 50)]
    k: usize,
    /// Random when omitted; always echoed in the output.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    threads: Option<usize>,
}

impl MonteCarlo {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or_else(|| RandomState::new().hash_one(process::id()))
    }
}

fn dimension_row(r: &DimensionResult) -> Vec<Value> {
    vec![r.value.into(), r.bracket.0.into(), r.bracket.1.into(), u64::from(r.iterations).into(), r.residual.into()]
}

fn run(cli: Cli) -> Result<String, CliError> {
    let single = cli.format.unwrap_or(Format::Plain);
    let tabular = cli.format.unwrap_or(Format::Csv);
    let digits = cli.digits;
    match cli.command {
        Command::Encode { dist, x, k } => {
            let dist = parse_distribution(&dist)?;
            let e = encode(&dist, x, k)?;
            let mut r = Records::new(["word", "lo", "width", "precision_exhausted"]).bare_first();
            r.push(vec![
                e.word.to_string().into(),
                e.cylinder.lo.into(),
                e.cylinder.width.into(),
                e.precision_exhausted.into(),
            ]);
            Ok(r.render(single, digits))
        }
        Command::Decode { dist, word } => {
            let dist = parse_distribution(&dist)?;
            let word = if word.trim().is_empty() {
                DigitWord::empty()
            } else {
                DigitWord::new(parse_digit_set(&word)?)?
            };
            let c = decode(&dist, &word)?;
            let mut r = Records::new(["lo", "width"]);
            r.push(vec![c.lo.into(), c.width.into()]);
            Ok(r.render(single, digits))
        }
        Command::Dim(args) => {
            let dist = parse_distribution(&args.dist)?;
            if !(args.tol > 0.0) {
                return Err(CliError::Domain("--tol must be positive".into()));
            }
            let columns = ["dimension", "bracket_lo", "bracket_hi", "iterations", "residual"];
            if let Some(k) = args.profile {
                let mut r = Records::new(std::iter::once("k").chain(columns));
                for (k, d) in bounded_digit_dimension_profile(&dist, k)? {
                    let mut row = vec![Value::Int(k)];
                    row.extend(dimension_row(&d));
                    r.push(row);
                }
                return Ok(r.render(tabular, digits));
            }
            let set = match (args.n, args.set) {
                (Some(n), None) => (1..=n).collect(),
                (None, Some(s)) => parse_digit_set(&s)?,
                _ => return Err(CliError::usage("dim needs one of --n, --set or --profile")),
            };
            let d = moran_dimension(&dist, &set, args.tol)?;
            let mut r = Records::new(columns).bare_first();
            r.push(dimension_row(&d));
            Ok(r.render(single, digits))
        }
        Command::Tables { family, decimals, rounding } => {
            let table = dimension_table(family)?;
            Ok(table.records(decimals, rounding).render(tabular, None))
        }
        Command::Freqdim { dist, q } => {
            let dist = parse_distribution(&dist)?;
            let q = parse_target(&q, &dist)?;
            let d = frequency_set_dimension(&dist, &q)?;
            let mut r = Records::new(["dimension", "bracket_lo", "bracket_hi"]).bare_first();
            r.push(vec![d.value.into(), d.bracket.0.into(), d.bracket.1.into()]);
            Ok(r.render(single, digits))
        }
        Command::Experiment { mc, horizon } => {
            let dist = parse_distribution(&mc.dist)?;
            let seed = mc.seed();
            let pool = parallel::pool(mc.threads)?;
            let rep = parallel::frequency_experiment(&pool, &dist, mc.samples, mc.k, horizon, seed)?;
            let mut r = Records::new(["digit", "target_p", "empirical", "abs_deviation"])
                .meta("seed", seed)
                .meta("samples", rep.samples)
                .meta("k", rep.orbit_length as u64)
                .meta("out_of_horizon", rep.out_of_horizon)
                .meta("max_digit", rep.max_digit)
                .meta("mean_abs_deviation", rep.mean_abs_deviation);
            for d in &rep.digits {
                r.push(vec![d.digit.into(), d.target.into(), d.empirical.into(), d.abs_deviation.into()]);
            }
            Ok(r.render(tabular, digits))
        }
        Command::Probe { mc } => {
            let dist = parse_distribution(&mc.dist)?;
            let seed = mc.seed();
            let pool = parallel::pool(mc.threads)?;
            let curve = parallel::unboundedness_probe(&pool, &dist, mc.samples, mc.k, seed)?;
            let header = std::iter::once("j".to_owned()).chain(curve.thresholds.iter().map(|t| format!("above_{t}")));
            let mut r = Records::new(header).meta("seed", seed).meta("samples", curve.samples);
            for (j, row) in curve.fractions.iter().enumerate() {
                let mut cells = vec![Value::Int(j as u64 + 1)];
                cells.extend(row.iter().map(|&f| Value::Float(f)));
                r.push(cells);
            }
            Ok(r.render(tabular, digits))
        }
    }
}

fn main() {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    match run(cli) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|()| out.flush()).is_err() {
                process::exit(ExitCode::Usage as i32);
            }
        }
        Err(e) => {
            eprintln!("ndigits: {e}");
            process::exit(e.exit_code() as i32);
        }
    }
}
