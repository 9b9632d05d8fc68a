//! Command-line front end for `randflight`: table reproduction, plotting
//! grids, point evaluation, simulation, goodness-of-fit and rate fits, all
//! written as CSV.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use randflight::analysis::{
    difference_table, figure_grid, fit_convergence_rate, fit_remainder_rate, ks_critical_value,
    ks_distance, Law, RateFit, Remainder, COMPARISON_TIMES,
};
use randflight::densities::{
    marginal_density, planar_density, telegraph_density, FlightParams, PlanarPoint,
};
use randflight::montecarlo::{project_marginal, simulate_planar, simulate_telegraph, Axis};

pub const DEFAULT_LAMBDA: f64 = 1.0;
pub const DEFAULT_C: f64 = 2.0;
pub const DEFAULT_X: f64 = 5.0;
pub const DEFAULT_T: f64 = 5.0;
pub const DEFAULT_N: usize = 100_000;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_PRECISION: usize = 6;
pub const RATE_TIMES: [f64; 6] = [50.0, 100.0, 200.0, 400.0, 800.0, 1600.0];

#[derive(Debug, Parser)]
#[command(
    name = "randflight",
    version,
    about = "Telegraph process and planar random flight densities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: CommonArgs,
}

/// Flags shared by every subcommand.
#[derive(Debug, Default, Args)]
pub struct CommonArgs {
    /// Switching rate λ.
    #[arg(long, global = true)]
    pub lambda: Option<f64>,
    /// Speed c.
    #[arg(long, global = true)]
    pub c: Option<f64>,
    /// Time, or a comma-separated list of times.
    #[arg(long, alias = "ts", global = true, value_delimiter = ',', num_args = 1..)]
    pub t: Vec<f64>,
    /// Position.
    #[arg(long, global = true, allow_negative_numbers = true)]
    pub x: Option<f64>,
    /// Number of simulated paths.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Decimal digits in numeric output.
    #[arg(long, global = true, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: Option<u8>,
    /// TOML file with any of lambda, c, t, x, n, seed, precision.
    /// Command-line flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Densities at one point: f, g and the planar density at (x, x2).
    Eval {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x2: f64,
    },
    /// f, g and |f - g| at one point for a list of times.
    Table,
    /// f and g on a symmetric grid across the support.
    Grid {
        #[arg(long, default_value_t = 201)]
        points: usize,
    },
    /// Raw terminal positions of simulated paths.
    Simulate {
        #[arg(long, value_enum, default_value_t = SimProcess::Telegraph)]
        process: SimProcess,
    },
    /// Kolmogorov–Smirnov distance between a simulation and the closed form.
    Compare {
        #[arg(long, value_enum, default_value_t = LawArg::Telegraph)]
        process: LawArg,
        /// Significance level of the test.
        #[arg(long, default_value_t = 1e-3)]
        alpha: f64,
    },
    /// Log-log fit of a quantity against t.
    Rate {
        #[arg(long, value_enum, default_value_t = Quantity::Diff)]
        quantity: Quantity,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SimProcess {
    Telegraph,
    Planar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LawArg {
    Telegraph,
    Marginal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    /// |f - g|
    Diff,
    /// Telegraph remainder R.
    R,
    /// Marginal remainder Q.
    Q,
}

#[derive(Debug, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub lambda: Option<f64>,
    pub c: Option<f64>,
    pub t: Option<Times>,
    pub x: Option<f64>,
    pub n: Option<usize>,
    pub seed: Option<u64>,
    pub precision: Option<u8>,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Times {
    One(f64),
    Many(Vec<f64>),
}

impl FileConfig {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        Self::parse(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Flags merged over the config file and the defaults. `t` and `x` stay
/// `None` when unset because their defaults depend on the command.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub params: FlightParams,
    pub t: Option<Vec<f64>>,
    pub x: Option<f64>,
    pub n: usize,
    pub seed: u64,
    pub precision: usize,
    pub out: Option<PathBuf>,
}

impl Settings {
    pub fn resolve(args: &CommonArgs, file: FileConfig) -> Result<Self> {
        let lambda = args.lambda.or(file.lambda).unwrap_or(DEFAULT_LAMBDA);
        let c = args.c.or(file.c).unwrap_or(DEFAULT_C);
        let params = FlightParams::new(c, lambda)?;
        let t = if !args.t.is_empty() {
            Some(args.t.clone())
        } else {
            file.t.map(|t| match t {
                Times::One(v) => vec![v],
                Times::Many(v) => v,
            })
        };
        let precision = args
            .precision
            .or(file.precision)
            .map_or(DEFAULT_PRECISION, usize::from);
        if !(1..=17).contains(&precision) {
            bail!("precision must be between 1 and 17, got {precision}");
        }
        Ok(Settings {
            params,
            t,
            x: args.x.or(file.x),
            n: args.n.or(file.n).unwrap_or(DEFAULT_N),
            seed: args.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            precision,
            out: args.out.clone().or(file.out),
        })
    }

    fn times_or(&self, default: &[f64]) -> Vec<f64> {
        self.t.clone().unwrap_or_else(|| default.to_vec())
    }

    fn single_time(&self) -> Result<f64> {
        match self.t.as_deref() {
            None => Ok(DEFAULT_T),
            Some([t]) => Ok(*t),
            Some(ts) => bail!("this command takes a single time, got {}", ts.len()),
        }
    }

    fn x_or_default(&self) -> f64 {
        self.x.unwrap_or(DEFAULT_X)
    }
}

/// Fixed-point with `precision` decimals, ties to even, no negative zero.
pub fn format_fixed(value: f64, precision: usize) -> String {
    let s = format!("{value:.precision$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

struct Csv<'a> {
    out: &'a mut dyn Write,
    precision: usize,
}

impl Csv<'_> {
    fn header(&mut self, names: &str) -> io::Result<()> {
        writeln!(self.out, "{names}")
    }

    fn row(&mut self, lead: Option<String>, values: &[f64]) -> io::Result<()> {
        let mut fields: Vec<String> = lead.into_iter().collect();
        fields.extend(values.iter().map(|&v| format_fixed(v, self.precision)));
        writeln!(self.out, "{}", fields.join(","))
    }
}

/// Run `command` with resolved settings, writing CSV to `out`.
pub fn execute(command: &Command, settings: &Settings, out: &mut dyn Write) -> Result<()> {
    let p = &settings.params;
    let mut csv = Csv {
        out,
        precision: settings.precision,
    };
    match *command {
        Command::Table => {
            let rows = difference_table(
                settings.x_or_default(),
                p,
                &settings.times_or(&COMPARISON_TIMES),
            )?;
            csv.header("t,f,g,abs_diff")?;
            for r in rows {
                csv.row(Some(r.t.to_string()), &[r.f, r.g, r.abs_diff])?;
            }
        }
        Command::Grid { points } => {
            let rows = figure_grid(settings.single_time()?, p, points)?;
            csv.header("x,f,g")?;
            for r in rows {
                csv.row(None, &[r.x, r.f, r.g])?;
            }
        }
        Command::Eval { x2 } => {
            let x = settings.x_or_default();
            csv.header("t,x,x2,f,singular_mass,g,planar")?;
            for t in settings.times_or(&[DEFAULT_T]) {
                let f = telegraph_density(x, t, p)?;
                let g = if f.in_support {
                    marginal_density(x, t, p)?
                } else if x.abs() > p.reach(t) {
                    0.0
                } else {
                    bail!("the marginal density diverges at x = ±ct = {x}");
                };
                let planar = planar_density(PlanarPoint::new(x, x2), t, p)?;
                csv.row(
                    Some(t.to_string()),
                    &[x, x2, f.ac, f.singular_mass, g, planar.ac],
                )?;
            }
        }
        Command::Simulate { process } => {
            let t = settings.single_time()?;
            match process {
                SimProcess::Telegraph => {
                    simulate_telegraph(p, t, settings.n, settings.seed)?.write_csv(csv.out)?
                }
                SimProcess::Planar => {
                    simulate_planar(p, t, settings.n, settings.seed)?.write_csv(csv.out)?
                }
            }
        }
        Command::Compare { process, alpha } => {
            if !(alpha > 0.0 && alpha < 1.0) {
                bail!("alpha must lie in (0, 1), got {alpha}");
            }
            let t = settings.single_time()?;
            let (n, seed) = (settings.n, settings.seed);
            let (batch, law) = match process {
                LawArg::Telegraph => (simulate_telegraph(p, t, n, seed)?, Law::Telegraph),
                LawArg::Marginal => (
                    project_marginal(&simulate_planar(p, t, n, seed)?, Axis::X1),
                    Law::Marginal,
                ),
            };
            let distance = ks_distance(&batch, law, t, p)?;
            let critical = ks_critical_value(alpha, n as f64);
            let verdict = if distance < critical { "pass" } else { "fail" };
            csv.header("t,n,ks_distance,critical_value,verdict")?;
            writeln!(
                csv.out,
                "{t},{n},{},{},{verdict}",
                format_fixed(distance, settings.precision),
                format_fixed(critical, settings.precision)
            )?;
        }
        Command::Rate { quantity } => {
            let x = settings.x_or_default();
            let ts = settings.times_or(&RATE_TIMES);
            let fit: RateFit = match quantity {
                Quantity::Diff => fit_convergence_rate(x, p, &ts)?,
                Quantity::R => fit_remainder_rate(Remainder::R, x, p, &ts)?,
                Quantity::Q => fit_remainder_rate(Remainder::Q, x, p, &ts)?,
            };
            csv.header("slope,intercept,r_squared")?;
            csv.row(None, &[fit.slope, fit.intercept, fit.r_squared])?;
        }
    }
    Ok(())
}

/// Load the config file, merge the flags over it and run the command.
pub fn run(cli: Cli) -> Result<()> {
    let file = match &cli.common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let settings = Settings::resolve(&cli.common, file)?;
    match &settings.out {
        Some(path) => {
            let file =
                File::create(path).with_context(|| format!("creating {}", path.display()))?;
            let mut w = BufWriter::new(file);
            execute(&cli.command, &settings, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            execute(&cli.command, &settings, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}
