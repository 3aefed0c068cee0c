// SPDX-License-Identifier: Apache-2.0

//! `hartogs`: exact generating functions, ball classification and Kähler
//! geometry of Cartan-Hartogs domains from the command line.
//!
//! Exit codes: 0 success, 1 invalid parameters, 2 domain violation,
//! 3 internal-consistency failure.

mod commands;
mod error;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hartogs_core::algebra::{parse_rational, Rational};
use hartogs_core::cartan::{make_params, CartanParams};
use hartogs_core::geometry::{CurvatureConvention, PotentialKind, DEFAULT_STEP};

use commands::{IntRange, Mu, Outcome};
use error::{CliError, EXIT_INVALID};

#[derive(Parser, Debug)]
#[command(name = "hartogs", version, about = "Cartan-Hartogs domains: generating functions, classification, geometry")]
struct Cli {
    /// Write the report to this file instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Report format. CSV is available for `sweep` (default) and `curvature`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct Domain {
    /// Rank.
    #[arg(long)]
    r: u32,
    /// Root multiplicity a.
    #[arg(long)]
    a: u32,
    /// Root multiplicity b.
    #[arg(long)]
    b: u32,
}

impl Domain {
    fn params(&self) -> Result<CartanParams, CliError> {
        Ok(make_params(self.r, self.a, self.b)?)
    }
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GeoMu {
    /// Exact mu, as "p/q", an integer or a terminating decimal.
    #[arg(long, value_parser = parse_mu)]
    mu: Option<Rational>,
    /// Floating-point mu, used at its exact binary value.
    #[arg(long)]
    mu_float: Option<f64>,
}

impl GeoMu {
    fn resolve(&self) -> Result<Mu, CliError> {
        match (&self.mu, self.mu_float) {
            (Some(q), _) => Ok(Mu::Exact(q.clone())),
            (None, Some(x)) => {
                if !(x > 0.0 && x.is_finite()) {
                    return Err(CliError::invalid(format!("mu must be positive and finite, got {x}")));
                }
                eprintln!(
                    "warning: --mu-float {x} is used at its exact binary value; the exact classification does not apply"
                );
                Ok(Mu::Float(x))
            }
            (None, None) => Err(CliError::invalid("one of --mu or --mu-float is required")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    /// log of the Bergman kernel.
    Bergman,
    /// minus log of the dual kernel.
    Dual,
    /// Kobayashi-type potential -log(N^mu - |w|^2).
    Kob,
}

impl From<Kind> for PotentialKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Bergman => PotentialKind::BergmanLog,
            Kind::Dual => PotentialKind::DualBergmanLog,
            Kind::Kob => PotentialKind::KobLog,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Convention {
    /// Curvature of the field's own metric.
    Standard,
    /// Curvature of -2 times the metric.
    ClosedFormDual,
}

impl From<Convention> for CurvatureConvention {
    fn from(c: Convention) -> Self {
        match c {
            Convention::Standard => CurvatureConvention::Standard,
            Convention::ClosedFormDual => CurvatureConvention::ClosedFormDual,
        }
    }
}

/// Real coordinates `x1,y1,...,u,v` of a point: base first, fiber last.
#[derive(Debug, Clone)]
struct Coords(Vec<f64>);

impl std::str::FromStr for Coords {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("not a number: {t:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map(Coords)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The polynomial chi, P(t) = t chi(t) and its degree D.
    Chi {
        #[command(flatten)]
        domain: Domain,
    },
    /// Series coefficients and exact representations of F.
    Fgen {
        #[command(flatten)]
        domain: Domain,
        #[arg(long, value_parser = parse_mu)]
        mu: Rational,
        /// Number of series coefficients.
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Every ball criterion with its certificate.
    Classify {
        #[command(flatten)]
        domain: Domain,
        #[arg(long, value_parser = parse_mu)]
        mu: Rational,
        /// Exponents for projective inducedness; defaults to 1/(D+1), 1/3, 1/2, 1, 2.
        #[arg(long, value_delimiter = ',', value_parser = parse_mu)]
        alpha: Vec<Rational>,
    },
    /// The Bergman kernel (or its dual) on the diagonal.
    Kernel {
        #[command(flatten)]
        domain: Domain,
        #[command(flatten)]
        mu: GeoMu,
        /// Real coordinates, base then fiber.
        #[arg(long, allow_hyphen_values = true)]
        point: Coords,
        /// Evaluate the dual kernel instead.
        #[arg(long)]
        dual: bool,
        /// Also sum this many terms of the power series.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Supremum of Y on which the dual kernel stays positive.
    DualBound {
        #[command(flatten)]
        domain: Domain,
        #[arg(long, value_parser = parse_mu)]
        mu: Rational,
        /// Width of the final root bracket.
        #[arg(long, default_value_t = 1e-13)]
        tolerance: f64,
    },
    /// Sectional curvature along the fiber axis (0, iv), plane d/dx, d/dv.
    Curvature {
        #[command(flatten)]
        domain: Domain,
        #[command(flatten)]
        mu: GeoMu,
        #[arg(long, value_enum, default_value_t = Kind::Dual)]
        kind: Kind,
        /// Sample values of v; defaults to 0, 0.05, ..., 0.95, 0.98, 0.99.
        #[arg(long, value_delimiter = ',')]
        v: Vec<f64>,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        /// Defaults to closed-form-dual for the dual kind, standard otherwise.
        #[arg(long, value_enum)]
        convention: Option<Convention>,
    },
    /// Kähler-Einstein residual of a metric by finite differences.
    KeCheck {
        #[command(flatten)]
        domain: Domain,
        #[command(flatten)]
        mu: GeoMu,
        #[arg(long, value_enum, default_value_t = Kind::Bergman)]
        kind: Kind,
        /// Sample point (repeatable); defaults to five interior points.
        #[arg(long, allow_hyphen_values = true)]
        point: Vec<Coords>,
        #[arg(long, default_value_t = DEFAULT_STEP)]
        step: f64,
        /// Residual below which the metric counts as Einstein.
        #[arg(long, default_value_t = 1e-4)]
        tolerance: f64,
    },
    /// Classify every (r, a, b, mu) in the ranges.
    Sweep {
        /// Rank range, "lo..hi" inclusive or a single value.
        #[arg(long, default_value = "1..3")]
        r: IntRange,
        #[arg(long, default_value = "0..4")]
        a: IntRange,
        #[arg(long, default_value = "0..4")]
        b: IntRange,
        /// Comma-separated mu values.
        #[arg(long, value_delimiter = ',', value_parser = parse_mu, default_value = "1/2,1,3/2,2,3")]
        mu: Vec<Rational>,
    },
    /// Validate a catalog of named domains (JSON list of {name, r, a, b}).
    Catalog {
        /// Catalog file; defaults to the built-in catalog.
        #[arg(long, env = "HARTOGS_CATALOG")]
        path: Option<PathBuf>,
    },
}

fn parse_mu(s: &str) -> Result<Rational, String> {
    let q = parse_rational(s).map_err(|e| e.to_string())?;
    if q <= Rational::from_integer(0.into()) {
        return Err(format!("must be positive, got {s}"));
    }
    Ok(q)
}

fn want_csv(format: Option<Format>, csv_default: bool, csv_allowed: bool) -> Result<bool, CliError> {
    match format {
        None => Ok(csv_default),
        Some(Format::Json) => Ok(false),
        Some(Format::Csv) if csv_allowed => Ok(true),
        Some(Format::Csv) => Err(CliError::invalid("this command has no CSV output")),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let json_only = || want_csv(cli.format, false, false);
    match &cli.command {
        Command::Chi { domain } => {
            json_only()?;
            commands::chi(&domain.params()?)
        }
        Command::Fgen { domain, mu, order } => {
            json_only()?;
            commands::fgen(&domain.params()?, mu, *order)
        }
        Command::Classify { domain, mu, alpha } => {
            json_only()?;
            commands::classify(&domain.params()?, mu, alpha)
        }
        Command::Kernel { domain, mu, point, dual, terms } => {
            json_only()?;
            commands::kernel(&domain.params()?, &mu.resolve()?, &point.0, *dual, *terms)
        }
        Command::DualBound { domain, mu, tolerance } => {
            json_only()?;
            commands::dual_bound(&domain.params()?, mu, *tolerance)
        }
        Command::Curvature { domain, mu, kind, v, step, convention } => {
            let csv = want_csv(cli.format, false, true)?;
            commands::curvature(
                &domain.params()?,
                &mu.resolve()?,
                (*kind).into(),
                v,
                *step,
                convention.map(Into::into),
                csv,
            )
        }
        Command::KeCheck { domain, mu, kind, point, step, tolerance } => {
            json_only()?;
            let points: Vec<Vec<f64>> = point.iter().map(|c| c.0.clone()).collect();
            commands::ke_check(&domain.params()?, &mu.resolve()?, (*kind).into(), &points, *step, *tolerance)
        }
        Command::Sweep { r, a, b, mu } => {
            let csv = want_csv(cli.format, true, true)?;
            commands::sweep(&commands::sweep_params(*r, *a, *b), mu, csv)
        }
        Command::Catalog { path } => {
            json_only()?;
            commands::catalog(path.as_deref())
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::invalid(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = run(&cli).and_then(|o| emit(&cli, &o.text).map(|_| o.code));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
