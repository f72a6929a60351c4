//! `attoclock`: barrier geometry, tunneling times, sweeps and data
//! comparisons from the command line.
//!
//! Exit codes: 0 success, 2 usage/config/parse error, 3 regime error (a
//! real-only quantity requested above the atomic field strength).

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use attoclock::atom::{self, AtomModel, LaserField};
use attoclock::Error;
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "attoclock", version, about = "Tunneling time in strong-field ionization from the time-energy uncertainty relation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Barrier geometry for a single field strength
    Geometry {
        #[command(flatten)]
        atom: AtomArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Every tunneling-time estimator for a single field strength
    Times {
        #[command(flatten)]
        atom: AtomArgs,
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Field-strength sweep, as a figure table or a full dump
    Sweep {
        #[command(flatten)]
        atom: AtomArgs,
        /// MIN:MAX:STEP or F1,F2,... in au
        #[arg(long, allow_negative_numbers = true)]
        grid: String,
        #[arg(long, value_enum)]
        figure: Option<FigureArg>,
        /// Wavelength in nm, adds the Keldysh parameter to the full dump
        #[arg(long)]
        wavelength: Option<f64>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Residuals of a model curve against a measurement CSV
    Compare {
        #[command(flatten)]
        atom: AtomArgs,
        /// CSV with columns field_au,time_as,err_lo_as,err_hi_as[,source] or field_au,time_as,err_as
        #[arg(long)]
        data: PathBuf,
        #[arg(long, value_enum, default_value = "tau_d")]
        estimator: EstimatorArg,
        /// Also print the per-point residual table
        #[arg(long)]
        residuals: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Built-in atom models
    Catalog {
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args, Debug, Clone)]
struct AtomArgs {
    /// Catalog entry NAME[:MODEL], e.g. He:clementi or He:kullie [default: He:clementi]
    #[arg(long)]
    atom: Option<String>,
    /// Ionization potential in au (overrides the catalog value)
    #[arg(long, allow_negative_numbers = true)]
    ip: Option<f64>,
    /// Effective nuclear charge (overrides the catalog value)
    #[arg(long = "z-eff", allow_negative_numbers = true)]
    z_eff: Option<f64>,
}

impl AtomArgs {
    fn resolve(&self) -> Result<AtomModel, Error> {
        let base = atom::lookup(self.atom.as_deref().unwrap_or("He:clementi"))?;
        if self.ip.is_none() && self.z_eff.is_none() {
            return Ok(base);
        }
        let name = if self.atom.is_some() { base.name() } else { "custom" };
        AtomModel::new(name, self.ip.unwrap_or(base.ip()), self.z_eff.unwrap_or(base.z_eff()), "user")
    }
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("field_spec").required(true).multiple(false).args(["field", "field_from_intensity", "f0"])))]
struct FieldArgs {
    /// Peak field strength in au
    #[arg(long, allow_negative_numbers = true)]
    field: Option<f64>,
    /// Peak intensity in W/cm²
    #[arg(long, allow_negative_numbers = true)]
    field_from_intensity: Option<f64>,
    /// Field amplitude in au of an elliptically polarized pulse
    #[arg(long, allow_negative_numbers = true)]
    f0: Option<f64>,
    /// Ellipticity in [0, 1], used with --f0
    #[arg(long, allow_negative_numbers = true)]
    ellipticity: Option<f64>,
    /// Wavelength in nm, adds the Keldysh parameter
    #[arg(long)]
    wavelength: Option<f64>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<LaserField, Error> {
        if self.ellipticity.is_some() && self.f0.is_none() {
            return Err(Error::InvalidArgument("--ellipticity needs --f0".into()));
        }
        let field = match (self.field, self.field_from_intensity, self.f0) {
            (Some(f), None, None) => LaserField::direct(f)?,
            (None, Some(i), None) => LaserField::from_intensity(i)?,
            (None, None, Some(f0)) => LaserField::from_f0_ellipticity(f0, self.ellipticity.unwrap_or(0.0))?,
            _ => {
                return Err(Error::InvalidArgument(
                    "give exactly one of --field, --field-from-intensity, --f0".into(),
                ))
            }
        };
        match self.wavelength {
            Some(l) => field.with_wavelength(l),
            None => Ok(field),
        }
    }
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to PATH instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
    /// Significant digits for numeric output
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FigureArg {
    Fig2,
    Fig3,
    Fig4,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
#[value(rename_all = "snake_case")]
enum EstimatorArg {
    TauD,
    TauSym,
    TauUnsy,
    TauT,
}

fn exit_code(err: &Error) -> u8 {
    if err.is_regime_error() {
        3
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}
