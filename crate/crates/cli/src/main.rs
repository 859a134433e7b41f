//! `drumzeta`: sum rules, closed forms and cross-checks from the command line.

mod commands;
mod error;
mod parse;
mod report;

use clap::{error::ErrorKind, Args, Parser, Subcommand};
use error::{CliError, CliResult};
use report::{resolve_output, Format, Report};
use serde::Serialize;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "drumzeta", version, about = "Spectral sum rules of inhomogeneous drums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; relative paths go under $DRUMZETA_OUT_DIR when set. Defaults to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Transverse kernel g(y, y'; κ²) of a 1D family.
    Kernel(KernelArgs),
    /// Green's function of a rectangle.
    Green(GreenArgs),
    /// Sum rules Z(p) from the trace engine.
    Zeta(ZetaArgs),
    /// Closed forms of the conformal annulus, order two.
    Annulus(AnnulusArgs),
    /// Dirichlet sum rules of a circular sector.
    Sector(SectorArgs),
    /// Order-two sum rule of the annulus with density ∝ r^b.
    Inhom(InhomArgs),
    /// Brute-force sums over computed spectra.
    Oracle(OracleArgs),
    /// Cross-check one quantity by every available method.
    Compare(CompareArgs),
    /// A closed-form quantity over a parameter grid.
    Sweep(SweepArgs),
    /// The sector table at four angles and three orders.
    Table1(Table1Args),
}

#[derive(Args, Debug, Serialize)]
pub struct KernelArgs {
    /// d, n, p, nd or dn.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 1.0)]
    pub len: f64,
    #[arg(long)]
    pub kappa2: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub y: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub yp: f64,
    /// Allow κ² = 0 for Neumann/periodic, using the pseudo-inverse kernel.
    #[arg(long)]
    pub zero_mode: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct GreenArgs {
    #[arg(long)]
    pub bc: String,
    /// AxB.
    #[arg(long)]
    pub rect: String,
    /// Field point x,y.
    #[arg(long, allow_hyphen_values = true)]
    pub r: String,
    /// Source point x,y.
    #[arg(long, allow_hyphen_values = true)]
    pub rp: String,
    /// auto, x or y: which modes to sum over.
    #[arg(long, default_value = "auto")]
    pub axis: String,
    #[arg(long, default_value_t = 1e-13)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 100_000)]
    pub max_modes: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct ZetaArgs {
    #[arg(long, default_value = "DD")]
    pub bc: String,
    /// AxB; implied by annulus densities.
    #[arg(long)]
    pub rect: Option<String>,
    /// Orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub p: Vec<usize>,
    /// const:<v>, conformal-annulus:<rmin> or power-annulus:<b>,<rmin>.
    #[arg(long, default_value = "const:1")]
    pub density: String,
    /// weighted (true spectrum) or flat (pseudo-kernel trace).
    #[arg(long, default_value = "weighted")]
    pub zero_projection: String,
    #[arg(long, default_value_t = 1e-12)]
    pub rel_tol: f64,
    #[arg(long, default_value_t = 1 << 16)]
    pub max_modes: usize,
    #[arg(long, default_value_t = 16)]
    pub points: usize,
    #[arg(long, default_value_t = 8)]
    pub subdivisions: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct AnnulusArgs {
    #[arg(long)]
    pub rmin: f64,
    #[arg(long, default_value_t = drumzeta::closedforms::DEFAULT_TERMS)]
    pub terms: usize,
    /// Small-hole expansions to add, e.g. DP2,NDP4.
    #[arg(long, value_delimiter = ',')]
    pub case: Vec<String>,
}

#[derive(Args, Debug, Serialize)]
pub struct SectorArgs {
    /// Opening angle: a number or pi/4, 3pi/4, ...
    #[arg(long)]
    pub phi: String,
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    pub p: Vec<u32>,
}

#[derive(Args, Debug, Serialize)]
pub struct InhomArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long)]
    pub rmin: f64,
    #[arg(long, default_value_t = drumzeta::closedforms::DEFAULT_TERMS)]
    pub terms: usize,
    /// Add the small-hole asymptotic column (b = -2 only).
    #[arg(long)]
    pub asym: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct OracleArgs {
    /// rect, annulus or sector.
    #[arg(long)]
    pub domain: String,
    #[arg(long)]
    pub bc: Option<String>,
    #[arg(long)]
    pub rect: Option<String>,
    /// Annulus edge conditions DD, NN, ND or DN (inner edge first).
    #[arg(long, default_value = "DD")]
    pub edge: String,
    #[arg(long)]
    pub rmin: Option<f64>,
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long)]
    pub emax: f64,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub p: Vec<usize>,
    /// weyl, geometric or none.
    #[arg(long, default_value = "weyl")]
    pub tail: String,
    /// Highest angular order; defaults to the smallest sufficient one.
    #[arg(long)]
    pub order_max: Option<u32>,
    /// Also write the spectrum as CSV (E, multiplicity).
    #[arg(long)]
    pub spectrum_out: Option<PathBuf>,
}

#[derive(Args, Debug, Serialize)]
pub struct CompareArgs {
    /// annulus-dp or sector.
    #[arg(long)]
    pub case: String,
    #[arg(long)]
    pub rmin: Option<f64>,
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    /// Truncation energy of the oracle spectrum.
    #[arg(long, default_value_t = 4e4)]
    pub emax: f64,
}

#[derive(Args, Debug, Serialize)]
pub struct SweepArgs {
    /// inhom, annulus-dp or sector.
    pub kind: String,
    /// Value or grid lo:hi:step, lo:hi:lin:N, lo:hi:log[:N].
    #[arg(long)]
    pub rmin: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long)]
    pub phi: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    /// Add the small-hole asymptotic column.
    #[arg(long)]
    pub asym: bool,
    #[arg(long, default_value_t = drumzeta::closedforms::DEFAULT_TERMS)]
    pub terms: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct Table1Args {}

fn echo<T: Serialize>(command: &str, args: &T) -> CliResult<(String, serde_json::Map<String, serde_json::Value>)> {
    match serde_json::to_value(args)? {
        serde_json::Value::Object(m) => Ok((command.to_string(), m)),
        _ => Ok((command.to_string(), serde_json::Map::new())),
    }
}

fn run(cli: Cli) -> CliResult<()> {
    let ((command, config), table) = match &cli.command {
        Command::Kernel(a) => (echo("kernel", a)?, commands::kernel(a)?),
        Command::Green(a) => (echo("green", a)?, commands::green(a)?),
        Command::Zeta(a) => (echo("zeta", a)?, commands::zeta(a)?),
        Command::Annulus(a) => (echo("annulus", a)?, commands::annulus(a)?),
        Command::Sector(a) => (echo("sector", a)?, commands::sector(a)?),
        Command::Inhom(a) => (echo("inhom", a)?, commands::inhom(a)?),
        Command::Oracle(a) => (echo("oracle", a)?, commands::oracle(a)?),
        Command::Compare(a) => (echo("compare", a)?, commands::compare(a)?),
        Command::Sweep(a) => (echo("sweep", a)?, commands::sweep(a)?),
        Command::Table1(a) => (echo("table1", a)?, commands::table1()?),
    };
    let report = Report { command, config, table };
    match &cli.out {
        Some(path) => {
            let path = resolve_output(path);
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            let mut w = BufWriter::new(File::create(&path)?);
            report.write(cli.format, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            report.write(cli.format, &mut w)?;
        }
    }
    Ok(())
}

fn fail(kind: &str, message: &str, code: i32) -> ! {
    let doc = serde_json::json!({ "error": { "kind": kind, "message": message } });
    eprintln!("{doc}");
    std::process::exit(code)
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp
            | ErrorKind::DisplayVersion
            | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => e.exit(),
            _ => fail("config", e.to_string().trim(), 2),
        },
    };
    if let Err(e) = run(cli) {
        let e: CliError = e;
        fail(e.kind(), &e.to_string(), e.exit_code());
    }
}
