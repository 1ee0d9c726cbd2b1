use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use selmer::files::{to_json, ResolutionFile};
use selmer::pipeline;
use selmer::report::{H1sReport, ResolutionReport, SelmerReport};
use selmer::resolution::{dual_sequence, Resolution};
use selmer::Error;

#[derive(Parser)]
#[command(name = "selmer", version, about = "Selmer groups of finite Galois modules from S-unit data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Machine,
}

#[derive(Args)]
struct Common {
    /// Module file; resolved on the fly.
    #[arg(long, conflicts_with = "resolution", required_unless_present = "resolution")]
    module: Option<PathBuf>,
    /// Resolution file written by `resolve`.
    #[arg(long)]
    resolution: Option<PathBuf>,
    #[arg(long, default_value_t = 2)]
    depth: usize,
    /// Check torsion exactness for every n from 2 up to this bound.
    #[arg(long, default_value_t = 0)]
    torsion_bound: u64,
    #[arg(long, value_enum, default_value_t = Output::Text)]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Load and cross-check input files.
    Validate {
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        resolution: Option<PathBuf>,
        #[arg(long)]
        fixture: Option<PathBuf>,
        #[arg(long)]
        system: Option<PathBuf>,
    },
    /// Resolve the dual module by permutation modules.
    Resolve {
        #[command(flatten)]
        common: Common,
        /// Write the resolution file here.
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Write the field-requests file here.
        #[arg(long)]
        requests: Option<PathBuf>,
        /// Primes the fixture must describe, besides those dividing the exponent.
        #[arg(long, value_delimiter = ',')]
        pool: Vec<u64>,
    },
    /// Emit the subgroups and primes a fixture has to cover.
    FieldRequests {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',')]
        pool: Vec<u64>,
    },
    /// Compute H¹_S.
    H1s {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        fixture: PathBuf,
        /// The set S; chosen automatically when absent.
        #[arg(long, value_delimiter = ',')]
        pool: Option<Vec<u64>>,
    },
    /// Compute the Selmer group of a system of local conditions.
    Selmer {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        system: PathBuf,
        /// The set S; chosen automatically when absent.
        #[arg(long, value_delimiter = ',')]
        pool: Option<Vec<u64>>,
    },
    /// Walk through a Selmer computation stage by stage.
    Explain {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        fixture: PathBuf,
        #[arg(long)]
        system: PathBuf,
        #[arg(long, value_delimiter = ',')]
        pool: Option<Vec<u64>>,
    },
}

fn resolution(c: &Common) -> Result<Resolution, Error> {
    match (&c.module, &c.resolution) {
        (Some(m), _) => {
            let (m, chi) = pipeline::load_module(m)?;
            pipeline::resolve_checked(&m, &chi, c.depth, c.torsion_bound)
        }
        (None, Some(r)) => pipeline::load_resolution(r),
        (None, None) => Err(Error::Schema("either --module or --resolution is required".into())),
    }
}

fn emit<T: Serialize>(output: Output, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match output {
        Output::Text => text(value),
        Output::Machine => to_json(value),
    }
}

fn write(path: &PathBuf, text: &str) -> Result<(), Error> {
    fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Validate { module, resolution, fixture, system } => {
            let mut out = String::new();
            let mut ds = None;
            if let Some(p) = &module {
                let (m, chi) = pipeline::load_module(p)?;
                out.push_str(&format!("module ok: {}\n", m.abgroup().structure()));
                if fixture.is_some() {
                    ds = Some(dual_sequence(&pipeline::resolve_checked(&m, &chi, 2, 0)?));
                }
            }
            if let Some(p) = &resolution {
                let r = pipeline::load_resolution(p)?;
                out.push_str(&format!("resolution ok: ranks {:?}\n", r.ranks()));
                ds = Some(dual_sequence(&r));
            }
            let sys = system.as_ref().map(pipeline::load_system).transpose()?;
            if sys.is_some() {
                out.push_str("system ok\n");
            }
            if let Some(p) = &fixture {
                let fx = pipeline::fixture(p)?;
                out.push_str(&format!("fixture ok: {}\n", fx.name()));
                if let Some(ds) = &ds {
                    pipeline::cross_validate(ds, &fx, sys.as_ref())?;
                    out.push_str("module and fixture agree\n");
                }
            }
            Ok(out)
        }
        Command::Resolve { common, out, requests, pool } => {
            let r = resolution(&common)?;
            if let Some(p) = &out {
                write(p, &to_json(&ResolutionFile::of(&r)))?;
            }
            if let Some(p) = &requests {
                write(p, &to_json(&pipeline::field_requests(&r, &pool)))?;
            }
            Ok(emit(common.output, &ResolutionReport::new(&r), ResolutionReport::text))
        }
        Command::FieldRequests { common, pool } => {
            let r = resolution(&common)?;
            Ok(to_json(&pipeline::field_requests(&r, &pool)))
        }
        Command::H1s { common, fixture, pool } => {
            let ds = dual_sequence(&resolution(&common)?);
            let fx = pipeline::fixture(&fixture)?;
            let h = pipeline::h1s(&ds, &fx, pool.as_deref())?;
            Ok(emit(common.output, &H1sReport::new(&h, &fx), H1sReport::text))
        }
        Command::Selmer { common, fixture, system, pool } => {
            let ds = dual_sequence(&resolution(&common)?);
            let fx = pipeline::fixture(&fixture)?;
            let sys = pipeline::load_system(&system)?;
            let sel = pipeline::selmer(&ds, &fx, &sys, pool.as_deref())?;
            Ok(emit(common.output, &SelmerReport::new(&sel, &fx), SelmerReport::text))
        }
        Command::Explain { common, fixture, system, pool } => {
            let r = resolution(&common)?;
            let fx = pipeline::fixture(&fixture)?;
            let sys = pipeline::load_system(&system)?;
            pipeline::explain(&r, &fx, &sys, pool.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
