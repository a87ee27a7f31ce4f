//! `atomlab`: atoms and structure of finite-field power-series rings.

mod report;
mod specfile;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};

use atomlab_core::search::{compose_nonlocal, find_with_atom_count, sweep, GradedBounds, SweepBounds};
use atomlab_core::{brute_force_atoms, enumerate_atoms, structure_report, verify, Caps, RingSpec};

use report::{
    AtomsDoc, Body, CheckDoc, ComposeDoc, Document, FindDoc, StructureDoc, SweepDoc, VerifyDoc,
};
use specfile::ParseError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] atomlab_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(atomlab_core::Error::CapExceeded { .. }) => 3,
            CliError::Core(atomlab_core::Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Debug, Parser)]
#[command(name = "atomlab", version, about = "Atoms and structure of K + V1 X + ... + F[[X]] X^n")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Byte budget for one order stratum of the window table.
    #[arg(long, value_name = "BYTES", global = true)]
    cap: Option<u64>,

    /// Assert that the run is deterministic (it always is).
    #[arg(long, global = true)]
    seedless: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a spec file.
    Check {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
    },
    /// List atom classes by layer.
    Atoms {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Ideal powers, universality, multiplier ring and V.
    Structure {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
    },
    /// Check the counting theorems and closed forms on one ring.
    Verify {
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        /// Cross-check against brute-force enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Predict (and optionally enumerate) a family over a parameter range.
    Sweep {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
        family: u32,
        /// Largest residue field size p^m.
        #[arg(long, default_value_t = 9)]
        max_pm: u64,
        #[arg(long, default_value_t = 3)]
        max_k: u32,
        #[arg(long, default_value_t = 3)]
        max_l: u32,
        /// Only keep points with at most this many atoms.
        #[arg(long)]
        max_atoms: Option<u64>,
        /// Enumerate each in-cap point and compare with the prediction.
        #[arg(long)]
        enumerate: bool,
    },
    /// Search for rings with exactly N atom classes.
    Find {
        #[arg(long, value_name = "N")]
        count: u64,
        #[arg(long, default_value_t = 9)]
        max_pm: u64,
        #[arg(long, default_value_t = 3)]
        max_k: u32,
        #[arg(long, default_value_t = 3)]
        max_l: u32,
        /// Also enumerate every graded spec with |F| <= 16 and n <= 3.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Write N as a sum of p+1 over distinct primes p.
    Compose {
        #[arg(long, value_name = "N")]
        count: u64,
        /// Largest number of decompositions listed.
        #[arg(long, default_value_t = 10)]
        limit: usize,
    },
    /// Re-render a machine-format report (`-` reads stdin).
    Render {
        #[arg(value_name = "FILE")]
        input: PathBuf,
    },
}

fn read(path: &PathBuf) -> Result<String, CliError> {
    let io = |source| CliError::Io {
        path: path.clone(),
        source,
    };
    if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(io)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

fn load(path: &PathBuf, caps: Caps) -> Result<Arc<RingSpec>, CliError> {
    specfile::parse(&read(path)?)?.build(caps)
}

/// Runs a command, returning its document and whether every check passed.
fn run(cli: &Cli, caps: Caps) -> Result<(Document, bool), CliError> {
    Ok(match &cli.command {
        Command::Check { spec } => {
            let r = load(spec, caps)?;
            (Document::new("check", Body::Check(CheckDoc::new(&r))), true)
        }
        Command::Atoms { spec, oracle } => {
            let r = load(spec, caps)?;
            let inv = enumerate_atoms(&r)?;
            let agrees = if *oracle {
                Some(brute_force_atoms(&r)?.atoms() == inv.atoms())
            } else {
                None
            };
            let doc = AtomsDoc::new(&r, &inv, agrees);
            (Document::new("atoms", Body::Atoms(doc)), agrees != Some(false))
        }
        Command::Structure { spec } => {
            let r = load(spec, caps)?;
            let inv = enumerate_atoms(&r)?;
            let rep = structure_report(&r, &inv)?;
            let doc = StructureDoc::new(&r, &rep);
            (Document::new("structure", Body::Structure(doc)), true)
        }
        Command::Verify { spec, oracle } => {
            let r = load(spec, caps)?;
            let inv = enumerate_atoms(&r)?;
            let rep = structure_report(&r, &inv)?;
            let mut checks = verify(&r, &inv, &rep)?;
            if *oracle {
                let brute = brute_force_atoms(&r)?;
                checks.push(atomlab_core::PropertyCheck::new(
                    "oracle_agrees",
                    brute.atoms() == inv.atoms(),
                    format!("brute force found {} classes", brute.total()),
                ));
            }
            let doc = VerifyDoc::new(&r, &inv, &checks);
            let passed = doc.passed;
            (Document::new("verify", Body::Verify(doc)), passed)
        }
        Command::Sweep {
            family,
            max_pm,
            max_k,
            max_l,
            max_atoms,
            enumerate,
        } => {
            let bounds = SweepBounds {
                max_pm: *max_pm,
                max_k: *max_k,
                max_l: *max_l,
                max_atoms: *max_atoms,
            };
            let res = sweep(*family, &bounds, *enumerate, caps)?;
            let doc = SweepDoc::new(*family, *enumerate, &res);
            let passed = doc.mismatches == 0;
            (Document::new("sweep", Body::Sweep(doc)), passed)
        }
        Command::Find {
            count,
            max_pm,
            max_k,
            max_l,
            exhaustive,
        } => {
            let bounds = SweepBounds {
                max_pm: *max_pm,
                max_k: *max_k,
                max_l: *max_l,
                max_atoms: None,
            };
            let gb = GradedBounds::default();
            let out = find_with_atom_count(*count, &bounds, exhaustive.then_some(&gb), caps)?;
            (Document::new("find", Body::Find(FindDoc::new(*count, &out))), true)
        }
        Command::Compose { count, limit } => {
            let c = compose_nonlocal(*count, *limit);
            (Document::new("compose", Body::Compose(ComposeDoc::new(*count, &c))), true)
        }
        Command::Render { input } => {
            let doc = Document::from_json(&read(input)?).map_err(|e| ParseError {
                line: e.line(),
                msg: e.to_string(),
            })?;
            if doc.schema != report::SCHEMA {
                return Err(ParseError {
                    line: 0,
                    msg: format!("unsupported schema '{}'", doc.schema),
                }
                .into());
            }
            (doc, true)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut caps = Caps::default();
    if let Some(bytes) = cli.cap {
        caps.window_bytes = bytes;
    }
    match run(&cli, caps) {
        Ok((doc, passed)) => {
            match cli.format {
                Format::Text => print!("{}", doc.to_text()),
                Format::Machine => print!("{}", doc.to_json()),
            }
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("atomlab: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
