//! `nilorb`: reproducible nilpotent-orbit experiments from the command line.
//!
//! Exit codes: 0 all checks pass, 2 a check was falsified, 3 a resource
//! guard was hit, 4 bad configuration.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nilorb::ErrorClass;

use output::{failure_record, Format};

#[derive(Parser, Debug)]
#[command(name = "nilorb", version, about = "Exact experiments on nilpotent orbits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Random seed; the NILORB_SEED environment variable takes precedence.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Worker threads for parallel scans (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Nilpotent orbit table via Bala-Carter.
    Orbits {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        /// 0 for the rationals, else a good prime.
        #[arg(long = "char", value_name = "P", default_value_t = 0)]
        p: u64,
    },
    /// Check that the associated cocharacter of an orbit is optimal.
    Optimal {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long = "char", value_name = "P", default_value_t = 0)]
        p: u64,
        /// Row index in the `orbits` table.
        #[arg(long)]
        orbit: usize,
        /// `auto` for 9 |phi|^2, or an explicit norm bound.
        #[arg(long, default_value = "auto")]
        bound: String,
    },
    /// Compare `Ad(U) X` with `X + g(>=3)` over F_q.
    Uorbit {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long)]
        q: u64,
        /// Only this orbit (default: every nonzero orbit).
        #[arg(long)]
        orbit: Option<usize>,
    },
    /// Levi decomposition of centralizers in G(F_q).
    Centralizer {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        orbit: Option<usize>,
    },
    /// Partition the nilpotent cone of g(F_q) into G(F_q)-orbits.
    Rational {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long)]
        q: u64,
    },
    /// Orbit census for the quaternion model over F_q((t)).
    C2local {
        #[arg(long)]
        q: u32,
        #[arg(long, default_value_t = 16)]
        prec: usize,
        /// Minimum number of same-class pairs to connect.
        #[arg(long, default_value_t = 50)]
        pairs: usize,
    },
    /// Checks on the algebraic logarithm `Lambda`.
    Lambda {
        #[arg(long = "type", value_name = "TYPE")]
        ty: String,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 1_000)]
        pairs: usize,
        /// Enumerate the Borel unipotent radical when it has at most this many elements.
        #[arg(long, default_value_t = 100_000)]
        borel_limit: u64,
    },
    /// Solvability of `y^p - y = g` in F_q((t)).
    ArtinSchreier {
        #[arg(long)]
        q: u32,
        /// Laurent series, e.g. `2*t^-4 + t + 1`.
        #[arg(long)]
        g: String,
        #[arg(long, default_value_t = 16)]
        prec: usize,
        /// Assert the outcome.
        #[arg(long)]
        expect: Option<Expect>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Expect {
    Solvable,
    Unsolvable,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Orbits { .. } => "orbits",
            Command::Optimal { .. } => "optimal",
            Command::Uorbit { .. } => "uorbit",
            Command::Centralizer { .. } => "centralizer",
            Command::Rational { .. } => "rational",
            Command::C2local { .. } => "c2local",
            Command::Lambda { .. } => "lambda",
            Command::ArtinSchreier { .. } => "artin-schreier",
        }
    }
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Falsified => 2,
        ErrorClass::Resource => 3,
        ErrorClass::Config => 4,
    }
}

fn class_name(class: ErrorClass) -> &'static str {
    match class {
        ErrorClass::Falsified => "falsified",
        ErrorClass::Resource => "resource",
        ErrorClass::Config => "config",
    }
}

fn sink(path: &Option<PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn fail(command: &str, common: Option<&Common>, class: &str, message: &str, code: u8) -> ExitCode {
    let record = failure_record(command, class, message, i32::from(code));
    let text = serde_json::to_string_pretty(&record).expect("json");
    let written = common
        .and_then(|c| c.output.as_ref())
        .map(|p| std::fs::write(p, format!("{text}\n")).is_ok())
        .unwrap_or(false);
    if !written {
        println!("{text}");
    }
    eprintln!("nilorb {command}: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            return fail("parse", None, "config", msg.trim(), 4);
        }
    };
    let mut common = cli.common.clone();
    if let Ok(s) = std::env::var("NILORB_SEED") {
        match s.trim().parse() {
            Ok(seed) => common.seed = seed,
            Err(_) => return fail(cli.command.name(), Some(&common), "config", &format!("NILORB_SEED={s} is not a u64"), 4),
        }
    }
    if let Some(n) = common.threads {
        if n == 0 {
            return fail(cli.command.name(), Some(&common), "config", "--threads must be positive", 4);
        }
        // only fails if a pool already exists, which cannot happen here
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }

    let name = cli.command.name();
    match commands::run(&cli.command, &common) {
        Ok(out) => {
            let written = sink(&common.output).and_then(|mut w| {
                out.write(common.format, &mut *w)?;
                w.flush()
            });
            if let Err(e) = written {
                return fail(name, None, "config", &format!("cannot write output: {e}"), 4);
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                eprintln!("nilorb {name}: check failed");
                ExitCode::from(2)
            }
        }
        Err(e) => fail(name, Some(&common), class_name(e.class()), &e.to_string(), exit_code(e.class())),
    }
}
