//! The `pam` command line.
//!
//! Every subcommand resolves its parameters as defaults, then the object in
//! `--config FILE`, then explicit flags, and writes the resolved set to
//! `config.json` next to its artifacts. `pam <cmd> --config <dir>/config.json`
//! replays a run.

mod args;
mod commands;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::{Map, Value};

pub use args::*;

use crate::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "pam", version, about = "Parabolic Anderson model with Pareto potential: ageing experiments")]
pub struct Cli {
    /// JSON file with parameters for the subcommand; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory [default: $PAM_OUTPUT_ROOT/<command>, else pam-out/<command>].
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for replica fan-out [default: available parallelism].
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The ageing function I(θ).
    Itheta(ItArgs),
    /// ν-mass of the region D_θ(r, y).
    NuMass(NuArgs),
    /// Sample the limit point process on a window.
    SampleLimit(SampleArgs),
    /// Leader path of the cone process.
    ConePath(ConeArgs),
    /// Track the maximizer Z_t of Φ_t.
    Track(TrackArgs),
    /// Integrate the normalized lattice problem.
    Solve(SolveArgs),
    /// Persistence probabilities over [t, t(1+θ)].
    Persistence(PersistArgs),
    /// Moderate-deviation scaling θ_t^d P(no change).
    ModerateDev(ModDevArgs),
    /// Residual-lifetime envelope diagnostics.
    Envelope(EnvelopeArgs),
    /// Scaling-limit marginals against the cone process.
    ScalingCheck(ScalingArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Itheta(_) => "itheta",
            Command::NuMass(_) => "nu-mass",
            Command::SampleLimit(_) => "sample-limit",
            Command::ConePath(_) => "cone-path",
            Command::Track(_) => "track",
            Command::Solve(_) => "solve",
            Command::Persistence(_) => "persistence",
            Command::ModerateDev(_) => "moderate-dev",
            Command::Envelope(_) => "envelope",
            Command::ScalingCheck(_) => "scaling-check",
        }
    }
}

/// Merge `defaults ← file ← flags`. Keys in the file that the command does
/// not know, and explicit nulls, are errors.
pub fn resolve<T: Serialize + DeserializeOwned>(
    command: &str,
    defaults: &T,
    file: Option<&Map<String, Value>>,
    flags: &T,
) -> Result<T> {
    let Value::Object(mut merged) = serde_json::to_value(defaults)? else {
        unreachable!("argument structs serialize to objects")
    };
    if let Some(file) = file {
        if let Some(c) = file.get("command") {
            if c.as_str() != Some(command) {
                return Err(Error::Validation(format!("config is for command {c}, not {command}")));
            }
        }
        for (k, v) in file {
            if k == "command" {
                continue;
            }
            if !merged.contains_key(k) {
                return Err(Error::Validation(format!("unknown config key `{k}` for {command}")));
            }
            merged.insert(k.clone(), v.clone());
        }
    }
    if let Value::Object(f) = serde_json::to_value(flags)? {
        merged.extend(f);
    }
    if let Some((k, _)) = merged.iter().find(|(_, v)| v.is_null()) {
        return Err(Error::Validation(format!("config key `{k}` must not be null")));
    }
    Ok(serde_json::from_value(Value::Object(merged))?)
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) | Error::Validation(_) | Error::Json(_) => 3,
        Error::Resource { .. } | Error::Stability { .. } | Error::Certification(_) => 4,
        Error::Io(_) | Error::Csv(_) => 1,
    }
}

/// Parse `argv` and run; returns the process exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(&cli) {
        Ok(line) => {
            println!("{line}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// Run a parsed command line and return its summary line.
pub fn execute(cli: &Cli) -> Result<String> {
    let file = match &cli.config {
        Some(p) => match serde_json::from_str::<Value>(&std::fs::read_to_string(p)?)? {
            Value::Object(m) => Some(m),
            _ => return Err(Error::Validation("config file must hold a JSON object".into())),
        },
        None => None,
    };
    let name = cli.command.name();
    let out = cli.out.clone().unwrap_or_else(|| crate::io::OutputDir::default_for(name));
    let work = || commands::dispatch(&cli.command, file.as_ref(), &out);
    match cli.jobs {
        Some(0) => Err(Error::Validation("--jobs must be at least 1".into())),
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build()
            .map_err(|e| Error::Validation(e.to_string()))?
            .install(work),
        None => work(),
    }
}
