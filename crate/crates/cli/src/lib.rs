//! Driver behind the `cloakrate` binary: decay-rate, pattern and dynamics
//! sweeps near a spherical invisibility cloak.

pub mod config;
pub mod run;

// Lives in tests/ but runs with the unit tests, ahead of the acceptance target.
#[cfg(test)]
#[path = "../tests/cli.rs"]
mod cli_tests;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use config::{Command, Diagnostic, MethodName, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "cloakrate", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// JSON run configuration (a previous run's manifest also works).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory; overrides `output.dir`.
    #[arg(long, global = true, value_name = "DIR")]
    output: Option<PathBuf>,

    /// Run a single method instead of `methods`.
    #[arg(long, global = true, value_parser = parse_method)]
    method: Option<MethodName>,

    #[arg(long, global = true, value_name = "N")]
    num_layers: Option<usize>,

    /// Worker threads (default: all cores). Does not change the output.
    #[arg(long, global = true, value_name = "K")]
    workers: Option<usize>,

    /// Override a config field, e.g. `--set sweep.points=50`.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE")]
    overrides: Vec<String>,
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum Cmd {
    /// Γ/Γ₀ over a frequency or distance grid.
    Decay,
    /// Far-field emission pattern of a radial dipole.
    Pattern,
    /// Upper-state amplitude in the weak and strong coupling regimes.
    Dynamics,
    /// Table of the layered cloak approximation.
    Layers,
    /// Check the configuration without running.
    Validate {
        #[arg(value_enum, default_value = "decay")]
        target: Target,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum Target {
    Decay,
    Pattern,
    Dynamics,
    Layers,
}

impl From<Target> for Command {
    fn from(t: Target) -> Self {
        match t {
            Target::Decay => Command::Decay,
            Target::Pattern => Command::Pattern,
            Target::Dynamics => Command::Dynamics,
            Target::Layers => Command::Layers,
        }
    }
}

fn parse_method(s: &str) -> Result<MethodName, String> {
    s.parse()
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_IO: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_ALL_FAILED: u8 = 3;

fn report(err: &mut dyn Write, diags: &[Diagnostic]) {
    for d in diags {
        let _ = writeln!(err, "error: {d}");
    }
}

fn resolve(cli: &Cli) -> Result<RunConfig, Vec<Diagnostic>> {
    let text = match &cli.config {
        Some(path) => Some(std::fs::read_to_string(path).map_err(|e| {
            vec![Diagnostic { path: path.display().to_string(), message: e.to_string() }]
        })?),
        None => None,
    };
    let mut overrides = cli.overrides.clone();
    if let Some(m) = cli.method {
        overrides.push(format!("methods=[\"{m}\"]"));
    }
    if let Some(n) = cli.num_layers {
        overrides.push(format!("num_layers={n}"));
    }
    let mut config = config::load(text.as_deref(), &overrides)?;
    if let Some(dir) = &cli.output {
        config.output.dir = dir.clone();
    }
    Ok(config)
}

fn write_manifest(
    dir: &Path,
    config: &RunConfig,
    command: Command,
    workers: usize,
    outcome: &run::Outcome,
    wall_time: f64,
) -> std::io::Result<()> {
    let outputs: Vec<String> =
        outcome.outputs.iter().filter_map(|p| p.file_name()).map(|n| n.to_string_lossy().into_owned()).collect();
    let manifest = json!({
        "manifest_version": 1,
        "command": command.name(),
        "version": env!("CARGO_PKG_VERSION"),
        "wall_time_s": wall_time,
        "workers": workers,
        "outputs": outputs,
        "points": outcome.points,
        "failures": outcome.failures,
        "config": config,
    });
    let text = serde_json::to_string_pretty(&manifest).map_err(std::io::Error::other)?;
    std::fs::write(dir.join(format!("manifest_{}.json", command.name())), text + "\n")
}

/// Runs the command line `args` (program name first) and returns the exit
/// status. Diagnostics and progress go to `err`.
pub fn run_cli<I, T>(args: I, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_CONFIG;
            }
            print!("{}", e.render());
            return EXIT_OK;
        }
    };
    let config = match resolve(&cli) {
        Ok(c) => c,
        Err(d) => {
            report(err, &d);
            return EXIT_CONFIG;
        }
    };

    let command = match cli.command {
        Cmd::Validate { target } => {
            let diags = config.validate(target.into());
            report(err, &diags);
            return if diags.is_empty() {
                println!("ok");
                EXIT_OK
            } else {
                EXIT_CONFIG
            };
        }
        Cmd::Decay => Command::Decay,
        Cmd::Pattern => Command::Pattern,
        Cmd::Dynamics => Command::Dynamics,
        Cmd::Layers => Command::Layers,
    };
    let diags = config.validate(command);
    if !diags.is_empty() {
        report(err, &diags);
        return EXIT_CONFIG;
    }

    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start worker pool: {e}");
            return EXIT_IO;
        }
    };
    let dir = config.output.dir.clone();
    if let Err(e) = std::fs::create_dir_all(&dir) {
        let _ = writeln!(err, "error: {}: {e}", dir.display());
        return EXIT_IO;
    }

    let start = Instant::now();
    let outcome = pool.install(|| match command {
        Command::Decay => run::decay(&config, &dir),
        Command::Pattern => run::pattern(&config, &dir),
        Command::Dynamics => run::dynamics(&config, &dir),
        Command::Layers => run::layers(&config, &dir),
    });
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(err, "error: writing output: {e}");
            return EXIT_IO;
        }
    };
    let wall_time = start.elapsed().as_secs_f64();
    if let Err(e) = write_manifest(&dir, &config, command, pool.current_num_threads(), &outcome, wall_time) {
        let _ = writeln!(err, "error: writing manifest: {e}");
        return EXIT_IO;
    }
    for p in &outcome.outputs {
        let _ = writeln!(err, "wrote {}", p.display());
    }
    if outcome.failures > 0 {
        let _ = writeln!(err, "{} of {} points failed (see the error column)", outcome.failures, outcome.points);
    }
    if outcome.all_failed() {
        EXIT_ALL_FAILED
    } else {
        EXIT_OK
    }
}
