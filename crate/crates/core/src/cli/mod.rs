//! Command-line front end: `run`, `score`, `compare` and `reward`.
//!
//! Exit codes: 0 success, 1 configuration or I/O error, 2 some run ended
//! Stalled or at the tick limit, 3 no frontiers to score.

mod commands;
pub mod config;
pub mod svg;

use clap::{Args, Parser, Subcommand};
use std::ffi::OsString;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::PathBuf;

pub use config::Config;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_INCOMPLETE: i32 = 2;
pub const EXIT_NO_FRONTIERS: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "frontier-explore",
    version,
    about = "Frontier exploration simulator and benchmark"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Explore every configured map with every selector and seed.
    Run(CommonArgs),
    /// Score the frontiers of a belief snapshot.
    Score(CommonArgs),
    /// Aggregate selector statistics over maps and seeds.
    Compare(CommonArgs),
    /// Evaluate the step reward for JSON-lines observations.
    Reward(CommonArgs),
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// TOML configuration file.
    #[arg(long, required_unless_present = "print_defaults")]
    config: Option<PathBuf>,
    /// Worker threads for `compare`; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Print the default configuration and exit.
    #[arg(long)]
    print_defaults: bool,
}

/// Runs the command line with explicit streams and returns the exit code.
pub fn run_cli<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (args, cmd): (
        &CommonArgs,
        fn(&Config, &std::path::Path, &CommonArgs, &mut commands::Io) -> Result<i32, CliError>,
    ) = match &cli.command {
        Command::Run(a) => (a, commands::run),
        Command::Score(a) => (a, commands::score),
        Command::Compare(a) => (a, commands::compare),
        Command::Reward(a) => (a, commands::reward),
    };
    if args.print_defaults {
        let _ = stdout.write_all(Config::defaults_toml().as_bytes());
        return EXIT_OK;
    }
    let path = args.config.as_ref().expect("clap enforces --config");
    let result = Config::load(path).and_then(|(cfg, base)| {
        let mut io = commands::Io {
            stdin,
            stdout: &mut *stdout,
        };
        cmd(&cfg, &base, args, &mut io)
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.code
        }
    }
}
