//! Command-line front end.
//!
//! Settings come from defaults, then an optional `--config` file, then
//! flags. Results go to `--out` (or standard output) as CSV; a one-line
//! summary goes to standard error.
//!
//! Exit codes: 0 success, 1 failed `--check`, 2 configuration error,
//! 3 numerical failure, 4 I/O error.

pub mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::{Error, Result};
pub use commands::{Extras, Report, Table};
pub use config::{RunConfig, SweepScale, SweepSpec, SweepVar};

#[derive(Debug, Parser)]
#[command(
    name = "jamsel",
    version,
    allow_negative_numbers = true,
    about = "Secrecy throughput with threshold-based jammer selection"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Outage thresholds, rates and throughput at a given delta.
    #[command(allow_negative_numbers = true)]
    Analyze,
    /// Throughput-maximizing delta.
    #[command(allow_negative_numbers = true)]
    Optimize,
    /// Monte Carlo outage estimates next to the closed forms.
    #[command(allow_negative_numbers = true)]
    Simulate,
    /// Analyze rows over a grid of one variable.
    #[command(allow_negative_numbers = true)]
    Sweep,
    /// Proposed scheme against random selection at matched density.
    #[command(allow_negative_numbers = true)]
    Compare,
}

#[derive(Clone, Debug, Default, Args)]
pub struct Opts {
    /// Configuration file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "DBM")]
    pub p_s_dbm: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "DBM")]
    pub p_j_dbm: Option<f64>,
    /// Receiver noise power; `-inf` for a noiseless receiver.
    #[arg(long, global = true, allow_hyphen_values = true, value_name = "DBM")]
    pub n0_dbm: Option<f64>,
    #[arg(long, global = true, value_name = "M")]
    pub d_m: Option<f64>,
    #[arg(long, global = true)]
    pub alpha: Option<f64>,
    #[arg(long, global = true)]
    pub lambda_j: Option<f64>,
    #[arg(long, global = true)]
    pub lambda_e: Option<f64>,
    #[arg(long, global = true)]
    pub sigma: Option<f64>,
    #[arg(long, global = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true)]
    pub delta: Option<f64>,
    #[arg(long, global = true, value_name = "M")]
    pub sim_radius_m: Option<f64>,
    #[arg(long, alias = "sim-trials", global = true, value_name = "N")]
    pub trials: Option<u64>,
    #[arg(long, alias = "sim-seed", global = true, value_name = "N")]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_name = "VAR")]
    pub sweep_var: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sweep_start: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub sweep_stop: Option<f64>,
    #[arg(long, global = true, value_name = "N")]
    pub sweep_count: Option<usize>,
    #[arg(long, global = true, value_name = "linear|log")]
    pub sweep_scale: Option<String>,
    /// Output CSV path; standard output when absent.
    #[arg(long, alias = "out-path", global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Simulate: SINR threshold at the receiver (default: the outage-budget value).
    #[arg(long, global = true)]
    pub beta_b: Option<f64>,
    /// Simulate: SIR threshold at the eavesdroppers (default: the outage-budget value).
    #[arg(long, global = true)]
    pub beta_e: Option<f64>,
    /// Compare: fraction of jammers kept by random selection (default: matched density).
    #[arg(long, global = true)]
    pub retention: Option<f64>,
    /// Lower end of the delta search interval.
    #[arg(long, global = true)]
    pub search_lo: Option<f64>,
    /// Upper end of the delta search interval.
    #[arg(long, global = true)]
    pub search_hi: Option<f64>,
    /// Assert the expected trend and exit with status 1 if it does not hold.
    #[arg(long, global = true)]
    pub check: bool,
    /// Worker threads for Monte Carlo trials.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
}

impl Opts {
    /// Defaults, overlaid by the configuration file, overlaid by flags.
    pub fn run_config(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::parse(&std::fs::read_to_string(path)?)?,
            None => RunConfig::default(),
        };
        let numbers = [
            ("p_s_dbm", self.p_s_dbm),
            ("p_j_dbm", self.p_j_dbm),
            ("n0_dbm", self.n0_dbm),
            ("d_m", self.d_m),
            ("alpha", self.alpha),
            ("lambda_j", self.lambda_j),
            ("lambda_e", self.lambda_e),
            ("sigma", self.sigma),
            ("epsilon", self.epsilon),
            ("delta", self.delta),
            ("sim_radius_m", self.sim_radius_m),
            ("sweep_start", self.sweep_start),
            ("sweep_stop", self.sweep_stop),
        ];
        for (key, value) in numbers {
            if let Some(v) = value {
                cfg.set(key, &v.to_string())?;
            }
        }
        if let Some(v) = self.trials {
            cfg.sim_trials = v;
        }
        if let Some(v) = self.seed {
            cfg.sim_seed = v;
        }
        if let Some(v) = self.sweep_count {
            cfg.sweep_count = Some(v);
        }
        if let Some(v) = &self.sweep_var {
            cfg.set("sweep_var", v)?;
        }
        if let Some(v) = &self.sweep_scale {
            cfg.set("sweep_scale", v)?;
        }
        if let Some(v) = &self.out {
            cfg.out_path = Some(v.clone());
        }
        Ok(cfg)
    }

    pub fn extras(&self) -> Extras {
        let default = Extras::default();
        Extras {
            beta_b: self.beta_b,
            beta_e: self.beta_e,
            retention: self.retention,
            search: (
                self.search_lo.unwrap_or(default.search.0),
                self.search_hi.unwrap_or(default.search.1),
            ),
            check: self.check,
        }
    }
}

pub fn execute(command: Command, cfg: &RunConfig, extras: &Extras) -> Result<Report> {
    match command {
        Command::Analyze => commands::analyze(cfg),
        Command::Optimize => commands::optimize(cfg, extras),
        Command::Simulate => commands::simulate(cfg, extras),
        Command::Sweep => commands::sweep(cfg, extras),
        Command::Compare => commands::compare(cfg, extras),
    }
}

fn run_parsed(cli: &Cli) -> Result<bool> {
    let cfg = cli.opts.run_config()?;
    let extras = cli.opts.extras();
    let report = match cli.opts.threads {
        Some(0) => return Err(Error::Config("--threads must be at least 1".into())),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| execute(cli.command, &cfg, &extras))?,
        None => execute(cli.command, &cfg, &extras)?,
    };
    let csv = report.table.to_csv()?;
    match &cfg.out_path {
        Some(path) => std::fs::write(path, &csv)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&csv)?;
            out.flush()?;
        }
    }
    eprintln!("{}", report.summary);
    match report.check {
        Some(Err(reason)) => {
            eprintln!("check failed: {reason}");
            Ok(false)
        }
        Some(Ok(())) => {
            eprintln!("check passed");
            Ok(true)
        }
        None => Ok(true),
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, S>(args: I) -> u8
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run_parsed(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
