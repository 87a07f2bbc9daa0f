//! Command-line front end: argument model, subcommand dispatch and emitters.

pub mod config;
mod output;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::frames::{self, DEFAULT_SUPERFRAME_INDEX};
use crate::rrc;
use crate::sim::{self, ScenarioConfig};

pub use config::{emit_config, parse_config, parse_field_survey, FieldSurvey};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;
pub const EXIT_UNMAPPED_BAND: i32 = 5;
pub const EXIT_IO: i32 = 6;

const EXIT_CODES_HELP: &str = "\
Exit codes:
  0  success
  2  usage error (bad flags or arguments)
  3  config error (unknown/missing/out-of-range keys)
  4  domain error (invalid numeric input to a model)
  5  frequency outside every band of an exposure standard
  6  I/O error

Errors are printed as a single line `error[<kind>]: <message>`.";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    JsonLines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DuplexArg {
    Fdd,
    Tdd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, PartialEq, Subcommand)]
pub enum Command {
    /// Run a full scenario and emit per-slot traces plus summary metrics.
    Run {
        /// Scenario config (alternative to --config).
        #[arg(value_name = "CONFIG")]
        file: Option<PathBuf>,
    },
    /// Outage probability versus mean SNR for AM and TR networks.
    Outage {
        #[arg(value_name = "CONFIG")]
        file: Option<PathBuf>,
        /// Comma-separated mean SNR points in dB.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Option<Vec<f64>>,
    },
    /// Dump frame layouts.
    Frames {
        #[arg(long, default_value_t = 0)]
        mu: u8,
        #[arg(long, value_enum, default_value_t = DuplexArg::Fdd)]
        duplex: DuplexArg,
        #[arg(long, value_enum, default_value_t = Switch::Off)]
        tr: Switch,
        /// TDD subframe pattern (D, S, U; X marks the superframe).
        #[arg(long, default_value = "DSUUU-DSUUU")]
        pattern: String,
        /// Subframe that becomes the superframe when the pattern has no X.
        #[arg(long, default_value_t = DEFAULT_SUPERFRAME_INDEX)]
        superframe: usize,
    },
    /// Print the RRC transition table and reachability report.
    RrcCheck,
    /// Exposure report for a scenario, or exposure ratios for a field survey.
    Exposure {
        #[arg(value_name = "CONFIG")]
        file: Option<PathBuf>,
        /// Field survey file (standards + E-field samples).
        #[arg(long)]
        fields: Option<PathBuf>,
    },
}

/// Everything a single invocation needs.
#[derive(Debug, Clone, PartialEq, Parser)]
#[command(name = "trsim", version, about = "TR-mode cellular link simulator", after_help = EXIT_CODES_HELP)]
pub struct RunManifest {
    /// Scenario config file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
    /// Overrides the scenario seed.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Config(_) => EXIT_CONFIG,
        Error::Domain(_) => EXIT_DOMAIN,
        Error::UnmappedBand { .. } => EXIT_UNMAPPED_BAND,
        Error::Io(_) => EXIT_IO,
    }
}

impl RunManifest {
    fn config_path(&self, positional: &Option<PathBuf>) -> Result<PathBuf> {
        positional
            .clone()
            .or_else(|| self.config.clone())
            .ok_or_else(|| Error::Config(vec![crate::error::FieldError::new(None, "--config", "no config file given")]))
    }

    fn load_config(&self, positional: &Option<PathBuf>) -> Result<ScenarioConfig> {
        let path = self.config_path(positional)?;
        let text = fs::read_to_string(&path)?;
        let mut cfg = parse_config(&text)?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        Ok(cfg)
    }
}

/// Default mean SNR sweep for the `outage` subcommand, 0 to 40 dB. Lower
/// points saturate both curves at 1.0 in f64 once dozens of interferers add up.
pub fn default_outage_points() -> Vec<f64> {
    (0..=8).map(|i| 5.0 * i as f64).collect()
}

/// Produces the subcommand's output text without writing it anywhere.
pub fn render(m: &RunManifest) -> Result<String> {
    let fmt = m.format;
    match &m.command {
        Command::Run { file } => {
            let cfg = m.load_config(file)?;
            let result = sim::run_scenario(&cfg)?;
            Ok(output::run(&cfg, &result, fmt))
        }
        Command::Outage { file, points } => {
            let cfg = m.load_config(file)?;
            let points = points.clone().unwrap_or_else(default_outage_points);
            let curve = sim::outage_curve(&cfg, &points)?;
            Ok(output::outage(&curve, fmt))
        }
        Command::Frames {
            mu,
            duplex,
            tr,
            pattern,
            superframe,
        } => {
            let num = frames::make_numerology(*mu)?;
            let tr_active = *tr == Switch::On;
            let built = match duplex {
                DuplexArg::Fdd => {
                    let (dl, ul) = frames::build_fdd_pair(num, tr_active);
                    vec![dl, ul]
                }
                DuplexArg::Tdd => {
                    let p = frames::parse_tdd_pattern(pattern, *superframe)?;
                    vec![frames::build_tdd_frame(num, &p, tr_active)?]
                }
            };
            Ok(output::frames(&built, fmt))
        }
        Command::RrcCheck => Ok(output::rrc(&rrc::check_reachability(), fmt)),
        Command::Exposure { file, fields } => match fields {
            Some(path) => {
                let survey = parse_field_survey(&fs::read_to_string(path)?)?;
                let rows = crate::exposure::exposure_ratio_table(&survey.samples, &survey.standards)?;
                Ok(output::exposure_table(&rows, fmt))
            }
            None => {
                let cfg = m.load_config(file)?;
                let report = sim::scenario_exposure(&cfg)?;
                Ok(output::exposure_report(&cfg, &report, fmt))
            }
        },
    }
}

/// Runs the subcommand and writes its output to `--out` (or stdout).
pub fn dispatch(m: &RunManifest) -> Result<()> {
    let text = render(m)?;
    match &m.out {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Parses `args`, dispatches, reports errors; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let manifest = match RunManifest::try_parse_from(args) {
        Ok(m) => m,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_OK;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("error[usage]: {first}");
            return EXIT_USAGE;
        }
    };
    match dispatch(&manifest) {
        Ok(()) => EXIT_OK,
        // A closed downstream pipe (e.g. `| head`) is not a failure.
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            eprintln!("error[{}]: {}", e.kind(), e.to_string().replace('\n', " "));
            exit_code(&e)
        }
    }
}
