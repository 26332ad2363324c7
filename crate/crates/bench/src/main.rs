//! `altdec`: run decay-rate experiments, fit slopes, verify identities, pack samples.
//!
//! Exit codes: 0 ok, 1 runtime error, 2 verification failure, 3 bad config or arguments.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use altdec_bench::experiment::csv_string;
use altdec_bench::slopes::write_slopes_csv;
use altdec_bench::{fit_slopes, read_csv, run_experiment, verify_all, ExperimentConfig, RunOptions};
use altdec_core::bitcodec::{decode, Header};
use altdec_core::decimation::{DecimationPlan, Variant};
use altdec_core::sigma_delta::Alphabet;
use altdec_core::C64;
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "altdec", version, about = "Sigma-delta quantization with alternative decimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the decay-rate experiment and write the error CSV.
    Run {
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// desk or appendix-b
        #[arg(long)]
        preset: Option<String>,
        /// CSV path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides the seed in the config.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Fill wall_ms. Makes the output non-reproducible.
        #[arg(long)]
        timings: bool,
        /// Also fit slopes and write them here.
        #[arg(long)]
        slopes: Option<PathBuf>,
    },
    /// Fit log-log decay slopes from an error CSV.
    Slopes {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check every structural identity and numeric relation up to a frame size.
    Verify {
        #[arg(long, default_value_t = 24)]
        max_m: usize,
        /// JSON report path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also fail on the quoted closed forms.
        #[arg(long)]
        strict: bool,
    },
    /// Pack decimated samples (JSON) into the binary format.
    Encode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Unpack a binary stream back to JSON.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Other(String),
    Verification(String),
    Config(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Other(_) => 1,
            Failure::Verification(_) => 2,
            Failure::Config(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Other(m) | Failure::Verification(m) | Failure::Config(m) => m,
        }
    }
}

fn other(e: impl std::fmt::Display) -> Failure {
    Failure::Other(e.to_string())
}

fn config(e: impl std::fmt::Display) -> Failure {
    Failure::Config(e.to_string())
}

/// Samples and the parameters needed to pack them, as read by `encode` and written by `decode`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SampleFile {
    m: usize,
    rho: usize,
    r: usize,
    #[serde(rename = "L")]
    levels: u32,
    delta: f64,
    complex: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    variant: Option<String>,
    values: Vec<[f64; 2]>,
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| other(format!("{}: {e}", p.display()))),
        None => io::stdout().write_all(bytes).map_err(other),
    }
}

fn read_input(path: &Path) -> Result<Vec<u8>, Failure> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf).map_err(other)?;
        return Ok(buf);
    }
    fs::read(path).map_err(|e| other(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Run { config: path, preset, out, seed, jobs, timings, slopes } => {
            let mut cfg = match (path, preset) {
                (Some(p), _) => ExperimentConfig::load(&p).map_err(config)?,
                (None, Some(name)) => ExperimentConfig::preset(&name)
                    .ok_or_else(|| config(format!("unknown preset {name:?}; expected desk or appendix-b")))?,
                (None, None) => ExperimentConfig::desk(),
            };
            if let Some(s) = seed {
                cfg.seed = s;
            }
            if jobs == Some(0) {
                return Err(config("--jobs must be positive"));
            }
            let records = run_experiment(&cfg, RunOptions { jobs, timings });
            write_output(out.as_deref(), csv_string(&records).as_bytes())?;
            if let Some(p) = slopes {
                let fits = fit_slopes(&records).map_err(other)?;
                let file = fs::File::create(&p).map_err(|e| other(format!("{}: {e}", p.display())))?;
                write_slopes_csv(&fits, file).map_err(other)?;
            }
            Ok(())
        }
        Command::Slopes { input, out } => {
            let records = read_csv(&read_input(&input)?[..]).map_err(other)?;
            let fits = fit_slopes(&records).map_err(other)?;
            let mut buf = Vec::new();
            write_slopes_csv(&fits, &mut buf).map_err(other)?;
            write_output(out.as_deref(), &buf)
        }
        Command::Verify { max_m, out, strict } => {
            let report = verify_all(max_m);
            for c in &report.checks {
                let verdict = if c.passed { "ok" } else if c.quoted_form { "differs (quoted form)" } else { "FAILED" };
                eprintln!("{:<40} cases {:>7}  max dev {:.3e}  tol {:.0e}  {verdict}", c.name, c.cases, c.max_deviation, c.tolerance);
            }
            if let Some(p) = out {
                let json = serde_json::to_vec_pretty(&report).map_err(other)?;
                write_output(Some(&p), &json)?;
            }
            let ok = if strict { report.all_passed() } else { report.passed() };
            if ok {
                Ok(())
            } else {
                let names: Vec<&str> = report.failures().iter().map(|c| c.name.as_str()).collect();
                Err(Failure::Verification(format!("failed checks: {}", names.join(", "))))
            }
        }
        Command::Encode { input, out } => {
            let file: SampleFile = serde_json::from_slice(&read_input(&input)?).map_err(config)?;
            let variant = match file.variant.as_deref() {
                None | Some("alternative") => Variant::Alternative,
                Some("canonical") => Variant::Canonical,
                Some(v) => return Err(config(format!("unknown variant {v:?}"))),
            };
            let plan = DecimationPlan::new(file.m, file.rho, file.r, variant).map_err(config)?;
            if !(file.delta > 0.0 && file.delta.is_finite()) || file.levels == 0 {
                return Err(config("need delta > 0 and L > 0"));
            }
            let a = Alphabet::new(file.levels, file.delta, file.complex);
            let v: Vec<C64> = file.values.iter().map(|&[re, im]| C64::new(re, im)).collect();
            let bytes = altdec_core::bitcodec::encode(&v, &plan, &a).map_err(other)?;
            write_output(Some(&out), &bytes)
        }
        Command::Decode { input, out } => {
            let bytes = read_input(&input)?;
            let header = Header::parse(&bytes).map_err(other)?;
            let values = decode(&bytes).map_err(other)?;
            let file = SampleFile {
                m: header.m as usize,
                rho: header.rho as usize,
                r: header.r as usize,
                levels: header.levels,
                delta: header.delta,
                complex: header.complex_mode,
                variant: None,
                values: values.iter().map(|z| [z.re, z.im]).collect(),
            };
            let mut json = serde_json::to_vec_pretty(&file).map_err(other)?;
            json.push(b'\n');
            write_output(out.as_deref(), &json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(3),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("altdec: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
