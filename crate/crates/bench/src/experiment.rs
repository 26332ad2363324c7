//! The end-to-end pipeline: draw signals, quantize, decimate, reconstruct, record.

use std::time::Instant;

use altdec_core::bitcodec::{self, Header};
use altdec_core::decimation::{decimate, DecimationPlan, Variant};
use altdec_core::frames::FrameMatrix;
use altdec_core::numerics::{norm2, sub_vec, ComplexVector};
use altdec_core::reconstruction::{build_dual, error_bound, DualSpec};
use altdec_core::sigma_delta::{sigma_delta, Alphabet, QuantizationRun};
use rayon::prelude::*;

use crate::config::{ExperimentConfig, Scheme};
use crate::rng::{cell_stream, signal_draw};

pub const CSV_HEADER: [&str; 12] = [
    "scheme",
    "r",
    "rho",
    "m",
    "trial_count",
    "max_err",
    "mean_err",
    "u_inf_max",
    "bound_value",
    "bits_used",
    "status",
    "wall_ms",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorRecord {
    pub scheme: Scheme,
    pub r: usize,
    pub rho: usize,
    pub m: usize,
    pub trial_count: usize,
    /// max over trials of ‖x − x̃‖₂.
    pub max_err: Option<f64>,
    pub mean_err: Option<f64>,
    pub u_inf_max: Option<f64>,
    /// Closed-form bound at u_inf_max, alternative scheme only, when its hypotheses hold.
    pub bound_value: Option<f64>,
    pub bits_used: Option<u64>,
    /// "ok", "overloaded", or "error: ..." for a cell that could not run.
    pub status: String,
    pub wall_ms: f64,
}

impl ErrorRecord {
    pub fn is_usable(&self) -> bool {
        !self.status.starts_with("error") && self.max_err.is_some()
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses rayon's default.
    pub jobs: Option<usize>,
    /// Record wall-clock time per record. Off by default so output is reproducible.
    pub timings: bool,
}

/// Runs every (r, ρ, scheme) cell. Output order is r, then ρ, then scheme, each as
/// listed in the config, independent of the number of threads.
pub fn run_experiment(cfg: &ExperimentConfig, opts: RunOptions) -> Vec<ErrorRecord> {
    if cfg.trials == 0 {
        return Vec::new();
    }
    let cells: Vec<(usize, usize)> = cfg.r_list.iter().flat_map(|&r| cfg.rho_list.iter().map(move |&rho| (r, rho))).collect();
    let work = || cells.par_iter().map(|&(r, rho)| run_cell(cfg, r, rho, opts.timings)).collect::<Vec<_>>();
    let per_cell = match opts.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().expect("thread pool").install(work),
        None => work(),
    };
    per_cell.into_iter().flatten().collect()
}

fn failed(cfg: &ExperimentConfig, r: usize, rho: usize, why: String) -> Vec<ErrorRecord> {
    cfg.schemes
        .iter()
        .map(|&scheme| ErrorRecord {
            scheme,
            r,
            rho,
            m: rho * cfg.eta,
            trial_count: cfg.trials,
            max_err: None,
            mean_err: None,
            u_inf_max: None,
            bound_value: None,
            bits_used: None,
            status: format!("error: {why}"),
            wall_ms: 0.0,
        })
        .collect()
}

struct Trial {
    x: ComplexVector,
    run: QuantizationRun,
}

/// One (r, ρ) cell. All schemes see the same signals and the same quantized q.
pub fn run_cell(cfg: &ExperimentConfig, r: usize, rho: usize, timings: bool) -> Vec<ErrorRecord> {
    let m = rho * cfg.eta;
    let spec = cfg.frame_kind.spec(m, cfg.k);
    let frame = match spec.build() {
        Ok(f) => f,
        Err(e) => return failed(cfg, r, rho, e.to_string()),
    };
    let a = Alphabet::new(cfg.levels, cfg.delta, true);
    let mut stream = cell_stream(cfg.seed, r, rho);
    let mut trials = Vec::with_capacity(cfg.trials);
    for _ in 0..cfg.trials {
        let x = signal_draw(&mut stream, cfg.k, cfg.signal_norm);
        let y = frame.analyze(&x).expect("k columns");
        match sigma_delta(&y, r, &a) {
            Ok(run) => trials.push(Trial { x, run }),
            Err(e) => return failed(cfg, r, rho, e.to_string()),
        }
    }
    let u_inf_max = trials.iter().map(|t| t.run.u_inf).fold(0.0, f64::max);
    let overloaded = trials.iter().any(|t| t.run.overloaded);

    cfg.schemes
        .iter()
        .map(|&scheme| {
            let clock = Instant::now();
            let mut rec = match scheme_errors(&frame, scheme, r, rho, &trials, &a) {
                Ok((errs, bits)) => ErrorRecord {
                    scheme,
                    r,
                    rho,
                    m,
                    trial_count: trials.len(),
                    max_err: Some(errs.iter().copied().fold(0.0, f64::max)),
                    mean_err: Some(errs.iter().sum::<f64>() / errs.len() as f64),
                    u_inf_max: Some(u_inf_max),
                    bound_value: None,
                    bits_used: bits,
                    status: if overloaded { "overloaded".into() } else { "ok".into() },
                    wall_ms: 0.0,
                },
                Err(e) => failed(cfg, r, rho, e.to_string()).swap_remove(0),
            };
            rec.scheme = scheme;
            if scheme == Scheme::Alternative && rec.is_usable() {
                let plan = DecimationPlan::alternative(m, rho, r).expect("valid plan");
                rec.bound_value = error_bound(&spec, &plan, u_inf_max).ok().map(|b| b.bound_value);
            }
            if timings {
                rec.wall_ms = clock.elapsed().as_secs_f64() * 1e3;
            }
            rec
        })
        .collect()
}

fn scheme_errors(
    frame: &FrameMatrix,
    scheme: Scheme,
    r: usize,
    rho: usize,
    trials: &[Trial],
    a: &Alphabet,
) -> altdec_core::Result<(Vec<f64>, Option<u64>)> {
    let m = frame.m();
    let c = if a.complex_mode { 2 } else { 1 };
    let (dual, plan) = match scheme {
        Scheme::Plain => (build_dual(frame, &DualSpec::Plain)?, None),
        Scheme::Alternative | Scheme::Canonical => {
            let variant = if scheme == Scheme::Alternative { Variant::Alternative } else { Variant::Canonical };
            let plan = DecimationPlan::new(m, rho, r, variant)?;
            (build_dual(frame, &DualSpec::Decimated(plan))?, Some(plan))
        }
    };
    let mut errs = Vec::with_capacity(trials.len());
    for t in trials {
        let x_hat = dual.reconstruct_quantized(&t.run.q)?;
        errs.push(norm2(&sub_vec(&t.x, &x_hat)));
    }
    let bits = match (plan, trials.first()) {
        (Some(plan), Some(t)) => {
            let v = decimate(&t.run.q, &plan)?;
            let bytes = bitcodec::encode(&v, &plan, a)?;
            Some(Header::parse(&bytes)?.payload_bits())
        }
        // undecimated q: every component is one of 2L levels
        (None, _) => Some(m as u64 * c * (2 * a.levels as u64).next_power_of_two().trailing_zeros() as u64),
        (Some(_), None) => None,
    };
    Ok((errs, bits))
}

fn fmt_f(v: f64) -> String {
    format!("{v:.16e}")
}

fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt_f).unwrap_or_default()
}

/// Writes records as CSV with a header row and 17 significant digits per float.
pub fn write_csv<W: std::io::Write>(records: &[ErrorRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for rec in records {
        w.write_record([
            rec.scheme.name().to_string(),
            rec.r.to_string(),
            rec.rho.to_string(),
            rec.m.to_string(),
            rec.trial_count.to_string(),
            fmt_opt(rec.max_err),
            fmt_opt(rec.mean_err),
            fmt_opt(rec.u_inf_max),
            fmt_opt(rec.bound_value),
            rec.bits_used.map(|b| b.to_string()).unwrap_or_default(),
            rec.status.clone(),
            fmt_f(rec.wall_ms),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(records: &[ErrorRecord]) -> String {
    let mut buf = Vec::new();
    write_csv(records, &mut buf).expect("in-memory write");
    String::from_utf8(buf).expect("ascii")
}

#[derive(Debug, thiserror::Error)]
pub enum CsvError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error("unexpected header: {0}")]
    Header(String),
    #[error("line {line}: bad {field} value {value:?}")]
    Field { line: usize, field: &'static str, value: String },
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<Vec<ErrorRecord>, CsvError> {
    let mut rd = csv::Reader::from_reader(input);
    let header = rd.headers()?.clone();
    if header.iter().collect::<Vec<_>>() != CSV_HEADER {
        return Err(CsvError::Header(header.iter().collect::<Vec<_>>().join(",")));
    }
    let mut out = Vec::new();
    for (i, row) in rd.records().enumerate() {
        let row = row?;
        let line = i + 2;
        let bad = |field: &'static str, value: &str| CsvError::Field { line, field, value: value.to_string() };
        let int = |idx: usize, field: &'static str| row[idx].parse::<usize>().map_err(|_| bad(field, &row[idx]));
        let opt = |idx: usize, field: &'static str| -> Result<Option<f64>, CsvError> {
            if row[idx].is_empty() {
                Ok(None)
            } else {
                row[idx].parse::<f64>().map(Some).map_err(|_| bad(field, &row[idx]))
            }
        };
        out.push(ErrorRecord {
            scheme: Scheme::parse(&row[0]).ok_or_else(|| bad("scheme", &row[0]))?,
            r: int(1, "r")?,
            rho: int(2, "rho")?,
            m: int(3, "m")?,
            trial_count: int(4, "trial_count")?,
            max_err: opt(5, "max_err")?,
            mean_err: opt(6, "mean_err")?,
            u_inf_max: opt(7, "u_inf_max")?,
            bound_value: opt(8, "bound_value")?,
            bits_used: if row[9].is_empty() { None } else { Some(row[9].parse().map_err(|_| bad("bits_used", &row[9]))?) },
            status: row[10].to_string(),
            wall_ms: row[11].parse().map_err(|_| bad("wall_ms", &row[11]))?,
        });
    }
    Ok(out)
}
