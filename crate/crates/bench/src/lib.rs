//! Experiment harness around `altdec-core`: configs, seeded signals, the decay-rate
//! pipeline, slope fits and the verification report.

pub mod config;
pub mod experiment;
pub mod instances;
pub mod rng;
pub mod slopes;
pub mod verify;

pub use config::{ConfigError, ExperimentConfig, FrameKind, Scheme};
pub use experiment::{read_csv, run_experiment, write_csv, ErrorRecord, RunOptions};
pub use slopes::{fit_slopes, SlopeError, SlopeFit};
pub use verify::{verify_all, verify_with, VerifyReport};
