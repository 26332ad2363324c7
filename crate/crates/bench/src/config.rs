//! Experiment configuration, its JSON form and the two built-in presets.

use altdec_core::frames::{FrameSpec, HarmonicFrameSpec, UgfSpec};
use altdec_core::numerics::C64;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Alternative,
    Canonical,
    Plain,
}

impl Scheme {
    pub fn name(self) -> &'static str {
        match self {
            Scheme::Alternative => "alternative",
            Scheme::Canonical => "canonical",
            Scheme::Plain => "plain",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "alternative" => Some(Scheme::Alternative),
            "canonical" => Some(Scheme::Canonical),
            "plain" => Some(Scheme::Plain),
            _ => None,
        }
    }
}

/// Frame family. The frame size m = ρη is filled in per cell.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FrameKind {
    /// E_{l,j} = exp(−2πi(l+1)(j+1)/m)/√k, 0-based l, j.
    #[default]
    AppendixB,
    Harmonic { freqs: Vec<i64> },
    /// Eigenvalues of Ω and the base vector's coordinates in its eigenbasis, as [re, im].
    Ugf { eigenvalues: Vec<f64>, coeffs: Vec<[f64; 2]> },
}

impl FrameKind {
    pub fn spec(&self, m: usize, k: usize) -> FrameSpec {
        match self {
            FrameKind::AppendixB => FrameSpec::AppendixB { m, k },
            FrameKind::Harmonic { freqs } => FrameSpec::Harmonic(HarmonicFrameSpec::new(m, freqs.clone())),
            FrameKind::Ugf { eigenvalues, coeffs } => FrameSpec::Ugf(UgfSpec {
                m,
                eigenvalues: eigenvalues.clone(),
                base_coeffs: coeffs.iter().map(|&[re, im]| C64::new(re, im)).collect(),
            }),
        }
    }
}

fn default_norm() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub k: usize,
    pub eta: usize,
    pub rho_list: Vec<usize>,
    pub r_list: Vec<usize>,
    pub schemes: Vec<Scheme>,
    pub trials: usize,
    pub seed: u64,
    pub delta: f64,
    #[serde(rename = "L", alias = "l")]
    pub levels: u32,
    #[serde(default = "default_norm")]
    pub signal_norm: f64,
    #[serde(default)]
    pub frame_kind: FrameKind,
}

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot parse config: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &std::path::Path) -> Result<Self, ConfigError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError::Invalid(msg));
        if self.k == 0 || self.eta == 0 {
            return bad("k and eta must be positive".into());
        }
        if self.rho_list.is_empty() || self.rho_list.contains(&0) {
            return bad("rho_list must be nonempty and positive".into());
        }
        if self.r_list.is_empty() || self.r_list.contains(&0) {
            return bad("r_list must be nonempty and positive".into());
        }
        if self.schemes.is_empty() {
            return bad("schemes must be nonempty".into());
        }
        if !(self.delta > 0.0 && self.delta.is_finite()) {
            return bad(format!("delta must be positive, got {}", self.delta));
        }
        if self.levels == 0 {
            return bad("L must be positive".into());
        }
        if !(self.signal_norm > 0.0 && self.signal_norm.is_finite()) {
            return bad(format!("signal_norm must be positive, got {}", self.signal_norm));
        }
        match &self.frame_kind {
            FrameKind::AppendixB => {}
            FrameKind::Harmonic { freqs } => {
                if freqs.len() != self.k {
                    return bad(format!("harmonic frame has {} frequencies but k = {}", freqs.len(), self.k));
                }
            }
            FrameKind::Ugf { eigenvalues, coeffs } => {
                if eigenvalues.len() != self.k || coeffs.len() != self.k {
                    return bad(format!("ugf frame needs k = {} eigenvalues and coefficients", self.k));
                }
            }
        }
        Ok(())
    }

    /// k = 8, η = 12, ρ ∈ {2, 4, 8, 16, 32}, r = 1..5, ten trials.
    pub fn desk() -> Self {
        Self {
            k: 8,
            eta: 12,
            rho_list: vec![2, 4, 8, 16, 32],
            r_list: (1..=5).collect(),
            schemes: vec![Scheme::Alternative, Scheme::Canonical, Scheme::Plain],
            trials: 10,
            seed: 2019,
            delta: 0.5,
            levels: 100,
            signal_norm: 1.0,
            frame_kind: FrameKind::AppendixB,
        }
    }

    /// The full-size grid: k = 55, η = 65, ρ doubling from 2 to 64.
    pub fn appendix_b() -> Self {
        Self { k: 55, eta: 65, rho_list: vec![2, 4, 8, 16, 32, 64], ..Self::desk() }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "desk" => Some(Self::desk()),
            "appendix-b" | "appendix_b" => Some(Self::appendix_b()),
            _ => None,
        }
    }
}
