//! JSON experiment configuration.
//!
//! One flat schema covers the three experiments; fields irrelevant to an
//! experiment are simply absent. `version` pins the schema. Required common
//! fields (`gamma`, `iterations`) surface as serde "missing field" errors;
//! per-experiment requirements are checked on access and name the field.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const CONFIG_VERSION: u32 = 1;

fn default_lambda() -> f64 {
    1.5
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub version: u32,
    /// 1 = constrained deblurring, 2 = frame + TV deblurring, 3 = pulse design.
    pub experiment: u8,
    pub gamma: f64,
    pub iterations: usize,
    #[serde(default = "default_lambda")]
    pub lambda: f64,
    /// Seed of the ChaCha8 noise generator; runs are bitwise reproducible.
    #[serde(default)]
    pub seed: u64,

    // image experiments
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blur: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub noise_sigma: Option<f64>,

    // experiment 1 (alpha doubles as the l1 weight in experiment 2)
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phase_perturbation: Option<f64>,

    // experiment 2
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<usize>,
    #[serde(default)]
    pub ablate_tv: bool,
    #[serde(default)]
    pub ablate_l1: bool,

    // experiment 3
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sample_rate_hz: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub energy_bound: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p4: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p5: Option<f64>,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: ExperimentConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if cfg.version != CONFIG_VERSION {
            return Err(Error::Config(format!(
                "unsupported config version {} (expected {CONFIG_VERSION})",
                cfg.version
            )));
        }
        if !(1..=3).contains(&cfg.experiment) {
            return Err(Error::Config(format!(
                "experiment must be 1, 2 or 3, got {}",
                cfg.experiment
            )));
        }
        if cfg.gamma <= 0.0 {
            return Err(Error::Config("gamma must be positive".into()));
        }
        Ok(cfg)
    }

    pub(crate) fn need<T: Copy>(&self, field: Option<T>, name: &str) -> Result<T> {
        field.ok_or_else(|| {
            Error::Config(format!(
                "experiment {} requires field `{name}`",
                self.experiment
            ))
        })
    }

    /// Desk-scale constrained deblurring.
    pub fn exp1_desk() -> Self {
        Self {
            version: CONFIG_VERSION,
            experiment: 1,
            gamma: 0.25,
            iterations: 300,
            lambda: 1.5,
            seed: 7,
            size: Some(32),
            blur: Some(3),
            noise_sigma: Some(2.0),
            alpha: Some(10.0),
            p: Some(1.5),
            phase_fraction: Some(0.8),
            phase_perturbation: Some(0.05),
            beta: None,
            levels: None,
            ablate_tv: false,
            ablate_l1: false,
            samples: None,
            sample_rate_hz: None,
            rho: None,
            energy_bound: None,
            p4: None,
            p5: None,
        }
    }

    /// Desk-scale frame-domain deblurring with l1 + TV regularization.
    pub fn exp2_desk() -> Self {
        Self {
            version: CONFIG_VERSION,
            experiment: 2,
            gamma: 150.0,
            iterations: 350,
            lambda: 1.5,
            seed: 11,
            size: Some(64),
            blur: Some(5),
            noise_sigma: Some(12.0),
            alpha: Some(0.4),
            p: None,
            phase_fraction: None,
            phase_perturbation: None,
            beta: Some(1.5),
            levels: Some(4),
            ablate_tv: false,
            ablate_l1: false,
            samples: None,
            sample_rate_hz: None,
            rho: None,
            energy_bound: None,
            p4: None,
            p5: None,
        }
    }

    /// The pulse-design run at full scale: N = 1024 samples at 2560 Hz,
    /// gamma = 1/5, 100 iterations, rho = 10^(-3/2), mu = 2.
    pub fn exp3_full() -> Self {
        Self {
            version: CONFIG_VERSION,
            experiment: 3,
            gamma: 0.2,
            iterations: 100,
            lambda: 1.5,
            seed: 0,
            size: None,
            blur: None,
            noise_sigma: None,
            alpha: None,
            p: None,
            phase_fraction: None,
            phase_perturbation: None,
            beta: None,
            levels: None,
            ablate_tv: false,
            ablate_l1: false,
            samples: Some(1024),
            sample_rate_hz: Some(2560.0),
            rho: Some(10f64.powf(-1.5)),
            energy_bound: Some(2.0),
            p4: Some(2.0),
            p5: Some(2.0),
        }
    }
}
