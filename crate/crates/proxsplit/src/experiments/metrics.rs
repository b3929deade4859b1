//! Quality metrics reported by the experiments.

use serde::Serialize;

use crate::array::RealArray;

/// Blurred-signal-to-noise ratio `20 log10(||L x|| / ||w||)`.
pub fn bsnr_db(blurred_clean: &RealArray, noise: &RealArray) -> f64 {
    20.0 * (blurred_clean.norm() / noise.norm()).log10()
}

/// Relative quadratic error `20 log10(||u - truth|| / ||truth||)`;
/// more negative is better.
pub fn rel_err_db(u: &RealArray, truth: &RealArray) -> f64 {
    20.0 * (u.sub(truth).norm() / truth.norm()).log10()
}

#[derive(Debug, Clone, Serialize)]
pub struct Metrics {
    pub experiment: u8,
    pub iterations: usize,
    pub final_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub objective: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bsnr_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_err_input_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_err_restored_db: Option<f64>,
    /// Distances to the five pulse-design sets (experiment 3).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constraint_distances: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopband_max_magnitude: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stopband_attenuation_db: Option<f64>,
}

impl Metrics {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metrics serialize")
    }
}
