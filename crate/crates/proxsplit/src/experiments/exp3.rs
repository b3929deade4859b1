//! Experiment 3: pulse-shape design under spectral and time-domain
//! specifications.
//!
//! Three hard constraints — spectral nulls on the 50 Hz grid and at DC,
//! a stop-band magnitude cap beyond 300 Hz, and an energy budget — are
//! enforced as indicators. The two time-domain specifications (mid-point
//! symmetry with unit center, prescribed support with periodic zero
//! crossings) are mutually inconsistent with the hard sets, so they enter
//! as powers of distance functions. Five potentials in all.

use std::sync::Arc;

use crate::array::{RealArray, Shape};
use crate::error::Result;
use crate::experiments::config::ExperimentConfig;
use crate::experiments::metrics::Metrics;
use crate::experiments::ExperimentArtifacts;
use crate::fft::dft;
use crate::prox::{
    DistancePowerProx, DomainDescriptor, EnergyBall, FourierMagnitude, FourierZero, IndicatorProx,
    Projector, ProxFn, SymmetryMidpoint, TimeMask,
};
use crate::solver::{ppxa, qualification_advisory, SolverConfig};

/// Folded bin frequency in Hz.
fn bin_freq_hz(k: usize, n: usize, fs: f64) -> f64 {
    k.min(n - k) as f64 * fs / n as f64
}

/// Bins whose frequency is DC or an exact multiple of 50 Hz.
pub fn null_grid_mask(n: usize, fs: f64) -> Vec<bool> {
    (0..n)
        .map(|k| {
            let f = bin_freq_hz(k, n, fs);
            let cycles = f / 50.0;
            f == 0.0 || (cycles - cycles.round()).abs() < 1e-9
        })
        .collect()
}

/// Bins strictly beyond 300 Hz.
pub fn stopband_mask(n: usize, fs: f64) -> Vec<bool> {
    (0..n).map(|k| bin_freq_hz(k, n, fs) > 300.0).collect()
}

/// Samples that must vanish: outside the 50 ms support around the mid-point,
/// plus the 3.125 ms zero-crossing grid inside it.
pub fn zero_time_mask(n: usize, fs: f64) -> Vec<bool> {
    let half_support = (0.025 * fs).round() as usize; // 64 samples at 2560 Hz
    let step = (0.003125 * fs).round() as usize; // 8 samples at 2560 Hz
    assert!(
        n >= 2 * half_support && step >= 1,
        "signal must be at least as long as the 50 ms support"
    );
    let hi_center = n / 2;
    let lo_center = n / 2 - 1;
    let lo_edge = lo_center + 1 - half_support;
    let hi_edge = hi_center + half_support - 1;
    let mut mask = vec![false; n];
    for (k, m) in mask.iter_mut().enumerate() {
        *m = k < lo_edge || k > hi_edge;
    }
    let mut j = step;
    while hi_center + j <= hi_edge {
        mask[hi_center + j] = true;
        mask[lo_center - j] = true;
        j += step;
    }
    mask
}

pub fn run_experiment3(cfg: &ExperimentConfig) -> Result<ExperimentArtifacts> {
    let n = cfg.need(cfg.samples, "samples")?;
    let fs = cfg.need(cfg.sample_rate_hz, "sample_rate_hz")?;
    let rho = cfg.need(cfg.rho, "rho")?;
    let mu = cfg.need(cfg.energy_bound, "energy_bound")?;
    let p4 = cfg.need(cfg.p4, "p4")?;
    let p5 = cfg.need(cfg.p5, "p5")?;
    let half_support = (0.025 * fs).round() as usize;
    if n < 2 * half_support {
        return Err(crate::error::Error::Config(format!(
            "{n} samples at {fs} Hz cannot hold the 50 ms pulse support"
        )));
    }

    let shape = Shape::One(n);
    let nulls = FourierZero::new(shape, null_grid_mask(n, fs))?;
    let stop_mask = stopband_mask(n, fs);
    let stopband = FourierMagnitude::new(shape, stop_mask.clone(), rho)?;
    let ball = EnergyBall { mu };
    let symmetry = Arc::new(SymmetryMidpoint);
    let support = Arc::new(TimeMask {
        mask: zero_time_mask(n, fs),
    });

    let f1 = IndicatorProx::new(&nulls, DomainDescriptor::Affine);
    let f2 = IndicatorProx::new(&stopband, DomainDescriptor::Other);
    let f3 = IndicatorProx::new(&ball, DomainDescriptor::BoundedConvex);
    let f4 = DistancePowerProx::new(symmetry.clone(), 1.0, p4);
    let f5 = DistancePowerProx::new(support.clone(), 1.0, p5);
    let fs_list: Vec<&dyn ProxFn> = vec![&f1, &f2, &f3, &f4, &f5];
    let domains: Vec<_> = fs_list.iter().map(|f| f.domain()).collect();
    // zero is interior to the cap and ball constraints and lies in the nulls
    let qualification = qualification_advisory(&domains, true);

    let solver_cfg =
        SolverConfig::fixed_iterations(cfg.gamma, cfg.iterations).with_lambda(cfg.lambda);
    let y0 = vec![RealArray::zeros(shape); fs_list.len()];
    let sol = ppxa(&fs_list, &solver_cfg, &y0)?;
    let pulse = sol.x;

    let spectrum = dft(&pulse);
    let stop_max = spectrum
        .data()
        .iter()
        .zip(&stop_mask)
        .filter(|(_, &m)| m)
        .map(|(c, _)| c.norm())
        .fold(0.0f64, f64::max);
    let peak = spectrum
        .data()
        .iter()
        .map(|c| c.norm())
        .fold(0.0f64, f64::max);
    let distances = vec![
        nulls.distance(&pulse),
        stopband.distance(&pulse),
        ball.distance(&pulse),
        symmetry.distance(&pulse),
        support.distance(&pulse),
    ];

    let metrics = Metrics {
        experiment: 3,
        iterations: sol.log.len(),
        final_residual: sol.log.last().map(|r| r.residual).unwrap_or(0.0),
        objective: sol
            .log
            .last()
            .and_then(|r| r.objective)
            .filter(|v| v.is_finite()),
        bsnr_db: None,
        rel_err_input_db: None,
        rel_err_restored_db: None,
        constraint_distances: Some(distances),
        stopband_max_magnitude: Some(stop_max),
        stopband_attenuation_db: Some(20.0 * (stop_max.max(1e-300) / peak.max(1e-300)).log10()),
    };

    // time and one-sided spectrum traces for plotting
    let dt_ms = 1000.0 / fs;
    let pulse_rows: Vec<(f64, f64)> = pulse
        .data()
        .iter()
        .enumerate()
        .map(|(k, &v)| (k as f64 * dt_ms, v))
        .collect();
    let spec_rows: Vec<(f64, f64)> = (0..=n / 2)
        .map(|k| {
            let mag = spectrum.data()[k].norm().max(1e-12);
            (k as f64 * fs / n as f64, 20.0 * mag.log10())
        })
        .collect();

    Ok(ExperimentArtifacts {
        truth: None,
        observed: None,
        restored: pulse,
        pulse: Some(pulse_rows),
        spectrum: Some(spec_rows),
        metrics,
        log: sol.log,
        qualification,
    })
}
