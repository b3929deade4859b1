//! Config-driven reconstruction experiments and their file I/O.
//!
//! Each runner assembles its potentials, calls the parallel solver for a
//! fixed number of iterations, and reports metrics plus the full iteration
//! log. Runs are deterministic under a fixed seed: two invocations produce
//! bitwise-identical outputs.

mod config;
mod exp1;
mod exp2;
mod exp3;
mod metrics;
mod pgm;
mod synth;

pub use config::{ExperimentConfig, CONFIG_VERSION};
pub use exp1::{low_freq_band_mask, run_experiment1};
pub use exp2::run_experiment2;
pub use exp3::{null_grid_mask, run_experiment3, stopband_mask, zero_time_mask};
pub use metrics::{bsnr_db, rel_err_db, Metrics};
pub use pgm::{read_pgm, write_pgm};
pub use synth::{cartoon_scene, gaussian_noise, perturb_phases, vignetted_scene, DegradationModel};

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::array::RealArray;
use crate::error::{Error, Result};
use crate::solver::{IterationLog, Qualification};

pub struct ExperimentArtifacts {
    pub truth: Option<RealArray>,
    pub observed: Option<RealArray>,
    /// Restored image (experiments 1, 2) or designed pulse (experiment 3).
    pub restored: RealArray,
    /// `(t_ms, amplitude)` rows for pulse.csv.
    pub pulse: Option<Vec<(f64, f64)>>,
    /// `(freq_hz, magnitude_db)` rows for spectrum.csv.
    pub spectrum: Option<Vec<(f64, f64)>>,
    pub metrics: Metrics,
    pub log: IterationLog,
    pub qualification: Qualification,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentArtifacts> {
    match cfg.experiment {
        1 => run_experiment1(cfg),
        2 => run_experiment2(cfg),
        3 => run_experiment3(cfg),
        other => Err(Error::Config(format!("unknown experiment {other}"))),
    }
}

fn io_err(context: &str) -> impl Fn(std::io::Error) -> Error + '_ {
    move |e| Error::Io {
        context: context.to_string(),
        source: e,
    }
}

fn write_xy_csv(path: &Path, header: &str, rows: &[(f64, f64)]) -> Result<()> {
    let mut out = fs::File::create(path).map_err(io_err("creating csv"))?;
    writeln!(out, "{header}").map_err(io_err("writing csv"))?;
    for (a, b) in rows {
        writeln!(out, "{a},{b}").map_err(io_err("writing csv"))?;
    }
    Ok(())
}

/// Write the artifact set into `dir`: `restored.pgm` (or `pulse.csv` +
/// `spectrum.csv`), `log.csv`, `metrics.json`, plus `original.pgm` and
/// `degraded.pgm` when the experiment has them.
pub fn write_artifacts(dir: &Path, artifacts: &ExperimentArtifacts) -> Result<()> {
    fs::create_dir_all(dir).map_err(io_err("creating output directory"))?;

    if artifacts.metrics.experiment == 3 {
        if let Some(rows) = &artifacts.pulse {
            write_xy_csv(&dir.join("pulse.csv"), "t_ms,amplitude", rows)?;
        }
        if let Some(rows) = &artifacts.spectrum {
            write_xy_csv(&dir.join("spectrum.csv"), "freq_hz,magnitude_db", rows)?;
        }
    } else {
        let f = fs::File::create(dir.join("restored.pgm")).map_err(io_err("creating pgm"))?;
        write_pgm(f, &artifacts.restored)?;
        if let Some(truth) = &artifacts.truth {
            let f = fs::File::create(dir.join("original.pgm")).map_err(io_err("creating pgm"))?;
            write_pgm(f, truth)?;
        }
        if let Some(observed) = &artifacts.observed {
            let f = fs::File::create(dir.join("degraded.pgm")).map_err(io_err("creating pgm"))?;
            write_pgm(f, observed)?;
        }
    }

    let log_file = fs::File::create(dir.join("log.csv")).map_err(io_err("creating log"))?;
    artifacts.log.write_csv(log_file)?;

    fs::write(dir.join("metrics.json"), artifacts.metrics.to_json())
        .map_err(io_err("writing metrics"))?;
    Ok(())
}
