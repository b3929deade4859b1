//! Douglas-Rachford iteration for `minimize f1 + f2`.
//!
//! The iteration
//!
//! ```text
//! y_{n+1/2} = prox_{gamma f2}(y_n) + a_n
//! y_{n+1}   = y_n + lambda_n (prox_{gamma f1}(2 y_{n+1/2} - y_n) + b_n - y_{n+1/2})
//! ```
//!
//! drives `y_n` to a fixed point of
//! `T = 2 prox_{gamma f1}(2 prox_{gamma f2} - Id) - 2 prox_{gamma f2} + Id`.
//! The minimizer is obtained *indirectly*: it is `prox_{gamma f2}` of the
//! limit, not the limit itself, and [`DrSolution`] keeps the two apart.

use std::time::Instant;

use crate::array::RealArray;
use crate::error::Result;
use crate::prox::ProxFn;
use crate::solver::log::{IterationLog, IterationRecord};
use crate::solver::{SolveStatus, SolverConfig, STEP_NORM_FLOOR};

pub struct DrSolution {
    /// Weak limit estimate of the governing sequence `y_n`.
    pub y: RealArray,
    /// `prox_{gamma f2}(y)`: the actual minimizer estimate.
    pub minimizer: RealArray,
    pub log: IterationLog,
    pub status: SolveStatus,
}

/// Error-injection convention: `errors(0, n)` is `b_n` (added to the
/// `prox_{gamma f1}` output), `errors(1, n)` is `a_n` (added to the
/// `prox_{gamma f2}` output).
pub fn douglas_rachford(
    f1: &dyn ProxFn,
    f2: &dyn ProxFn,
    cfg: &SolverConfig,
    y0: &RealArray,
) -> Result<DrSolution> {
    cfg.resolve_weights(2)?;
    let gamma = cfg.gamma;
    let mut y = y0.clone();
    let mut log = IterationLog::new();
    let mut status = SolveStatus::IterationCap;

    for n in 0..cfg.max_iterations {
        let clock = Instant::now();
        let lambda = cfg.lambda_at(n)?;

        let t2 = Instant::now();
        let mut y_half = f2.prox(&y, gamma)?;
        let f2_ms = t2.elapsed().as_secs_f64() * 1e3;
        if let Some(a) = cfg.error_at(1, n) {
            y_half = y_half.add(&a);
        }

        let mut reflected = y_half.scale(2.0);
        reflected.axpy(-1.0, &y);
        let t1 = Instant::now();
        let mut q = f1.prox(&reflected, gamma)?;
        let f1_ms = t1.elapsed().as_secs_f64() * 1e3;
        if let Some(b) = cfg.error_at(0, n) {
            q = q.add(&b);
        }

        // T y - y = 2 (q - y_half) when the error terms vanish
        let drift = q.sub(&y_half);
        let fixed_point_residual = 2.0 * drift.norm();

        let y_norm = y.norm();
        y.axpy(lambda, &drift);
        let residual = lambda * drift.norm() / y_norm.max(STEP_NORM_FLOOR);

        let objective = if cfg.log_objective {
            let candidate = f2.prox(&y, gamma)?;
            match (f1.objective(&candidate), f2.objective(&candidate)) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            }
        } else {
            None
        };

        log.push(IterationRecord {
            n,
            objective,
            residual,
            lambda,
            millis: clock.elapsed().as_secs_f64() * 1e3,
            prox_millis: vec![f1_ms, f2_ms],
            fixed_point_residual: Some(fixed_point_residual),
        });

        if cfg.step_tol > 0.0 && residual <= cfg.step_tol {
            status = SolveStatus::Converged { iterations: n + 1 };
            break;
        }
    }

    let minimizer = f2.prox(&y, gamma)?;
    Ok(DrSolution {
        y,
        minimizer,
        log,
        status,
    })
}
