//! The parallel proximal algorithm.
//!
//! One iteration evaluates every potential's prox at its own auxiliary
//! point — scaled by `gamma / omega_i` — averages the proximal vectors, and
//! relaxes:
//!
//! ```text
//! p_{i,n} = prox_{gamma f_i / omega_i}(y_{i,n}) + a_{i,n}     (parallel in i)
//! p_n     = sum_i omega_i p_{i,n}
//! y_{i,n+1} = y_{i,n} + lambda_n (2 p_n - x_n - p_{i,n})
//! x_{n+1}   = x_n + lambda_n (p_n - x_n)
//! ```
//!
//! This is exactly the diagonal-subspace Douglas-Rachford iteration of
//! [`crate::solver::subspace_dr`] written componentwise, so `x_n` converges
//! to a minimizer of the sum. With vanishing error terms the iterates keep
//! `x_n = sum_i omega_i y_{i,n}` exactly.
//!
//! The proximal evaluations run concurrently; the averaging reduction is a
//! fixed-order sequential sum, so results are reproducible bit for bit.

use std::time::Instant;

use rayon::prelude::*;

use crate::array::RealArray;
use crate::error::{Error, Result};
use crate::prox::ProxFn;
use crate::solver::log::{IterationLog, IterationRecord};
use crate::solver::{SolveStatus, SolverConfig, STEP_NORM_FLOOR};

/// The iterate bundle of one iteration.
#[derive(Debug, Clone)]
pub struct SolverState {
    pub n: usize,
    pub x: RealArray,
    pub ys: Vec<RealArray>,
    pub ps: Vec<RealArray>,
    pub p_bar: RealArray,
}

/// Borrowed view of the state mid-iteration, passed to observers.
pub struct SolverStateView<'a> {
    pub n: usize,
    pub x: &'a RealArray,
    pub ys: &'a [RealArray],
    pub ps: &'a [RealArray],
    pub p_bar: &'a RealArray,
}

pub struct PpxaSolution {
    pub x: RealArray,
    pub state: SolverState,
    pub log: IterationLog,
    pub status: SolveStatus,
}

pub fn ppxa(fs: &[&dyn ProxFn], cfg: &SolverConfig, y0: &[RealArray]) -> Result<PpxaSolution> {
    ppxa_observed(fs, cfg, y0, &mut |_| {})
}

/// [`ppxa`] with a per-iteration observer, called after the proximal
/// vectors and their average are formed and before the updates.
pub fn ppxa_observed(
    fs: &[&dyn ProxFn],
    cfg: &SolverConfig,
    y0: &[RealArray],
    observer: &mut dyn FnMut(&SolverStateView<'_>),
) -> Result<PpxaSolution> {
    let m = fs.len();
    let weights = cfg.resolve_weights(m)?;
    assert_eq!(y0.len(), m, "one initial auxiliary point per potential");

    let mut ys: Vec<RealArray> = y0.to_vec();
    let mut x = weighted_average(&weights, &ys);
    let mut log = IterationLog::new();
    let mut status = SolveStatus::IterationCap;
    let mut ps: Vec<RealArray> = Vec::new();
    let mut p_bar = x.clone();

    for n in 0..cfg.max_iterations {
        let clock = Instant::now();
        let lambda = cfg.lambda_at(n)?;

        let evals: Vec<(std::result::Result<RealArray, Error>, f64)> = (0..m)
            .into_par_iter()
            .map(|i| {
                let t = Instant::now();
                let r = fs[i].prox(&ys[i], cfg.gamma / weights[i]);
                (r, t.elapsed().as_secs_f64() * 1e3)
            })
            .collect();

        let mut prox_millis = Vec::with_capacity(m);
        ps.clear();
        for (i, (r, ms)) in evals.into_iter().enumerate() {
            let mut p = r.map_err(|e| Error::ProxFailed {
                index: i,
                source: Box::new(e),
            })?;
            if let Some(a) = cfg.error_at(i, n) {
                p = p.add(&a);
            }
            prox_millis.push(ms);
            ps.push(p);
        }

        p_bar = weighted_average(&weights, &ps);

        observer(&SolverStateView {
            n,
            x: &x,
            ys: &ys,
            ps: &ps,
            p_bar: &p_bar,
        });

        // base = 2 p_n - x_n, shared by every y-update
        let mut base = p_bar.scale(2.0);
        base.axpy(-1.0, &x);
        for (y, p) in ys.iter_mut().zip(&ps) {
            y.axpy(lambda, &base.sub(p));
        }

        let x_norm = x.norm();
        let step = p_bar.sub(&x);
        x.axpy(lambda, &step);
        let residual = lambda * step.norm() / x_norm.max(STEP_NORM_FLOOR);

        let objective = if cfg.log_objective {
            sum_objectives(fs, &x)
        } else {
            None
        };

        log.push(IterationRecord {
            n,
            objective,
            residual,
            lambda,
            millis: clock.elapsed().as_secs_f64() * 1e3,
            prox_millis,
            fixed_point_residual: None,
        });

        if cfg.step_tol > 0.0 && residual <= cfg.step_tol {
            status = SolveStatus::Converged { iterations: n + 1 };
            break;
        }
    }

    let state = SolverState {
        n: log.len(),
        x: x.clone(),
        ys,
        ps,
        p_bar,
    };
    Ok(PpxaSolution {
        x,
        state,
        log,
        status,
    })
}

pub(crate) fn weighted_average(weights: &[f64], xs: &[RealArray]) -> RealArray {
    let mut acc = RealArray::zeros(xs[0].shape());
    for (w, x) in weights.iter().zip(xs) {
        acc.axpy(*w, x);
    }
    acc
}

pub(crate) fn sum_objectives(fs: &[&dyn ProxFn], x: &RealArray) -> Option<f64> {
    let mut total = 0.0;
    for f in fs {
        total += f.objective(x)?;
    }
    Some(total)
}
