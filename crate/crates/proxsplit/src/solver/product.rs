//! Douglas-Rachford over a weighted product space, against the diagonal.
//!
//! Endow `H^m` with `<<x, y>> = sum_i omega_i <x_i, y_i>`. The diagonal
//! `D = {(x, ..., x)}` is a closed subspace whose projector averages the
//! components with the weights, and the separable function
//! `f(x) = sum_i f_i(x_i)` has the componentwise prox
//! `prox_{gamma f}(x) = (prox_{gamma f_i / omega_i}(x_i))_i` in this metric.
//! Minimizing `f` over `D` is the original sum problem, and the specialized
//! iteration below keeps `x_n = P_D(y_n)` at every step, so the averaged
//! sequence itself converges to a minimizer — no final prox needed, unlike
//! plain Douglas-Rachford.

use std::time::Instant;

use crate::array::RealArray;
use crate::error::{Error, Result};
use crate::prox::ProxFn;
use crate::solver::log::{IterationLog, IterationRecord};
use crate::solver::ppxa::{sum_objectives, weighted_average, SolverStateView};
use crate::solver::{SolveStatus, SolverConfig, STEP_NORM_FLOOR};

pub struct SubspaceDrSolution {
    /// The common component of the diagonal iterate (the minimizer estimate).
    pub x: RealArray,
    pub log: IterationLog,
    pub status: SolveStatus,
    /// Largest observed `||x_n - P_D(y_n)||` over the run; an exactness
    /// check of the specialized recursion, expected at rounding level.
    pub invariant_defect: f64,
}

pub fn subspace_dr(
    fs: &[&dyn ProxFn],
    cfg: &SolverConfig,
    y0: &[RealArray],
) -> Result<SubspaceDrSolution> {
    subspace_dr_observed(fs, cfg, y0, &mut |_| {})
}

/// Iteration on the product space, with the same observer protocol as
/// [`crate::solver::ppxa_observed`]: the view exposes the product components
/// as `ys`, the proximal components as `ps`, and the diagonal component of
/// their projection as `p_bar`.
pub fn subspace_dr_observed(
    fs: &[&dyn ProxFn],
    cfg: &SolverConfig,
    y0: &[RealArray],
    observer: &mut dyn FnMut(&SolverStateView<'_>),
) -> Result<SubspaceDrSolution> {
    let m = fs.len();
    let weights = cfg.resolve_weights(m)?;
    assert_eq!(y0.len(), m, "one product component per potential");

    let mut ys: Vec<RealArray> = y0.to_vec();
    // x_0 = P_D y_0 (diagonal component)
    let mut x = weighted_average(&weights, &ys);
    let mut log = IterationLog::new();
    let mut status = SolveStatus::IterationCap;
    let mut invariant_defect: f64 = 0.0;

    for n in 0..cfg.max_iterations {
        let clock = Instant::now();
        let lambda = cfg.lambda_at(n)?;

        // invariant: the tracked x_n is the diagonal projection of y_n
        let projected = weighted_average(&weights, &ys);
        invariant_defect = invariant_defect.max(projected.max_abs_diff(&x));

        // y_{n+1/2} = prox_{gamma f}(y_n) + a_n, componentwise in the
        // weighted metric
        let mut y_half = Vec::with_capacity(m);
        let mut prox_millis = Vec::with_capacity(m);
        for i in 0..m {
            let t = Instant::now();
            let mut p =
                fs[i]
                    .prox(&ys[i], cfg.gamma / weights[i])
                    .map_err(|e| Error::ProxFailed {
                        index: i,
                        source: Box::new(e),
                    })?;
            prox_millis.push(t.elapsed().as_secs_f64() * 1e3);
            if let Some(a) = cfg.error_at(i, n) {
                p = p.add(&a);
            }
            y_half.push(p);
        }

        // p_n = P_D y_{n+1/2}
        let p_bar = weighted_average(&weights, &y_half);

        observer(&SolverStateView {
            n,
            x: &x,
            ys: &ys,
            ps: &y_half,
            p_bar: &p_bar,
        });

        // y_{n+1} = y_n + lambda (2 p_n - x_n - y_{n+1/2})
        let mut base = p_bar.scale(2.0);
        base.axpy(-1.0, &x);
        for (y, p) in ys.iter_mut().zip(&y_half) {
            y.axpy(lambda, &base.sub(p));
        }

        // x_{n+1} = x_n + lambda (p_n - x_n)
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

    Ok(SubspaceDrSolution {
        x,
        log,
        status,
        invariant_defect,
    })
}
