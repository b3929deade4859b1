//! Solver configuration shared by all three iterations.

use std::sync::Arc;

use crate::array::RealArray;
use crate::error::{Error, Result};

/// Relaxation schedule `lambda_n in (0, 2)`.
///
/// A constant schedule automatically satisfies the divergence condition
/// `sum lambda_n (2 - lambda_n) = +inf`.
#[derive(Clone)]
pub enum Relaxation {
    Constant(f64),
    Schedule(Arc<dyn Fn(usize) -> f64 + Send + Sync>),
}

impl Relaxation {
    pub fn at(&self, n: usize) -> f64 {
        match self {
            Relaxation::Constant(l) => *l,
            Relaxation::Schedule(f) => f(n),
        }
    }
}

/// Optional prox-error injection: `errors(i, n)` is the perturbation
/// `a_{i,n}` added to the i-th proximal vector at iteration `n`.
/// Convergence requires summability of `lambda_n ||a_{i,n}||`.
pub type ErrorSeq = Arc<dyn Fn(usize, usize) -> Option<RealArray> + Send + Sync>;

#[derive(Clone)]
pub struct SolverConfig {
    pub gamma: f64,
    /// Weights `omega_i in (0, 1]` summing to one; `None` means uniform.
    pub weights: Option<Vec<f64>>,
    pub relaxation: Relaxation,
    pub max_iterations: usize,
    /// Stop when `||x_{n+1} - x_n|| / max(||x_n||, eps) <= step_tol`;
    /// zero disables early stopping (fixed iteration count).
    pub step_tol: f64,
    /// Evaluate and log the objective at each iterate when every potential
    /// can report one.
    pub log_objective: bool,
    pub errors: Option<ErrorSeq>,
}

impl SolverConfig {
    pub fn new(gamma: f64) -> Self {
        Self {
            gamma,
            weights: None,
            relaxation: Relaxation::Constant(1.5),
            max_iterations: 1000,
            step_tol: 1e-8,
            log_objective: true,
            errors: None,
        }
    }

    pub fn with_iterations(mut self, n: usize) -> Self {
        self.max_iterations = n;
        self
    }

    pub fn with_step_tol(mut self, tol: f64) -> Self {
        self.step_tol = tol;
        self
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Self {
        self.weights = Some(weights);
        self
    }

    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.relaxation = Relaxation::Constant(lambda);
        self
    }

    /// Fixed-iteration run (no early stop), the regime used by the
    /// experiments.
    pub fn fixed_iterations(gamma: f64, n: usize) -> Self {
        Self::new(gamma).with_iterations(n).with_step_tol(0.0)
    }

    /// Resolved weights for an `m`-term problem.
    pub fn resolve_weights(&self, m: usize) -> Result<Vec<f64>> {
        if self.gamma <= 0.0 || !self.gamma.is_finite() {
            return Err(Error::BadConfig(format!(
                "gamma must be positive, got {}",
                self.gamma
            )));
        }
        if m == 0 {
            return Err(Error::BadConfig("need at least one potential".into()));
        }
        let w = match &self.weights {
            None => vec![1.0 / m as f64; m],
            Some(w) => {
                if w.len() != m {
                    return Err(Error::BadConfig(format!(
                        "{} weights for {m} potentials",
                        w.len()
                    )));
                }
                w.clone()
            }
        };
        if w.iter().any(|&v| !(v > 0.0 && v <= 1.0)) {
            return Err(Error::BadConfig("weights must lie in (0, 1]".into()));
        }
        let sum: f64 = w.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::BadConfig(format!("weights sum to {sum}, not 1")));
        }
        Ok(w)
    }

    pub fn lambda_at(&self, n: usize) -> Result<f64> {
        let l = self.relaxation.at(n);
        if !(l > 0.0 && l < 2.0) {
            return Err(Error::BadConfig(format!(
                "relaxation lambda_{n} = {l} outside (0, 2)"
            )));
        }
        Ok(l)
    }

    pub(crate) fn error_at(&self, i: usize, n: usize) -> Option<RealArray> {
        self.errors.as_ref().and_then(|e| e(i, n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_weights_by_default() {
        let cfg = SolverConfig::new(0.5);
        assert_eq!(cfg.resolve_weights(4).unwrap(), vec![0.25; 4]);
    }

    #[test]
    fn invalid_weights_rejected() {
        let cfg = SolverConfig::new(1.0).with_weights(vec![0.6, 0.6]);
        assert!(cfg.resolve_weights(2).is_err());
        let cfg = SolverConfig::new(1.0).with_weights(vec![1.2, -0.2]);
        assert!(cfg.resolve_weights(2).is_err());
        let cfg = SolverConfig::new(-1.0);
        assert!(cfg.resolve_weights(2).is_err());
    }

    #[test]
    fn lambda_bounds_enforced() {
        let cfg = SolverConfig::new(1.0).with_lambda(2.0);
        assert!(cfg.lambda_at(0).is_err());
        let cfg = SolverConfig::new(1.0).with_lambda(1.999);
        assert!(cfg.lambda_at(0).is_ok());
    }

    #[test]
    fn relaxation_schedules_are_validated_per_iteration() {
        let mut cfg = SolverConfig::new(1.0);
        cfg.relaxation = Relaxation::Schedule(Arc::new(|n| if n < 3 { 1.8 } else { 2.5 }));
        assert!((cfg.lambda_at(2).unwrap() - 1.8).abs() < 1e-15);
        assert!(cfg.lambda_at(3).is_err());
    }
}
