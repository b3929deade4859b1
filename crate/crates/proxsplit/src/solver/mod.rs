//! Splitting solvers.
//!
//! [`douglas_rachford`] minimizes `f1 + f2` from two proximity operators.
//! [`subspace_dr`] is its specialization to minimizing a separable function
//! over the diagonal of a weighted product space, and [`ppxa`] is that same
//! iteration transcribed back to the base space — one prox per potential,
//! all evaluated in parallel within an iteration. The two transcriptions
//! produce identical iterates, which the test suite checks to `1e-10`.

mod advisory;
mod config;
mod douglas_rachford;
mod log;
mod ppxa;
mod product;

pub use advisory::{qualification_advisory, Qualification};
pub use config::{ErrorSeq, Relaxation, SolverConfig};
pub use douglas_rachford::{douglas_rachford, DrSolution};
pub use log::{IterationLog, IterationRecord};
pub use ppxa::{ppxa, ppxa_observed, PpxaSolution, SolverState, SolverStateView};
pub use product::{subspace_dr, subspace_dr_observed, SubspaceDrSolution};

/// How a run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    /// The relative step dropped below the configured tolerance.
    Converged { iterations: usize },
    /// The iteration cap was reached; the last iterate is returned.
    IterationCap,
}

impl SolveStatus {
    pub fn converged(&self) -> bool {
        matches!(self, SolveStatus::Converged { .. })
    }
}

/// Floor in the relative-step denominator `||x_{n+1} - x_n|| / max(||x_n||, eps)`.
pub(crate) const STEP_NORM_FLOOR: f64 = 1e-12;
