//! Proximity operators.
//!
//! For a proper lower-semicontinuous convex `f`, the proximity operator maps
//! `x` to the unique minimizer of `f(y) + ||x - y||^2 / 2`. Every potential
//! handled by the solvers is packaged as a [`ProxFn`]: given `(x, gamma)` it
//! returns `prox_{gamma f}(x)`.
//!
//! Scaling convention used throughout: solvers call `prox(x, gamma / omega)`
//! and each operator folds `gamma` into its own parameters internally (soft
//! thresholds become `gamma * alpha`, quadratic weights become
//! `2 * gamma * weight`, and so on). The per-operator docs state the fold.

mod basic;
mod distance;
mod moreau;
mod projectors;
mod quadratic;
mod scalar;
mod semiorthogonal;
mod tv;

pub use basic::{L1Prox, SeparableProx, ZeroProx};
pub use distance::{
    nu_from_closed_form_three_halves, nu_from_scalar_solve, DistancePowerProx, PhiDistanceProx,
};
pub use moreau::{moreau_conjugate_prox, ConjugateProx};
pub use projectors::{
    BoxMask, EnergyBall, FourierMagnitude, FourierPhase, FourierZero, IndicatorProx,
    MeanHyperplane, Projector, SymmetryMidpoint, TimeMask,
};
pub use quadratic::QuadraticProx;
pub use scalar::{soft_threshold, ScalarConvex, ScaledAbs, ScaledPower, ZeroScalar};
pub use semiorthogonal::SemiOrthogonalProx;
pub use tv::{tv_block_shrink, tv_pair_coupling, TvFrameProx};

use crate::array::RealArray;
use crate::error::Result;

/// Membership tolerance used when an indicator contributes to a logged
/// objective value.
pub const INDICATOR_TOL: f64 = 1e-9;

/// Rough shape of a potential's domain, consumed by the qualification
/// advisory.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainDescriptor {
    Full,
    Affine,
    BoundedConvex,
    Other,
}

/// A convex potential exposed through its proximity operator.
pub trait ProxFn: Send + Sync {
    /// `prox_{gamma f}(x)` for `gamma > 0`.
    fn prox(&self, x: &RealArray, gamma: f64) -> Result<RealArray>;

    fn domain(&self) -> DomainDescriptor {
        DomainDescriptor::Full
    }

    /// `f(x)` as an extended real, when computable. Indicators report
    /// `0` or `+inf` via a membership test at [`INDICATOR_TOL`].
    fn objective(&self, _x: &RealArray) -> Option<f64> {
        None
    }
}

impl<T: ProxFn + ?Sized> ProxFn for &T {
    fn prox(&self, x: &RealArray, gamma: f64) -> Result<RealArray> {
        (**self).prox(x, gamma)
    }
    fn domain(&self) -> DomainDescriptor {
        (**self).domain()
    }
    fn objective(&self, x: &RealArray) -> Option<f64> {
        (**self).objective(x)
    }
}

impl<T: ProxFn + ?Sized> ProxFn for std::sync::Arc<T> {
    fn prox(&self, x: &RealArray, gamma: f64) -> Result<RealArray> {
        (**self).prox(x, gamma)
    }
    fn domain(&self) -> DomainDescriptor {
        (**self).domain()
    }
    fn objective(&self, x: &RealArray) -> Option<f64> {
        (**self).objective(x)
    }
}
