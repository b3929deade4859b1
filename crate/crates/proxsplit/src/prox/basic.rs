//! Zero, weighted l1, and orthonormal-basis separable operators.

use std::sync::Arc;

use crate::array::RealArray;
use crate::error::{Error, Result};
use crate::prox::scalar::{soft_threshold, ScalarConvex};
use crate::prox::ProxFn;

/// `f = 0`; prox is the identity.
pub struct ZeroProx;

impl ProxFn for ZeroProx {
    fn prox(&self, x: &RealArray, _gamma: f64) -> Result<RealArray> {
        Ok(x.clone())
    }
    fn objective(&self, _x: &RealArray) -> Option<f64> {
        Some(0.0)
    }
}

/// `f(x) = alpha ||x||_1`; prox is the entrywise soft threshold at
/// `gamma * alpha`.
pub struct L1Prox {
    pub alpha: f64,
}

impl L1Prox {
    pub fn new(alpha: f64) -> Self {
        assert!(alpha > 0.0);
        Self { alpha }
    }
}

impl ProxFn for L1Prox {
    fn prox(&self, x: &RealArray, gamma: f64) -> Result<RealArray> {
        let t = gamma * self.alpha;
        Ok(x.map(|v| soft_threshold(v, t)))
    }
    fn objective(&self, x: &RealArray) -> Option<f64> {
        Some(self.alpha * x.data().iter().map(|v| v.abs()).sum::<f64>())
    }
}

/// `f(x) = sum_k phi_k(<x, e_k>)` over an orthonormal family `(e_k)`.
///
/// The prox acts coordinate-by-coordinate in the family: coordinates are
/// replaced by their scalar proxes, the orthogonal complement is untouched.
pub struct SeparableProx {
    basis: Vec<RealArray>,
    scalars: Vec<Arc<dyn ScalarConvex>>,
}

impl SeparableProx {
    /// Checks orthonormality of the family once, to `1e-10`.
    pub fn new(basis: Vec<RealArray>, scalars: Vec<Arc<dyn ScalarConvex>>) -> Result<Self> {
        assert_eq!(
            basis.len(),
            scalars.len(),
            "one scalar function per basis element"
        );
        let mut defect: f64 = 0.0;
        for (i, ei) in basis.iter().enumerate() {
            for (j, ej) in basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                defect = defect.max((ei.dot(ej) - target).abs());
            }
        }
        if defect > 1e-10 {
            return Err(Error::NonOrthonormalBasis { defect });
        }
        Ok(Self { basis, scalars })
    }
}

impl ProxFn for SeparableProx {
    fn prox(&self, x: &RealArray, gamma: f64) -> Result<RealArray> {
        let mut out = x.clone();
        for (e, phi) in self.basis.iter().zip(&self.scalars) {
            let c = x.dot(e);
            out.axpy(phi.prox(c, gamma) - c, e);
        }
        Ok(out)
    }

    fn objective(&self, x: &RealArray) -> Option<f64> {
        Some(
            self.basis
                .iter()
                .zip(&self.scalars)
                .map(|(e, phi)| phi.value(x.dot(e)))
                .sum(),
        )
    }
}
