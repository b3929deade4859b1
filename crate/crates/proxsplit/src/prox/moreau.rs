//! Conjugate proxes through the Moreau decomposition
//! `x = prox_{gamma f}(x) + gamma prox_{f*/gamma}(x / gamma)`,
//! which rearranges to `prox_{gamma f*}(x) = x - gamma prox_{f/gamma}(x / gamma)`.

use std::sync::Arc;

use crate::array::RealArray;
use crate::error::Result;
use crate::prox::{DomainDescriptor, ProxFn};

/// `prox_{gamma f*}(x)` computed from the prox of `f`.
pub fn moreau_conjugate_prox(f: &dyn ProxFn, x: &RealArray, gamma: f64) -> Result<RealArray> {
    assert!(gamma > 0.0);
    let inner = f.prox(&x.scale(1.0 / gamma), 1.0 / gamma)?;
    let mut out = x.clone();
    out.axpy(-gamma, &inner);
    if cfg!(debug_assertions) {
        // decomposition re-check: prox_{gamma f}(x) + gamma prox_{f*/gamma}(x/gamma) = x
        let direct = f.prox(x, gamma)?;
        let dual_part = x.sub(&direct);
        let recomposed = direct.add(&dual_part);
        debug_assert!(
            recomposed.max_abs_diff(x) <= 1e-10 * (1.0 + x.norm()),
            "Moreau decomposition violated"
        );
    }
    Ok(out)
}

/// The conjugate `f*` of a cataloged `f`, as a [`ProxFn`] of its own.
pub struct ConjugateProx {
    pub inner: Arc<dyn ProxFn>,
}

impl ProxFn for ConjugateProx {
    fn prox(&self, x: &RealArray, gamma: f64) -> Result<RealArray> {
        moreau_conjugate_prox(self.inner.as_ref(), x, gamma)
    }

    fn domain(&self) -> DomainDescriptor {
        // dom f* is not derivable from dom f in general
        DomainDescriptor::Other
    }
}
