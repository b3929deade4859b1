//! Prox of a quadratic data-fidelity term `f(x) = w ||Lx - z||^2`.
//!
//! Writing `c = 2 gamma w`, the prox solves the normal equation
//! `(Id + c L* L) p = x + c L* z`. Three routes:
//!
//! * `L = Id` — scalar formula `(x + c z) / (1 + c)`;
//! * circulant `L` — exact per-frequency solve
//!   `(X_k + c conj(H_k) Z_k) / (1 + c |H_k|^2)`;
//! * generic `L` — conjugate gradient on the (well-conditioned, SPD) normal
//!   equation.

use std::sync::Arc;

use num_complex::Complex64;

use crate::array::RealArray;
use crate::error::{Error, Result};
use crate::fft::{dft, idft_complex};
use crate::linop::{CirculantOp, LinearOp};
use crate::prox::ProxFn;

enum Route {
    Identity,
    Circulant {
        op: CirculantOp,
        z_spectrum: Vec<Complex64>,
    },
    Generic {
        op: Arc<dyn LinearOp>,
        max_iterations: usize,
    },
}

pub struct QuadraticProx {
    route: Route,
    z: RealArray,
    weight: f64,
}

impl QuadraticProx {
    /// `f(x) = weight ||x - z||^2`.
    pub fn identity(z: RealArray, weight: f64) -> Self {
        assert!(weight > 0.0);
        Self {
            route: Route::Identity,
            z,
            weight,
        }
    }

    /// `f(x) = weight ||Lx - z||^2` with circulant `L`: exact frequency-domain
    /// solve.
    pub fn circulant(op: CirculantOp, z: RealArray, weight: f64) -> Self {
        assert!(weight > 0.0);
        let z_spectrum = dft(&z).data().to_vec();
        Self {
            route: Route::Circulant { op, z_spectrum },
            z,
            weight,
        }
    }

    /// `f(x) = weight ||Lx - z||^2` for an arbitrary operator, solved by CG.
    pub fn generic(op: Arc<dyn LinearOp>, z: RealArray, weight: f64) -> Self {
        assert!(weight > 0.0);
        Self {
            route: Route::Generic {
                op,
                max_iterations: 500,
            },
            z,
            weight,
        }
    }

    /// Cap on CG iterations for the generic route; exceeding it surfaces as
    /// an error (a sign of ill-conditioning).
    pub fn with_cg_iterations(mut self, n: usize) -> Self {
        if let Route::Generic {
            max_iterations, ..
        } = &mut self.route
        {
            *max_iterations = n;
        }
        self
    }

    fn residual_value(&self, x: &RealArray) -> f64 {
        let lx = match &self.route {
            Route::Identity => x.clone(),
            Route::Circulant { op, .. } => op.apply(x),
            Route::Generic { op, .. } => op.apply(x),
        };
        lx.sub(&self.z).norm_sq()
    }
}

impl ProxFn for QuadraticProx {
    fn prox(&self, x: &RealArray, gamma: f64) -> Result<RealArray> {
        let c = 2.0 * gamma * self.weight;
        match &self.route {
            Route::Identity => {
                let mut out = x.clone();
                out.axpy(c, &self.z);
                out.scale_assign(1.0 / (1.0 + c));
                Ok(out)
            }
            Route::Circulant { op, z_spectrum } => {
                let mut xs = dft(x).data().to_vec();
                for ((v, h), zk) in xs.iter_mut().zip(op.spectrum()).zip(z_spectrum) {
                    *v = (*v + c * h.conj() * zk) / (1.0 + c * h.norm_sqr());
                }
                idft_complex(&mut xs, x.shape());
                let data = xs.iter().map(|v| v.re).collect();
                RealArray::new(x.shape(), data)
            }
            Route::Generic { op, max_iterations } => {
                let mut rhs = x.clone();
                rhs.axpy(c, &op.adjoint(&self.z));
                let matvec = |v: &RealArray| {
                    let mut out = v.clone();
                    out.axpy(c, &op.adjoint(&op.apply(v)));
                    out
                };
                conjugate_gradient(matvec, &rhs, x.clone(), *max_iterations)
            }
        }
    }

    fn objective(&self, x: &RealArray) -> Option<f64> {
        Some(self.weight * self.residual_value(x))
    }
}

/// Standard CG for SPD systems, relative residual `1e-12`.
fn conjugate_gradient(
    matvec: impl Fn(&RealArray) -> RealArray,
    rhs: &RealArray,
    mut x: RealArray,
    max_iterations: usize,
) -> Result<RealArray> {
    let tol = 1e-12 * rhs.norm().max(1e-30);
    let mut r = rhs.sub(&matvec(&x));
    let mut p = r.clone();
    let mut rs = r.norm_sq();
    if rs.sqrt() <= tol {
        return Ok(x);
    }
    for _ in 0..max_iterations {
        let ap = matvec(&p);
        let alpha = rs / p.dot(&ap);
        x.axpy(alpha, &p);
        r.axpy(-alpha, &ap);
        let rs_next = r.norm_sq();
        if rs_next.sqrt() <= tol {
            return Ok(x);
        }
        let beta = rs_next / rs;
        rs = rs_next;
        let mut p_next = r.clone();
        p_next.axpy(beta, &p);
        p = p_next;
    }
    Err(Error::CgStalled(max_iterations))
}
