//! Projectors onto the constraint sets of the experiments.
//!
//! Each projector is the prox of the corresponding indicator function and is
//! validated in the test suites through the variational characterization of
//! projections: `p = P_C(x)` iff `p` is in `C` and `<y - p, x - p> <= 0` for
//! every `y` in `C`.
//!
//! Spectral sets act per frequency bin; their masks must be
//! conjugate-symmetric (bin `k` paired with `-k mod N` per axis) so the
//! projected signal stays real.

use num_complex::Complex64;

use crate::array::{RealArray, Shape};
use crate::error::{Error, Result};
use crate::fft::{dft, idft};
use crate::prox::{DomainDescriptor, ProxFn, INDICATOR_TOL};

pub trait Projector: Send + Sync {
    fn project(&self, x: &RealArray) -> RealArray;

    fn is_member(&self, x: &RealArray, tol: f64) -> bool {
        self.distance(x) <= tol
    }

    fn distance(&self, x: &RealArray) -> f64 {
        x.sub(&self.project(x)).norm()
    }
}

impl<T: Projector + ?Sized> Projector for &T {
    fn project(&self, x: &RealArray) -> RealArray {
        (**self).project(x)
    }
    fn is_member(&self, x: &RealArray, tol: f64) -> bool {
        (**self).is_member(x, tol)
    }
    fn distance(&self, x: &RealArray) -> f64 {
        (**self).distance(x)
    }
}

impl<T: Projector + ?Sized> Projector for std::sync::Arc<T> {
    fn project(&self, x: &RealArray) -> RealArray {
        (**self).project(x)
    }
    fn is_member(&self, x: &RealArray, tol: f64) -> bool {
        (**self).is_member(x, tol)
    }
    fn distance(&self, x: &RealArray) -> f64 {
        (**self).distance(x)
    }
}

/// An indicator function: prox is the projection for every `gamma`.
pub struct IndicatorProx<P> {
    pub set: P,
    pub domain: DomainDescriptor,
}

impl<P: Projector> IndicatorProx<P> {
    pub fn new(set: P, domain: DomainDescriptor) -> Self {
        Self { set, domain }
    }
}

impl<P: Projector> ProxFn for IndicatorProx<P> {
    fn prox(&self, x: &RealArray, _gamma: f64) -> Result<RealArray> {
        Ok(self.set.project(x))
    }
    fn domain(&self) -> DomainDescriptor {
        self.domain
    }
    fn objective(&self, x: &RealArray) -> Option<f64> {
        Some(if self.set.is_member(x, INDICATOR_TOL) {
            0.0
        } else {
            f64::INFINITY
        })
    }
}

/// Pixel range box intersected with a hard zero mask:
/// clamp to `[lo, hi]` everywhere, force `0` on the masked coordinates.
pub struct BoxMask {
    pub lo: f64,
    pub hi: f64,
    pub zero_mask: Option<Vec<bool>>,
}

impl BoxMask {
    pub fn new(lo: f64, hi: f64, zero_mask: Option<Vec<bool>>) -> Result<Self> {
        if !(lo <= hi) {
            return Err(Error::BadParameter(format!("empty box [{lo}, {hi}]")));
        }
        if zero_mask.is_some() && !(lo <= 0.0 && 0.0 <= hi) {
            return Err(Error::BadParameter(
                "zero mask requires 0 inside the box".into(),
            ));
        }
        Ok(Self { lo, hi, zero_mask })
    }

    fn masked(&self, i: usize) -> bool {
        self.zero_mask.as_ref().is_some_and(|m| m[i])
    }
}

impl Projector for BoxMask {
    fn project(&self, x: &RealArray) -> RealArray {
        let mut out = x.clone();
        for (i, v) in out.data_mut().iter_mut().enumerate() {
            *v = if self.masked(i) {
                0.0
            } else {
                v.clamp(self.lo, self.hi)
            };
        }
        out
    }
}

/// Affine constraint fixing the mean: `<x, 1> = len * mu`.
pub struct MeanHyperplane {
    pub mu: f64,
}

impl Projector for MeanHyperplane {
    fn project(&self, x: &RealArray) -> RealArray {
        let shift = x.sum() / x.len() as f64 - self.mu;
        x.map(|v| v - shift)
    }

    fn distance(&self, x: &RealArray) -> f64 {
        let n = x.len() as f64;
        (x.sum() - n * self.mu).abs() / n.sqrt()
    }
}

fn validate_hermitian_mask(shape: Shape, mask: &[bool]) -> Result<()> {
    if mask.len() != shape.len() {
        return Err(Error::ShapeMismatch {
            expected: shape.len(),
            got: mask.len(),
        });
    }
    let probe =
        crate::array::Spectrum::new(shape, vec![Complex64::new(0.0, 0.0); shape.len()], false)
            .expect("zero spectrum");
    for k in 0..mask.len() {
        if mask[k] != mask[probe.conjugate_index(k)] {
            return Err(Error::NonHermitianMask);
        }
    }
    Ok(())
}

/// Phase constraint: for each masked frequency, the DFT coefficient must lie
/// on the ray with the prescribed phase.
///
/// Per masked bin the projection keeps the component along the ray when it is
/// nonnegative and collapses to the ray origin otherwise — the exact
/// projection of a point onto a half-line.
pub struct FourierPhase {
    shape: Shape,
    mask: Vec<bool>,
    phases: Vec<f64>,
}

impl FourierPhase {
    pub fn new(shape: Shape, mask: Vec<bool>, phases: Vec<f64>) -> Result<Self> {
        validate_hermitian_mask(shape, &mask)?;
        if phases.len() != mask.len() {
            return Err(Error::ShapeMismatch {
                expected: mask.len(),
                got: phases.len(),
            });
        }
        // phases must pair conjugately: e^{i phi(-k)} = e^{-i phi(k)}
        let probe =
            crate::array::Spectrum::new(shape, vec![Complex64::new(0.0, 0.0); shape.len()], false)
                .expect("zero spectrum");
        for k in 0..mask.len() {
            if mask[k] {
                let kc = probe.conjugate_index(k);
                let fwd = Complex64::from_polar(1.0, phases[k]);
                let bwd = Complex64::from_polar(1.0, phases[kc]);
                if (fwd * bwd - Complex64::new(1.0, 0.0)).norm() > 1e-9 {
                    return Err(Error::NonHermitianMask);
                }
            }
        }
        Ok(Self {
            shape,
            mask,
            phases,
        })
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }
}

impl Projector for FourierPhase {
    fn project(&self, x: &RealArray) -> RealArray {
        assert_eq!(x.shape(), self.shape, "phase projector shape mismatch");
        let mut s = dft(x);
        for (k, c) in s.data_mut().iter_mut().enumerate() {
            if self.mask[k] {
                let ray = Complex64::from_polar(1.0, self.phases[k]);
                let along = (*c * ray.conj()).re.max(0.0);
                *c = ray * along;
            }
        }
        idft(&s).expect("projection of finite data is finite")
    }
}

/// Spectrum forced to zero on the masked bins.
pub struct FourierZero {
    shape: Shape,
    mask: Vec<bool>,
}

impl FourierZero {
    pub fn new(shape: Shape, mask: Vec<bool>) -> Result<Self> {
        validate_hermitian_mask(shape, &mask)?;
        Ok(Self { shape, mask })
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

impl Projector for FourierZero {
    fn project(&self, x: &RealArray) -> RealArray {
        assert_eq!(x.shape(), self.shape, "zero-mask projector shape mismatch");
        let mut s = dft(x);
        for (k, c) in s.data_mut().iter_mut().enumerate() {
            if self.mask[k] {
                *c = Complex64::new(0.0, 0.0);
            }
        }
        idft(&s).expect("projection of finite data is finite")
    }

    fn distance(&self, x: &RealArray) -> f64 {
        let s = dft(x);
        let energy: f64 = s
            .data()
            .iter()
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .map(|(c, _)| c.norm_sqr())
            .sum();
        (energy / x.len() as f64).sqrt()
    }
}

/// Spectral magnitude cap: `|X_k| <= rho` on the masked bins, phase kept.
pub struct FourierMagnitude {
    shape: Shape,
    mask: Vec<bool>,
    pub rho: f64,
}

impl FourierMagnitude {
    pub fn new(shape: Shape, mask: Vec<bool>, rho: f64) -> Result<Self> {
        validate_hermitian_mask(shape, &mask)?;
        if rho < 0.0 {
            return Err(Error::BadParameter("rho must be nonnegative".into()));
        }
        Ok(Self { shape, mask, rho })
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

impl Projector for FourierMagnitude {
    fn project(&self, x: &RealArray) -> RealArray {
        assert_eq!(x.shape(), self.shape, "magnitude projector shape mismatch");
        let mut s = dft(x);
        for (k, c) in s.data_mut().iter_mut().enumerate() {
            if self.mask[k] {
                let mag = c.norm();
                if mag > self.rho {
                    *c *= self.rho / mag;
                }
            }
        }
        idft(&s).expect("projection of finite data is finite")
    }

    fn distance(&self, x: &RealArray) -> f64 {
        let s = dft(x);
        let excess: f64 = s
            .data()
            .iter()
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .map(|(c, _)| (c.norm() - self.rho).max(0.0).powi(2))
            .sum();
        (excess / x.len() as f64).sqrt()
    }
}

/// Energy ball `||x|| <= mu`: radial scaling.
pub struct EnergyBall {
    pub mu: f64,
}

impl Projector for EnergyBall {
    fn project(&self, x: &RealArray) -> RealArray {
        let n = x.norm();
        if n > self.mu {
            x.scale(self.mu / n)
        } else {
            x.clone()
        }
    }

    fn distance(&self, x: &RealArray) -> f64 {
        (x.norm() - self.mu).max(0.0)
    }
}

/// Pulse symmetry about the mid-point with unit center value:
/// `x[k] = x[N-1-k]` for all `k` and `x[N/2] = 1`.
///
/// The `k = N/2` instance of the symmetry ties `x[N/2]` to `x[N/2 - 1]`, so
/// the projection pins both center entries to `1` and replaces every other
/// mirror pair by its average — the exact projection onto this affine set.
pub struct SymmetryMidpoint;

impl Projector for SymmetryMidpoint {
    fn project(&self, x: &RealArray) -> RealArray {
        let n = x.len();
        assert!(n % 2 == 0 && n >= 4, "needs an even length of at least 4");
        let mut out = x.clone();
        let d = out.data_mut();
        for k in 0..n / 2 - 1 {
            let m = 0.5 * (d[k] + d[n - 1 - k]);
            d[k] = m;
            d[n - 1 - k] = m;
        }
        d[n / 2] = 1.0;
        d[n / 2 - 1] = 1.0;
        out
    }
}

/// Time-support constraint: zero on the masked samples.
pub struct TimeMask {
    pub mask: Vec<bool>,
}

impl Projector for TimeMask {
    fn project(&self, x: &RealArray) -> RealArray {
        let mut out = x.clone();
        for (v, &m) in out.data_mut().iter_mut().zip(&self.mask) {
            if m {
                *v = 0.0;
            }
        }
        out
    }

    fn distance(&self, x: &RealArray) -> f64 {
        x.data()
            .iter()
            .zip(&self.mask)
            .filter(|(_, &m)| m)
            .map(|(v, _)| v * v)
            .sum::<f64>()
            .sqrt()
    }
}
