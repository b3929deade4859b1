//! Linear operators with explicit adjoints.
//!
//! Everything the experiments need is expressible through [`LinearOp`]:
//! circulant blurs, frame analysis/synthesis, discrete gradients and the
//! Haar-like block operators. The adjoint is part of the contract and is
//! checked by randomized probes in the test suite.

use num_complex::Complex64;

use crate::array::{RealArray, Shape};
use crate::error::{Error, Result};
use crate::fft::{dft, idft_complex};

/// Structural tag describing where an operator came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OpKind {
    Identity,
    Circulant,
    Frame,
    Gradient(u8),
    HaarBlock(u8),
    Composite,
}

pub trait LinearOp: Send + Sync {
    fn apply(&self, x: &RealArray) -> RealArray;
    fn adjoint(&self, y: &RealArray) -> RealArray;
    fn kind(&self) -> OpKind;
    fn domain_shape(&self) -> Shape;
    fn range_shape(&self) -> Shape;
}

/// The identity on a fixed shape.
pub struct IdentityOp {
    pub shape: Shape,
}

impl LinearOp for IdentityOp {
    fn apply(&self, x: &RealArray) -> RealArray {
        x.clone()
    }
    fn adjoint(&self, y: &RealArray) -> RealArray {
        y.clone()
    }
    fn kind(&self) -> OpKind {
        OpKind::Identity
    }
    fn domain_shape(&self) -> Shape {
        self.shape
    }
    fn range_shape(&self) -> Shape {
        self.shape
    }
}

/// Periodic convolution by a fixed kernel, applied in the Fourier domain.
///
/// The kernel is stored by its spectrum, so `apply` is two transforms and a
/// pointwise product; `adjoint` uses the conjugate spectrum.
pub struct CirculantOp {
    spectrum: Vec<Complex64>,
    shape: Shape,
}

impl CirculantOp {
    /// Kernel already laid out on the full grid, anchored at index 0
    /// (so a discrete delta at index 0 gives the identity).
    pub fn from_full_kernel(kernel: &RealArray) -> Self {
        let spec = dft(kernel);
        Self {
            spectrum: spec.data().to_vec(),
            shape: kernel.shape(),
        }
    }

    /// Embed a small `kr x kc` kernel on an `rows x cols` periodic grid,
    /// centered at index 0: kernel entry `(i, j)` lands at
    /// `((i - kr/2) mod rows, (j - kc/2) mod cols)`.
    pub fn from_centered_kernel(kernel: &RealArray, shape: Shape) -> Result<Self> {
        let (rows, cols) = shape.dims();
        let (kr, kc) = kernel.shape().dims();
        if kr > rows || kc > cols {
            return Err(Error::BadParameter(format!(
                "kernel {kr}x{kc} larger than grid {rows}x{cols}"
            )));
        }
        let mut full = RealArray::zeros(shape);
        for i in 0..kr {
            for j in 0..kc {
                let r = (i + rows - kr / 2) % rows;
                let c = (j + cols - kc / 2) % cols;
                let v = full.at(r, c) + kernel.at(i, j);
                full.set(r, c, v);
            }
        }
        Ok(Self::from_full_kernel(&full))
    }

    /// Uniform `b x b` blur on an `n x n` grid.
    pub fn uniform_blur(b: usize, n: usize) -> Result<Self> {
        let kernel = RealArray::constant(Shape::Two(b, b), 1.0 / (b * b) as f64);
        Self::from_centered_kernel(&kernel, Shape::Two(n, n))
    }

    pub fn spectrum(&self) -> &[Complex64] {
        &self.spectrum
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    fn convolve(&self, x: &RealArray, conjugate: bool) -> RealArray {
        assert_eq!(x.shape(), self.shape, "circulant shape mismatch");
        let mut xh = dft(x).data().to_vec();
        for (v, h) in xh.iter_mut().zip(&self.spectrum) {
            *v *= if conjugate { h.conj() } else { *h };
        }
        idft_complex(&mut xh, self.shape);
        let data = xh.iter().map(|c| c.re).collect();
        RealArray::new(self.shape, data).expect("real convolution output")
    }
}

impl LinearOp for CirculantOp {
    fn apply(&self, x: &RealArray) -> RealArray {
        self.convolve(x, false)
    }
    fn adjoint(&self, y: &RealArray) -> RealArray {
        self.convolve(y, true)
    }
    fn kind(&self) -> OpKind {
        OpKind::Circulant
    }
    fn domain_shape(&self) -> Shape {
        self.shape
    }
    fn range_shape(&self) -> Shape {
        self.shape
    }
}

/// Periodic convolution `kernel * x` where both live on the same grid and the
/// kernel is anchored at index 0.
pub fn circulant_apply(kernel: &RealArray, x: &RealArray) -> Result<RealArray> {
    if kernel.shape() != x.shape() {
        return Err(Error::ShapeMismatch {
            expected: kernel.len(),
            got: x.len(),
        });
    }
    Ok(CirculantOp::from_full_kernel(kernel).apply(x))
}

/// Swap an operator with its adjoint.
pub struct AdjointOp<L>(pub L);

impl<L: LinearOp> LinearOp for AdjointOp<L> {
    fn apply(&self, x: &RealArray) -> RealArray {
        self.0.adjoint(x)
    }
    fn adjoint(&self, y: &RealArray) -> RealArray {
        self.0.apply(y)
    }
    fn kind(&self) -> OpKind {
        self.0.kind()
    }
    fn domain_shape(&self) -> Shape {
        self.0.range_shape()
    }
    fn range_shape(&self) -> Shape {
        self.0.domain_shape()
    }
}

/// `outer ∘ inner`.
pub struct ComposeOp<A, B> {
    pub outer: A,
    pub inner: B,
}

impl<A: LinearOp, B: LinearOp> LinearOp for ComposeOp<A, B> {
    fn apply(&self, x: &RealArray) -> RealArray {
        self.outer.apply(&self.inner.apply(x))
    }
    fn adjoint(&self, y: &RealArray) -> RealArray {
        self.inner.adjoint(&self.outer.adjoint(y))
    }
    fn kind(&self) -> OpKind {
        OpKind::Composite
    }
    fn domain_shape(&self) -> Shape {
        self.inner.domain_shape()
    }
    fn range_shape(&self) -> Shape {
        self.outer.range_shape()
    }
}

/// Worst relative defect of `<Lx, y> = <x, L*y>` over random probe pairs.
pub fn adjoint_defect(op: &dyn LinearOp, trials: usize, rng: &mut impl rand::Rng) -> f64 {
    let mut worst: f64 = 0.0;
    for _ in 0..trials {
        let x = random_array(op.domain_shape(), rng);
        let y = random_array(op.range_shape(), rng);
        let lx = op.apply(&x);
        let lty = op.adjoint(&y);
        let lhs = lx.dot(&y);
        let rhs = x.dot(&lty);
        let scale = lx.norm() * y.norm() + x.norm() * lty.norm() + 1e-30;
        worst = worst.max((lhs - rhs).abs() / scale);
    }
    worst
}

pub fn random_array(shape: Shape, rng: &mut impl rand::Rng) -> RealArray {
    let data = (0..shape.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    RealArray::new(shape, data).expect("finite random data")
}

/// Check `L ∘ L* = κ Id` on random probes; returns the measured κ.
pub fn semi_orthogonality_probe(
    op: &dyn LinearOp,
    expected_kappa: f64,
    trials: usize,
    rng: &mut impl rand::Rng,
) -> Result<f64> {
    let mut measured = 0.0;
    for _ in 0..trials {
        let y = random_array(op.range_shape(), rng);
        let lly = op.apply(&op.adjoint(&y));
        let scaled = y.scale(expected_kappa);
        let defect = lly.sub(&scaled).norm() / (scaled.norm() + 1e-30);
        if defect > 1e-8 {
            let got = lly.norm() / (y.norm() + 1e-30);
            return Err(Error::NotSemiOrthogonal {
                expected: expected_kappa,
                got,
            });
        }
        measured = lly.dot(&y) / y.norm_sq();
    }
    Ok(measured)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::Spectrum;
    use crate::fft::idft;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn delta_kernel_is_identity() {
        let mut delta = RealArray::zeros(Shape::One(8));
        delta.data_mut()[0] = 1.0;
        let x = RealArray::from_vec(vec![3.0, -1.0, 2.0, 0.5, 0.0, 1.0, -2.0, 4.0]);
        let y = circulant_apply(&delta, &x).unwrap();
        assert!(y.max_abs_diff(&x) < 1e-12);
    }

    #[test]
    fn moving_average_spreads_impulse() {
        // kernel (1/3, 1/3, 1/3) anchored at 0 on a length-3 circle:
        // convolving (3, 0, 0) gives (1, 1, 1)
        let kernel = RealArray::from_vec(vec![1.0 / 3.0; 3]);
        let x = RealArray::from_vec(vec![3.0, 0.0, 0.0]);
        let y = circulant_apply(&kernel, &x).unwrap();
        for &v in y.data() {
            assert!((v - 1.0).abs() < 1e-12);
        }
    }

    /// Direct O(N^4) circular convolution, the oracle for the FFT path.
    fn naive_circular_2d(kernel: &RealArray, x: &RealArray) -> RealArray {
        let (n, m) = x.shape().dims();
        RealArray::from_fn_2d(n, m, |r, c| {
            let mut acc = 0.0;
            for i in 0..n {
                for j in 0..m {
                    acc += kernel.at(i, j) * x.at((r + n - i) % n, (c + m - j) % m);
                }
            }
            acc
        })
    }

    #[test]
    fn matches_naive_circular_convolution() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let kernel = random_array(Shape::Two(8, 8), &mut rng);
        let x = random_array(Shape::Two(8, 8), &mut rng);
        let fast = circulant_apply(&kernel, &x).unwrap();
        let slow = naive_circular_2d(&kernel, &x);
        assert!(fast.max_abs_diff(&slow) < 1e-10);
    }

    #[test]
    fn centered_kernel_convention() {
        // a centered 3x3 uniform kernel averages each periodic neighborhood
        let op = CirculantOp::uniform_blur(3, 4).unwrap();
        let mut x = RealArray::zeros(Shape::Two(4, 4));
        x.set(1, 1, 9.0);
        let y = op.apply(&x);
        for r in 0..3 {
            for c in 0..3 {
                assert!((y.at(r, c) - 1.0).abs() < 1e-12);
            }
        }
        assert!(y.at(3, 3).abs() < 1e-12);
    }

    #[test]
    fn adjoint_is_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let kernel = random_array(Shape::Two(5, 5), &mut rng);
        let op = CirculantOp::from_centered_kernel(&kernel, Shape::Two(8, 8)).unwrap();
        assert!(adjoint_defect(&op, 100, &mut rng) < 1e-10);
    }

    #[test]
    fn adjoint_uses_conjugate_spectrum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let kernel = random_array(Shape::One(8), &mut rng);
        let op = CirculantOp::from_full_kernel(&kernel);
        let x = random_array(Shape::One(8), &mut rng);
        let direct = op.adjoint(&x);
        let mut xh = dft(&x).data().to_vec();
        for (v, h) in xh.iter_mut().zip(op.spectrum()) {
            *v *= h.conj();
        }
        let via_spec = idft(&Spectrum::new(Shape::One(8), xh, false).unwrap()).unwrap();
        assert!(direct.max_abs_diff(&via_spec) < 1e-12);
    }
}
