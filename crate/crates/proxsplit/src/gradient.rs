//! Discrete gradient stencils and the Haar-like block operators.
//!
//! All four stencils act on periodic square images and average a 2x2
//! neighborhood with signs:
//!
//! * `grad0`  — smoothing:            `(d + b + c + a) / 2`
//! * `grad1`  — vertical difference:  `(d - b + c - a) / 2`
//! * `grad1t` — horizontal difference (the vertical stencil applied to the
//!   transpose, transposed back)
//! * `grad2`  — mixed difference:     `(d - b - c + a) / 2`
//!
//! with `a = y[k,l]`, `b = y[k,l+1]`, `c = y[k+1,l]`, `d = y[k+1,l+1]`,
//! indices mod N. A constant image `c` maps to `2c` under `grad0` and to `0`
//! under the differences.
//!
//! [`HaarBlockOp`] stacks the four stencils, decimated with offset
//! `(q, r) = (i % 2, i / 2)`, into the four quadrants of an `N x N` output.
//! Because the decimated stencils read each 2x2 block exactly once, the
//! operator is orthogonal: `U_i* U_i = U_i U_i* = Id`.

use crate::array::{RealArray, Shape};
use crate::error::{Error, Result};
use crate::linop::{LinearOp, OpKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stencil {
    Smooth,
    Vertical,
    Horizontal,
    Mixed,
}

impl Stencil {
    /// Coefficients for (a, b, c, d) = (y[k,l], y[k,l+1], y[k+1,l], y[k+1,l+1]).
    #[inline]
    fn coeffs(self) -> [f64; 4] {
        match self {
            Stencil::Smooth => [0.5, 0.5, 0.5, 0.5],
            Stencil::Vertical => [-0.5, -0.5, 0.5, 0.5],
            Stencil::Horizontal => [-0.5, 0.5, -0.5, 0.5],
            Stencil::Mixed => [0.5, -0.5, -0.5, 0.5],
        }
    }
}

fn square_side(y: &RealArray) -> usize {
    let (rows, cols) = y.shape().dims();
    assert_eq!(rows, cols, "gradient stencils need a square image");
    rows
}

/// Apply one stencil at every pixel of a periodic square image.
pub fn stencil_apply(stencil: Stencil, y: &RealArray) -> RealArray {
    let n = square_side(y);
    let w = stencil.coeffs();
    RealArray::from_fn_2d(n, n, |k, l| {
        let k1 = (k + 1) % n;
        let l1 = (l + 1) % n;
        w[0] * y.at(k, l) + w[1] * y.at(k, l1) + w[2] * y.at(k1, l) + w[3] * y.at(k1, l1)
    })
}

/// Adjoint of [`stencil_apply`] (scatter with the same weights).
pub fn stencil_adjoint(stencil: Stencil, v: &RealArray) -> RealArray {
    let n = square_side(v);
    let w = stencil.coeffs();
    let mut out = RealArray::zeros(Shape::Two(n, n));
    for k in 0..n {
        let k1 = (k + 1) % n;
        for l in 0..n {
            let l1 = (l + 1) % n;
            let s = v.at(k, l);
            *out.data_mut().get_mut(k * n + l).unwrap() += w[0] * s;
            *out.data_mut().get_mut(k * n + l1).unwrap() += w[1] * s;
            *out.data_mut().get_mut(k1 * n + l).unwrap() += w[2] * s;
            *out.data_mut().get_mut(k1 * n + l1).unwrap() += w[3] * s;
        }
    }
    out
}

/// All four stencil images of `y`, in the order
/// (smooth, vertical, horizontal, mixed).
pub fn gradient_ops(y: &RealArray) -> [RealArray; 4] {
    [
        stencil_apply(Stencil::Smooth, y),
        stencil_apply(Stencil::Vertical, y),
        stencil_apply(Stencil::Horizontal, y),
        stencil_apply(Stencil::Mixed, y),
    ]
}

/// One stencil as a [`LinearOp`].
pub struct GradientOp {
    pub stencil: Stencil,
    pub side: usize,
}

impl LinearOp for GradientOp {
    fn apply(&self, x: &RealArray) -> RealArray {
        stencil_apply(self.stencil, x)
    }
    fn adjoint(&self, y: &RealArray) -> RealArray {
        stencil_adjoint(self.stencil, y)
    }
    fn kind(&self) -> OpKind {
        OpKind::Gradient(match self.stencil {
            Stencil::Smooth => 0,
            Stencil::Vertical => 1,
            Stencil::Horizontal => 2,
            Stencil::Mixed => 3,
        })
    }
    fn domain_shape(&self) -> Shape {
        Shape::Two(self.side, self.side)
    }
    fn range_shape(&self) -> Shape {
        Shape::Two(self.side, self.side)
    }
}

/// The orthogonal block operator `U_i`, `i = q + 2r` with offsets
/// `q, r` in `{0, 1}`.
///
/// Output quadrants (each `N/2 x N/2`): top-left smooth, top-right vertical,
/// bottom-left horizontal, bottom-right mixed — each stencil sampled at
/// `(2k + q, 2l + r)`.
pub struct HaarBlockOp {
    index: u8,
    side: usize,
}

impl HaarBlockOp {
    pub fn new(index: u8, side: usize) -> Result<Self> {
        if side % 2 != 0 {
            return Err(Error::OddSide(side));
        }
        assert!(index < 4, "block index must be in 0..4");
        Ok(Self { index, side })
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    fn offsets(&self) -> (usize, usize) {
        ((self.index % 2) as usize, (self.index / 2) as usize)
    }
}

impl LinearOp for HaarBlockOp {
    fn apply(&self, y: &RealArray) -> RealArray {
        let n = square_side(y);
        assert_eq!(n, self.side);
        let h = n / 2;
        let (q, r) = self.offsets();
        let mut out = RealArray::zeros(Shape::Two(n, n));
        for k in 0..h {
            let i0 = (2 * k + q) % n;
            let i1 = (2 * k + q + 1) % n;
            for l in 0..h {
                let j0 = (2 * l + r) % n;
                let j1 = (2 * l + r + 1) % n;
                let a = y.at(i0, j0);
                let b = y.at(i0, j1);
                let c = y.at(i1, j0);
                let d = y.at(i1, j1);
                out.set(k, l, 0.5 * (a + b + c + d));
                out.set(k, l + h, 0.5 * (-a - b + c + d));
                out.set(k + h, l, 0.5 * (-a + b - c + d));
                out.set(k + h, l + h, 0.5 * (a - b - c + d));
            }
        }
        out
    }

    fn adjoint(&self, v: &RealArray) -> RealArray {
        let n = square_side(v);
        assert_eq!(n, self.side);
        let h = n / 2;
        let (q, r) = self.offsets();
        let mut out = RealArray::zeros(Shape::Two(n, n));
        for k in 0..h {
            let i0 = (2 * k + q) % n;
            let i1 = (2 * k + q + 1) % n;
            for l in 0..h {
                let j0 = (2 * l + r) % n;
                let j1 = (2 * l + r + 1) % n;
                let t = v.at(k, l);
                let u = v.at(k, l + h);
                let w = v.at(k + h, l);
                let z = v.at(k + h, l + h);
                out.set(i0, j0, 0.5 * (t - u - w + z));
                out.set(i0, j1, 0.5 * (t - u + w - z));
                out.set(i1, j0, 0.5 * (t + u - w - z));
                out.set(i1, j1, 0.5 * (t + u + w + z));
            }
        }
        out
    }

    fn kind(&self) -> OpKind {
        OpKind::HaarBlock(self.index)
    }
    fn domain_shape(&self) -> Shape {
        Shape::Two(self.side, self.side)
    }
    fn range_shape(&self) -> Shape {
        Shape::Two(self.side, self.side)
    }
}
