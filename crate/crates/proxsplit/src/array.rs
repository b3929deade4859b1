//! Dense real arrays and complex spectra.
//!
//! [`RealArray`] is the ambient Hilbert-space element: a 1-D signal or a 2-D
//! image with an explicit shape, stored row-major, equipped with the standard
//! Euclidean inner product. [`Spectrum`] holds the complex DFT of such an
//! array together with a Hermitian-symmetry flag that guarantees a real
//! inverse transform.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Shape of a [`RealArray`]: a 1-D signal of length `n` or a 2-D image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    One(usize),
    Two(usize, usize),
}

impl Shape {
    pub fn len(&self) -> usize {
        match *self {
            Shape::One(n) => n,
            Shape::Two(r, c) => r * c,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Rows and columns, viewing a 1-D signal as a single row.
    pub fn dims(&self) -> (usize, usize) {
        match *self {
            Shape::One(n) => (1, n),
            Shape::Two(r, c) => (r, c),
        }
    }
}

/// A real 1-D signal or 2-D image with explicit shape.
///
/// All entries are finite; constructors check this. Arithmetic helpers are
/// deliberately allocation-light: solvers reuse buffers via the `*_assign`
/// variants.
#[derive(Debug, Clone, PartialEq)]
pub struct RealArray {
    data: Vec<f64>,
    shape: Shape,
}

impl RealArray {
    pub fn new(shape: Shape, data: Vec<f64>) -> Result<Self> {
        if shape.len() != data.len() {
            return Err(Error::ShapeMismatch {
                expected: shape.len(),
                got: data.len(),
            });
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(Self { data, shape })
    }

    pub fn zeros(shape: Shape) -> Self {
        Self {
            data: vec![0.0; shape.len()],
            shape,
        }
    }

    pub fn from_vec(data: Vec<f64>) -> Self {
        let shape = Shape::One(data.len());
        Self::new(shape, data).expect("finite 1-D data")
    }

    pub fn from_scalar(v: f64) -> Self {
        Self::from_vec(vec![v])
    }

    /// Square image filled by `f(row, col)`.
    pub fn from_fn_2d(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self::new(Shape::Two(rows, cols), data).expect("finite 2-D data")
    }

    pub fn constant(shape: Shape, v: f64) -> Self {
        Self {
            data: vec![v; shape.len()],
            shape,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.data
    }

    /// Reinterpret the same data under a new shape of equal length.
    pub fn reshape(mut self, shape: Shape) -> Result<Self> {
        if shape.len() != self.data.len() {
            return Err(Error::ShapeMismatch {
                expected: shape.len(),
                got: self.data.len(),
            });
        }
        self.shape = shape;
        Ok(self)
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> f64 {
        let (_, cols) = self.shape.dims();
        self.data[r * cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        let (_, cols) = self.shape.dims();
        self.data[r * cols + c] = v;
    }

    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        self.data.iter().zip(&other.data).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn sum(&self) -> f64 {
        self.data.iter().sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            data: self.data.iter().map(|v| v * s).collect(),
            shape: self.shape,
        }
    }

    pub fn scale_assign(&mut self, s: f64) {
        for v in &mut self.data {
            *v *= s;
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
            shape: self.shape,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
            shape: self.shape,
        }
    }

    /// `self += s * other`.
    pub fn axpy(&mut self, s: f64, other: &Self) {
        debug_assert_eq!(self.len(), other.len());
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self {
            data: self.data.iter().map(|&v| f(v)).collect(),
            shape: self.shape,
        }
    }

    /// Largest absolute entry-wise difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.len(), other.len());
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    pub fn transpose(&self) -> Self {
        let (rows, cols) = self.shape.dims();
        let mut out = vec![0.0; rows * cols];
        for r in 0..rows {
            for c in 0..cols {
                out[c * rows + r] = self.data[r * cols + c];
            }
        }
        Self {
            data: out,
            shape: Shape::Two(cols, rows),
        }
    }
}

/// Complex DFT coefficients of a [`RealArray`].
///
/// The `hermitian` flag records that entry `k` equals the conjugate of entry
/// `-k (mod N)` (per axis in 2-D), which guarantees that the inverse
/// transform is real up to rounding.
#[derive(Debug, Clone)]
pub struct Spectrum {
    data: Vec<Complex64>,
    shape: Shape,
    hermitian: bool,
}

impl Spectrum {
    pub fn new(shape: Shape, data: Vec<Complex64>, hermitian: bool) -> Result<Self> {
        if shape.len() != data.len() {
            return Err(Error::ShapeMismatch {
                expected: shape.len(),
                got: data.len(),
            });
        }
        let s = Self {
            data,
            shape,
            hermitian,
        };
        if hermitian && s.hermitian_defect() > 1e-12 * (1.0 + s.max_abs()) {
            return Err(Error::NotHermitian);
        }
        Ok(s)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex64] {
        &mut self.data
    }

    pub fn is_hermitian_flagged(&self) -> bool {
        self.hermitian
    }

    /// Clear the Hermitian flag after an edit that may break symmetry.
    pub fn set_hermitian(&mut self, flag: bool) {
        self.hermitian = flag;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Index of the frequency conjugate to flat index `idx`: `-k (mod N)`
    /// along each axis.
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let (rows, cols) = self.shape.dims();
        let r = idx / cols;
        let c = idx % cols;
        let rc = (rows - r) % rows;
        let cc = (cols - c) % cols;
        rc * cols + cc
    }

    /// Largest deviation from Hermitian symmetry.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for idx in 0..self.data.len() {
            let conj_idx = self.conjugate_index(idx);
            let d = (self.data[idx] - self.data[conj_idx].conj()).norm();
            worst = worst.max(d);
        }
        worst
    }

    pub fn norm_sq(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape_checks() {
        assert!(RealArray::new(Shape::Two(2, 3), vec![0.0; 6]).is_ok());
        assert!(RealArray::new(Shape::Two(2, 3), vec![0.0; 5]).is_err());
        assert!(RealArray::new(Shape::One(2), vec![1.0, f64::NAN]).is_err());
    }

    #[test]
    fn transpose_round_trip() {
        let a = RealArray::from_fn_2d(3, 4, |r, c| (r * 10 + c) as f64);
        let back = a.transpose().transpose();
        assert_eq!(a, back);
    }

    #[test]
    fn conjugate_index_pairs() {
        let s = Spectrum::new(Shape::One(8), vec![Complex64::new(0.0, 0.0); 8], false).unwrap();
        assert_eq!(s.conjugate_index(0), 0);
        assert_eq!(s.conjugate_index(1), 7);
        assert_eq!(s.conjugate_index(3), 5);
        let s2 =
            Spectrum::new(Shape::Two(4, 4), vec![Complex64::new(0.0, 0.0); 16], false).unwrap();
        // (1,2) pairs with (3,2)
        assert_eq!(s2.conjugate_index(6), 14);
    }

    #[test]
    fn hermitian_flag_rejected_when_asymmetric() {
        let mut data = vec![Complex64::new(0.0, 0.0); 4];
        data[1] = Complex64::new(0.0, 1.0);
        // missing the conjugate at index 3
        assert!(Spectrum::new(Shape::One(4), data, true).is_err());
    }
}
