//! Discrete Fourier transforms for signals and images.
//!
//! Normalization is fixed repo-wide: the forward transform is unnormalized
//! and the inverse divides by the total number of samples, so
//! `idft(dft(x)) = x` and Parseval reads `‖x‖² = (1/N) Σ |χ_k|²`.
//!
//! Power-of-two lengths hit the radix-2 path of the FFT backend; other
//! lengths fall back to the backend's mixed-radix plan, so any size works.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::array::{RealArray, Shape, Spectrum};
use crate::error::{Error, Result};

fn transform_in_place(data: &mut [Complex64], shape: Shape, forward: bool) {
    let (rows, cols) = shape.dims();
    let mut planner = FftPlanner::new();
    let dir = if forward {
        rustfft::FftDirection::Forward
    } else {
        rustfft::FftDirection::Inverse
    };

    let fft_cols = planner.plan_fft(cols, dir);
    let mut scratch = vec![Complex64::default(); fft_cols.get_inplace_scratch_len()];
    for row in data.chunks_exact_mut(cols) {
        fft_cols.process_with_scratch(row, &mut scratch);
    }

    if rows > 1 {
        let fft_rows = planner.plan_fft(rows, dir);
        scratch.resize(fft_rows.get_inplace_scratch_len(), Complex64::default());
        let mut col = vec![Complex64::default(); rows];
        for c in 0..cols {
            for r in 0..rows {
                col[r] = data[r * cols + c];
            }
            fft_rows.process_with_scratch(&mut col, &mut scratch);
            for r in 0..rows {
                data[r * cols + c] = col[r];
            }
        }
    }
}

/// Unnormalized forward DFT of a real signal or image.
pub fn dft(x: &RealArray) -> Spectrum {
    let mut data: Vec<Complex64> = x.data().iter().map(|&v| Complex64::new(v, 0.0)).collect();
    transform_in_place(&mut data, x.shape(), true);
    Spectrum::new(x.shape(), data, true).expect("real input yields a Hermitian spectrum")
}

/// Inverse DFT with `1/N` normalization, returning the real part.
///
/// If the spectrum carries the Hermitian flag the imaginary residue is pure
/// rounding noise; otherwise the caller has opted into discarding it.
pub fn idft(spectrum: &Spectrum) -> Result<RealArray> {
    let mut data = spectrum.data().to_vec();
    transform_in_place(&mut data, spectrum.shape(), false);
    let scale = 1.0 / spectrum.len() as f64;
    let real: Vec<f64> = data.iter().map(|c| c.re * scale).collect();
    if real.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite);
    }
    RealArray::new(spectrum.shape(), real)
}

/// Forward transform of an already-complex buffer (used by circulant solves).
pub fn dft_complex(data: &mut [Complex64], shape: Shape) {
    transform_in_place(data, shape, true);
}

/// Inverse transform of a complex buffer, including the `1/N` factor.
pub fn idft_complex(data: &mut [Complex64], shape: Shape) {
    transform_in_place(data, shape, false);
    let scale = 1.0 / data.len() as f64;
    for c in data.iter_mut() {
        *c *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    /// Naive O(N²) reference DFT, kept independent of the FFT backend.
    fn naive_dft_1d(x: &[f64]) -> Vec<Complex64> {
        let n = x.len();
        (0..n)
            .map(|k| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &v) in x.iter().enumerate() {
                    let angle = -2.0 * std::f64::consts::PI * (k * j) as f64 / n as f64;
                    acc += Complex64::new(angle.cos(), angle.sin()) * v;
                }
                acc
            })
            .collect()
    }

    #[test]
    fn impulse_has_flat_spectrum() {
        let mut x = vec![0.0; 8];
        x[0] = 1.0;
        let s = dft(&RealArray::from_vec(x));
        for c in s.data() {
            assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn constant_concentrates_at_dc() {
        let s = dft(&RealArray::from_vec(vec![1.0; 8]));
        assert!((s.data()[0] - Complex64::new(8.0, 0.0)).norm() < 1e-12);
        for c in &s.data()[1..] {
            assert!(c.norm() < 1e-12);
        }
    }

    #[test]
    fn matches_naive_dft_and_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x: Vec<f64> = (0..16).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let arr = RealArray::from_vec(x.clone());
        let s = dft(&arr);
        let naive = naive_dft_1d(&x);
        for (a, b) in s.data().iter().zip(&naive) {
            assert!((a - b).norm() < 1e-10, "fft disagrees with naive dft");
        }
        let back = idft(&s).unwrap();
        assert!(back.max_abs_diff(&arr) < 1e-12);
    }

    #[test]
    fn parseval_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x = RealArray::from_fn_2d(8, 8, |_, _| rng.gen_range(-1.0..1.0));
        let s = dft(&x);
        let lhs = x.norm_sq();
        let rhs = s.norm_sq() / x.len() as f64;
        assert!((lhs - rhs).abs() <= 1e-10 * lhs.max(1.0));
    }

    #[test]
    fn two_dimensional_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        // non-power-of-two side exercises the mixed-radix fallback
        let x = RealArray::from_fn_2d(6, 10, |_, _| rng.gen_range(-5.0..5.0));
        let back = idft(&dft(&x)).unwrap();
        assert!(back.max_abs_diff(&x) < 1e-10);
    }

    #[test]
    fn forward_spectrum_is_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let x = RealArray::from_fn_2d(8, 8, |_, _| rng.gen_range(-1.0..1.0));
        assert!(dft(&x).hermitian_defect() < 1e-12);
    }
}
