//! Tight wavelet frames built from shifted orthonormal decompositions.
//!
//! The analysis operator `F` stacks one orthonormal separable 2-D wavelet
//! transform per circular shift of the image. Each shifted transform is an
//! isometry, so the union satisfies `F* F = κ Id` with `κ` equal to the
//! number of shifts — a tight frame. Synthesis is the adjoint `F*`.
//!
//! The default configuration uses the length-8 symlet filter over 4
//! resolution levels with shifts `(0,0), (1,0), (0,1), (1,1)` (`κ = 4`).
//! Filter correctness is enforced structurally: construction rejects any
//! lowpass filter that is not self-orthogonal at even shifts.

use crate::array::{RealArray, Shape};
use crate::error::{Error, Result};
use crate::linop::{LinearOp, OpKind};

/// Length-8 symlet (least-asymmetric) analysis lowpass filter.
pub const SYMLET8: [f64; 8] = [
    -0.075_765_714_789_273_33,
    -0.029_635_527_645_998_51,
    0.497_618_667_632_015_45,
    0.803_738_751_805_916_1,
    0.297_857_795_605_277_36,
    -0.099_219_543_576_847_22,
    -0.012_603_967_262_037_833,
    0.032_223_100_604_042_7,
];

/// Haar lowpass filter, handy for small exact tests.
pub const HAAR: [f64; 2] = [
    std::f64::consts::FRAC_1_SQRT_2,
    std::f64::consts::FRAC_1_SQRT_2,
];

/// A union of shifted orthonormal dyadic wavelet decompositions.
#[derive(Debug, Clone)]
pub struct FrameSpec {
    lowpass: Vec<f64>,
    highpass: Vec<f64>,
    levels: usize,
    shifts: Vec<(usize, usize)>,
}

impl FrameSpec {
    pub fn new(lowpass: &[f64], levels: usize, shifts: &[(usize, usize)]) -> Result<Self> {
        assert!(levels >= 1, "need at least one decomposition level");
        assert!(!shifts.is_empty(), "need at least one shift");
        assert!(lowpass.len() % 2 == 0, "filter length must be even");
        let defect = even_shift_orthonormality_defect(lowpass);
        if defect > 1e-10 {
            return Err(Error::NonOrthonormalFilter { defect });
        }
        // quadrature mirror highpass: g[n] = (-1)^n h[L-1-n]
        let l = lowpass.len();
        let highpass: Vec<f64> = (0..l)
            .map(|n| {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                sign * lowpass[l - 1 - n]
            })
            .collect();
        Ok(Self {
            lowpass: lowpass.to_vec(),
            highpass,
            levels,
            shifts: shifts.to_vec(),
        })
    }

    /// The configuration used by the image experiments: symlet-8, 4 levels,
    /// all four unit shifts.
    pub fn symlet8_default() -> Self {
        Self::new(&SYMLET8, 4, &[(0, 0), (1, 0), (0, 1), (1, 1)]).expect("symlet-8 is orthonormal")
    }

    pub fn haar(levels: usize, shifts: &[(usize, usize)]) -> Self {
        Self::new(&HAAR, levels, shifts).expect("Haar is orthonormal")
    }

    /// Frame constant: the number of shifts.
    pub fn kappa(&self) -> f64 {
        self.shifts.len() as f64
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn shifts(&self) -> &[(usize, usize)] {
        &self.shifts
    }

    /// Number of frame coefficients for an `side x side` image.
    pub fn coeff_len(&self, side: usize) -> usize {
        self.shifts.len() * side * side
    }

    fn check_side(&self, side: usize) -> Result<()> {
        if side % (1 << self.levels) != 0 {
            return Err(Error::IndivisibleShape {
                side,
                levels: self.levels,
            });
        }
        Ok(())
    }

    /// Analysis `F`: image to stacked frame coefficients.
    pub fn analysis(&self, y: &RealArray) -> Result<RealArray> {
        let (rows, cols) = y.shape().dims();
        assert_eq!(rows, cols, "frame expects a square image");
        self.check_side(rows)?;
        let n = rows;
        let mut out = Vec::with_capacity(self.coeff_len(n));
        for &shift in &self.shifts {
            let mut buf = shifted(y, shift);
            self.forward_in_place(&mut buf, n);
            out.extend_from_slice(&buf);
        }
        RealArray::new(Shape::One(out.len()), out)
    }

    /// Synthesis `F*`: stacked frame coefficients back to an image.
    pub fn synthesis(&self, coeffs: &RealArray, side: usize) -> Result<RealArray> {
        self.check_side(side)?;
        let n = side;
        let block = n * n;
        if coeffs.len() != block * self.shifts.len() {
            return Err(Error::ShapeMismatch {
                expected: block * self.shifts.len(),
                got: coeffs.len(),
            });
        }
        let mut acc = vec![0.0; block];
        for (s, &shift) in self.shifts.iter().enumerate() {
            let mut buf = coeffs.data()[s * block..(s + 1) * block].to_vec();
            self.inverse_in_place(&mut buf, n);
            unshift_into(&buf, shift, n, &mut acc);
        }
        RealArray::new(Shape::Two(n, n), acc)
    }

    fn forward_in_place(&self, buf: &mut [f64], n: usize) {
        let mut m = n;
        for _ in 0..self.levels {
            self.step_rows(buf, n, m, true);
            self.step_cols(buf, n, m, true);
            m /= 2;
        }
    }

    fn inverse_in_place(&self, buf: &mut [f64], n: usize) {
        let mut m = n >> (self.levels - 1);
        for _ in 0..self.levels {
            self.step_cols(buf, n, m, false);
            self.step_rows(buf, n, m, false);
            m *= 2;
        }
    }

    fn step_rows(&self, buf: &mut [f64], stride: usize, m: usize, forward: bool) {
        let mut line = vec![0.0; m];
        for r in 0..m {
            line.copy_from_slice(&buf[r * stride..r * stride + m]);
            let row = &mut buf[r * stride..r * stride + m];
            if forward {
                self.analyze_line(&line, row);
            } else {
                self.synthesize_line(&line, row);
            }
        }
    }

    fn step_cols(&self, buf: &mut [f64], stride: usize, m: usize, forward: bool) {
        let mut line = vec![0.0; m];
        let mut out = vec![0.0; m];
        for c in 0..m {
            for r in 0..m {
                line[r] = buf[r * stride + c];
            }
            if forward {
                self.analyze_line(&line, &mut out);
            } else {
                self.synthesize_line(&line, &mut out);
            }
            for r in 0..m {
                buf[r * stride + c] = out[r];
            }
        }
    }

    /// Periodized analysis: out = [approx | detail].
    fn analyze_line(&self, x: &[f64], out: &mut [f64]) {
        let m = x.len();
        let h = m / 2;
        for k in 0..h {
            let mut a = 0.0;
            let mut d = 0.0;
            for (n, (&lo, &hi)) in self.lowpass.iter().zip(&self.highpass).enumerate() {
                let v = x[(2 * k + n) % m];
                a += lo * v;
                d += hi * v;
            }
            out[k] = a;
            out[h + k] = d;
        }
    }

    /// Exact transpose of [`Self::analyze_line`].
    fn synthesize_line(&self, coeffs: &[f64], out: &mut [f64]) {
        let m = coeffs.len();
        let h = m / 2;
        out.fill(0.0);
        for k in 0..h {
            let a = coeffs[k];
            let d = coeffs[h + k];
            for (n, (&lo, &hi)) in self.lowpass.iter().zip(&self.highpass).enumerate() {
                out[(2 * k + n) % m] += a * lo + d * hi;
            }
        }
    }
}

fn shifted(y: &RealArray, (s0, s1): (usize, usize)) -> Vec<f64> {
    let (n, _) = y.shape().dims();
    let mut out = vec![0.0; n * n];
    for k in 0..n {
        for l in 0..n {
            out[k * n + l] = y.at((k + s0) % n, (l + s1) % n);
        }
    }
    out
}

fn unshift_into(block: &[f64], (s0, s1): (usize, usize), n: usize, acc: &mut [f64]) {
    for k in 0..n {
        for l in 0..n {
            acc[((k + s0) % n) * n + (l + s1) % n] += block[k * n + l];
        }
    }
}

/// Worst deviation of `sum_n h[n] h[n + 2k]` from `delta_k`.
pub fn even_shift_orthonormality_defect(filter: &[f64]) -> f64 {
    let l = filter.len();
    let mut worst: f64 = 0.0;
    for k in 0..l / 2 {
        let mut acc = 0.0;
        for n in 0..l {
            if n + 2 * k < l {
                acc += filter[n] * filter[n + 2 * k];
            }
        }
        let target = if k == 0 { 1.0 } else { 0.0 };
        worst = worst.max((acc - target).abs());
    }
    worst
}

/// Frame analysis as a [`LinearOp`] (`apply = F`, `adjoint = F*`).
pub struct FrameAnalysisOp {
    pub spec: FrameSpec,
    pub side: usize,
}

impl LinearOp for FrameAnalysisOp {
    fn apply(&self, x: &RealArray) -> RealArray {
        self.spec.analysis(x).expect("validated at construction")
    }
    fn adjoint(&self, y: &RealArray) -> RealArray {
        self.spec
            .synthesis(y, self.side)
            .expect("validated at construction")
    }
    fn kind(&self) -> OpKind {
        OpKind::Frame
    }
    fn domain_shape(&self) -> Shape {
        Shape::Two(self.side, self.side)
    }
    fn range_shape(&self) -> Shape {
        Shape::One(self.spec.coeff_len(self.side))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linop::{adjoint_defect, random_array, AdjointOp};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn symlet8_filter_is_orthonormal() {
        assert!(even_shift_orthonormality_defect(&SYMLET8) < 1e-10);
        let sum: f64 = SYMLET8.iter().sum();
        assert!((sum - std::f64::consts::SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn bad_filter_rejected() {
        let err = FrameSpec::new(&[0.5, 0.5, 0.5, 0.5], 1, &[(0, 0)]);
        assert!(err.is_err());
    }

    #[test]
    fn haar_single_shift_on_constant_image() {
        let spec = FrameSpec::haar(1, &[(0, 0)]);
        let y = RealArray::constant(Shape::Two(4, 4), 2.0);
        let c = spec.analysis(&y).unwrap();
        // scaling band = first quadrant of the single block; all detail zero
        let n = 4;
        for k in 0..n {
            for l in 0..n {
                let v = c.data()[k * n + l];
                if k < 2 && l < 2 {
                    assert!(
                        (v - 4.0).abs() < 1e-12,
                        "scaling coefficient holds the mass"
                    );
                } else {
                    assert!(v.abs() < 1e-12);
                }
            }
        }
        // energy is preserved and synthesis recovers kappa * y with kappa=1
        let back = spec.synthesis(&c, 4).unwrap();
        assert!(back.max_abs_diff(&y) < 1e-12);
    }

    #[test]
    fn symlet_frame_is_tight_with_kappa_4() {
        let spec = FrameSpec::symlet8_default();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..10 {
            let y = random_array(Shape::Two(32, 32), &mut rng);
            let c = spec.analysis(&y).unwrap();
            let back = spec.synthesis(&c, 32).unwrap();
            let defect = back.sub(&y.scale(4.0)).norm() / y.norm();
            assert!(defect <= 1e-8, "tightness defect {defect}");
        }
    }

    #[test]
    fn analysis_of_synthesis_is_scaled_projection() {
        // (1/kappa) F F* is idempotent
        let spec = FrameSpec::haar(2, &[(0, 0), (1, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let c = random_array(Shape::One(2 * 8 * 8), &mut rng);
        let kappa = spec.kappa();
        let p1 = spec
            .analysis(&spec.synthesis(&c, 8).unwrap())
            .unwrap()
            .scale(1.0 / kappa);
        let p2 = spec
            .analysis(&spec.synthesis(&p1, 8).unwrap())
            .unwrap()
            .scale(1.0 / kappa);
        assert!(p2.max_abs_diff(&p1) < 1e-10);
    }

    #[test]
    fn frame_adjoint_pairing() {
        let spec = FrameSpec::symlet8_default();
        let op = FrameAnalysisOp { spec, side: 32 };
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        assert!(adjoint_defect(&op, 20, &mut rng) < 1e-10);
        let syn = AdjointOp(op);
        assert!(adjoint_defect(&syn, 20, &mut rng) < 1e-10);
    }

    #[test]
    fn indivisible_side_rejected() {
        let spec = FrameSpec::symlet8_default();
        let y = RealArray::zeros(Shape::Two(24, 24));
        assert!(spec.analysis(&y).is_err());
    }
}
