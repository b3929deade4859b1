//! Synthetic ground truth, noise, and the degradation model `z = L x + w`.
//!
//! The test images are piecewise constant (flat shapes on a flat background)
//! so that edges are meaningful for the TV experiments. Noise comes from a
//! seeded ChaCha8 stream through a Box-Muller map — reproducible across
//! platforms.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::array::{RealArray, Shape};
use crate::linop::{CirculantOp, LinearOp};

/// Vignetted piecewise-constant scene and its vignette mask (`true` on the
/// black corners).
pub fn vignetted_scene(n: usize) -> (RealArray, Vec<bool>) {
    let nf = n as f64;
    let center = (nf - 1.0) / 2.0;
    let vignette_radius = 0.68 * nf;
    let mut mask = vec![false; n * n];
    let mut img = RealArray::from_fn_2d(n, n, |r, c| {
        let (rf, cf) = (r as f64, c as f64);
        let mut v = 80.0;
        if rf >= 0.20 * nf && rf < 0.55 * nf && cf >= 0.15 * nf && cf < 0.50 * nf {
            v = 200.0;
        }
        let (dr, dc) = (rf - 0.62 * nf, cf - 0.62 * nf);
        if (dr * dr + dc * dc).sqrt() < 0.18 * nf {
            v = 150.0;
        }
        if rf >= 0.10 * nf && rf < 0.25 * nf && cf >= 0.60 * nf && cf < 0.85 * nf {
            v = 30.0;
        }
        v
    });
    for r in 0..n {
        for c in 0..n {
            let d = ((r as f64 - center).powi(2) + (c as f64 - center).powi(2)).sqrt();
            if d > vignette_radius {
                mask[r * n + c] = true;
                img.set(r, c, 0.0);
            }
        }
    }
    (img, mask)
}

/// Cartoon scene for the frame/TV experiment: big flat regions, sharp edges.
pub fn cartoon_scene(n: usize) -> RealArray {
    let nf = n as f64;
    RealArray::from_fn_2d(n, n, |r, c| {
        let (rf, cf) = (r as f64, c as f64);
        let mut v = 50.0;
        let (dr, dc) = (rf - 0.40 * nf, cf - 0.45 * nf);
        if (dr * dr + dc * dc).sqrt() < 0.28 * nf {
            v = 190.0;
        }
        if rf >= 0.60 * nf && rf < 0.85 * nf && cf >= 0.15 * nf && cf < 0.45 * nf {
            v = 120.0;
        }
        if rf >= 0.20 * nf && rf < 0.90 * nf && cf >= 0.70 * nf && cf < 0.78 * nf {
            v = 230.0;
        }
        v
    })
}

/// Zero-mean white Gaussian noise from a seeded ChaCha8 stream.
pub fn gaussian_noise(shape: Shape, sigma: f64, seed: u64) -> RealArray {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..shape.len())
        .map(|_| {
            let v: f64 = StandardNormal.sample(&mut rng);
            sigma * v
        })
        .collect();
    RealArray::new(shape, data).expect("gaussian samples are finite")
}

/// Observation model `z = L x + w`, stored exactly as generated.
pub struct DegradationModel {
    pub operator: CirculantOp,
    pub noise: RealArray,
    pub observed: RealArray,
    pub blurred_clean: RealArray,
}

impl DegradationModel {
    pub fn new(operator: CirculantOp, truth: &RealArray, sigma: f64, seed: u64) -> Self {
        let blurred_clean = operator.apply(truth);
        let noise = gaussian_noise(truth.shape(), sigma, seed);
        let observed = blurred_clean.add(&noise);
        Self {
            operator,
            noise,
            observed,
            blurred_clean,
        }
    }
}

/// Perturb measured phases multiplicatively by `1 + pert * u`, `u` uniform
/// on [-1, 1], drawing one factor per conjugate pair so the perturbed phases
/// stay conjugate-symmetric. Self-conjugate bins (DC, Nyquist) keep their
/// exact phase, which is 0 or pi for a real signal.
pub fn perturb_phases(
    phases: &mut [f64],
    mask: &[bool],
    conj_index: impl Fn(usize) -> usize,
    pert: f64,
    seed: u64,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    for k in 0..phases.len() {
        let kc = conj_index(k);
        if !mask[k] || kc < k || kc == k {
            continue;
        }
        let factor = 1.0 + pert * rng.gen_range(-1.0..1.0);
        phases[k] *= factor;
        phases[kc] = -phases[k];
    }
}
