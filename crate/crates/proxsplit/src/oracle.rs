//! Independent brute-force references for the test suites.
//!
//! Nothing here shares code with the operators under test: the prox oracle
//! minimizes `gamma f(y) + ||x - y||^2 / 2` by multiscale grid refinement,
//! the minimization oracle runs a projected subgradient method, and the
//! certificate helpers check the variational inequalities directly from
//! their definitions.

use rand::Rng;

use crate::array::{RealArray, Shape};
use crate::fft::{dft, idft};
use crate::prox::{Projector, ProxFn};

/// Cap on the dimension accepted by the grid-search oracle.
pub const GRID_DIM_CAP: usize = 4;

/// Brute-force `prox_{gamma f}(x)` by multiscale grid refinement.
///
/// Requires `dim <= 4` and a pointwise-evaluable `f` (infinite values are
/// fine: such probes are skipped). Returns a point whose prox objective is
/// within `1e-8` of the best value seen over all probes.
pub fn prox_oracle(f: &dyn Fn(&RealArray) -> f64, x: &RealArray, gamma: f64) -> RealArray {
    let dim = x.len();
    assert!(dim <= GRID_DIM_CAP, "grid oracle capped at dimension 4");
    let objective = |y: &RealArray| {
        let fy = f(y);
        if fy.is_finite() {
            gamma * fy + 0.5 * x.sub(y).norm_sq()
        } else {
            f64::INFINITY
        }
    };

    let fx = f(x);
    let mut radius = if fx.is_finite() {
        (2.0 * gamma * fx.max(0.0)).sqrt() + 1.0
    } else {
        2.0 * x.norm() + 2.0
    };
    let mut center = x.clone();
    let mut best = (objective(&center), center.clone());

    let half = 4i64; // 9 points per axis
    let mut steps = vec![0i64; dim];
    while radius > 1e-12 * (1.0 + x.norm()) {
        steps.iter_mut().for_each(|s| *s = -half);
        loop {
            let mut probe = center.clone();
            for (d, &s) in steps.iter().enumerate() {
                probe.data_mut()[d] += radius * s as f64 / half as f64;
            }
            let v = objective(&probe);
            if v < best.0 {
                best = (v, probe);
            }
            // odometer over the dim-dimensional grid
            let mut carry = 0;
            while carry < dim {
                steps[carry] += 1;
                if steps[carry] <= half {
                    break;
                }
                steps[carry] = -half;
                carry += 1;
            }
            if carry == dim {
                break;
            }
        }
        center = best.1.clone();
        radius *= 0.6;
    }
    best.1
}

/// A smooth (finite-valued) term for [`min_oracle`]: value and subgradient.
pub struct SmoothTerm<'a> {
    pub value: &'a (dyn Fn(&RealArray) -> f64 + Sync),
    pub subgrad: &'a (dyn Fn(&RealArray) -> RealArray + Sync),
}

/// A decomposed problem `minimize sum_i f_i(x)` for the reference solver:
/// finite terms carry subgradients, constraint terms carry projectors.
pub struct MinProblem<'a> {
    pub smooth: Vec<SmoothTerm<'a>>,
    pub projectors: Vec<&'a dyn Projector>,
}

impl MinProblem<'_> {
    fn project_all(&self, mut x: RealArray, sweeps: usize) -> RealArray {
        for _ in 0..sweeps.max(1) {
            for p in &self.projectors {
                x = p.project(&x);
            }
        }
        x
    }

    fn smooth_value(&self, x: &RealArray) -> f64 {
        self.smooth.iter().map(|t| (t.value)(x)).sum()
    }
}

/// Projected subgradient with diminishing steps `c / sqrt(n+1)` and Polyak
/// averaging; returns the better of the averaged point and the best iterate.
///
/// The reported value is the sum of the smooth terms at the returned point
/// (indicator terms vanish on their sets; with several projectors the point
/// is feasible up to the accuracy of cyclic projections).
pub fn min_oracle(
    problem: &MinProblem<'_>,
    x0: &RealArray,
    iterations: usize,
    step_scale: f64,
) -> (RealArray, f64) {
    let mut x = problem.project_all(x0.clone(), 4);
    let mut avg = x.clone();
    let mut best = (problem.smooth_value(&x), x.clone());
    for n in 0..iterations {
        let mut g = RealArray::zeros(x.shape());
        for t in &problem.smooth {
            g = g.add(&(t.subgrad)(&x));
        }
        let step = step_scale / ((n + 1) as f64).sqrt();
        x.axpy(-step, &g);
        x = problem.project_all(x, 1);
        let v = problem.smooth_value(&x);
        if v < best.0 {
            best = (v, x.clone());
        }
        // running mean of the iterates
        let w = 1.0 / (n + 2) as f64;
        avg.scale_assign(1.0 - w);
        avg.axpy(w, &x);
    }
    let avg_proj = problem.project_all(avg, 8);
    let avg_val = problem.smooth_value(&avg_proj);
    if avg_val < best.0 {
        (avg_proj, avg_val)
    } else {
        (best.1.clone(), best.0)
    }
}

/// Subdifferential test of `p = prox_{gamma f}(x)`:
/// for every probe `y`, `<y - p, x - p> + gamma f(p) <= gamma f(y) + tol`.
pub fn subgrad_check(
    f: &dyn Fn(&RealArray) -> f64,
    p: &RealArray,
    x: &RealArray,
    gamma: f64,
    probes: &[RealArray],
    tol: f64,
) -> bool {
    let fp = gamma * f(p);
    if !fp.is_finite() {
        return false;
    }
    let xp = x.sub(p);
    probes.iter().all(|y| {
        let fy = gamma * f(y);
        !fy.is_finite() || y.sub(p).dot(&xp) + fp <= fy + tol
    })
}

/// Slack of the prox optimality certificate: the largest amount by which a
/// probe beats `p` in `gamma f(.) + ||x - .||^2 / 2`. Nonpositive (up to
/// tolerance) when `p` is the prox.
pub fn prox_certificate_slack(
    f: &dyn Fn(&RealArray) -> f64,
    p: &RealArray,
    x: &RealArray,
    gamma: f64,
    probes: &[RealArray],
) -> f64 {
    let at = |y: &RealArray| {
        let fy = f(y);
        if fy.is_finite() {
            gamma * fy + 0.5 * x.sub(y).norm_sq()
        } else {
            f64::INFINITY
        }
    };
    let vp = at(p);
    probes
        .iter()
        .map(|y| vp - at(y))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Worst violation of firm nonexpansiveness
/// `||Tx - Ty||^2 <= <x - y, Tx - Ty>` over sampled pairs.
pub fn firm_nonexpansiveness_slack(
    op: &dyn ProxFn,
    gamma: f64,
    pairs: &[(RealArray, RealArray)],
) -> f64 {
    pairs
        .iter()
        .map(|(x, y)| {
            let px = op.prox(x, gamma).expect("prox evaluation");
            let py = op.prox(y, gamma).expect("prox evaluation");
            let d = px.sub(&py);
            d.norm_sq() - x.sub(y).dot(&d)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Probes scattered around `p` at mixed scales, plus `p` shifted toward `x`.
pub fn probes_around(
    p: &RealArray,
    x: &RealArray,
    count: usize,
    rng: &mut impl Rng,
) -> Vec<RealArray> {
    let mut out = Vec::with_capacity(count);
    let scales = [1e-4, 1e-2, 0.1, 1.0, 10.0];
    for i in 0..count {
        let scale = scales[i % scales.len()];
        let mut y = p.clone();
        for v in y.data_mut() {
            *v += scale * rng.gen_range(-1.0..1.0);
        }
        if i % 7 == 0 {
            let t = rng.gen_range(0.0..1.0);
            y.axpy(t, &x.sub(p));
        }
        out.push(y);
    }
    out
}

/// Exact projector onto `[lo, hi]^n ∩ {x 1_S = 0} ∩ {<x, 1> = n mu}`,
/// by bisection on the shift of the clamped coordinates. Used as an
/// independent reference for problems mixing the box, mask and mean sets.
pub struct BoxMaskMeanExact {
    pub lo: f64,
    pub hi: f64,
    pub zero_mask: Option<Vec<bool>>,
    pub mu: f64,
}

impl BoxMaskMeanExact {
    fn masked(&self, i: usize) -> bool {
        self.zero_mask.as_ref().is_some_and(|m| m[i])
    }
}

impl Projector for BoxMaskMeanExact {
    fn project(&self, x: &RealArray) -> RealArray {
        let n = x.len();
        let target = n as f64 * self.mu;
        let sum_at = |theta: f64| -> f64 {
            x.data()
                .iter()
                .enumerate()
                .filter(|(i, _)| !self.masked(*i))
                .map(|(_, v)| (v - theta).clamp(self.lo, self.hi))
                .sum()
        };
        let spread = x.data().iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        let mut lo_t = -(spread + self.hi.abs() + 1.0);
        let mut hi_t = spread + self.lo.abs() + 1.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo_t + hi_t);
            if sum_at(mid) > target {
                lo_t = mid;
            } else {
                hi_t = mid;
            }
        }
        let theta = 0.5 * (lo_t + hi_t);
        let mut out = x.clone();
        for (i, v) in out.data_mut().iter_mut().enumerate() {
            *v = if self.masked(i) {
                0.0
            } else {
                (*v - theta).clamp(self.lo, self.hi)
            };
        }
        out
    }
}

/// Exact projector onto the spectral set
/// `{x : X = 0 on zero_mask, |X| <= rho on cap_mask, ||x|| <= mu}`,
/// by per-bin shrinkage with a bisection on the energy multiplier.
/// Reference implementation for the pulse-design constraint intersection.
pub struct SpectralBallExact {
    pub shape: Shape,
    pub zero_mask: Vec<bool>,
    pub cap_mask: Vec<bool>,
    pub rho: f64,
    pub mu: f64,
}

impl SpectralBallExact {
    fn shrunk_energy(&self, spectrum: &[num_complex::Complex64], lambda: f64) -> f64 {
        spectrum
            .iter()
            .enumerate()
            .map(|(k, c)| {
                if self.zero_mask[k] {
                    0.0
                } else if self.cap_mask[k] {
                    c.norm().min(self.rho * (1.0 + lambda)).powi(2)
                } else {
                    c.norm_sqr()
                }
            })
            .sum::<f64>()
            / (1.0 + lambda).powi(2)
    }
}

impl Projector for SpectralBallExact {
    fn project(&self, x: &RealArray) -> RealArray {
        let n = x.len() as f64;
        let s = dft(x);
        let budget = n * self.mu * self.mu;
        let mut lambda = 0.0;
        if self.shrunk_energy(s.data(), 0.0) > budget {
            let mut lo = 0.0;
            let mut hi = 1.0;
            while self.shrunk_energy(s.data(), hi) > budget {
                hi *= 2.0;
            }
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if self.shrunk_energy(s.data(), mid) > budget {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            lambda = 0.5 * (lo + hi);
        }
        let mut out = s.clone();
        for (k, c) in out.data_mut().iter_mut().enumerate() {
            if self.zero_mask[k] {
                *c = num_complex::Complex64::new(0.0, 0.0);
            } else {
                let mut z = *c / (1.0 + lambda);
                if self.cap_mask[k] {
                    let mag = z.norm();
                    if mag > self.rho {
                        z *= self.rho / mag;
                    }
                }
                *c = z;
            }
        }
        idft(&out).expect("projection keeps data finite")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linop::random_array;
    use crate::prox::{BoxMask, EnergyBall, FourierMagnitude, FourierZero, MeanHyperplane};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn grid_oracle_reproduces_soft_threshold() {
        let f = |y: &RealArray| y.data()[0].abs();
        let p = prox_oracle(&f, &RealArray::from_scalar(3.0), 1.0);
        assert!((p.data()[0] - 2.0).abs() < 1e-8);
    }

    #[test]
    fn grid_oracle_zero_function_is_identity() {
        let f = |_: &RealArray| 0.0;
        let x = RealArray::from_vec(vec![0.3, -1.7]);
        let p = prox_oracle(&f, &x, 2.0);
        assert!(p.max_abs_diff(&x) < 1e-8);
    }

    #[test]
    fn grid_oracle_clamps_against_indicator() {
        let f = |y: &RealArray| {
            if (0.0..=1.0).contains(&y.data()[0]) {
                0.0
            } else {
                f64::INFINITY
            }
        };
        let p = prox_oracle(&f, &RealArray::from_scalar(5.0), 1.0);
        assert!((p.data()[0] - 1.0).abs() < 1e-8);
    }

    #[test]
    fn min_oracle_on_three_quadratics() {
        let centers = [1.0, 2.0, 6.0];
        let values: Vec<Box<dyn Fn(&RealArray) -> f64 + Sync>> = centers
            .iter()
            .map(|&c| {
                Box::new(move |x: &RealArray| (x.data()[0] - c).powi(2))
                    as Box<dyn Fn(&RealArray) -> f64 + Sync>
            })
            .collect();
        let grads: Vec<Box<dyn Fn(&RealArray) -> RealArray + Sync>> = centers
            .iter()
            .map(|&c| {
                Box::new(move |x: &RealArray| RealArray::from_scalar(2.0 * (x.data()[0] - c)))
                    as Box<dyn Fn(&RealArray) -> RealArray + Sync>
            })
            .collect();
        let smooth: Vec<SmoothTerm> = values
            .iter()
            .zip(&grads)
            .map(|(v, g)| SmoothTerm {
                value: v.as_ref(),
                subgrad: g.as_ref(),
            })
            .collect();
        let problem = MinProblem {
            smooth,
            projectors: vec![],
        };
        let (x, _val) = min_oracle(&problem, &RealArray::from_scalar(0.0), 20_000, 0.5);
        assert!((x.data()[0] - 3.0).abs() < 1e-4);
    }

    #[test]
    fn min_oracle_indicator_plus_abs() {
        let value = |x: &RealArray| (x.data()[0] - 2.0).abs();
        let grad = |x: &RealArray| RealArray::from_scalar((x.data()[0] - 2.0).signum());
        let boxset = BoxMask::new(0.0, 1.0, None).unwrap();
        let problem = MinProblem {
            smooth: vec![SmoothTerm {
                value: &value,
                subgrad: &grad,
            }],
            projectors: vec![&boxset],
        };
        let (x, val) = min_oracle(&problem, &RealArray::from_scalar(0.2), 50_000, 0.5);
        assert!((x.data()[0] - 1.0).abs() < 1e-6);
        assert!((val - 1.0).abs() < 1e-6);
    }

    #[test]
    fn subgrad_check_accepts_true_prox_and_rejects_fake() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        let f = |y: &RealArray| y.data().iter().map(|v| v.abs()).sum::<f64>();
        let x = RealArray::from_vec(vec![3.0, -2.0, 0.4]);
        let p = x.map(|v| crate::prox::soft_threshold(v, 1.0));
        let probes = probes_around(&p, &x, 500, &mut rng);
        assert!(subgrad_check(&f, &p, &x, 1.0, &probes, 1e-9));
        // deliberately wrong candidate: x itself (outside the dead zone)
        assert!(!subgrad_check(&f, &x, &x, 1.0, &probes, 1e-9));
    }

    #[test]
    fn box_mask_mean_exact_is_a_projection() {
        let mut rng = ChaCha8Rng::seed_from_u64(92);
        let mask = vec![false, true, false, false, false, false];
        let exact = BoxMaskMeanExact {
            lo: 0.0,
            hi: 10.0,
            zero_mask: Some(mask.clone()),
            mu: 3.0,
        };
        for _ in 0..20 {
            let x = random_array(Shape::One(6), &mut rng).scale(12.0);
            let p = exact.project(&x);
            // feasibility
            assert!((p.sum() - 18.0).abs() < 1e-6);
            assert_eq!(p.data()[1], 0.0);
            for v in p.data() {
                assert!((-1e-9..=10.0 + 1e-9).contains(v));
            }
            // the Kolmogorov inequality against sampled feasible points
            let members: Vec<RealArray> = (0..40)
                .map(|_| exact.project(&random_array(Shape::One(6), &mut rng).scale(12.0)))
                .collect();
            let xp = x.sub(&p);
            for y in &members {
                assert!(y.sub(&p).dot(&xp) <= 1e-7);
            }
        }
    }

    #[test]
    fn spectral_ball_exact_matches_separate_projectors_when_ball_inactive() {
        let mut rng = ChaCha8Rng::seed_from_u64(93);
        let n = 16;
        let mut zero_mask = vec![false; n];
        zero_mask[0] = true;
        zero_mask[4] = true;
        zero_mask[12] = true;
        let mut cap_mask = vec![false; n];
        for k in 6..=10 {
            cap_mask[k] = true;
        }
        let exact = SpectralBallExact {
            shape: Shape::One(n),
            zero_mask: zero_mask.clone(),
            cap_mask: cap_mask.clone(),
            rho: 0.4,
            mu: 1e9, // ball never binds
        };
        let zero = FourierZero::new(Shape::One(n), zero_mask).unwrap();
        let cap = FourierMagnitude::new(Shape::One(n), cap_mask, 0.4).unwrap();
        let x = random_array(Shape::One(n), &mut rng);
        let a = exact.project(&x);
        let b = cap.project(&zero.project(&x));
        assert!(a.max_abs_diff(&b) < 1e-10);
    }

    #[test]
    fn spectral_ball_exact_saturates_energy() {
        let mut rng = ChaCha8Rng::seed_from_u64(94);
        let n = 16;
        let exact = SpectralBallExact {
            shape: Shape::One(n),
            zero_mask: vec![false; n],
            cap_mask: vec![false; n],
            rho: 1.0,
            mu: 0.5,
        };
        let x = random_array(Shape::One(n), &mut rng).scale(10.0);
        let p = exact.project(&x);
        assert!((p.norm() - 0.5).abs() < 1e-9);
        // with no masks this must agree with the plain ball projection
        let ball = EnergyBall { mu: 0.5 };
        assert!(p.max_abs_diff(&ball.project(&x)) < 1e-9);
    }

    #[test]
    fn certificate_slack_flags_non_minimizers() {
        let mut rng = ChaCha8Rng::seed_from_u64(95);
        let f = |y: &RealArray| y.norm();
        let x = RealArray::from_vec(vec![2.0, 1.0]);
        let scale = 1.0 - 1.0 / x.norm(); // prox of the norm shrinks radially
        let p = x.scale(scale);
        let probes = probes_around(&p, &x, 300, &mut rng);
        assert!(prox_certificate_slack(&f, &p, &x, 1.0, &probes) <= 1e-9);
        let wrong = x.scale(0.2);
        assert!(prox_certificate_slack(&f, &wrong, &x, 1.0, &probes) > 1e-3);
    }

    #[test]
    fn mean_hyperplane_reference_cross_check() {
        // BoxMaskMeanExact with an unbounded box degenerates to the
        // hyperplane projection
        let mut rng = ChaCha8Rng::seed_from_u64(96);
        let exact = BoxMaskMeanExact {
            lo: -1e12,
            hi: 1e12,
            zero_mask: None,
            mu: 2.5,
        };
        let plane = MeanHyperplane { mu: 2.5 };
        let x = random_array(Shape::One(8), &mut rng).scale(5.0);
        let a = exact.project(&x);
        let b = plane.project(&x);
        assert!(a.max_abs_diff(&b) < 1e-5);
    }
}
