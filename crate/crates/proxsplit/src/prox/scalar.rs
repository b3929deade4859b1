//! Scalar convex functions with explicit proximity operators.
//!
//! These drive the separable operators and the distance-power formulas. Each
//! carries `beta = max of the subdifferential at zero`, the branch threshold
//! in the prox of `phi(d_C(.))`.

/// `sign(t) * max(|t| - thresh, 0)`.
#[inline]
pub fn soft_threshold(t: f64, thresh: f64) -> f64 {
    if t > thresh {
        t - thresh
    } else if t < -thresh {
        t + thresh
    } else {
        0.0
    }
}

pub trait ScalarConvex: Send + Sync {
    fn value(&self, t: f64) -> f64;

    /// `prox_{gamma phi}(t)`.
    fn prox(&self, t: f64, gamma: f64) -> f64;

    /// `prox_{gamma phi*}(t)`. The default route goes through the Moreau
    /// decomposition; implementations override it when an independent
    /// closed form exists (those overrides are what make the Moreau identity
    /// a real test rather than a tautology).
    fn conjugate_prox(&self, t: f64, gamma: f64) -> f64 {
        t - gamma * self.prox(t / gamma, 1.0 / gamma)
    }

    /// `beta = max of the subdifferential of phi at 0`.
    fn max_subgrad_at_zero(&self) -> f64;
}

/// `phi(t) = alpha |t|`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledAbs {
    pub alpha: f64,
}

impl ScalarConvex for ScaledAbs {
    fn value(&self, t: f64) -> f64 {
        self.alpha * t.abs()
    }

    fn prox(&self, t: f64, gamma: f64) -> f64 {
        soft_threshold(t, gamma * self.alpha)
    }

    /// `phi*` is the indicator of `[-alpha, alpha]`, so the conjugate prox is
    /// a clamp for every `gamma`.
    fn conjugate_prox(&self, t: f64, _gamma: f64) -> f64 {
        t.clamp(-self.alpha, self.alpha)
    }

    fn max_subgrad_at_zero(&self) -> f64 {
        self.alpha
    }
}

/// `phi(t) = alpha |t|^p` with `p > 1`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledPower {
    pub alpha: f64,
    pub p: f64,
}

impl ScaledPower {
    pub fn new(alpha: f64, p: f64) -> Self {
        assert!(alpha > 0.0 && p > 1.0);
        Self { alpha, p }
    }
}

impl ScalarConvex for ScaledPower {
    fn value(&self, t: f64) -> f64 {
        self.alpha * t.abs().powf(self.p)
    }

    fn prox(&self, t: f64, gamma: f64) -> f64 {
        scalar_power_prox(t, gamma * self.alpha, self.p)
    }

    fn conjugate_prox(&self, t: f64, gamma: f64) -> f64 {
        if self.p == 2.0 {
            // phi*(u) = u^2 / (4 alpha)
            t / (1.0 + gamma / (2.0 * self.alpha))
        } else {
            t - gamma * self.prox(t / gamma, 1.0 / gamma)
        }
    }

    fn max_subgrad_at_zero(&self) -> f64 {
        0.0
    }
}

/// `phi = 0`.
#[derive(Debug, Clone, Copy)]
pub struct ZeroScalar;

impl ScalarConvex for ZeroScalar {
    fn value(&self, _t: f64) -> f64 {
        0.0
    }
    fn prox(&self, t: f64, _gamma: f64) -> f64 {
        t
    }
    /// `phi*` is the indicator of `{0}`.
    fn conjugate_prox(&self, _t: f64, _gamma: f64) -> f64 {
        0.0
    }
    fn max_subgrad_at_zero(&self) -> f64 {
        0.0
    }
}

/// Minimizer of `c |y|^p + (y - t)^2 / 2` for `c >= 0`, `p > 1`.
///
/// Odd in `t`. Closed forms for `p = 2` and `p = 3/2`; otherwise a
/// safeguarded Newton iteration on `y + c p y^(p-1) = |t|` over `[0, |t|]`,
/// driven to residual `1e-12`.
pub fn scalar_power_prox(t: f64, c: f64, p: f64) -> f64 {
    assert!(c >= 0.0 && p > 1.0);
    if t == 0.0 || c == 0.0 {
        return t;
    }
    let s = t.abs();
    let y = if p == 2.0 {
        s / (1.0 + 2.0 * c)
    } else if p == 1.5 {
        // y + (3c/2) sqrt(y) = s, quadratic in sqrt(y)
        let b = 1.5 * c;
        let u = 0.5 * (-b + (b * b + 4.0 * s).sqrt());
        u * u
    } else {
        solve_monotone(s, |y| y + c * p * y.powf(p - 1.0), s)
    };
    y.copysign(t)
}

/// Solve `g(y) = target` for increasing `g` on `[0, upper]` by Newton steps
/// with a bisection safeguard. `g(0) <= target <= g(upper)` must hold.
pub(crate) fn solve_monotone(target: f64, g: impl Fn(f64) -> f64, upper: f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = upper;
    let mut y = upper;
    let tol = 1e-12 * (1.0 + target.abs());
    for _ in 0..200 {
        let r = g(y) - target;
        if r.abs() <= tol {
            return y;
        }
        if r > 0.0 {
            hi = y;
        } else {
            lo = y;
        }
        // secant-style Newton using a numeric derivative
        let h = 1e-7 * (1.0 + y.abs());
        let slope = (g(y + h) - g(y - h.min(y))) / (h + h.min(y));
        let mut next = if slope.is_finite() && slope > 0.0 {
            y - r / slope
        } else {
            0.5 * (lo + hi)
        };
        if !(next > lo && next < hi) {
            next = 0.5 * (lo + hi);
        }
        y = next;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn soft_threshold_cases() {
        assert_eq!(soft_threshold(3.0, 1.0), 2.0);
        assert_eq!(soft_threshold(0.0, 1.0), 0.0);
        assert_eq!(soft_threshold(-0.5, 1.0), 0.0);
        assert_eq!(soft_threshold(-2.5, 1.0), -1.5);
    }

    #[test]
    fn abs_conjugate_is_clamp_and_moreau_holds() {
        let phi = ScaledAbs { alpha: 2.0 };
        for &t in &[-3.0, -1.5, 0.0, 0.7, 4.0] {
            for &gamma in &[0.5, 1.0, 2.0] {
                // x = prox_{gamma phi}(x) + gamma prox_{phi*/gamma}(x/gamma)
                let direct = phi.prox(t, gamma);
                let dual = gamma * phi.conjugate_prox(t / gamma, 1.0 / gamma);
                assert!((direct + dual - t).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn power_prox_p2_closed_form() {
        let phi = ScaledPower::new(0.75, 2.0);
        // minimize 0.75 y^2 + (y-3)^2/2 -> y = 3 / (1 + 1.5)
        assert!((phi.prox(3.0, 1.0) - 3.0 / 2.5).abs() < 1e-14);
        // Moreau with the independent conjugate form
        for &t in &[-2.0, 0.3, 5.0] {
            let direct = phi.prox(t, 1.3);
            let dual = 1.3 * phi.conjugate_prox(t / 1.3, 1.0 / 1.3);
            assert!((direct + dual - t).abs() < 1e-12);
        }
    }

    #[test]
    fn power_prox_three_halves_matches_newton() {
        for &t in &[-4.0, -0.2, 0.1, 2.5, 9.0] {
            for &c in &[0.1, 1.0, 3.0] {
                let closed = scalar_power_prox(t, c, 1.5);
                let newton =
                    solve_monotone(t.abs(), |y| y + c * 1.5 * y.powf(0.5), t.abs()).copysign(t);
                assert!((closed - newton).abs() < 1e-10, "t={t} c={c}");
            }
        }
    }

    #[test]
    fn power_prox_general_p_stationarity() {
        let (t, c, p) = (2.0, 0.8, 2.7);
        let y = scalar_power_prox(t, c, p);
        // optimality: y + c p y^{p-1} = t
        assert!((y + c * p * y.powf(p - 1.0) - t).abs() < 1e-10);
        assert_eq!(scalar_power_prox(-t, c, p), -y, "odd symmetry");
    }
}
