//! Prox of `f ∘ M` when `M M* = kappa Id`.
//!
//! For such semi-orthogonal `M`,
//! `prox_{gamma (f ∘ M)} = Id + (1/kappa) M* ∘ (prox_{kappa gamma f} - Id) ∘ M`.
//! Frame synthesis operators (`F* F = kappa Id`) and scaled orthogonal maps
//! both qualify; the constructor probes the identity on random vectors and
//! refuses operators that fail it.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::array::RealArray;
use crate::error::Result;
use crate::linop::{semi_orthogonality_probe, LinearOp};
use crate::prox::{DomainDescriptor, ProxFn};

pub struct SemiOrthogonalProx {
    map: Arc<dyn LinearOp>,
    kappa: f64,
    inner: Arc<dyn ProxFn>,
    domain: DomainDescriptor,
}

impl SemiOrthogonalProx {
    /// `map` plays the role of `M` (so `map.apply ∘ map.adjoint` must equal
    /// `kappa Id`); `inner` is the prox of `f`.
    pub fn new(
        map: Arc<dyn LinearOp>,
        kappa: f64,
        inner: Arc<dyn ProxFn>,
        domain: DomainDescriptor,
    ) -> Result<Self> {
        assert!(kappa > 0.0);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5e31);
        semi_orthogonality_probe(map.as_ref(), kappa, 5, &mut rng)?;
        Ok(Self {
            map,
            kappa,
            inner,
            domain,
        })
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }
}

impl ProxFn for SemiOrthogonalProx {
    fn prox(&self, x: &RealArray, gamma: f64) -> Result<RealArray> {
        let mx = self.map.apply(x);
        let inner_prox = self.inner.prox(&mx, self.kappa * gamma)?;
        let mut out = x.clone();
        out.axpy(1.0 / self.kappa, &self.map.adjoint(&inner_prox.sub(&mx)));
        Ok(out)
    }

    fn domain(&self) -> DomainDescriptor {
        self.domain
    }

    fn objective(&self, x: &RealArray) -> Option<f64> {
        self.inner.objective(&self.map.apply(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::array::Shape;
    use crate::linop::{random_array, IdentityOp, OpKind};
    use crate::prox::{BoxMask, IndicatorProx, L1Prox, Projector};

    #[test]
    fn identity_map_reduces_to_inner_prox() {
        let inner = Arc::new(L1Prox::new(1.0));
        let map = Arc::new(IdentityOp {
            shape: Shape::One(4),
        });
        let f = SemiOrthogonalProx::new(map, 1.0, inner.clone(), DomainDescriptor::Full).unwrap();
        let x = RealArray::from_vec(vec![3.0, -0.5, 0.2, -9.0]);
        let a = f.prox(&x, 0.7).unwrap();
        let b = inner.prox(&x, 0.7).unwrap();
        assert!(a.max_abs_diff(&b) < 1e-14);
    }

    /// sqrt(kappa) times a permutation (orthogonal) matrix.
    struct ScaledShift {
        n: usize,
        scale: f64,
    }
    impl LinearOp for ScaledShift {
        fn apply(&self, x: &RealArray) -> RealArray {
            let d = x.data();
            let mut out = vec![0.0; self.n];
            for i in 0..self.n {
                out[i] = self.scale * d[(i + 1) % self.n];
            }
            RealArray::new(x.shape(), out).unwrap()
        }
        fn adjoint(&self, y: &RealArray) -> RealArray {
            let d = y.data();
            let mut out = vec![0.0; self.n];
            for i in 0..self.n {
                out[(i + 1) % self.n] = self.scale * d[i];
            }
            RealArray::new(y.shape(), out).unwrap()
        }
        fn kind(&self) -> OpKind {
            OpKind::Composite
        }
        fn domain_shape(&self) -> Shape {
            Shape::One(self.n)
        }
        fn range_shape(&self) -> Shape {
            Shape::One(self.n)
        }
    }

    #[test]
    fn orthogonality_probe_rejects_bad_kappa() {
        let map = Arc::new(ScaledShift { n: 6, scale: 2.0 }); // kappa = 4
        let inner = Arc::new(L1Prox::new(1.0));
        assert!(
            SemiOrthogonalProx::new(map.clone(), 3.0, inner.clone(), DomainDescriptor::Full)
                .is_err()
        );
        assert!(SemiOrthogonalProx::new(map, 4.0, inner, DomainDescriptor::Full).is_ok());
    }

    #[test]
    fn zero_set_through_synthesis_projects_onto_the_frame_null_space() {
        // f = indicator of {0} composed with F* gives
        // prox = Id - F F* / kappa, the projection onto null(F*)
        use crate::frame::{FrameAnalysisOp, FrameSpec};
        use crate::linop::AdjointOp;

        struct OriginSet;
        impl Projector for OriginSet {
            fn project(&self, x: &RealArray) -> RealArray {
                RealArray::zeros(x.shape())
            }
        }

        let spec = FrameSpec::haar(1, &[(0, 0), (1, 1)]);
        let kappa = spec.kappa();
        let side = 4;
        let analysis = FrameAnalysisOp {
            spec: spec.clone(),
            side,
        };
        let map: Arc<dyn LinearOp> = Arc::new(AdjointOp(FrameAnalysisOp { spec, side }));
        let f = SemiOrthogonalProx::new(
            map,
            kappa,
            Arc::new(IndicatorProx::new(OriginSet, DomainDescriptor::Affine)),
            DomainDescriptor::Other,
        )
        .unwrap();

        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(52);
        let dim = 2 * side * side;
        for _ in 0..10 {
            let x = random_array(Shape::One(dim), &mut rng);
            let p = f.prox(&x, 1.3).unwrap();
            // direct route: x - F(F* x)/kappa
            let direct = {
                let img = analysis.adjoint(&x);
                let mut out = x.clone();
                out.axpy(-1.0 / kappa, &analysis.apply(&img));
                out
            };
            assert!(p.max_abs_diff(&direct) < 1e-12);
            // the output is orthogonal to the range of F
            let probe = random_array(Shape::Two(side, side), &mut rng);
            assert!(p.dot(&analysis.apply(&probe)).abs() < 1e-10);
            // and idempotent
            assert!(f.prox(&p, 0.7).unwrap().max_abs_diff(&p) < 1e-12);
        }
    }

    #[test]
    fn composed_box_indicator_matches_direct_projection() {
        // f = indicator of [-1, 1]^n composed with the scaled shift M:
        // prox is the projection onto {x : Mx in box}, which for this M is
        // computable directly coordinate-wise.
        let n = 6;
        let kappa = 4.0;
        let map = Arc::new(ScaledShift { n, scale: 2.0 });
        let boxset = BoxMask::new(-1.0, 1.0, None).unwrap();
        let inner = Arc::new(IndicatorProx::new(boxset, DomainDescriptor::BoundedConvex));
        let f =
            SemiOrthogonalProx::new(map.clone(), kappa, inner, DomainDescriptor::Other).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(51);
        for _ in 0..20 {
            let x = random_array(Shape::One(n), &mut rng).scale(2.0);
            let p = f.prox(&x, 1.3).unwrap();
            // direct route: Mx must land in the box, i.e. per-coordinate
            // |2 x_{i+1}| <= 1, so x_{i+1} clamps to [-1/2, 1/2]
            let direct = x.map(|v| v.clamp(-0.5, 0.5));
            assert!(p.max_abs_diff(&direct) < 1e-12);
            let mp = map.apply(&p);
            assert!(BoxMask::new(-1.0, 1.0, None).unwrap().is_member(&mp, 1e-10));
        }
    }
}
