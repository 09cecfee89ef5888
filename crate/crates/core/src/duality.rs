//! Self-duality audits through exact `Q/Z`-valued bicharacters.
//!
//! A self-dual system supplies a symmetric pairing `B` with
//! `B(β_a(x), y) = B(x, β_a(y))` and a finite family of dual test points
//! under which `M` is exactly its own annihilator:
//! `x ∈ M ⟺ B(x, p) = 0` for every test point `p`.

use crate::report::Check;
use crate::scalar::QmodZ;
use crate::system::{CosetSystem, InstanceConfig};

pub trait SelfDualSystem: CosetSystem {
    /// The symmetric, self-dualizing pairing.
    fn bichar_pair(&self, x: &Self::NElem, y: &Self::NElem) -> QmodZ;

    /// Test points under which the pairing detects membership in `M` for the
    /// configured samples.
    fn dual_test_points(&self, cfg: &InstanceConfig<Self>) -> Vec<Self::NElem>;
}

impl SelfDualSystem for crate::instances::rational::RationalSystem {
    fn bichar_pair(&self, x: &Self::NElem, y: &Self::NElem) -> QmodZ {
        QmodZ::new(x * y)
    }

    fn dual_test_points(&self, _cfg: &InstanceConfig<Self>) -> Vec<Self::NElem> {
        vec![num::BigRational::from_integer(1.into())]
    }
}

impl SelfDualSystem for crate::instances::numberfield::NumberFieldSystem {
    fn bichar_pair(&self, x: &Self::NElem, y: &Self::NElem) -> QmodZ {
        self.bichar(x, y)
    }

    fn dual_test_points(&self, _cfg: &InstanceConfig<Self>) -> Vec<Self::NElem> {
        (0..self.degree()).map(|i| self.theta_pow(i)).collect()
    }
}

impl SelfDualSystem for crate::instances::lamplighter::LamplighterSystem {
    /// The shifted pairing `Σ f(i)·g(-i-1)/m`; the unshifted one does not
    /// annihilate `M` against itself.
    fn bichar_pair(&self, x: &Self::NElem, y: &Self::NElem) -> QmodZ {
        self.lamp_bichar_dual(x, y)
    }

    fn dual_test_points(&self, cfg: &InstanceConfig<Self>) -> Vec<Self::NElem> {
        let k = cfg
            .n_samples
            .iter()
            .flat_map(|f| {
                f.min_pos()
                    .map(|p| p.abs())
                    .into_iter()
                    .chain(f.max_pos().map(|p| p.abs()))
            })
            .max()
            .unwrap_or(0);
        let mut out = Vec::new();
        for j in 0..=2 * k {
            for v in 1..self.modulus() {
                out.push(self.delta(j, v));
            }
        }
        out
    }
}

/// Symmetry of the pairing over sampled `(a, x, y)` and the membership
/// equivalence over sampled `x`.
pub fn duality_audit<S: SelfDualSystem>(sys: &S, cfg: &InstanceConfig<S>) -> Vec<Check> {
    let mut out = Vec::new();
    let xs: Vec<_> = cfg.n_samples.iter().take(12).collect();
    for a in &cfg.h_all {
        for x in &xs {
            for y in &xs {
                let lhs = sys.bichar_pair(&sys.conj(a, x), y);
                let rhs = sys.bichar_pair(x, &sys.conj(a, y));
                out.push(Check::of(
                    "duality.symmetry",
                    format!(
                        "{}, {}, {}",
                        sys.h_to_json(a),
                        sys.n_to_json(x),
                        sys.n_to_json(y)
                    ),
                    lhs == rhs,
                    || format!("lhs={lhs} rhs={rhs}"),
                ));
            }
        }
    }
    let points = sys.dual_test_points(cfg);
    let m = sys.m_sub();
    for x in cfg.n_samples.iter().chain(cfg.m_samples.iter()) {
        let annihilated = points.iter().all(|p| sys.bichar_pair(x, p).is_zero());
        let in_m = sys.sub_contains(&m, x);
        out.push(Check::of(
            "duality.selfdual_membership",
            sys.n_to_json(x).to_string(),
            annihilated == in_m,
            || format!("annihilated={annihilated} in_m={in_m}"),
        ));
    }
    out
}
