//! The abstract coset system.
//!
//! A *coset system* packages a semidirect product `G = N ⋊ H` together with a
//! distinguished normal subgroup `M ⊆ N` and the conjugate family
//! `U = {aMa⁻¹ : a ∈ H}`. Instances supply exact group arithmetic, canonical
//! forms for the subgroups in (and joins of) this family, canonical coset
//! representatives, quotient transversals, and the `H⁺` membership test.
//!
//! Everything downstream (indicator algebra, crossed product, Hecke
//! convolution, operator oracle) is generic over [`CosetSystem`].

use std::collections::BTreeSet;
use std::fmt::Debug;

use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CosetError {
    #[error("subgroup is not nested in the claimed parent")]
    NotNested,
    #[error("refinement blowup: {lhs_index} x {rhs_index} refined cosets exceed budget {budget}")]
    RefinementBlowup {
        lhs_index: u64,
        rhs_index: u64,
        budget: u64,
    },
    #[error("no contraction available from the configured sample sets")]
    NoContraction,
    #[error("no effectiveness witness in the configured sample set")]
    NoWitness,
    #[error("no factorization: sample sets provide no two valid auxiliary conjugators")]
    NoFactorization,
    #[error("two factorization routes disagree")]
    RouteMismatch,
    #[error("element is not in the base ring")]
    NotInRing,
    #[error("element is not in H+")]
    NotInHPlus,
    #[error("element is not in M")]
    NotInM,
    #[error("element is not invertible")]
    NotInvertible,
    #[error("element has a formal unit part where an honest D0 coefficient is required")]
    ImproperElement,
    #[error("enumeration too large")]
    TooLarge,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// An element of `G = N ⋊ H`, written as the pair `(n, h)` meaning `n·h`.
///
/// The composition law is `(n₁,h₁)(n₂,h₂) = (n₁·β_{h₁}(n₂), h₁h₂)` where
/// `β_h` is conjugation by `h`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElem<S: CosetSystem> {
    pub n: S::NElem,
    pub h: S::HElem,
}

/// A coset `rep·U` of a subgroup `U` in the lattice generated by the family
/// `U = {aMa⁻¹}`, in canonical form: `rep` is the canonical representative of
/// its class, so structural equality is set equality.
///
/// Ordering groups cosets by subgroup first, which gives the deterministic
/// fold order used by the refinement machinery.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Coset<S: CosetSystem> {
    sub: S::Sub,
    rep: S::NElem,
}

impl<S: CosetSystem> Coset<S> {
    pub fn rep(&self) -> &S::NElem {
        &self.rep
    }

    pub fn sub(&self) -> &S::Sub {
        &self.sub
    }
}

/// Finite sample sets over which all universally quantified conditions and
/// relation families are audited.
///
/// The standing conditions of the theory quantify over infinite sets; the
/// audits check their finite shadows over these explicit samples and report
/// failures with witnesses.
#[derive(Clone, Debug)]
pub struct InstanceConfig<S: CosetSystem> {
    /// Sampled elements of `H⁺` (validated on construction).
    pub h_plus: Vec<S::HElem>,
    /// Sampled elements of `H`, including elements outside `H⁺`.
    pub h_all: Vec<S::HElem>,
    /// Sampled elements of `M` (validated on construction).
    pub m_samples: Vec<S::NElem>,
    /// Sampled elements of `N`.
    pub n_samples: Vec<S::NElem>,
    /// Sampled elements of `G`.
    pub g_samples: Vec<GroupElem<S>>,
}

impl<S: CosetSystem> InstanceConfig<S> {
    pub fn new(
        sys: &S,
        h_plus: Vec<S::HElem>,
        h_all: Vec<S::HElem>,
        m_samples: Vec<S::NElem>,
        n_samples: Vec<S::NElem>,
        g_samples: Vec<GroupElem<S>>,
    ) -> Result<Self, CosetError> {
        for a in &h_plus {
            if !sys.in_h_plus(a) {
                return Err(CosetError::NotInHPlus);
            }
        }
        let m = sys.m_sub();
        for s in &m_samples {
            if !sys.sub_contains(&m, s) {
                return Err(CosetError::NotInM);
            }
        }
        Ok(InstanceConfig {
            h_plus,
            h_all,
            m_samples,
            n_samples,
            g_samples,
        })
    }

    /// The distinct canonical subgroups named by the configured conjugators,
    /// always including `M` itself.
    pub fn sampled_subgroups(&self, sys: &S) -> Vec<S::Sub> {
        let mut set: BTreeSet<S::Sub> = BTreeSet::new();
        set.insert(sys.m_sub());
        for a in self.h_plus.iter().chain(self.h_all.iter()) {
            set.insert(sys.sub_of_conj(a));
        }
        set.into_iter().collect()
    }
}

/// A semidirect product `N ⋊ H` with distinguished subgroup `M` and the
/// conjugate family `U = {aMa⁻¹}` in canonical form.
///
/// `Sub` values are canonical objects (structural equality is subgroup
/// equality) closed under conjugation, the constructive filter-base meet, and
/// exact joins `S + T`. Implementations must keep every required method exact;
/// there is no approximate arithmetic anywhere in the trait.
pub trait CosetSystem: Clone + PartialEq + Eq + PartialOrd + Ord + Debug {
    type NElem: Clone + PartialEq + Eq + PartialOrd + Ord + std::hash::Hash + Debug;
    type HElem: Clone + PartialEq + Eq + PartialOrd + Ord + std::hash::Hash + Debug;
    type Sub: Clone + PartialEq + Eq + PartialOrd + Ord + std::hash::Hash + Debug;

    fn name(&self) -> &'static str;

    /// Budget on refined-coset counts inside indicator products and equality
    /// tests; exceeding it raises [`CosetError::RefinementBlowup`].
    fn refine_budget(&self) -> u64;

    // group structure on N and H, and the conjugation action of H on N
    fn n_id(&self) -> Self::NElem;
    fn n_op(&self, a: &Self::NElem, b: &Self::NElem) -> Self::NElem;
    fn n_inv(&self, a: &Self::NElem) -> Self::NElem;
    fn h_id(&self) -> Self::HElem;
    fn h_op(&self, a: &Self::HElem, b: &Self::HElem) -> Self::HElem;
    fn h_inv(&self, a: &Self::HElem) -> Self::HElem;
    /// `β_h(n) = h n h⁻¹`.
    fn conj(&self, h: &Self::HElem, n: &Self::NElem) -> Self::NElem;

    /// The distinguished subgroup `M` in canonical form.
    fn m_sub(&self) -> Self::Sub;
    /// The canonical form of `aMa⁻¹`.
    fn sub_of_conj(&self, a: &Self::HElem) -> Self::Sub;
    /// The canonical form of `hSh⁻¹`.
    fn sub_conj(&self, h: &Self::HElem, s: &Self::Sub) -> Self::Sub;
    fn sub_contains(&self, s: &Self::Sub, n: &Self::NElem) -> bool;
    /// Canonical representative of the coset `n·S`.
    fn sub_reduce(&self, s: &Self::Sub, n: &Self::NElem) -> Self::NElem;
    /// Whether `s ⊆ t`.
    fn sub_subset(&self, s: &Self::Sub, t: &Self::Sub) -> bool;
    /// A member of the family contained in `s ∩ t`. Deterministic, and equal
    /// to `s` when `s ⊆ t` (so `meet(s, s) = s`).
    fn sub_meet(&self, s: &Self::Sub, t: &Self::Sub) -> Self::Sub;
    /// The exact subgroup sum `s + t`.
    fn sub_join(&self, s: &Self::Sub, t: &Self::Sub) -> Self::Sub;
    /// The index `[big : small]`; `NotNested` when `small ⊄ big`.
    fn sub_index(&self, big: &Self::Sub, small: &Self::Sub) -> Result<u64, CosetError>;
    /// Canonical representatives of the cosets of `small` inside `big`,
    /// sorted; length equals `sub_index(big, small)`.
    fn sub_transversal(
        &self,
        big: &Self::Sub,
        small: &Self::Sub,
    ) -> Result<Vec<Self::NElem>, CosetError>;

    /// Membership in `H⁺ = {a ∈ H : aMa⁻¹ ⊆ M}`, by the instance's direct
    /// constructive test.
    fn in_h_plus(&self, a: &Self::HElem) -> bool;

    /// Given `d` with `dMd⁻¹ ≠ M`, produce some `c` with `cMc⁻¹ ⊆ M ∩ dMd⁻¹`
    /// strictly contained in `M`, or `None` when `d` is useless (a unit).
    fn contracting_conjugator(&self, d: &Self::HElem) -> Option<Self::HElem> {
        let m = self.m_sub();
        for cand in [d.clone(), self.h_inv(d)] {
            let s = self.sub_of_conj(&cand);
            if s != m && self.sub_subset(&s, &m) {
                return Some(cand);
            }
        }
        None
    }

    // JSON encodings of the instance-specific element types
    fn n_to_json(&self, n: &Self::NElem) -> Value;
    fn n_from_json(&self, v: &Value) -> Result<Self::NElem, CosetError>;
    fn h_to_json(&self, h: &Self::HElem) -> Value;
    fn h_from_json(&self, v: &Value) -> Result<Self::HElem, CosetError>;
    fn sub_to_json(&self, s: &Self::Sub) -> Value;
    fn sub_from_json(&self, v: &Value) -> Result<Self::Sub, CosetError>;

    /// The documented default sample sets for this instance.
    fn default_config(&self) -> InstanceConfig<Self>;

    // ---- provided operations -------------------------------------------

    fn g_id(&self) -> GroupElem<Self> {
        GroupElem {
            n: self.n_id(),
            h: self.h_id(),
        }
    }

    fn g_of(&self, n: Self::NElem, h: Self::HElem) -> GroupElem<Self> {
        GroupElem { n, h }
    }

    fn g_mul(&self, a: &GroupElem<Self>, b: &GroupElem<Self>) -> GroupElem<Self> {
        GroupElem {
            n: self.n_op(&a.n, &self.conj(&a.h, &b.n)),
            h: self.h_op(&a.h, &b.h),
        }
    }

    fn g_inv(&self, g: &GroupElem<Self>) -> GroupElem<Self> {
        let hi = self.h_inv(&g.h);
        GroupElem {
            n: self.conj(&hi, &self.n_inv(&g.n)),
            h: hi,
        }
    }

    /// The ax+b action `β_g(y) = x·(a y a⁻¹)` for `g = (x, a)`.
    fn beta(&self, g: &GroupElem<Self>, y: &Self::NElem) -> Self::NElem {
        self.n_op(&g.n, &self.conj(&g.h, y))
    }

    /// The canonical coset `rep·sub`.
    fn coset(&self, rep: &Self::NElem, sub: &Self::Sub) -> Coset<Self> {
        Coset {
            rep: self.sub_reduce(sub, rep),
            sub: sub.clone(),
        }
    }

    /// The coset `M` itself (the support of the distinguished projection).
    fn m_coset(&self) -> Coset<Self> {
        self.coset(&self.n_id(), &self.m_sub())
    }

    fn coset_contains(&self, c: &Coset<Self>, n: &Self::NElem) -> bool {
        self.sub_reduce(&c.sub, n) == c.rep
    }

    /// The action of `g = (x, a)` on cosets:
    /// `β_g(yU) = (x·aya⁻¹)·(aUa⁻¹)`, returned in canonical form.
    fn act(&self, g: &GroupElem<Self>, c: &Coset<Self>) -> Coset<Self> {
        let sub = self.sub_conj(&g.h, &c.sub);
        let rep = self.beta(g, &c.rep);
        self.coset(&rep, &sub)
    }

    /// The cosets of `w` partitioning `u`, in canonical sorted order.
    fn quotient_reps(&self, u: &Self::Sub, w: &Self::Sub) -> Result<Vec<Coset<Self>>, CosetError> {
        let reps = self.sub_transversal(u, w)?;
        Ok(reps.into_iter().map(|r| self.coset(&r, w)).collect())
    }

    /// The cosets of `w` partitioning the coset `c`; requires `w ⊆ c.sub`.
    fn refine(&self, c: &Coset<Self>, w: &Self::Sub) -> Result<Vec<Coset<Self>>, CosetError> {
        let reps = self.sub_transversal(&c.sub, w)?;
        let mut out: Vec<Coset<Self>> = reps
            .iter()
            .map(|r| self.coset(&self.n_op(&c.rep, r), w))
            .collect();
        out.sort();
        Ok(out)
    }

    /// A group element `g` with `β_g(c)` a strictly smaller coset contained in
    /// `c`, following the contraction construction: pick `c'` with
    /// `c'Mc'⁻¹ ⊊ M` from the samples, set `a = c'` (conjugated into place),
    /// `x = y·(a y⁻¹ a⁻¹)`. The strict containment is verified by index.
    fn contraction_witness(
        &self,
        cfg: &InstanceConfig<Self>,
        c: &Coset<Self>,
    ) -> Result<GroupElem<Self>, CosetError> {
        for d in cfg.h_plus.iter().chain(cfg.h_all.iter()) {
            let Some(a) = self.contracting_conjugator(d) else {
                continue;
            };
            let x = self.n_op(&c.rep, &self.n_inv(&self.conj(&a, &c.rep)));
            let g = GroupElem { n: x, h: a };
            let image = self.act(&g, c);
            if image.sub == c.sub || !self.sub_subset(&image.sub, &c.sub) {
                continue;
            }
            let idx = match self.sub_index(&c.sub, &image.sub) {
                Ok(i) => i,
                Err(_) => continue,
            };
            if idx >= 2 && self.coset(&image.rep, &c.sub) == *c {
                return Ok(g);
            }
        }
        Err(CosetError::NoContraction)
    }

    /// An `s ∈ M` moved by conjugation by `a`, scanning the M sample set.
    fn effectiveness_witness(
        &self,
        cfg: &InstanceConfig<Self>,
        a: &Self::HElem,
    ) -> Result<Self::NElem, CosetError> {
        for s in &cfg.m_samples {
            if self.conj(a, s) != *s {
                return Ok(s.clone());
            }
        }
        Err(CosetError::NoWitness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::rational::{rat, RationalSystem};

    #[test]
    fn group_laws_on_sampled_triples() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        let gs = &cfg.g_samples;
        for a in gs.iter().take(6) {
            for b in gs.iter().take(6) {
                for c in gs.iter().take(6) {
                    let lhs = sys.g_mul(&sys.g_mul(a, b), c);
                    let rhs = sys.g_mul(a, &sys.g_mul(b, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
        for g in gs {
            assert_eq!(sys.g_mul(g, &sys.g_inv(g)), sys.g_id());
            assert_eq!(sys.g_mul(&sys.g_inv(g), g), sys.g_id());
        }
    }

    #[test]
    fn action_is_an_action_on_sampled_pairs() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        let cosets: Vec<_> = cfg
            .n_samples
            .iter()
            .take(5)
            .flat_map(|n| {
                cfg.h_plus
                    .iter()
                    .take(3)
                    .map(move |a| (n.clone(), a.clone()))
            })
            .map(|(n, a)| {
                let sub = sys.sub_of_conj(&a);
                sys.coset(&n, &sub)
            })
            .collect();
        for g1 in cfg.g_samples.iter().take(8) {
            for g2 in cfg.g_samples.iter().take(8) {
                for c in &cosets {
                    let lhs = sys.act(&sys.g_mul(g1, g2), c);
                    let rhs = sys.act(g1, &sys.act(g2, c));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn act_covariance_of_subgroups() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        for g in &cfg.g_samples {
            for a in &cfg.h_plus {
                let sub = sys.sub_of_conj(a);
                let c = sys.coset(&rat(1, 3), &sub);
                let moved = sys.act(g, &c);
                assert_eq!(*moved.sub(), sys.sub_conj(&g.h, &sub));
            }
        }
    }

    #[test]
    fn contraction_witness_on_unit_coset_contracts() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        let c = sys.m_coset();
        let g = sys.contraction_witness(&cfg, &c).unwrap();
        // the first usable sample is 2, so the image is 2Z inside Z
        assert_eq!(g, sys.g_of(rat(0, 1), rat(2, 1)));
        let image = sys.act(&g, &c);
        assert_eq!(*image.sub(), rat(2, 1));
        assert!(sys.sub_subset(image.sub(), c.sub()));
        assert!(sys.coset_contains(&c, image.rep()));
    }

    #[test]
    fn contraction_witness_on_translated_coset() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        let c = sys.coset(&rat(1, 1), &rat(3, 1));
        let g = sys.contraction_witness(&cfg, &c).unwrap();
        let image = sys.act(&g, &c);
        let idx = sys.sub_index(c.sub(), image.sub()).unwrap();
        assert!(idx >= 2);
        assert!(sys.coset_contains(&c, image.rep()));
        assert!(sys.sub_subset(image.sub(), c.sub()));
    }

    #[test]
    fn effectiveness_witness_examples() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        let w = sys.effectiveness_witness(&cfg, &rat(2, 1)).unwrap();
        assert!(sys.conj(&rat(2, 1), &w) != w);
        // the identity of H fixes everything, so the scan is exhausted
        assert!(matches!(
            sys.effectiveness_witness(&cfg, &rat(1, 1)),
            Err(CosetError::NoWitness)
        ));
    }
}
