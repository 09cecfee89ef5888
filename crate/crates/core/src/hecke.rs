//! The Hecke algebra of the pair `(G, M)`.
//!
//! For `g = (n, h)` the double coset `MgM` is `(n + M + hMh⁻¹) × {h}`, so the
//! canonical representative reduces `n` modulo the join `J_h = M + hMh⁻¹`.
//! Left cosets `g'M ⊆ MgM` correspond to the classes of `M/(M ∩ hMh⁻¹)` and
//! are labelled by reducing modulo `hMh⁻¹`; the membership test `m₁gm₂ = g'`
//! is thereby solved by reductions, never by unbounded search.
//!
//! Convolution of basis elements pairs left-coset representatives:
//! the multiplicity of a class `D` in `[Mg M]·[MhM]` is the number of pairs
//! `(i, j)` with `g_i h_j M` equal to one fixed left coset of `D`.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::report::Check;
use crate::scalar::Scalar;
use crate::system::{CosetError, CosetSystem, GroupElem, InstanceConfig};

/// A double coset `MgM` keyed by its canonical representative.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DoubleCoset<S: CosetSystem> {
    rep: GroupElem<S>,
}

impl<S: CosetSystem> DoubleCoset<S> {
    /// Canonicalize: reduce the translation part modulo `M + hMh⁻¹`.
    pub fn canonical(sys: &S, g: &GroupElem<S>) -> Self {
        let join = sys.sub_join(&sys.m_sub(), &sys.sub_of_conj(&g.h));
        DoubleCoset {
            rep: sys.g_of(sys.sub_reduce(&join, &g.n), g.h.clone()),
        }
    }

    pub fn identity(sys: &S) -> Self {
        Self::canonical(sys, &sys.g_id())
    }

    pub fn rep(&self) -> &GroupElem<S> {
        &self.rep
    }
}

/// The canonical label of the left coset `gM`.
fn left_label<S: CosetSystem>(sys: &S, g: &GroupElem<S>) -> GroupElem<S> {
    let sub = sys.sub_of_conj(&g.h);
    sys.g_of(sys.sub_reduce(&sub, &g.n), g.h.clone())
}

/// `L(g) = [M : M ∩ gMg⁻¹]`, computed independently of enumeration as
/// `[M + hMh⁻¹ : hMh⁻¹]`.
pub fn hecke_pair_index<S: CosetSystem>(sys: &S, g: &GroupElem<S>) -> Result<u64, CosetError> {
    let hsub = sys.sub_of_conj(&g.h);
    let join = sys.sub_join(&sys.m_sub(), &hsub);
    sys.sub_index(&join, &hsub)
}

/// Representatives `g_i` with `MgM = ⊔ g_i M`, sorted canonically.
pub fn left_coset_decomposition<S: CosetSystem>(
    sys: &S,
    d: &DoubleCoset<S>,
) -> Result<Vec<GroupElem<S>>, CosetError> {
    let m = sys.m_sub();
    let hsub = sys.sub_of_conj(&d.rep.h);
    let w = sys.sub_meet(&m, &hsub);
    let reps = sys.sub_transversal(&m, &w)?;
    let mut labels: std::collections::BTreeSet<GroupElem<S>> = Default::default();
    for r in reps {
        let g = sys.g_of(sys.n_op(&d.rep.n, &r), d.rep.h.clone());
        labels.insert(left_label(sys, &g));
    }
    Ok(labels.into_iter().collect())
}

/// A finitely supported function on `M\G/M` with exact coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElem<S: CosetSystem> {
    terms: BTreeMap<DoubleCoset<S>, Scalar>,
}

impl<S: CosetSystem> Default for HeckeElem<S> {
    fn default() -> Self {
        HeckeElem {
            terms: BTreeMap::new(),
        }
    }
}

impl<S: CosetSystem> HeckeElem<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(d: DoubleCoset<S>) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(d, Scalar::one());
        HeckeElem { terms }
    }

    /// The identity `[M]`.
    pub fn identity(sys: &S) -> Self {
        Self::basis(DoubleCoset::identity(sys))
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (DoubleCoset<S>, Scalar)>) -> Self {
        let mut out = Self::zero();
        for (d, s) in pairs {
            out.add_term(d, s);
        }
        out
    }

    fn add_term(&mut self, d: DoubleCoset<S>, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &s;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DoubleCoset<S>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, s) in &other.terms {
            out.add_term(d.clone(), s.clone());
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        HeckeElem {
            terms: self.terms.iter().map(|(d, s)| (d.clone(), s * k)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-&Scalar::one()))
    }

    /// The involution: class of `g` to class of `g⁻¹`, coefficients
    /// conjugated.
    pub fn star(&self, sys: &S) -> Self {
        Self::from_pairs(
            self.terms
                .iter()
                .map(|(d, s)| (DoubleCoset::canonical(sys, &sys.g_inv(&d.rep)), s.conj())),
        )
    }

    pub fn mul(&self, sys: &S, other: &Self) -> Result<Self, CosetError> {
        let mut out = Self::zero();
        for (d1, s1) in &self.terms {
            for (d2, s2) in &other.terms {
                let coeff = s1 * s2;
                for (d, mult) in basis_mul(sys, d1, d2)? {
                    out.add_term(d, &coeff * &Scalar::from_int(mult as i64));
                }
            }
        }
        Ok(out)
    }
}

/// Structure constants of a basis product, by pairing left-coset
/// representatives and counting arrivals at each class's canonical left
/// coset.
pub fn basis_mul<S: CosetSystem>(
    sys: &S,
    d1: &DoubleCoset<S>,
    d2: &DoubleCoset<S>,
) -> Result<Vec<(DoubleCoset<S>, u64)>, CosetError> {
    let r1 = left_coset_decomposition(sys, d1)?;
    let r2 = left_coset_decomposition(sys, d2)?;
    let mut by_class: BTreeMap<DoubleCoset<S>, BTreeMap<GroupElem<S>, u64>> = BTreeMap::new();
    for g1 in &r1 {
        for g2 in &r2 {
            let u = sys.g_mul(g1, g2);
            let dc = DoubleCoset::canonical(sys, &u);
            let label = left_label(sys, &u);
            *by_class.entry(dc).or_default().entry(label).or_insert(0) += 1;
        }
    }
    let mut out = Vec::with_capacity(by_class.len());
    for (dc, labels) in by_class {
        let anchor = left_label(sys, &dc.rep);
        let mult = *labels.get(&anchor).ok_or_else(|| {
            CosetError::Internal("canonical left coset missing from product".into())
        })?;
        debug_assert!(
            labels.values().all(|&c| c == mult),
            "left-coset counts differ within one double coset"
        );
        out.push((dc, mult));
    }
    Ok(out)
}

/// Independent convolution oracle: the multiplicity of `D` in `[Mg₁M]·[Mg₂M]`
/// is `#{i : g_i⁻¹ d ∈ Mg₂M}` for the canonical representative `d` of `D`,
/// with membership decided by double-coset canonicalization.
pub fn convolution_oracle<S: CosetSystem>(
    sys: &S,
    d1: &DoubleCoset<S>,
    d2: &DoubleCoset<S>,
) -> Result<Vec<(DoubleCoset<S>, u64)>, CosetError> {
    let r1 = left_coset_decomposition(sys, d1)?;
    let r2 = left_coset_decomposition(sys, d2)?;
    // the product is supported on the classes of the pairwise products
    let mut classes: std::collections::BTreeSet<DoubleCoset<S>> = Default::default();
    for g1 in &r1 {
        for g2 in &r2 {
            classes.insert(DoubleCoset::canonical(sys, &sys.g_mul(g1, g2)));
        }
    }
    let mut out = Vec::new();
    for dc in classes {
        let mut count = 0u64;
        for g1 in &r1 {
            let x = sys.g_mul(&sys.g_inv(g1), &dc.rep);
            if DoubleCoset::canonical(sys, &x) == *d2 {
                count += 1;
            }
        }
        if count > 0 {
            out.push((dc, count));
        }
    }
    Ok(out)
}

/// Consistency audit: decomposition counts against the index route,
/// convolution against the oracle, identity neutrality, associativity on
/// seeded random triples, and expulsion of sampled `M`-elements by sampled
/// conjugates.
pub fn hecke_consistency_audit<S: CosetSystem>(
    sys: &S,
    cfg: &InstanceConfig<S>,
    seed: u64,
) -> Vec<Check> {
    let mut out = Vec::new();
    let classes = sampled_classes(sys, cfg);
    for d in &classes {
        let tuple = crate::jsonio::group_to_json(sys, &d.rep).to_string();
        match (
            left_coset_decomposition(sys, d),
            hecke_pair_index(sys, &d.rep),
        ) {
            (Ok(reps), Ok(idx)) => {
                out.push(Check::of(
                    "hecke.count_consistency",
                    tuple,
                    reps.len() as u64 == idx,
                    || format!("decomposition={} index={}", reps.len(), idx),
                ));
            }
            (a, b) => {
                let err = a
                    .err()
                    .or(b.err())
                    .map(|e| e.to_string())
                    .unwrap_or_default();
                out.push(Check::fail("hecke.count_consistency", tuple, err));
            }
        }
    }
    for d1 in classes.iter().take(8) {
        for d2 in classes.iter().take(8) {
            let tuple = format!(
                "{}, {}",
                crate::jsonio::group_to_json(sys, &d1.rep),
                crate::jsonio::group_to_json(sys, &d2.rep)
            );
            match (basis_mul(sys, d1, d2), convolution_oracle(sys, d1, d2)) {
                (Ok(a), Ok(b)) => {
                    out.push(Check::of("hecke.convolution_oracle", tuple, a == b, || {
                        format!("impl={a:?} oracle={b:?}")
                    }))
                }
                (a, b) => {
                    let err = a
                        .err()
                        .or(b.err())
                        .map(|e| e.to_string())
                        .unwrap_or_default();
                    out.push(Check::fail("hecke.convolution_oracle", tuple, err));
                }
            }
        }
    }
    // identity neutrality and associativity on seeded random elements
    let mut rng = StdRng::seed_from_u64(seed);
    let one = HeckeElem::identity(sys);
    for trial in 0..6u32 {
        let pick = |rng: &mut StdRng| -> HeckeElem<S> {
            let mut x = HeckeElem::zero();
            for _ in 0..2 {
                let d = classes[rng.gen_range(0..classes.len())].clone();
                x.add_term(d, Scalar::from_int(rng.gen_range(1..4)));
            }
            x
        };
        let x = pick(&mut rng);
        let y = pick(&mut rng);
        let z = pick(&mut rng);
        let tuple = format!("seeded trial {trial}");
        let assoc = (|| -> Result<bool, CosetError> {
            let l = x.mul(sys, &y)?.mul(sys, &z)?;
            let r = x.mul(sys, &y.mul(sys, &z)?)?;
            Ok(l == r)
        })();
        match assoc {
            Ok(ok) => out.push(Check::of(
                "hecke.associative",
                tuple.clone(),
                ok,
                String::new,
            )),
            Err(e) => out.push(Check::fail(
                "hecke.associative",
                tuple.clone(),
                e.to_string(),
            )),
        }
        let neutral = (|| -> Result<bool, CosetError> {
            Ok(one.mul(sys, &x)? == x && x.mul(sys, &one)? == x)
        })();
        match neutral {
            Ok(ok) => out.push(Check::of("hecke.identity", tuple, ok, String::new)),
            Err(e) => out.push(Check::fail("hecke.identity", tuple, e.to_string())),
        }
    }
    // reducedness shadow: sampled nontrivial m ∈ M escape some conjugate
    let e = sys.n_id();
    let subs = cfg.sampled_subgroups(sys);
    for m in &cfg.m_samples {
        if *m == e {
            continue;
        }
        let ok = subs.iter().any(|u| !sys.sub_contains(u, m));
        out.push(Check::of(
            "hecke.reduced",
            sys.n_to_json(m).to_string(),
            ok,
            || "element survives every sampled conjugate".into(),
        ));
    }
    out
}

/// Double cosets of the sampled group elements, deduplicated and sorted.
pub fn sampled_classes<S: CosetSystem>(sys: &S, cfg: &InstanceConfig<S>) -> Vec<DoubleCoset<S>> {
    let mut set: std::collections::BTreeSet<DoubleCoset<S>> = Default::default();
    set.insert(DoubleCoset::identity(sys));
    for g in &cfg.g_samples {
        set.insert(DoubleCoset::canonical(sys, g));
    }
    for h in cfg.h_all.iter().chain(cfg.h_plus.iter()) {
        set.insert(DoubleCoset::canonical(
            sys,
            &sys.g_of(sys.n_id(), h.clone()),
        ));
    }
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::rational::{rat, RationalSystem};

    fn class(sys: &RationalSystem, n: (i64, i64), h: (i64, i64)) -> DoubleCoset<RationalSystem> {
        DoubleCoset::canonical(sys, &sys.g_of(rat(n.0, n.1), rat(h.0, h.1)))
    }

    #[test]
    fn pair_index_examples() {
        let sys = RationalSystem::new();
        assert_eq!(
            hecke_pair_index(&sys, &sys.g_of(rat(0, 1), rat(2, 1))).unwrap(),
            2
        );
        assert_eq!(hecke_pair_index(&sys, &sys.g_id()).unwrap(), 1);
        assert_eq!(
            hecke_pair_index(&sys, &sys.g_of(rat(1, 2), rat(1, 1))).unwrap(),
            1
        );
    }

    #[test]
    fn decomposition_examples() {
        let sys = RationalSystem::new();
        let d = class(&sys, (0, 1), (2, 1));
        let reps = left_coset_decomposition(&sys, &d).unwrap();
        assert_eq!(
            reps,
            vec![
                sys.g_of(rat(0, 1), rat(2, 1)),
                sys.g_of(rat(1, 1), rat(2, 1))
            ]
        );
        let id = DoubleCoset::identity(&sys);
        assert_eq!(
            left_coset_decomposition(&sys, &id).unwrap(),
            vec![sys.g_id()]
        );
        let d3 = class(&sys, (0, 1), (3, 1));
        assert_eq!(left_coset_decomposition(&sys, &d3).unwrap().len(), 3);
    }

    #[test]
    fn convolution_examples() {
        let sys = RationalSystem::new();
        let two = HeckeElem::basis(class(&sys, (0, 1), (2, 1)));
        let three = HeckeElem::basis(class(&sys, (0, 1), (3, 1)));
        let prod = two.mul(&sys, &three).unwrap();
        let expect = HeckeElem::basis(class(&sys, (0, 1), (6, 1)));
        assert_eq!(prod, expect);

        // identity is neutral
        let one = HeckeElem::identity(&sys);
        assert_eq!(one.mul(&sys, &two).unwrap(), two);
        assert_eq!(two.mul(&sys, &one).unwrap(), two);

        // the translation class (1/2, 1) squares to the identity class
        let half = HeckeElem::basis(class(&sys, (1, 2), (1, 1)));
        assert_eq!(half.mul(&sys, &half).unwrap(), one);
    }

    #[test]
    fn star_examples() {
        let sys = RationalSystem::new();
        let one = HeckeElem::identity(&sys);
        assert_eq!(one.star(&sys), one);
        let two = HeckeElem::basis(class(&sys, (0, 1), (2, 1)));
        assert_eq!(
            two.star(&sys),
            HeckeElem::basis(class(&sys, (0, 1), (1, 2)))
        );
        let x = two
            .scale(&Scalar::i())
            .add(&one.scale(&Scalar::from_int(3)));
        assert_eq!(x.star(&sys).star(&sys), x);
    }

    #[test]
    fn convolution_matches_oracle_on_sampled_pairs() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        let classes = sampled_classes(&sys, &cfg);
        assert!(classes.len() >= 10);
        for d1 in classes.iter().take(10) {
            for d2 in classes.iter().take(10) {
                let a = basis_mul(&sys, d1, d2).unwrap();
                let b = convolution_oracle(&sys, d1, d2).unwrap();
                assert_eq!(a, b, "structure constants differ at {d1:?} x {d2:?}");
            }
        }
    }

    #[test]
    fn coprime_translations_give_single_class() {
        let sys = RationalSystem::new();
        for (m, n) in [(2i64, 3i64), (2, 5), (3, 4)] {
            let a = class(&sys, (0, 1), (m, 1));
            let b = class(&sys, (0, 1), (n, 1));
            let prod = HeckeElem::basis(a).mul(&sys, &HeckeElem::basis(b)).unwrap();
            let expect = HeckeElem::basis(class(&sys, (0, 1), (m * n, 1)));
            assert_eq!(prod, expect, "({m},{n})");
        }
    }

    #[test]
    fn star_is_antimultiplicative_on_samples() {
        let sys = RationalSystem::new();
        let x = HeckeElem::basis(class(&sys, (0, 1), (2, 1)));
        let y = HeckeElem::basis(class(&sys, (1, 2), (3, 1)));
        let lhs = x.mul(&sys, &y).unwrap().star(&sys);
        let rhs = y.star(&sys).mul(&sys, &x.star(&sys)).unwrap();
        assert_eq!(lhs, rhs);
    }
}
