//! The ax+b system of the rationals: `N = (Q, +)`, `H = (Q^×, ·)`, `M = Z`,
//! so `G` is the ax+b group of `Q`.
//!
//! Subgroups `aMa⁻¹` are the groups `uZ` with `u` a positive rational (the
//! canonical conjugator, since `±a` generate the same subgroup). Meets are
//! exact intersections `uZ ∩ vZ = lcm(u,v)Z` and joins are `gcd(u,v)Z`, where
//! gcd/lcm of rationals are taken numerator-wise/denominator-wise.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};
use serde_json::Value;

use crate::scalar::{rat_from_str, rat_to_string};
use crate::system::{CosetError, CosetSystem, GroupElem, InstanceConfig};

pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(p.into(), q.into())
}

/// `gcd(p1/q1, p2/q2) = gcd(p1,p2)/lcm(q1,q2)`; on positive inputs this
/// generates `uZ + vZ`.
pub fn gcd_rat(a: &Rational, b: &Rational) -> Rational {
    BigRational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// `lcm(p1/q1, p2/q2) = lcm(p1,p2)/gcd(q1,q2)`; on positive inputs this
/// generates `uZ ∩ vZ`.
pub fn lcm_rat(a: &Rational, b: &Rational) -> Rational {
    BigRational::new(a.numer().lcm(b.numer()), a.denom().gcd(b.denom()))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RationalSystem {
    refine_budget: u64,
}

impl Default for RationalSystem {
    fn default() -> Self {
        Self::new()
    }
}

impl RationalSystem {
    pub fn new() -> Self {
        RationalSystem {
            refine_budget: 1_000_000,
        }
    }

    pub fn with_budget(refine_budget: u64) -> Self {
        RationalSystem { refine_budget }
    }

    /// `|Z/aZ| = |a|` for a nonzero integer `a`.
    pub fn ring_quotient_size(&self, a: &Rational) -> Result<BigInt, CosetError> {
        if !a.is_integer() || a.is_zero() {
            return Err(CosetError::NotInRing);
        }
        Ok(a.numer().abs())
    }

    /// For `a = s/t` in lowest terms, the integer `s` with `sZ ⊆ aZ`
    /// (the cofinality witness exhibiting the integer family inside the
    /// rational one).
    pub fn cofinality_check(&self, a: &Rational) -> Result<Rational, CosetError> {
        if a.is_zero() {
            return Err(CosetError::NotInvertible);
        }
        Ok(BigRational::from_integer(a.numer().clone()))
    }
}

impl CosetSystem for RationalSystem {
    type NElem = Rational;
    type HElem = Rational;
    /// The positive generator `u` of the subgroup `uZ`.
    type Sub = Rational;

    fn name(&self) -> &'static str {
        "rational"
    }

    fn refine_budget(&self) -> u64 {
        self.refine_budget
    }

    fn n_id(&self) -> Rational {
        BigRational::zero()
    }

    fn n_op(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }

    fn n_inv(&self, a: &Rational) -> Rational {
        -a
    }

    fn h_id(&self) -> Rational {
        BigRational::one()
    }

    fn h_op(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }

    fn h_inv(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "zero is not an element of H = Q^x");
        a.recip()
    }

    fn conj(&self, h: &Rational, n: &Rational) -> Rational {
        h * n
    }

    fn m_sub(&self) -> Rational {
        BigRational::one()
    }

    fn sub_of_conj(&self, a: &Rational) -> Rational {
        assert!(!a.is_zero(), "zero is not an element of H = Q^x");
        a.abs()
    }

    fn sub_conj(&self, h: &Rational, s: &Rational) -> Rational {
        h.abs() * s
    }

    fn sub_contains(&self, s: &Rational, n: &Rational) -> bool {
        (n / s).is_integer()
    }

    fn sub_reduce(&self, s: &Rational, n: &Rational) -> Rational {
        n - (n / s).floor() * s
    }

    fn sub_subset(&self, s: &Rational, t: &Rational) -> bool {
        (s / t).is_integer()
    }

    fn sub_meet(&self, s: &Rational, t: &Rational) -> Rational {
        lcm_rat(s, t)
    }

    fn sub_join(&self, s: &Rational, t: &Rational) -> Rational {
        gcd_rat(s, t)
    }

    fn sub_index(&self, big: &Rational, small: &Rational) -> Result<u64, CosetError> {
        let r = small / big;
        if !r.is_integer() {
            return Err(CosetError::NotNested);
        }
        u64::try_from(r.numer()).map_err(|_| CosetError::TooLarge)
    }

    fn sub_transversal(
        &self,
        big: &Rational,
        small: &Rational,
    ) -> Result<Vec<Rational>, CosetError> {
        let idx = self.sub_index(big, small)?;
        if idx > 1 << 22 {
            return Err(CosetError::TooLarge);
        }
        Ok((0..idx)
            .map(|j| BigRational::from_integer(j.into()) * big)
            .collect())
    }

    fn in_h_plus(&self, a: &Rational) -> bool {
        a.is_integer() && !a.is_zero()
    }

    fn contracting_conjugator(&self, d: &Rational) -> Option<Rational> {
        if d.is_zero() {
            return None;
        }
        let p = d.numer().abs();
        let q = d.denom().clone();
        if p > BigInt::one() {
            Some(BigRational::from_integer(p))
        } else if q > BigInt::one() {
            Some(BigRational::from_integer(q))
        } else {
            None
        }
    }

    fn n_to_json(&self, n: &Rational) -> Value {
        Value::String(rat_to_string(n))
    }

    fn n_from_json(&self, v: &Value) -> Result<Rational, CosetError> {
        match v {
            Value::String(s) => rat_from_str(s),
            Value::Number(k) => {
                let i = k
                    .as_i64()
                    .ok_or_else(|| CosetError::Parse(format!("bad rational {k}")))?;
                Ok(BigRational::from_integer(i.into()))
            }
            other => Err(CosetError::Parse(format!("bad rational {other}"))),
        }
    }

    fn h_to_json(&self, h: &Rational) -> Value {
        Value::String(rat_to_string(h))
    }

    fn h_from_json(&self, v: &Value) -> Result<Rational, CosetError> {
        let r = self.n_from_json(v)?;
        if r.is_zero() {
            return Err(CosetError::Parse("0 is not in H = Q^x".into()));
        }
        Ok(r)
    }

    fn sub_to_json(&self, s: &Rational) -> Value {
        Value::String(rat_to_string(s))
    }

    fn sub_from_json(&self, v: &Value) -> Result<Rational, CosetError> {
        let r = self.h_from_json(v)?;
        Ok(r.abs())
    }

    fn default_config(&self) -> InstanceConfig<Self> {
        let h_plus: Vec<Rational> = [2, 3, 4, 5, 6].iter().map(|&k| rat(k, 1)).collect();
        let h_all: Vec<Rational> = vec![
            rat(2, 1),
            rat(3, 1),
            rat(6, 1),
            rat(1, 2),
            rat(1, 3),
            rat(3, 2),
            rat(2, 3),
            rat(-2, 1),
            rat(-1, 2),
        ];
        let m_samples: Vec<Rational> = (-3..=3).map(|k| rat(k, 1)).collect();
        let mut n_samples: Vec<Rational> = Vec::new();
        for q in [1i64, 2, 3] {
            for k in -6..=6i64 {
                let x = rat(k, q);
                if !n_samples.contains(&x) {
                    n_samples.push(x);
                }
            }
        }
        let mut g_samples = Vec::new();
        for n in [rat(0, 1), rat(1, 1), rat(1, 2), rat(-2, 3)] {
            for h in [
                rat(1, 1),
                rat(2, 1),
                rat(3, 1),
                rat(1, 2),
                rat(3, 2),
                rat(-2, 1),
            ] {
                g_samples.push(GroupElem { n: n.clone(), h });
            }
        }
        InstanceConfig::new(self, h_plus, h_all, m_samples, n_samples, g_samples)
            .expect("default samples are valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meet_matches_brute_force_common_multiples() {
        let sys = RationalSystem::new();
        // oracle: the least positive element of uZ ∩ vZ found by scanning
        // multiples of u
        let brute = |u: &Rational, v: &Rational| -> Rational {
            for k in 1..10_000i64 {
                let x = BigRational::from_integer(k.into()) * u;
                if sys.sub_contains(v, &x) {
                    return x;
                }
            }
            panic!("no common multiple found in bound");
        };
        for (u, v) in [
            (rat(2, 1), rat(3, 1)),
            (rat(1, 2), rat(1, 3)),
            (rat(3, 2), rat(5, 4)),
            (rat(6, 1), rat(4, 1)),
        ] {
            assert_eq!(sys.sub_meet(&u, &v), brute(&u, &v));
        }
        assert_eq!(sys.sub_meet(&rat(2, 1), &rat(3, 1)), rat(6, 1));
        assert_eq!(sys.sub_meet(&rat(1, 2), &rat(1, 3)), rat(1, 1));
        assert_eq!(sys.sub_meet(&rat(5, 7), &rat(5, 7)), rat(5, 7));
    }

    #[test]
    fn meet_is_a_lower_bound_and_idempotent() {
        let sys = RationalSystem::new();
        let subs = [rat(1, 1), rat(2, 1), rat(3, 2), rat(1, 3), rat(5, 1)];
        for u in &subs {
            assert_eq!(sys.sub_meet(u, u), *u);
            for v in &subs {
                let w = sys.sub_meet(u, v);
                assert!(sys.sub_subset(&w, u));
                assert!(sys.sub_subset(&w, v));
            }
        }
    }

    #[test]
    fn transversal_enumerates_residues() {
        let sys = RationalSystem::new();
        let reps = sys.sub_transversal(&rat(1, 1), &rat(3, 1)).unwrap();
        assert_eq!(reps, vec![rat(0, 1), rat(1, 1), rat(2, 1)]);
        assert!(matches!(
            sys.sub_transversal(&rat(3, 1), &rat(1, 1)),
            Err(CosetError::NotNested)
        ));
        let reps = sys.sub_transversal(&rat(3, 2), &rat(3, 1)).unwrap();
        assert_eq!(reps.len(), 2);
        for r in &reps {
            assert_eq!(&sys.sub_reduce(&rat(3, 1), r), r);
        }
    }

    #[test]
    fn action_examples() {
        let sys = RationalSystem::new();
        // g = (1/2, 3) sends 0 + Z to 1/2 + 3Z
        let g = sys.g_of(rat(1, 2), rat(3, 1));
        let c = sys.coset(&rat(0, 1), &rat(1, 1));
        let img = sys.act(&g, &c);
        assert_eq!(img, sys.coset(&rat(1, 2), &rat(3, 1)));
        // the identity acts trivially
        assert_eq!(sys.act(&sys.g_id(), &c), c);
    }

    #[test]
    fn action_image_matches_pointwise_oracle() {
        let sys = RationalSystem::new();
        // g = (0,2) on 1 + 2Z: image set {2(1+2k)} = 2 + 4Z
        let g = sys.g_of(rat(0, 1), rat(2, 1));
        let c = sys.coset(&rat(1, 1), &rat(2, 1));
        let img = sys.act(&g, &c);
        assert_eq!(img, sys.coset(&rat(2, 1), &rat(4, 1)));
        for k in -20..20i64 {
            let y = &rat(1, 1) + rat(2 * k, 1);
            assert!(sys.coset_contains(&img, &sys.beta(&g, &y)));
        }
        for k in -20..20i64 {
            let y = rat(k, 1);
            assert_eq!(
                sys.coset_contains(&c, &y),
                sys.coset_contains(&img, &sys.beta(&g, &y))
            );
        }
    }

    #[test]
    fn h_plus_is_the_nonzero_integers() {
        let sys = RationalSystem::new();
        assert!(sys.in_h_plus(&rat(2, 1)));
        assert!(sys.in_h_plus(&rat(-1, 1)));
        assert!(!sys.in_h_plus(&rat(1, 2)));
        assert!(!sys.in_h_plus(&rat(0, 1)));
        // cross-check against the lattice containment route
        let m = sys.m_sub();
        for k in [
            rat(2, 1),
            rat(5, 1),
            rat(-3, 1),
            rat(1, 2),
            rat(7, 3),
            rat(3, 2),
        ] {
            assert_eq!(sys.in_h_plus(&k), sys.sub_subset(&sys.sub_of_conj(&k), &m));
        }
        // opposite conjugators name the same subgroup
        assert_eq!(sys.sub_of_conj(&rat(-3, 2)), sys.sub_of_conj(&rat(3, 2)));
    }

    #[test]
    fn ring_quotient_size_examples() {
        let sys = RationalSystem::new();
        assert_eq!(sys.ring_quotient_size(&rat(6, 1)).unwrap(), BigInt::from(6));
        assert_eq!(
            sys.ring_quotient_size(&rat(-4, 1)).unwrap(),
            BigInt::from(4)
        );
        assert_eq!(sys.ring_quotient_size(&rat(1, 1)).unwrap(), BigInt::from(1));
        assert!(matches!(
            sys.ring_quotient_size(&rat(1, 2)),
            Err(CosetError::NotInRing)
        ));
    }

    #[test]
    fn cofinality_witness_contains() {
        let sys = RationalSystem::new();
        for a in [rat(3, 4), rat(5, 1), rat(1, 6), rat(-7, 2)] {
            let s = sys.cofinality_check(&a).unwrap();
            assert!(s.is_integer());
            // sZ ⊆ aZ
            assert!(sys.sub_subset(&sys.sub_of_conj(&s), &sys.sub_of_conj(&a)));
            // bounded brute force: every small multiple of s is a multiple of a
            for k in -10..=10i64 {
                let x = &s * rat(k, 1);
                assert!(sys.sub_contains(&sys.sub_of_conj(&a), &x));
            }
        }
        assert_eq!(sys.cofinality_check(&rat(3, 4)).unwrap(), rat(3, 1));
        assert_eq!(sys.cofinality_check(&rat(5, 1)).unwrap(), rat(5, 1));
    }

    #[test]
    fn reduce_lands_in_fundamental_window() {
        let sys = RationalSystem::new();
        let u = rat(3, 2);
        for k in -12..12i64 {
            let x = rat(k, 4);
            let r = sys.sub_reduce(&u, &x);
            assert!(r >= rat(0, 1) && r < u);
            assert!(sys.sub_contains(&u, &(&x - &r)));
        }
    }

    #[test]
    fn quotient_consistency_on_chains() {
        let sys = RationalSystem::new();
        let u = rat(1, 1);
        let w = rat(2, 1);
        let x = rat(6, 1);
        let a = sys.sub_index(&u, &w).unwrap();
        let b = sys.sub_index(&w, &x).unwrap();
        let c = sys.sub_index(&u, &x).unwrap();
        assert_eq!(a * b, c);
    }
}
