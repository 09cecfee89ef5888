//! The wreath-product instance: `H = Z` acting by shifts on
//! `N = ⊕_Z Z/m` with `M = ⊕_{k ≥ 0} Z/m`, the lamplighter group for `m = 2`.
//!
//! A configuration is a finitely supported map `Z → Z/m`, stored as a sorted
//! list of `(position, value)` pairs with nonzero values. The subgroup
//! `aMa⁻¹` is the set of configurations supported in `[a, ∞)`, so the shift
//! amount itself is the canonical subgroup key; meets are `max`, joins `min`,
//! and the quotient `M / aMa⁻¹` is the finite set of configurations on
//! `[0, a)`.

use num::BigRational;
use serde_json::Value;

use crate::scalar::QmodZ;
use crate::system::{CosetError, CosetSystem, GroupElem, InstanceConfig};

/// A finitely supported configuration of lamps.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LampConfig(Vec<(i64, u32)>);

impl LampConfig {
    /// Build from arbitrary pairs, merging duplicates mod `m` and dropping
    /// zeros.
    pub fn new(pairs: &[(i64, u32)], modulus: u32) -> Self {
        let mut map = std::collections::BTreeMap::new();
        for &(pos, val) in pairs {
            let e = map.entry(pos).or_insert(0u32);
            *e = (*e + val % modulus) % modulus;
        }
        LampConfig(map.into_iter().filter(|&(_, v)| v != 0).collect())
    }

    pub fn empty() -> Self {
        LampConfig(Vec::new())
    }

    pub fn pairs(&self) -> &[(i64, u32)] {
        &self.0
    }

    pub fn value_at(&self, pos: i64) -> u32 {
        self.0
            .iter()
            .find(|&&(p, _)| p == pos)
            .map(|&(_, v)| v)
            .unwrap_or(0)
    }

    pub fn min_pos(&self) -> Option<i64> {
        self.0.first().map(|&(p, _)| p)
    }

    pub fn max_pos(&self) -> Option<i64> {
        self.0.last().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LamplighterSystem {
    modulus: u32,
    refine_budget: u64,
}

impl LamplighterSystem {
    /// Lamps valued in `Z/m`; `m = 1` would make `M = N = {e}` and is
    /// rejected.
    pub fn new(modulus: u32) -> Result<Self, CosetError> {
        if modulus < 2 {
            return Err(CosetError::Parse(
                "lamplighter modulus must be at least 2".into(),
            ));
        }
        Ok(LamplighterSystem {
            modulus,
            refine_budget: 1_000_000,
        })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// A single lamp `value·δ_pos`.
    pub fn delta(&self, pos: i64, value: u32) -> LampConfig {
        LampConfig::new(&[(pos, value)], self.modulus)
    }

    /// The shift action: support translated by `a`.
    pub fn shift_act(&self, a: i64, f: &LampConfig) -> LampConfig {
        LampConfig(f.0.iter().map(|&(p, v)| (p + a, v)).collect())
    }

    /// The pairing `B(f, g) = Σ_i f(i)·g(-i) / m` in `Q/Z`, the literal
    /// index-reversing form.
    pub fn lamp_bichar(&self, f: &LampConfig, g: &LampConfig) -> QmodZ {
        let mut acc: i64 = 0;
        for &(p, v) in &f.0 {
            let w = g.value_at(-p);
            acc += (v as i64) * (w as i64);
        }
        QmodZ::new(BigRational::new(acc.into(), (self.modulus as i64).into()))
    }

    /// The self-dualizing pairing `Σ_i f(i)·g(-i-1) / m`, which equals
    /// `lamp_bichar(f, shift₁ g)`. This is the form under which
    /// `M = {supp ⊆ [0, ∞)}` is exactly its own annihilator; the unshifted
    /// pairing pairs `δ₀` nontrivially with itself.
    pub fn lamp_bichar_dual(&self, f: &LampConfig, g: &LampConfig) -> QmodZ {
        self.lamp_bichar(f, &self.shift_act(1, g))
    }
}

impl CosetSystem for LamplighterSystem {
    type NElem = LampConfig;
    type HElem = i64;
    /// The shift `s` keys the subgroup of configurations supported in `[s, ∞)`.
    type Sub = i64;

    fn name(&self) -> &'static str {
        "lamplighter"
    }

    fn refine_budget(&self) -> u64 {
        self.refine_budget
    }

    fn n_id(&self) -> LampConfig {
        LampConfig::empty()
    }

    fn n_op(&self, a: &LampConfig, b: &LampConfig) -> LampConfig {
        let mut pairs = a.0.clone();
        pairs.extend_from_slice(&b.0);
        LampConfig::new(&pairs, self.modulus)
    }

    fn n_inv(&self, a: &LampConfig) -> LampConfig {
        LampConfig(a.0.iter().map(|&(p, v)| (p, self.modulus - v)).collect())
    }

    fn h_id(&self) -> i64 {
        0
    }

    fn h_op(&self, a: &i64, b: &i64) -> i64 {
        a + b
    }

    fn h_inv(&self, a: &i64) -> i64 {
        -a
    }

    fn conj(&self, h: &i64, n: &LampConfig) -> LampConfig {
        self.shift_act(*h, n)
    }

    fn m_sub(&self) -> i64 {
        0
    }

    fn sub_of_conj(&self, a: &i64) -> i64 {
        *a
    }

    fn sub_conj(&self, h: &i64, s: &i64) -> i64 {
        h + s
    }

    fn sub_contains(&self, s: &i64, n: &LampConfig) -> bool {
        n.min_pos().map(|p| p >= *s).unwrap_or(true)
    }

    fn sub_reduce(&self, s: &i64, n: &LampConfig) -> LampConfig {
        LampConfig(n.0.iter().filter(|&&(p, _)| p < *s).cloned().collect())
    }

    fn sub_subset(&self, s: &i64, t: &i64) -> bool {
        s >= t
    }

    fn sub_meet(&self, s: &i64, t: &i64) -> i64 {
        *s.max(t)
    }

    fn sub_join(&self, s: &i64, t: &i64) -> i64 {
        *s.min(t)
    }

    fn sub_index(&self, big: &i64, small: &i64) -> Result<u64, CosetError> {
        if small < big {
            return Err(CosetError::NotNested);
        }
        let gap = (small - big) as u32;
        (self.modulus as u64)
            .checked_pow(gap)
            .ok_or(CosetError::TooLarge)
    }

    fn sub_transversal(&self, big: &i64, small: &i64) -> Result<Vec<LampConfig>, CosetError> {
        let count = self.sub_index(big, small)?;
        if count > 1 << 22 {
            return Err(CosetError::TooLarge);
        }
        let width = (small - big) as usize;
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0u32; width];
        loop {
            let pairs: Vec<(i64, u32)> = digits
                .iter()
                .enumerate()
                .filter(|&(_, &v)| v != 0)
                .map(|(i, &v)| (big + i as i64, v))
                .collect();
            out.push(LampConfig(pairs));
            let mut i = 0;
            loop {
                if i == width {
                    out.sort();
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < self.modulus {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    fn in_h_plus(&self, a: &i64) -> bool {
        *a >= 0
    }

    fn contracting_conjugator(&self, d: &i64) -> Option<i64> {
        if *d == 0 {
            None
        } else {
            Some(d.abs())
        }
    }

    fn n_to_json(&self, n: &LampConfig) -> Value {
        Value::Array(
            n.0.iter()
                .map(|&(p, v)| Value::Array(vec![p.into(), v.into()]))
                .collect(),
        )
    }

    fn n_from_json(&self, v: &Value) -> Result<LampConfig, CosetError> {
        let arr = v.as_array().ok_or_else(|| {
            CosetError::Parse("configuration must be a list of [pos, val]".into())
        })?;
        let mut pairs = Vec::new();
        for entry in arr {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| CosetError::Parse("configuration entries are [pos, val]".into()))?;
            let pos = pair[0]
                .as_i64()
                .ok_or_else(|| CosetError::Parse("bad lamp position".into()))?;
            let val = pair[1]
                .as_u64()
                .ok_or_else(|| CosetError::Parse("bad lamp value".into()))?;
            pairs.push((pos, (val % self.modulus as u64) as u32));
        }
        Ok(LampConfig::new(&pairs, self.modulus))
    }

    fn h_to_json(&self, h: &i64) -> Value {
        Value::Number((*h).into())
    }

    fn h_from_json(&self, v: &Value) -> Result<i64, CosetError> {
        v.as_i64()
            .ok_or_else(|| CosetError::Parse("shift must be an integer".into()))
    }

    fn sub_to_json(&self, s: &i64) -> Value {
        Value::Number((*s).into())
    }

    fn sub_from_json(&self, v: &Value) -> Result<i64, CosetError> {
        self.h_from_json(v)
    }

    fn default_config(&self) -> InstanceConfig<Self> {
        let h_plus: Vec<i64> = vec![0, 1, 2, 3, 4];
        let h_all: Vec<i64> = vec![-2, -1, 0, 1, 2, 3];
        // all configurations supported in [0, 2]
        let m_samples = self.sub_transversal(&0, &3).expect("small window");
        // configurations on [-2, 2] with at most two lamps, plus two denser ones
        let mut n_samples = Vec::new();
        n_samples.push(LampConfig::empty());
        for p in -2..=2i64 {
            for v in 1..self.modulus {
                n_samples.push(self.delta(p, v));
            }
        }
        for p in -2..=2i64 {
            for q in (p + 1)..=2i64 {
                n_samples.push(self.n_op(&self.delta(p, 1), &self.delta(q, 1)));
            }
        }
        n_samples.push(self.n_op(
            &self.n_op(&self.delta(-2, 1), &self.delta(0, 1)),
            &self.delta(2, 1),
        ));
        n_samples.push(self.n_op(
            &self.n_op(&self.delta(-1, 1), &self.delta(0, 1)),
            &self.delta(1, 1),
        ));
        let mut g_samples = Vec::new();
        for n in [LampConfig::empty(), self.delta(0, 1), self.delta(-1, 1)] {
            for h in [-1i64, 0, 1, 2] {
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
    use num::BigRational;

    fn sys() -> LamplighterSystem {
        LamplighterSystem::new(2).unwrap()
    }

    fn q(p: i64, d: i64) -> QmodZ {
        QmodZ::new(BigRational::new(p.into(), d.into()))
    }

    #[test]
    fn shift_examples() {
        let s = sys();
        assert_eq!(s.shift_act(2, &s.delta(0, 1)), s.delta(2, 1));
        assert_eq!(s.shift_act(0, &s.delta(3, 1)), s.delta(3, 1));
        let f = s.n_op(&s.delta(0, 1), &s.delta(3, 1));
        let expect = s.n_op(&s.delta(-1, 1), &s.delta(2, 1));
        assert_eq!(s.shift_act(-1, &f), expect);
    }

    #[test]
    fn config_group_laws() {
        let s = LamplighterSystem::new(3).unwrap();
        let f = LampConfig::new(&[(0, 1), (2, 2)], 3);
        let g = LampConfig::new(&[(0, 2), (1, 1)], 3);
        let h = LampConfig::new(&[(-1, 1), (2, 1)], 3);
        assert_eq!(s.n_op(&s.n_op(&f, &g), &h), s.n_op(&f, &s.n_op(&g, &h)));
        assert_eq!(s.n_op(&f, &s.n_inv(&f)), LampConfig::empty());
        // lamps cancel mod 3
        assert_eq!(s.n_op(&f, &LampConfig::new(&[(0, 2)], 3)).value_at(0), 0);
    }

    #[test]
    fn bichar_examples() {
        let s = sys();
        assert_eq!(s.lamp_bichar(&s.delta(0, 1), &s.delta(0, 1)), q(1, 2));
        assert!(s.lamp_bichar(&s.delta(1, 1), &s.delta(0, 1)).is_zero());
        assert!(s
            .lamp_bichar(&s.delta(0, 1), &LampConfig::empty())
            .is_zero());
        // dual pairing shifts the partner
        assert_eq!(s.lamp_bichar_dual(&s.delta(0, 1), &s.delta(-1, 1)), q(1, 2));
        assert!(s.lamp_bichar_dual(&s.delta(0, 1), &s.delta(0, 1)).is_zero());
    }

    #[test]
    fn bichar_symmetry_under_shifts() {
        let s = sys();
        let cfg = s.default_config();
        for a in &cfg.h_all {
            for f in cfg.n_samples.iter().take(10) {
                for g in cfg.n_samples.iter().take(10) {
                    assert_eq!(
                        s.lamp_bichar(&s.shift_act(*a, f), g),
                        s.lamp_bichar(f, &s.shift_act(*a, g))
                    );
                    assert_eq!(
                        s.lamp_bichar_dual(&s.shift_act(*a, f), g),
                        s.lamp_bichar_dual(f, &s.shift_act(*a, g))
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_law_counts_windows() {
        let s = sys();
        for c in 0..5i64 {
            let reps = s.sub_transversal(&0, &c).unwrap();
            assert_eq!(reps.len() as u64, 2u64.pow(c as u32));
        }
        let s3 = LamplighterSystem::new(3).unwrap();
        assert_eq!(s3.sub_transversal(&0, &2).unwrap().len(), 9);
    }

    #[test]
    fn selfdual_shadow_with_dual_pairing() {
        let s = sys();
        let cfg = s.default_config();
        let k = 2i64;
        for f in &cfg.n_samples {
            let all_zero = (0..=2 * k).all(|j| s.lamp_bichar_dual(f, &s.delta(j, 1)).is_zero());
            let in_m = s.sub_contains(&0, f);
            assert_eq!(all_zero, in_m, "selfdual shadow failed at {f:?}");
        }
    }

    #[test]
    fn reduce_truncates_below_window() {
        let s = sys();
        let f = LampConfig::new(&[(-2, 1), (0, 1), (3, 1)], 2);
        assert_eq!(s.sub_reduce(&1, &f), LampConfig::new(&[(-2, 1), (0, 1)], 2));
        assert!(s.sub_contains(&-2, &f));
        assert!(!s.sub_contains(&0, &f));
    }

    #[test]
    fn contraction_witness_shifts_the_window() {
        let s = sys();
        let cfg = s.default_config();
        let c = s.coset(&LampConfig::empty(), &0);
        let g = s.contraction_witness(&cfg, &c).unwrap();
        // the first usable sample shifts by one
        assert_eq!(g, s.g_of(LampConfig::empty(), 1));
        let image = s.act(&g, &c);
        assert_eq!(*image.sub(), 1);
        assert!(s.sub_subset(image.sub(), c.sub()));
    }

    #[test]
    fn h_plus_is_the_nonnegative_shifts() {
        let s = sys();
        assert!(s.in_h_plus(&0));
        assert!(s.in_h_plus(&3));
        assert!(!s.in_h_plus(&-1));
        let m = s.m_sub();
        for a in [-3i64, -1, 0, 1, 4] {
            assert_eq!(s.in_h_plus(&a), s.sub_subset(&s.sub_of_conj(&a), &m));
        }
    }
}
