//! The operator oracle: an exact representation on finitely supported
//! functions on `N`.
//!
//! The whole space carries unitaries `S̃_h δ_y = δ_{β_h(y)}` and
//! `Ũ(n) δ_y = δ_{n·y}`, multiplication operators for `D₀` elements, and the
//! inclusion/restriction pair `T`, `T*` against the `M`-supported subspace.
//! Every corner generator has a dictionary image `x ↦ T*·x̃·T`, and symbolic
//! corner products can be compared with direct operator compositions on basis
//! vectors. The comparison is independent of the refinement machinery, since
//! operators act by permutations and pointwise indicator evaluation only.

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::a0::{A0Elem, CornerElem};
use crate::d0::D0Elem;
use crate::gens::{gen_p, gen_s, gen_u, pnh_indicator};
use crate::report::Check;
use crate::scalar::Scalar;
use crate::system::{CosetError, CosetSystem, GroupElem, InstanceConfig};

/// A finitely supported exact-scalar function on `N`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinVec<S: CosetSystem> {
    entries: BTreeMap<S::NElem, Scalar>,
}

impl<S: CosetSystem> Default for FinVec<S> {
    fn default() -> Self {
        FinVec {
            entries: BTreeMap::new(),
        }
    }
}

impl<S: CosetSystem> FinVec<S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn delta(n: S::NElem) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(n, Scalar::one());
        FinVec { entries }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&S::NElem, &Scalar)> {
        self.entries.iter()
    }

    pub fn add_entry(&mut self, n: S::NElem, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.entries.entry(n) {
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

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, s) in &other.entries {
            out.add_entry(n.clone(), s.clone());
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        FinVec {
            entries: self
                .entries
                .iter()
                .map(|(n, s)| (n.clone(), s * k))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-&Scalar::one()))
    }

    /// `⟨self, other⟩ = Σ conj(self(n))·other(n)`.
    pub fn inner(&self, other: &Self) -> Scalar {
        let mut acc = Scalar::zero();
        for (n, s) in &self.entries {
            if let Some(t) = other.entries.get(n) {
                acc = &acc + &(&s.conj() * t);
            }
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One operator symbol acting on [`FinVec`].
#[derive(Clone, Debug)]
pub enum ReprOp<S: CosetSystem> {
    /// `S̃_h: δ_y ↦ δ_{β_h(y)}`.
    Shift(S::HElem),
    /// `Ũ(n): δ_y ↦ δ_{n·y}`.
    Trans(S::NElem),
    /// Multiplication by an element of `D₀`.
    Mult(D0Elem<S>),
    /// `T`: inclusion of the `M`-supported subspace (projects onto it).
    Incl,
    /// `T*`: restriction to the `M`-supported subspace.
    Restr,
}

pub fn apply_op<S: CosetSystem>(sys: &S, op: &ReprOp<S>, v: &FinVec<S>) -> FinVec<S> {
    let mut out = FinVec::zero();
    match op {
        ReprOp::Shift(h) => {
            for (n, s) in &v.entries {
                out.add_entry(sys.conj(h, n), s.clone());
            }
        }
        ReprOp::Trans(t) => {
            for (n, s) in &v.entries {
                out.add_entry(sys.n_op(t, n), s.clone());
            }
        }
        ReprOp::Mult(f) => {
            for (n, s) in &v.entries {
                out.add_entry(n.clone(), &f.eval(sys, n) * s);
            }
        }
        ReprOp::Incl | ReprOp::Restr => {
            let m = sys.m_sub();
            for (n, s) in &v.entries {
                if sys.sub_contains(&m, n) {
                    out.add_entry(n.clone(), s.clone());
                }
            }
        }
    }
    out
}

/// Apply a word of operators; the last symbol acts first, so a word reads
/// like an operator product.
pub fn apply_word<S: CosetSystem>(sys: &S, word: &[ReprOp<S>], v: &FinVec<S>) -> FinVec<S> {
    let mut acc = v.clone();
    for op in word.iter().rev() {
        acc = apply_op(sys, op, &acc);
    }
    acc
}

/// Apply a proper crossed-product element through the natural covariant
/// representation: `g·f` acts as `λ_g ∘ mult(f)` with
/// `λ_{(n,h)} = Ũ(n) ∘ S̃_h`.
pub fn apply_a0<S: CosetSystem>(
    sys: &S,
    z: &A0Elem<S>,
    v: &FinVec<S>,
) -> Result<FinVec<S>, CosetError> {
    let mut acc = FinVec::zero();
    for (g, f) in z.proper_terms()? {
        let mut part = apply_op(sys, &ReprOp::Mult(f), v);
        part = apply_op(sys, &ReprOp::Shift(g.h.clone()), &part);
        part = apply_op(sys, &ReprOp::Trans(g.n.clone()), &part);
        acc = acc.add(&part);
    }
    Ok(acc)
}

/// A letter of a corner word.
#[derive(Clone, Debug)]
pub enum CornerGen<S: CosetSystem> {
    S(S::HElem),
    SStar(S::HElem),
    U(S::NElem),
    UStar(S::NElem),
    P(S::HElem, S::NElem),
}

/// Multiply the word out in the symbolic corner algebra. The empty word is
/// the corner unit `p`.
pub fn corner_word_symbolic<S: CosetSystem>(
    sys: &S,
    word: &[CornerGen<S>],
) -> Result<CornerElem<S>, CosetError> {
    let mut acc = CornerElem::unit(sys);
    for gen in word {
        let factor = match gen {
            CornerGen::S(a) => gen_s(sys, a)?,
            CornerGen::SStar(a) => gen_s(sys, a)?.star(sys),
            CornerGen::U(m) => gen_u(sys, m)?,
            CornerGen::UStar(m) => gen_u(sys, m)?.star(sys),
            CornerGen::P(a, m) => gen_p(sys, a, m)?,
        };
        acc = acc.mul(sys, &factor)?;
    }
    Ok(acc)
}

/// The dictionary image of the word: each letter becomes `T*·x̃·T`.
pub fn corner_word_operators<S: CosetSystem>(
    sys: &S,
    word: &[CornerGen<S>],
) -> Result<Vec<ReprOp<S>>, CosetError> {
    let mut ops = Vec::new();
    for gen in word {
        ops.push(ReprOp::Restr);
        match gen {
            CornerGen::S(a) => ops.push(ReprOp::Shift(a.clone())),
            CornerGen::SStar(a) => ops.push(ReprOp::Shift(sys.h_inv(a))),
            CornerGen::U(m) => ops.push(ReprOp::Trans(m.clone())),
            CornerGen::UStar(m) => ops.push(ReprOp::Trans(sys.n_inv(m))),
            CornerGen::P(a, m) => {
                if !sys.in_h_plus(a) {
                    return Err(CosetError::NotInHPlus);
                }
                let c = sys.coset(m, &sys.sub_of_conj(a));
                ops.push(ReprOp::Mult(D0Elem::indicator(c)));
            }
        }
        ops.push(ReprOp::Incl);
    }
    Ok(ops)
}

/// Compare the symbolic product of each word with the direct operator
/// composition on the sampled basis.
pub fn oracle_check_words<S: CosetSystem>(
    sys: &S,
    basis: &[S::NElem],
    words: &[Vec<CornerGen<S>>],
) -> Vec<Check> {
    let mut out = Vec::new();
    for (w, word) in words.iter().enumerate() {
        let result = (|| -> Result<bool, CosetError> {
            let z = corner_word_symbolic(sys, word)?;
            let ops = corner_word_operators(sys, word)?;
            for y in basis {
                let v = FinVec::delta(y.clone());
                let lhs = apply_a0(sys, z.elem(), &v)?;
                let rhs = apply_word(sys, &ops, &v);
                if lhs != rhs {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        let tuple = format!("word {w} (length {})", word.len());
        match result {
            Ok(ok) => out.push(Check::of("repr.oracle_word", tuple, ok, || {
                "symbolic and operator routes disagree".into()
            })),
            Err(e) => out.push(Check::fail("repr.oracle_word", tuple, e.to_string())),
        }
    }
    out
}

/// Seeded random corner words over the configured samples.
pub fn random_words<S: CosetSystem>(
    _sys: &S,
    cfg: &InstanceConfig<S>,
    count: usize,
    max_len: usize,
    seed: u64,
) -> Vec<Vec<CornerGen<S>>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut words = Vec::with_capacity(count);
    for _ in 0..count {
        let len = rng.gen_range(0..=max_len);
        let mut word = Vec::with_capacity(len);
        for _ in 0..len {
            let a = cfg.h_plus[rng.gen_range(0..cfg.h_plus.len())].clone();
            let m = cfg.m_samples[rng.gen_range(0..cfg.m_samples.len())].clone();
            word.push(match rng.gen_range(0..5) {
                0 => CornerGen::S(a),
                1 => CornerGen::SStar(a),
                2 => CornerGen::U(m),
                3 => CornerGen::UStar(m),
                _ => CornerGen::P(a, m),
            });
        }
        words.push(word);
    }
    words
}

fn vec_eq_check<S: CosetSystem>(
    id: &str,
    tuple: String,
    lhs: &FinVec<S>,
    rhs: &FinVec<S>,
) -> Check {
    Check::of(id, tuple, lhs == rhs, || format!("lhs={lhs:?} rhs={rhs:?}"))
}

/// The intertwining families of the dilation, verified exactly on basis
/// vectors, plus the operator forms of the PNH relations and unitarity
/// spot checks. `corrupt_shift` replaces `S̃` by the identity (dropping the
/// conjugation) as a negative control.
pub fn intertwining_check<S: CosetSystem>(
    sys: &S,
    cfg: &InstanceConfig<S>,
    corrupt_shift: bool,
) -> Vec<Check> {
    let mut out = Vec::new();
    let sh = |h: &S::HElem| -> ReprOp<S> {
        if corrupt_shift {
            ReprOp::Shift(sys.h_id())
        } else {
            ReprOp::Shift(h.clone())
        }
    };
    let h_str = |h: &S::HElem| sys.h_to_json(h).to_string();
    let n_str = |n: &S::NElem| sys.n_to_json(n).to_string();

    // S̃_a T = T S_a with S_a = T* S̃_a T
    for a in &cfg.h_plus {
        for y in &cfg.n_samples {
            let v = FinVec::delta(y.clone());
            let lhs = apply_word(sys, &[sh(a), ReprOp::Incl], &v);
            let rhs = apply_word(sys, &[ReprOp::Incl, ReprOp::Restr, sh(a), ReprOp::Incl], &v);
            out.push(vec_eq_check(
                "repr.shift_intertwine",
                format!("{}, {}", h_str(a), n_str(y)),
                &lhs,
                &rhs,
            ));
        }
    }
    // T P(a,m) = P̃(a,m) T
    for a in &cfg.h_plus {
        for m in cfg.m_samples.iter().take(6) {
            let c = sys.coset(m, &sys.sub_of_conj(a));
            let mult = ReprOp::Mult(D0Elem::indicator(c));
            for y in cfg.n_samples.iter().take(8) {
                let v = FinVec::delta(y.clone());
                let lhs = apply_word(
                    sys,
                    &[ReprOp::Incl, ReprOp::Restr, mult.clone(), ReprOp::Incl],
                    &v,
                );
                let rhs = apply_word(sys, &[mult.clone(), ReprOp::Incl], &v);
                out.push(vec_eq_check(
                    "repr.projection_intertwine",
                    format!("{}, {}, {}", h_str(a), n_str(m), n_str(y)),
                    &lhs,
                    &rhs,
                ));
            }
        }
    }
    // Ũ(m) T = T U(m)
    for m in &cfg.m_samples {
        for y in cfg.n_samples.iter().take(8) {
            let v = FinVec::delta(y.clone());
            let lhs = apply_word(sys, &[ReprOp::Trans(m.clone()), ReprOp::Incl], &v);
            let rhs = apply_word(
                sys,
                &[
                    ReprOp::Incl,
                    ReprOp::Restr,
                    ReprOp::Trans(m.clone()),
                    ReprOp::Incl,
                ],
                &v,
            );
            out.push(vec_eq_check(
                "repr.translation_intertwine",
                format!("{}, {}", n_str(m), n_str(y)),
                &lhs,
                &rhs,
            ));
        }
    }
    // S̃_h Ũ(n) S̃_h* = Ũ(h n h⁻¹)
    for h in &cfg.h_all {
        for n in cfg.n_samples.iter().take(8) {
            for y in cfg.n_samples.iter().take(6) {
                let v = FinVec::delta(y.clone());
                let lhs = apply_word(
                    sys,
                    &[sh(h), ReprOp::Trans(n.clone()), sh(&sys.h_inv(h))],
                    &v,
                );
                let rhs = apply_word(sys, &[ReprOp::Trans(sys.conj(h, n))], &v);
                out.push(vec_eq_check(
                    "repr.conjugation_law",
                    format!("{}, {}, {}", h_str(h), n_str(n), n_str(y)),
                    &lhs,
                    &rhs,
                ));
            }
        }
    }
    // operator forms of the PNH relations for h outside H⁺
    let outside: Vec<_> = cfg.h_all.iter().filter(|h| !sys.in_h_plus(h)).collect();
    for h in &outside {
        let sub = sys.sub_of_conj(h);
        let n_slice: Vec<_> = cfg.n_samples.iter().take(6).collect();
        for n in &n_slice {
            for k in &n_slice {
                if sys.coset(n, &sub) == sys.coset(k, &sub) {
                    continue;
                }
                let p1 = ReprOp::Mult(pnh_indicator(sys, h, n));
                let p2 = ReprOp::Mult(pnh_indicator(sys, h, k));
                let mut ok = true;
                for y in cfg.n_samples.iter().take(8) {
                    let v = FinVec::delta(y.clone());
                    if !apply_word(sys, &[p1.clone(), p2.clone()], &v).is_zero() {
                        ok = false;
                        break;
                    }
                }
                out.push(Check::of(
                    "repr.pnh_orthogonal",
                    format!("{}, {}, {}", h_str(h), n_str(n), n_str(k)),
                    ok,
                    || "distinct translates fail to be orthogonal as operators".into(),
                ));
            }
        }
        for n in &n_slice {
            for b in cfg.h_plus.iter().take(3) {
                let tuple = format!("{}, {}, {}", h_str(h), n_str(n), h_str(b));
                let check = (|| -> Result<Check, CosetError> {
                    let reps = sys.sub_transversal(&sys.m_sub(), &sys.sub_of_conj(b))?;
                    let hb = sys.h_op(h, b);
                    let hb_sub = sys.sub_of_conj(&hb);
                    let lhs_op = ReprOp::Mult(pnh_indicator(sys, h, n));
                    let mut ok = true;
                    for y in cfg.n_samples.iter().take(8) {
                        let v = FinVec::delta(y.clone());
                        let lhs = apply_op(sys, &lhs_op, &v);
                        let mut rhs = FinVec::zero();
                        for m in &reps {
                            let shift = sys.n_op(n, &sys.conj(h, m));
                            let c = sys.coset(&shift, &hb_sub);
                            rhs = rhs.add(&apply_op(sys, &ReprOp::Mult(D0Elem::indicator(c)), &v));
                        }
                        if lhs != rhs {
                            ok = false;
                            break;
                        }
                    }
                    Ok(Check::of("repr.pnh_consistent", tuple.clone(), ok, || {
                        "partition of the translate fails as operators".into()
                    }))
                })();
                out.push(
                    check.unwrap_or_else(|e| {
                        Check::fail("repr.pnh_consistent", tuple, e.to_string())
                    }),
                );
            }
        }
    }
    // unitarity and the isometry dilation, spot-checked
    for h in cfg.h_all.iter().take(4) {
        let mut v = FinVec::zero();
        for (i, y) in cfg.n_samples.iter().take(4).enumerate() {
            v.add_entry(y.clone(), Scalar::from_int(i as i64 + 1));
        }
        let w = FinVec::delta(cfg.n_samples[0].clone())
            .scale(&Scalar::i())
            .add(&v);
        let sv = apply_op(sys, &ReprOp::Shift(h.clone()), &v);
        let sw = apply_op(sys, &ReprOp::Shift(h.clone()), &w);
        out.push(Check::of(
            "repr.shift_unitary",
            h_str(h),
            sv.inner(&sw) == v.inner(&w),
            || "inner product not preserved".into(),
        ));
    }
    for a in &cfg.h_plus {
        let mut ok = true;
        for y in &cfg.m_samples {
            let v = FinVec::delta(y.clone());
            let word = [
                ReprOp::Restr,
                ReprOp::Shift(sys.h_inv(a)),
                ReprOp::Incl,
                ReprOp::Restr,
                ReprOp::Shift(a.clone()),
                ReprOp::Incl,
            ];
            if apply_word(sys, &word, &v) != v {
                ok = false;
                break;
            }
        }
        out.push(Check::of("repr.isometry_dilation", h_str(a), ok, || {
            "S_a*S_a is not the identity on M-supported vectors".into()
        }));
    }
    // the pair (h,n) ↦ Ũ(n)S̃_h is multiplicative against the composition law
    for g1 in cfg.g_samples.iter().take(6) {
        for g2 in cfg.g_samples.iter().take(6) {
            let mut ok = true;
            for y in cfg.n_samples.iter().take(5) {
                let v = FinVec::delta(y.clone());
                let lam = |g: &GroupElem<S>, v: &FinVec<S>| {
                    apply_word(
                        sys,
                        &[ReprOp::Trans(g.n.clone()), ReprOp::Shift(g.h.clone())],
                        v,
                    )
                };
                let lhs = lam(g1, &lam(g2, &v));
                let rhs = lam(&sys.g_mul(g1, g2), &v);
                if lhs != rhs {
                    ok = false;
                    break;
                }
            }
            out.push(Check::of(
                "repr.semidirect_representation",
                format!(
                    "{}, {}",
                    crate::jsonio::group_to_json(sys, g1),
                    crate::jsonio::group_to_json(sys, g2)
                ),
                ok,
                || "representation is not multiplicative".into(),
            ));
        }
    }
    // covariance: λ_g mult(f) λ_g⁻¹ = mult(α_g f)
    for g in cfg.g_samples.iter().take(6) {
        for a in cfg.h_plus.iter().take(2) {
            let c = sys.coset(&cfg.n_samples[0], &sys.sub_of_conj(a));
            let f = D0Elem::indicator(c);
            let mut ok = true;
            for y in cfg.n_samples.iter().take(6) {
                let v = FinVec::delta(y.clone());
                // λ_g = Ũ(n)∘S̃_h, so λ_g⁻¹ = S̃_{h⁻¹}∘Ũ(-n)
                let lhs = apply_word(
                    sys,
                    &[
                        ReprOp::Trans(g.n.clone()),
                        ReprOp::Shift(g.h.clone()),
                        ReprOp::Mult(f.clone()),
                        ReprOp::Shift(sys.h_inv(&g.h)),
                        ReprOp::Trans(sys.n_inv(&g.n)),
                    ],
                    &v,
                );
                let rhs = apply_op(sys, &ReprOp::Mult(f.act_by(sys, g)), &v);
                if lhs != rhs {
                    ok = false;
                    break;
                }
            }
            out.push(Check::of(
                "repr.covariance",
                format!("{}, {}", crate::jsonio::group_to_json(sys, g), h_str(a)),
                ok,
                || "conjugated multiplication operator mismatch".into(),
            ));
        }
    }
    out
}
