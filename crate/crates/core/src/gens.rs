//! Concrete generator families in the corner `pA₀p` and in `D₀`, the checked
//! extension constructors, and the corner factorization exhibiting fullness
//! of `p`.
//!
//! The families are
//! * `s_a = p·a·p` for `a ∈ H⁺` (isometries),
//! * `u(m) = p·m·p` for `m ∈ M` (unitaries),
//! * `p(a, m) = χ_{m·aMa⁻¹}` (projections, living in `D₀ ∩ pA₀p`),
//! * `p(a, n) = χ_{n·aMa⁻¹}` for `n ∈ N` and `p(h, n) = χ_{n·hMh⁻¹}` for
//!   `h ∈ H` (the PN and PNH projection families in `D₀`).

use crate::a0::{A0Elem, CornerElem};
use crate::d0::D0Elem;
use crate::scalar::Scalar;
use crate::system::{Coset, CosetError, CosetSystem, InstanceConfig};

/// The isometry `s_a = p·a·p` for `a ∈ H⁺`.
pub fn gen_s<S: CosetSystem>(sys: &S, a: &S::HElem) -> Result<CornerElem<S>, CosetError> {
    if !sys.in_h_plus(a) {
        return Err(CosetError::NotInHPlus);
    }
    CornerElem::cut(sys, &A0Elem::from_group(sys.g_of(sys.n_id(), a.clone())))
}

/// The unitary `u(m) = p·m·p` for `m ∈ M`.
pub fn gen_u<S: CosetSystem>(sys: &S, m: &S::NElem) -> Result<CornerElem<S>, CosetError> {
    if !sys.sub_contains(&sys.m_sub(), m) {
        return Err(CosetError::NotInM);
    }
    CornerElem::cut(sys, &A0Elem::from_group(sys.g_of(m.clone(), sys.h_id())))
}

/// The projection `p(a, m) = χ_{m·aMa⁻¹}` for `a ∈ H⁺`, `m ∈ M`.
pub fn gen_p<S: CosetSystem>(
    sys: &S,
    a: &S::HElem,
    m: &S::NElem,
) -> Result<CornerElem<S>, CosetError> {
    if !sys.in_h_plus(a) {
        return Err(CosetError::NotInHPlus);
    }
    if !sys.sub_contains(&sys.m_sub(), m) {
        return Err(CosetError::NotInM);
    }
    let c = sys.coset(m, &sys.sub_of_conj(a));
    CornerElem::certify(sys, A0Elem::from_d0(sys, D0Elem::indicator(c)))
}

/// The PN projection `p(a, n) = χ_{n·aMa⁻¹}` in `D₀`, for `a ∈ H⁺`, `n ∈ N`.
pub fn pn_indicator<S: CosetSystem>(
    sys: &S,
    a: &S::HElem,
    n: &S::NElem,
) -> Result<D0Elem<S>, CosetError> {
    if !sys.in_h_plus(a) {
        return Err(CosetError::NotInHPlus);
    }
    Ok(D0Elem::indicator(sys.coset(n, &sys.sub_of_conj(a))))
}

/// The PNH projection `p(h, n) = χ_{n·hMh⁻¹}` in `D₀`, for any `h ∈ H`.
pub fn pnh_indicator<S: CosetSystem>(sys: &S, h: &S::HElem, n: &S::NElem) -> D0Elem<S> {
    D0Elem::indicator(sys.coset(n, &sys.sub_of_conj(h)))
}

/// Auxiliary conjugators from the sample set that pull `n` into `M`:
/// `c ∈ H⁺` with `c n c⁻¹ ∈ M`.
fn pulling_conjugators<'a, S: CosetSystem>(
    sys: &S,
    cfg: &'a InstanceConfig<S>,
    n: &S::NElem,
) -> Vec<&'a S::HElem> {
    let m = sys.m_sub();
    cfg.h_plus
        .iter()
        .filter(|c| sys.sub_contains(&m, &sys.conj(c, n)))
        .collect()
}

/// Extend the projection family from `M` to `N` by the dilation formula
/// `P(a, c⁻¹mc) = S_c* P(ca, m) S_c`, evaluated at the unitary level where
/// `S_c` is the group element `c` itself:
/// `P(a, n) = α_{c⁻¹}(χ_{β_c(n)·(ca)M(ca)⁻¹})`.
///
/// Well-definedness is certified by computing through two distinct sampled
/// `c` and asserting equality in `D₀`.
pub fn extend_pn<S: CosetSystem>(
    sys: &S,
    cfg: &InstanceConfig<S>,
    a: &S::HElem,
    n: &S::NElem,
) -> Result<D0Elem<S>, CosetError> {
    if !sys.in_h_plus(a) {
        return Err(CosetError::NotInHPlus);
    }
    let cs = pulling_conjugators(sys, cfg, n);
    if cs.len() < 2 {
        return Err(CosetError::NoFactorization);
    }
    let route = |c: &S::HElem| -> D0Elem<S> {
        let m = sys.conj(c, n);
        let ca = sys.h_op(c, a);
        let big = sys.coset(&m, &sys.sub_of_conj(&ca));
        let back = sys.g_of(sys.n_id(), sys.h_inv(c));
        D0Elem::indicator(sys.act(&back, &big))
    };
    let first = route(cs[0]);
    let second = route(cs[1]);
    if !first.eq_d0(sys, &second)? {
        return Err(CosetError::RouteMismatch);
    }
    Ok(first)
}

/// Extend the projection family from `H⁺` to all of `H` by
/// `P(h, n) = Σ_{m ∈ M/bMb⁻¹} P(hb, n·hmh⁻¹)` for any sampled `b ∈ H⁺` with
/// `hb ∈ H⁺`; two choices of `b` are compared in `D₀`.
pub fn extend_pnh<S: CosetSystem>(
    sys: &S,
    cfg: &InstanceConfig<S>,
    h: &S::HElem,
    n: &S::NElem,
) -> Result<D0Elem<S>, CosetError> {
    let bs: Vec<&S::HElem> = cfg
        .h_plus
        .iter()
        .filter(|b| sys.in_h_plus(&sys.h_op(h, b)))
        .collect();
    if bs.len() < 2 {
        return Err(CosetError::NoFactorization);
    }
    let route = |b: &S::HElem| -> Result<D0Elem<S>, CosetError> {
        let hb = sys.h_op(h, b);
        let sub = sys.sub_of_conj(&hb);
        let reps = sys.sub_transversal(&sys.m_sub(), &sys.sub_of_conj(b))?;
        Ok(D0Elem::from_pairs(reps.into_iter().map(|m| {
            let shift = sys.n_op(n, &sys.conj(h, &m));
            (sys.coset(&shift, &sub), Scalar::one())
        })))
    };
    let first = route(bs[0])?;
    let second = route(bs[1])?;
    if !first.eq_d0(sys, &second)? {
        return Err(CosetError::RouteMismatch);
    }
    Ok(first)
}

/// Factor the indicator of a coset through the corner: pairs `(l_i, r_i)`
/// with `Σ l_i·p·r_i = p_c` exactly, exhibiting `A₀ = span A₀pA₀`.
///
/// The construction refines `c` by `V = meet(U, M)` and uses
/// `p_{xV} = (x·χ_V)·p·(x·χ_V)*`.
#[allow(clippy::type_complexity)]
pub fn corner_factorization<S: CosetSystem>(
    sys: &S,
    c: &Coset<S>,
) -> Result<Vec<(A0Elem<S>, A0Elem<S>)>, CosetError> {
    let v = sys.sub_meet(c.sub(), &sys.m_sub());
    let idx = sys.sub_index(c.sub(), &v)?;
    let budget = sys.refine_budget();
    if idx > budget {
        return Err(CosetError::RefinementBlowup {
            lhs_index: idx,
            rhs_index: 1,
            budget,
        });
    }
    let chi_v = D0Elem::indicator(sys.coset(&sys.n_id(), &v));
    let mut pairs = Vec::with_capacity(idx as usize);
    for piece in sys.refine(c, &v)? {
        let l = A0Elem::from_term(sys.g_of(piece.rep().clone(), sys.h_id()), chi_v.clone());
        let r = l.star(sys);
        pairs.push((l, r));
    }
    Ok(pairs)
}

/// Verify a factorization: `Σ l_i·p·r_i = p_c` by exact equality in `A₀`.
pub fn factorization_reconstructs<S: CosetSystem>(
    sys: &S,
    c: &Coset<S>,
    pairs: &[(A0Elem<S>, A0Elem<S>)],
) -> Result<bool, CosetError> {
    let p = A0Elem::proj_p(sys);
    let mut acc = A0Elem::zero();
    for (l, r) in pairs {
        acc = acc.add(&l.mul(sys, &p)?.mul(sys, r)?);
    }
    acc.eq_a0(sys, &A0Elem::from_d0(sys, D0Elem::indicator(c.clone())))
}

/// The range projection `s_a s_a* = χ_{aMa⁻¹}`.
pub fn range_projection<S: CosetSystem>(
    sys: &S,
    a: &S::HElem,
) -> Result<CornerElem<S>, CosetError> {
    let s = gen_s(sys, a)?;
    s.mul(sys, &s.star(sys))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::lamplighter::LamplighterSystem;
    use crate::instances::numberfield::NumberFieldSystem;
    use crate::instances::rational::{rat, RationalSystem};

    #[test]
    fn s_is_a_semigroup_of_isometries() {
        let sys = RationalSystem::new();
        let p = CornerElem::unit(&sys);
        for (a, b) in [(2i64, 3i64), (2, 2), (3, 4)] {
            let sa = gen_s(&sys, &rat(a, 1)).unwrap();
            let sb = gen_s(&sys, &rat(b, 1)).unwrap();
            let sab = gen_s(&sys, &rat(a * b, 1)).unwrap();
            assert!(sa.mul(&sys, &sb).unwrap().eq_corner(&sys, &sab).unwrap());
            // isometry law
            let sts = sa.star(&sys).mul(&sys, &sa).unwrap();
            assert!(sts.eq_corner(&sys, &p).unwrap());
        }
        assert!(matches!(
            gen_s(&sys, &rat(1, 2)),
            Err(CosetError::NotInHPlus)
        ));
    }

    #[test]
    fn u_is_a_group_of_unitaries() {
        let sys = RationalSystem::new();
        let p = CornerElem::unit(&sys);
        for m in [-2i64, 0, 1, 3] {
            let u = gen_u(&sys, &rat(m, 1)).unwrap();
            let uu = u.star(&sys).mul(&sys, &u).unwrap();
            assert!(uu.eq_corner(&sys, &p).unwrap());
            let uu = u.mul(&sys, &u.star(&sys)).unwrap();
            assert!(uu.eq_corner(&sys, &p).unwrap());
        }
        assert!(matches!(gen_u(&sys, &rat(1, 2)), Err(CosetError::NotInM)));
    }

    #[test]
    fn range_projection_is_the_subgroup_indicator() {
        let sys = RationalSystem::new();
        let r = range_projection(&sys, &rat(2, 1)).unwrap();
        let expect = gen_p(&sys, &rat(2, 1), &rat(0, 1)).unwrap();
        assert!(r.eq_corner(&sys, &expect).unwrap());
    }

    #[test]
    fn su_to_sp_consistency() {
        let sys = RationalSystem::new();
        for a in [2i64, 3] {
            for m in [-1i64, 0, 2] {
                let u = gen_u(&sys, &rat(m, 1)).unwrap();
                let s = gen_s(&sys, &rat(a, 1)).unwrap();
                let lhs = u
                    .mul(&sys, &s)
                    .unwrap()
                    .mul(&sys, &s.star(&sys))
                    .unwrap()
                    .mul(&sys, &u.star(&sys))
                    .unwrap();
                let rhs = gen_p(&sys, &rat(a, 1), &rat(m, 1)).unwrap();
                assert!(lhs.eq_corner(&sys, &rhs).unwrap());
            }
        }
    }

    #[test]
    fn partition_of_unity_from_translated_ranges() {
        let sys = RationalSystem::new();
        // u(0)s₂s₂*u(0)* + u(1)s₂s₂*u(-1) = p, expanding to χ_{2Z}+χ_{1+2Z}
        let s2 = gen_s(&sys, &rat(2, 1)).unwrap();
        let range = s2.mul(&sys, &s2.star(&sys)).unwrap();
        let mut acc = A0Elem::zero();
        for m in [0i64, 1] {
            let u = gen_u(&sys, &rat(m, 1)).unwrap();
            let term = u
                .mul(&sys, &range)
                .unwrap()
                .mul(&sys, &u.star(&sys))
                .unwrap();
            acc = acc.add(term.elem());
        }
        assert!(acc.eq_a0(&sys, &A0Elem::proj_p(&sys)).unwrap());
    }

    #[test]
    fn gen_p_identity_is_p() {
        let sys = RationalSystem::new();
        let pe = gen_p(&sys, &rat(1, 1), &rat(0, 1)).unwrap();
        assert!(pe.eq_corner(&sys, &CornerElem::unit(&sys)).unwrap());
    }

    #[test]
    fn extend_pnh_halving_example() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        // P(1/2, 0) expands through b=2 as χ_Z + χ_{1/2+Z} = χ_{(1/2)Z}
        let got = extend_pnh(&sys, &cfg, &rat(1, 2), &rat(0, 1)).unwrap();
        let expect = pnh_indicator(&sys, &rat(1, 2), &rat(0, 1));
        assert!(got.eq_d0(&sys, &expect).unwrap());
    }

    #[test]
    fn extend_pn_agrees_with_direct_family_on_m() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        for a in [rat(2, 1), rat(3, 1)] {
            for n in [rat(0, 1), rat(1, 1), rat(-2, 1)] {
                let ext = extend_pn(&sys, &cfg, &a, &n).unwrap();
                let direct = pn_indicator(&sys, &a, &n).unwrap();
                assert!(ext.eq_d0(&sys, &direct).unwrap());
            }
        }
    }

    #[test]
    fn extend_pn_on_fractional_translates() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        for n in [rat(1, 2), rat(1, 3), rat(-5, 2)] {
            let ext = extend_pn(&sys, &cfg, &rat(2, 1), &n).unwrap();
            let direct = pn_indicator(&sys, &rat(2, 1), &n).unwrap();
            assert!(ext.eq_d0(&sys, &direct).unwrap());
        }
    }

    #[test]
    fn pnh_extension_matches_direct_on_all_instances() {
        let sysq = RationalSystem::new();
        let cfgq = sysq.default_config();
        for h in &cfgq.h_all {
            for n in cfgq.n_samples.iter().take(6) {
                let got = extend_pnh(&sysq, &cfgq, h, n).unwrap();
                assert!(got.eq_d0(&sysq, &pnh_indicator(&sysq, h, n)).unwrap());
            }
        }
        let sysl = LamplighterSystem::new(2).unwrap();
        let cfgl = sysl.default_config();
        for h in &cfgl.h_all {
            for n in cfgl.n_samples.iter().take(6) {
                let got = extend_pnh(&sysl, &cfgl, h, n).unwrap();
                assert!(got.eq_d0(&sysl, &pnh_indicator(&sysl, h, n)).unwrap());
            }
        }
        let sysk = NumberFieldSystem::sqrt2();
        let cfgk = sysk.default_config();
        for h in cfgk.h_all.iter().take(6) {
            for n in cfgk.n_samples.iter().take(4) {
                let got = extend_pnh(&sysk, &cfgk, h, n).unwrap();
                assert!(got.eq_d0(&sysk, &pnh_indicator(&sysk, h, n)).unwrap());
            }
        }
    }

    #[test]
    fn corner_factorization_reconstructs() {
        let sys = RationalSystem::new();
        // p_M factors through the single pair (p, p)
        let c = sys.m_coset();
        let pairs = corner_factorization(&sys, &c).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(factorization_reconstructs(&sys, &c, &pairs).unwrap());
        // 1 + 3Z: one pair
        let c = sys.coset(&rat(1, 1), &rat(3, 1));
        let pairs = corner_factorization(&sys, &c).unwrap();
        assert_eq!(pairs.len(), 1);
        assert!(factorization_reconstructs(&sys, &c, &pairs).unwrap());
        // 1/2 + (3/2)Z refines into two M-subcosets
        let c = sys.coset(&rat(1, 2), &rat(3, 2));
        let pairs = corner_factorization(&sys, &c).unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(factorization_reconstructs(&sys, &c, &pairs).unwrap());
    }
}
