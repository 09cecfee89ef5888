//! Relation audits for the generator families.
//!
//! Each audit runs the defining relations of one family over every tuple from
//! the configured sample sets, in the symbolic corner algebra (or in `D₀` for
//! the projection families), and reports one [`Check`] per tuple. Failures
//! carry the disagreeing values as witnesses. A deliberately corrupted family
//! is available per audit as a negative control; corrupted audits must fail.

use crate::a0::{A0Elem, CornerElem};
use crate::d0::D0Elem;
use crate::gens::{gen_s, gen_u, pnh_indicator};
use crate::jsonio;
use crate::report::Check;
use crate::scalar::Scalar;
use crate::system::{CosetError, CosetSystem, InstanceConfig};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Family {
    Sp,
    Su,
    Pn,
    Pnh,
}

impl Family {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "sp" => Some(Family::Sp),
            "su" => Some(Family::Su),
            "pn" => Some(Family::Pn),
            "pnh" => Some(Family::Pnh),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Sp => "sp",
            Family::Su => "su",
            Family::Pn => "pn",
            Family::Pnh => "pnh",
        }
    }
}

/// Generator access with an optional corruption for negative controls.
///
/// The corruption replaces each projection by the indicator of the wrong
/// coset (conjugation level doubled, `aMa⁻¹ ↦ a²Ma⁻²`) and each unitary by
/// its square; relation audits must catch both.
struct Gens<'a, S: CosetSystem> {
    sys: &'a S,
    corrupted: bool,
}

impl<'a, S: CosetSystem> Gens<'a, S> {
    fn s(&self, a: &S::HElem) -> Result<CornerElem<S>, CosetError> {
        gen_s(self.sys, a)
    }

    fn u(&self, m: &S::NElem) -> Result<CornerElem<S>, CosetError> {
        if self.corrupted {
            gen_u(self.sys, &self.sys.n_op(m, m))
        } else {
            gen_u(self.sys, m)
        }
    }

    fn level(&self, a: &S::HElem) -> S::HElem {
        if self.corrupted {
            self.sys.h_op(a, a)
        } else {
            a.clone()
        }
    }

    /// `p(a, m)` as a corner element (projections live in `D₀`).
    fn p(&self, a: &S::HElem, m: &S::NElem) -> CornerElem<S> {
        let c = self.sys.coset(m, &self.sys.sub_of_conj(&self.level(a)));
        CornerElem::certify(self.sys, A0Elem::from_d0(self.sys, D0Elem::indicator(c)))
            .expect("projection below p stays in the corner")
    }

    /// `p(a, n)` resp. `p(h, n)` as an element of `D₀`.
    fn pn(&self, a: &S::HElem, n: &S::NElem) -> D0Elem<S> {
        pnh_indicator(self.sys, &self.level(a), n)
    }
}

fn render_tuple(parts: &[String]) -> String {
    parts.join(", ")
}

fn corner_check<S: CosetSystem>(
    sys: &S,
    id: &str,
    tuple: String,
    lhs: Result<CornerElem<S>, CosetError>,
    rhs: Result<CornerElem<S>, CosetError>,
) -> Check {
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => match l.eq_corner(sys, &r) {
            Ok(true) => Check::pass(id, tuple),
            Ok(false) => Check::fail(
                id,
                tuple,
                format!(
                    "lhs={} rhs={}",
                    jsonio::a0_to_json(sys, l.elem())
                        .map(|v| v.to_string())
                        .unwrap_or_default(),
                    jsonio::a0_to_json(sys, r.elem())
                        .map(|v| v.to_string())
                        .unwrap_or_default()
                ),
            ),
            Err(e) => Check::fail(id, tuple, format!("error: {e}")),
        },
        (Err(e), _) | (_, Err(e)) => Check::fail(id, tuple, format!("error: {e}")),
    }
}

fn d0_check<S: CosetSystem>(
    sys: &S,
    id: &str,
    tuple: String,
    lhs: &D0Elem<S>,
    rhs: &D0Elem<S>,
) -> Check {
    match lhs.eq_d0(sys, rhs) {
        Ok(true) => Check::pass(id, tuple),
        Ok(false) => Check::fail(
            id,
            tuple,
            format!(
                "lhs={} rhs={}",
                jsonio::d0_to_json(sys, lhs),
                jsonio::d0_to_json(sys, rhs)
            ),
        ),
        Err(e) => Check::fail(id, tuple, format!("error: {e}")),
    }
}

/// Run the named family's defining relations over the sample sets.
pub fn audit_family<S: CosetSystem>(
    sys: &S,
    cfg: &InstanceConfig<S>,
    family: Family,
    corrupted: bool,
) -> Vec<Check> {
    let gens = Gens { sys, corrupted };
    match family {
        Family::Sp => audit_sp(sys, cfg, &gens),
        Family::Su => audit_su(sys, cfg, &gens),
        Family::Pn => audit_pn(sys, cfg, &gens),
        Family::Pnh => audit_pnh(sys, cfg, &gens),
    }
}

fn h_str<S: CosetSystem>(sys: &S, a: &S::HElem) -> String {
    sys.h_to_json(a).to_string()
}

fn n_str<S: CosetSystem>(sys: &S, n: &S::NElem) -> String {
    sys.n_to_json(n).to_string()
}

fn audit_sp<S: CosetSystem>(sys: &S, cfg: &InstanceConfig<S>, gens: &Gens<S>) -> Vec<Check> {
    let mut out = Vec::new();
    // s_a s_b = s_{ab}
    for a in &cfg.h_plus {
        for b in &cfg.h_plus {
            let tuple = render_tuple(&[h_str(sys, a), h_str(sys, b)]);
            let lhs = gens
                .s(a)
                .and_then(|sa| gens.s(b).and_then(|sb| sa.mul(sys, &sb)));
            let rhs = gens.s(&sys.h_op(a, b));
            out.push(corner_check(sys, "sp.s_rep", tuple, lhs, rhs));
        }
    }
    // P(e,e) = 1
    out.push(corner_check(
        sys,
        "sp.p_e",
        "e, e".into(),
        Ok(gens.p(&sys.h_id(), &sys.n_id())),
        Ok(CornerElem::unit(sys)),
    ));
    // S_a P(b,m) S_a* = P(ab, a m a⁻¹)
    for a in &cfg.h_plus {
        for b in &cfg.h_plus {
            for m in &cfg.m_samples {
                let tuple = render_tuple(&[h_str(sys, a), h_str(sys, b), n_str(sys, m)]);
                let lhs = gens.s(a).and_then(|sa| {
                    sa.mul(sys, &gens.p(b, m))
                        .and_then(|x| x.mul(sys, &sa.star(sys)))
                });
                let rhs = Ok(gens.p(&sys.h_op(a, b), &sys.conj(a, m)));
                out.push(corner_check(sys, "sp.s_p", tuple, lhs, rhs));
            }
        }
    }
    // P(a,k) = Σ_{m ∈ M/bMb⁻¹} P(ab, k·a m a⁻¹)
    for a in &cfg.h_plus {
        for k in &cfg.m_samples {
            for b in &cfg.h_plus {
                let tuple = render_tuple(&[h_str(sys, a), n_str(sys, k), h_str(sys, b)]);
                let check = (|| -> Result<Check, CosetError> {
                    let reps = sys.sub_transversal(&sys.m_sub(), &sys.sub_of_conj(b))?;
                    let ab = sys.h_op(a, b);
                    let mut acc = A0Elem::zero();
                    for m in reps {
                        let shift = sys.n_op(k, &sys.conj(a, &m));
                        acc = acc.add(gens.p(&ab, &shift).elem());
                    }
                    let lhs = gens.p(a, k);
                    Ok(match lhs.elem().eq_a0(sys, &acc) {
                        Ok(true) => Check::pass("sp.p_consistent", tuple.clone()),
                        Ok(false) => Check::fail(
                            "sp.p_consistent",
                            tuple.clone(),
                            format!(
                                "lhs={} rhs={}",
                                jsonio::a0_to_json(sys, lhs.elem())
                                    .map(|v| v.to_string())
                                    .unwrap_or_default(),
                                jsonio::a0_to_json(sys, &acc)
                                    .map(|v| v.to_string())
                                    .unwrap_or_default()
                            ),
                        ),
                        Err(e) => {
                            Check::fail("sp.p_consistent", tuple.clone(), format!("error: {e}"))
                        }
                    })
                })();
                out.push(check.unwrap_or_else(|e| {
                    Check::fail("sp.p_consistent", tuple, format!("error: {e}"))
                }));
            }
        }
    }
    out
}

fn audit_su<S: CosetSystem>(sys: &S, cfg: &InstanceConfig<S>, gens: &Gens<S>) -> Vec<Check> {
    let mut out = Vec::new();
    let unit = CornerElem::unit(sys);
    // s_a s_b = s_{ab}
    for a in &cfg.h_plus {
        for b in &cfg.h_plus {
            let tuple = render_tuple(&[h_str(sys, a), h_str(sys, b)]);
            let lhs = gens
                .s(a)
                .and_then(|sa| gens.s(b).and_then(|sb| sa.mul(sys, &sb)));
            let rhs = gens.s(&sys.h_op(a, b));
            out.push(corner_check(sys, "su.s_rep", tuple, lhs, rhs));
        }
    }
    // isometry and unitarity laws
    for a in &cfg.h_plus {
        let tuple = h_str(sys, a);
        let lhs = gens.s(a).and_then(|sa| sa.star(sys).mul(sys, &sa));
        out.push(corner_check(
            sys,
            "su.isometry",
            tuple,
            lhs,
            Ok(unit.clone()),
        ));
    }
    for m in &cfg.m_samples {
        let tuple = n_str(sys, m);
        let lhs = gens.u(m).and_then(|u| u.star(sys).mul(sys, &u));
        out.push(corner_check(
            sys,
            "su.unitary",
            tuple.clone(),
            lhs,
            Ok(unit.clone()),
        ));
        let lhs = gens.u(m).and_then(|u| u.mul(sys, &u.star(sys)));
        out.push(corner_check(
            sys,
            "su.counitary",
            tuple,
            lhs,
            Ok(unit.clone()),
        ));
    }
    // S_a U(m) = U(a m a⁻¹) S_a
    for a in &cfg.h_plus {
        for m in &cfg.m_samples {
            let tuple = render_tuple(&[h_str(sys, a), n_str(sys, m)]);
            let lhs = gens
                .s(a)
                .and_then(|sa| gens.u(m).and_then(|u| sa.mul(sys, &u)));
            let rhs = gens
                .u(&sys.conj(a, m))
                .and_then(|u| gens.s(a).and_then(|sa| u.mul(sys, &sa)));
            out.push(corner_check(sys, "su.s_u", tuple, lhs, rhs));
        }
    }
    // Σ_{m ∈ M/aMa⁻¹} U(m) S_a S_a* U(m)* = 1
    for a in &cfg.h_plus {
        let tuple = h_str(sys, a);
        let result = (|| -> Result<Check, CosetError> {
            let reps = sys.sub_transversal(&sys.m_sub(), &sys.sub_of_conj(a))?;
            let sa = gens.s(a)?;
            let range = sa.mul(sys, &sa.star(sys))?;
            let mut acc = A0Elem::zero();
            for m in reps {
                let u = gens.u(&m)?;
                let term = u.mul(sys, &range)?.mul(sys, &u.star(sys))?;
                acc = acc.add(term.elem());
            }
            Ok(match acc.eq_a0(sys, &A0Elem::proj_p(sys)) {
                Ok(true) => Check::pass("su.u_consistent", tuple.clone()),
                Ok(false) => Check::fail(
                    "su.u_consistent",
                    tuple.clone(),
                    format!(
                        "sum={}",
                        jsonio::a0_to_json(sys, &acc)
                            .map(|v| v.to_string())
                            .unwrap_or_default()
                    ),
                ),
                Err(e) => Check::fail("su.u_consistent", tuple.clone(), format!("error: {e}")),
            })
        })();
        out.push(result.unwrap_or_else(|e| {
            Check::fail("su.u_consistent", h_str(sys, a), format!("error: {e}"))
        }));
    }
    // U(m)U(k) = U(mk)
    for m in &cfg.m_samples {
        for k in &cfg.m_samples {
            let tuple = render_tuple(&[n_str(sys, m), n_str(sys, k)]);
            let lhs = gens
                .u(m)
                .and_then(|um| gens.u(k).and_then(|uk| um.mul(sys, &uk)));
            let rhs = gens.u(&sys.n_op(m, k));
            out.push(corner_check(sys, "su.u_rep", tuple, lhs, rhs));
        }
    }
    out
}

fn audit_pn<S: CosetSystem>(sys: &S, cfg: &InstanceConfig<S>, gens: &Gens<S>) -> Vec<Check> {
    let mut out = Vec::new();
    let n_slice: Vec<_> = cfg.n_samples.iter().take(10).collect();
    // orthogonality: P(a,n)P(a,k) = 0 when the true cosets differ, and the
    // common indicator when they coincide
    for a in &cfg.h_plus {
        let sub = sys.sub_of_conj(a);
        for n in &n_slice {
            for k in &n_slice {
                let tuple = render_tuple(&[h_str(sys, a), n_str(sys, n), n_str(sys, k)]);
                let pa_n = gens.pn(a, n);
                let pa_k = gens.pn(a, k);
                let expected = if sys.coset(n, &sub) == sys.coset(k, &sub) {
                    gens.pn(a, n)
                } else {
                    D0Elem::zero()
                };
                match pa_n.mul(sys, &pa_k) {
                    Ok(prod) => out.push(d0_check(sys, "pn.orthogonal", tuple, &prod, &expected)),
                    Err(e) => out.push(Check::fail("pn.orthogonal", tuple, format!("error: {e}"))),
                }
            }
        }
    }
    // P(a,n) = Σ_{m ∈ M/bMb⁻¹} P(ab, n·a m a⁻¹)
    for a in &cfg.h_plus {
        for b in &cfg.h_plus {
            for n in &cfg.n_samples {
                let tuple = render_tuple(&[h_str(sys, a), h_str(sys, b), n_str(sys, n)]);
                let check = (|| -> Result<Check, CosetError> {
                    let reps = sys.sub_transversal(&sys.m_sub(), &sys.sub_of_conj(b))?;
                    let ab = sys.h_op(a, b);
                    let sum = D0Elem::from_pairs(reps.into_iter().map(|m| {
                        let shift = sys.n_op(n, &sys.conj(a, &m));
                        (
                            sys.coset(&shift, &sys.sub_of_conj(&gens.level(&ab))),
                            Scalar::one(),
                        )
                    }));
                    Ok(d0_check(
                        sys,
                        "pn.consistent",
                        tuple.clone(),
                        &gens.pn(a, n),
                        &sum,
                    ))
                })();
                out.push(check.unwrap_or_else(|e| {
                    Check::fail("pn.consistent", tuple, format!("error: {e}"))
                }));
            }
        }
    }
    out
}

fn audit_pnh<S: CosetSystem>(sys: &S, cfg: &InstanceConfig<S>, gens: &Gens<S>) -> Vec<Check> {
    let mut out = Vec::new();
    let n_slice: Vec<_> = cfg.n_samples.iter().take(8).collect();
    for h in &cfg.h_all {
        let sub = sys.sub_of_conj(h);
        for n in &n_slice {
            for k in &n_slice {
                let tuple = render_tuple(&[h_str(sys, h), n_str(sys, n), n_str(sys, k)]);
                let expected = if sys.coset(n, &sub) == sys.coset(k, &sub) {
                    gens.pn(h, n)
                } else {
                    D0Elem::zero()
                };
                match gens.pn(h, n).mul(sys, &gens.pn(h, k)) {
                    Ok(prod) => out.push(d0_check(sys, "pnh.orthogonal", tuple, &prod, &expected)),
                    Err(e) => out.push(Check::fail("pnh.orthogonal", tuple, format!("error: {e}"))),
                }
            }
        }
    }
    // P(h,n) = Σ_{m ∈ M/bMb⁻¹} P(hb, n·h m h⁻¹) for every b ∈ H⁺
    for h in &cfg.h_all {
        for b in &cfg.h_plus {
            for n in &n_slice {
                let tuple = render_tuple(&[h_str(sys, h), h_str(sys, b), n_str(sys, n)]);
                let check = (|| -> Result<Check, CosetError> {
                    let reps = sys.sub_transversal(&sys.m_sub(), &sys.sub_of_conj(b))?;
                    let hb = sys.h_op(h, b);
                    let sum = D0Elem::from_pairs(reps.into_iter().map(|m| {
                        let shift = sys.n_op(n, &sys.conj(h, &m));
                        (
                            sys.coset(&shift, &sys.sub_of_conj(&gens.level(&hb))),
                            Scalar::one(),
                        )
                    }));
                    Ok(d0_check(
                        sys,
                        "pnh.consistent",
                        tuple.clone(),
                        &gens.pn(h, n),
                        &sum,
                    ))
                })();
                out.push(check.unwrap_or_else(|e| {
                    Check::fail("pnh.consistent", tuple, format!("error: {e}"))
                }));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::lamplighter::LamplighterSystem;
    use crate::instances::numberfield::NumberFieldSystem;
    use crate::instances::rational::RationalSystem;

    fn assert_all_pass(checks: &[Check]) {
        for c in checks {
            assert!(c.pass, "{} failed on ({}): {:?}", c.id, c.tuple, c.witness);
        }
    }

    #[test]
    fn rational_families_pass() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        for family in [Family::Sp, Family::Su, Family::Pn, Family::Pnh] {
            assert_all_pass(&audit_family(&sys, &cfg, family, false));
        }
    }

    #[test]
    fn lamplighter_families_pass() {
        for modulus in [2, 3] {
            let sys = LamplighterSystem::new(modulus).unwrap();
            let cfg = sys.default_config();
            for family in [Family::Sp, Family::Su, Family::Pn, Family::Pnh] {
                assert_all_pass(&audit_family(&sys, &cfg, family, false));
            }
        }
    }

    #[test]
    fn numberfield_families_pass() {
        let sys = NumberFieldSystem::sqrt2();
        let cfg = sys.default_config();
        for family in [Family::Sp, Family::Su, Family::Pn, Family::Pnh] {
            assert_all_pass(&audit_family(&sys, &cfg, family, false));
        }
    }

    #[test]
    fn corrupted_families_fail_with_witnesses() {
        let sys = RationalSystem::new();
        let cfg = sys.default_config();
        for family in [Family::Sp, Family::Su, Family::Pn, Family::Pnh] {
            let checks = audit_family(&sys, &cfg, family, true);
            let failures: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
            assert!(
                !failures.is_empty(),
                "corrupted {family:?} audit did not fail"
            );
            assert!(
                failures.iter().all(|c| c.witness.is_some()),
                "corrupted {family:?} failures lack witnesses"
            );
        }
    }
}
