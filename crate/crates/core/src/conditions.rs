//! Finite shadows of the standing conditions on a coset system: the filter
//! base property, separation, finite quotients with multiplicative
//! consistency, effectiveness of the `H`-action on `M`, directedness of `H⁺`,
//! and the covering of `N` by the conjugates `a⁻¹Ma`.
//!
//! All conditions quantify over infinite sets; the audits run them over the
//! configured sample sets and report witnesses on failure.

use crate::report::Check;
use crate::system::{CosetSystem, InstanceConfig};

pub fn standing_conditions<S: CosetSystem>(sys: &S, cfg: &InstanceConfig<S>) -> Vec<Check> {
    let mut out = Vec::new();
    let subs = cfg.sampled_subgroups(sys);

    // (filter base): meet is a common refinement, and idempotent
    for u in &subs {
        for v in &subs {
            let w = sys.sub_meet(u, v);
            let ok = sys.sub_subset(&w, u) && sys.sub_subset(&w, v);
            out.push(Check::of(
                "conditions.filter_base",
                format!("{}, {}", sys.sub_to_json(u), sys.sub_to_json(v)),
                ok,
                || format!("meet={}", sys.sub_to_json(&w)),
            ));
        }
        let w = sys.sub_meet(u, u);
        out.push(Check::of(
            "conditions.meet_idempotent",
            sys.sub_to_json(u).to_string(),
            w == *u,
            || format!("meet(u,u)={}", sys.sub_to_json(&w)),
        ));
    }

    // (separating), finite shadow: every sampled nontrivial element of N is
    // excluded by some sampled subgroup
    let e = sys.n_id();
    for n in cfg.n_samples.iter().chain(cfg.m_samples.iter()) {
        if *n == e {
            continue;
        }
        let excluded = subs.iter().any(|u| !sys.sub_contains(u, n));
        out.push(Check::of(
            "conditions.separating",
            sys.n_to_json(n).to_string(),
            excluded,
            || "element lies in every sampled subgroup".into(),
        ));
    }

    // (finite): nested sampled pairs have a computable transversal of the
    // right length, and indices are multiplicative along chains
    for u in &subs {
        for v in &subs {
            if !sys.sub_subset(v, u) {
                continue;
            }
            let tuple = format!("{}, {}", sys.sub_to_json(u), sys.sub_to_json(v));
            match (sys.sub_index(u, v), sys.sub_transversal(u, v)) {
                (Ok(idx), Ok(reps)) => {
                    out.push(Check::of(
                        "conditions.finite_quotients",
                        tuple,
                        reps.len() as u64 == idx,
                        || format!("index={idx} transversal={}", reps.len()),
                    ));
                }
                (a, b) => {
                    let err = a
                        .err()
                        .or(b.err())
                        .map(|e| e.to_string())
                        .unwrap_or_default();
                    out.push(Check::fail("conditions.finite_quotients", tuple, err));
                }
            }
        }
    }
    for u in subs.iter().take(4) {
        for v in subs.iter().take(4) {
            for x in subs.iter().take(4) {
                if !(sys.sub_subset(v, u) && sys.sub_subset(x, v)) {
                    continue;
                }
                let tuple = format!(
                    "{}, {}, {}",
                    sys.sub_to_json(u),
                    sys.sub_to_json(v),
                    sys.sub_to_json(x)
                );
                let a = sys.sub_index(u, v).unwrap_or(0);
                let b = sys.sub_index(v, x).unwrap_or(0);
                let c = sys.sub_index(u, x).unwrap_or(0);
                out.push(Check::of(
                    "conditions.index_multiplicative",
                    tuple,
                    a * b == c,
                    || format!("{a}*{b} != {c}"),
                ));
            }
        }
    }

    // (effective): every sampled a ≠ e moves some sampled element of M
    let he = sys.h_id();
    for a in cfg.h_all.iter().chain(cfg.h_plus.iter()) {
        if *a == he {
            continue;
        }
        let ok = sys.effectiveness_witness(cfg, a).is_ok();
        out.push(Check::of(
            "conditions.effective",
            sys.h_to_json(a).to_string(),
            ok,
            || "no sampled element of M is moved".into(),
        ));
    }

    // directedness of H⁺: every sampled h factors as h = a (h⁻¹a)⁻¹ with both
    // parts in H⁺
    for h in &cfg.h_all {
        let hi = sys.h_inv(h);
        let ok = cfg.h_plus.iter().any(|a| sys.in_h_plus(&sys.h_op(&hi, a)));
        out.push(Check::of(
            "conditions.h_plus_directed",
            sys.h_to_json(h).to_string(),
            ok,
            || "no sampled a in H+ with h^{-1}a in H+".into(),
        ));
    }

    // covering shadow: every sampled n lies in a⁻¹Ma for some sampled a ∈ H⁺
    let m = sys.m_sub();
    for n in &cfg.n_samples {
        let ok = cfg
            .h_plus
            .iter()
            .any(|a| sys.sub_contains(&m, &sys.conj(a, n)));
        out.push(Check::of(
            "conditions.m_covers_n",
            sys.n_to_json(n).to_string(),
            ok,
            || "no sampled a in H+ pulls the element into M".into(),
        ));
    }

    // subgroup covariance of the action: act moves subgroups by conjugation
    for g in cfg.g_samples.iter().take(8) {
        for u in subs.iter().take(4) {
            let c = sys.coset(&sys.n_id(), u);
            let moved = sys.act(g, &c);
            out.push(Check::of(
                "conditions.action_covariance",
                format!(
                    "{}, {}",
                    crate::jsonio::group_to_json(sys, g),
                    sys.sub_to_json(u)
                ),
                *moved.sub() == sys.sub_conj(&g.h, u),
                || format!("sub={}", sys.sub_to_json(moved.sub())),
            ));
        }
    }

    out
}
