//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its check count and runtime. Run with
//! `cargo test --test acceptance -- --nocapture` to see the lines.
//!
//! Every tolerance here is exact equality in exact arithmetic; the only
//! numeric bounds are check counts and wall-clock budgets.

use std::time::{Duration, Instant};

use num::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use cosetalg::a0::{conjugate_indicator, A0Elem};
use cosetalg::conditions::standing_conditions;
use cosetalg::d0::D0Elem;
use cosetalg::duality::duality_audit;
use cosetalg::gens::{
    corner_factorization, extend_pn, extend_pnh, factorization_reconstructs, pn_indicator,
    pnh_indicator,
};
use cosetalg::hecke::{
    basis_mul, convolution_oracle, hecke_pair_index, left_coset_decomposition, sampled_classes,
    DoubleCoset, HeckeElem,
};
use cosetalg::relations::{audit_family, Family};
use cosetalg::report::{full_audit, Check};
use cosetalg::repr::{intertwining_check, oracle_check_words, random_words};
use cosetalg::scalar::Scalar;
use cosetalg::system::{Coset, CosetSystem, GroupElem, InstanceConfig};
use cosetalg::{LamplighterSystem, NumberFieldSystem, RationalSystem};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn assert_all_pass(checks: &[Check]) {
    for c in checks {
        assert!(c.pass, "{} failed on ({}): {:?}", c.id, c.tuple, c.witness);
    }
}

fn report_line(criterion: &str, detail: String, start: Instant, budget: Duration) {
    let elapsed = start.elapsed();
    println!(
        "criterion {criterion}: PASS ({detail}, {:.2}s)",
        elapsed.as_secs_f64()
    );
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its {:.0}s budget: {:.2}s",
        budget.as_secs_f64(),
        elapsed.as_secs_f64()
    );
}

/// A pseudo-random element of `N` combined from the samples.
fn random_point<S: CosetSystem>(sys: &S, cfg: &InstanceConfig<S>, rng: &mut StdRng) -> S::NElem {
    let mut acc = sys.n_id();
    for _ in 0..rng.gen_range(1..=3usize) {
        let s = &cfg.n_samples[rng.gen_range(0..cfg.n_samples.len())];
        let s = if rng.gen_bool(0.5) {
            sys.n_inv(s)
        } else {
            s.clone()
        };
        acc = sys.n_op(&acc, &s);
    }
    acc
}

/// A pseudo-random subgroup: a sampled conjugate, sometimes refined by a
/// meet.
fn random_sub<S: CosetSystem>(sys: &S, subs: &[S::Sub], rng: &mut StdRng) -> S::Sub {
    let a = subs[rng.gen_range(0..subs.len())].clone();
    if rng.gen_bool(0.3) {
        let b = &subs[rng.gen_range(0..subs.len())];
        sys.sub_meet(&a, b)
    } else {
        a
    }
}

fn random_coset<S: CosetSystem>(
    sys: &S,
    cfg: &InstanceConfig<S>,
    subs: &[S::Sub],
    rng: &mut StdRng,
) -> Coset<S> {
    let sub = random_sub(sys, subs, rng);
    let rep = random_point(sys, cfg, rng);
    sys.coset(&rep, &sub)
}

#[test]
fn criterion_01_standing_conditions() {
    let start = Instant::now();
    let mut total = 0;
    let sys = RationalSystem::new();
    let checks = standing_conditions(&sys, &sys.default_config());
    assert_all_pass(&checks);
    total += checks.len();
    let sys = NumberFieldSystem::sqrt2();
    let checks = standing_conditions(&sys, &sys.default_config());
    assert_all_pass(&checks);
    total += checks.len();
    let sys = LamplighterSystem::new(2).unwrap();
    let checks = standing_conditions(&sys, &sys.default_config());
    assert_all_pass(&checks);
    total += checks.len();
    report_line(
        "1 standing-condition audit",
        format!("{total} checks over 3 instances"),
        start,
        Duration::from_secs(5),
    );
}

fn d0_pointwise_for<S: CosetSystem>(sys: &S, seed: u64) -> usize {
    let cfg = sys.default_config();
    let subs = cfg.sampled_subgroups(sys);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..50 {
        let c1 = random_coset(sys, &cfg, &subs, &mut rng);
        let c2 = random_coset(sys, &cfg, &subs, &mut rng);
        let x = D0Elem::indicator(c1.clone());
        let y = D0Elem::indicator(c2.clone());
        let prod = x.mul(sys, &y).expect("product within budget");
        // 100 points per product: the reps of every coset in sight plus
        // seeded random combinations
        let mut points: Vec<S::NElem> = vec![c1.rep().clone(), c2.rep().clone()];
        points.extend(prod.terms().map(|(c, _)| c.rep().clone()));
        while points.len() < 100 {
            points.push(random_point(sys, &cfg, &mut rng));
        }
        points.truncate(100);
        for pt in &points {
            let lhs = prod.eval(sys, pt);
            let rhs = &x.eval(sys, pt) * &y.eval(sys, pt);
            assert_eq!(lhs, rhs, "pointwise mismatch on {}", sys.name());
            checked += 1;
        }
    }
    checked
}

#[test]
fn criterion_02_d0_multiplication_pointwise() {
    let start = Instant::now();
    let mut total = 0;
    total += d0_pointwise_for(&RationalSystem::new(), 2);
    total += d0_pointwise_for(&NumberFieldSystem::sqrt2(), 3);
    total += d0_pointwise_for(&LamplighterSystem::new(2).unwrap(), 4);
    report_line(
        "2 D0 multiplication vs pointwise oracle",
        format!("{total} point evaluations, 150 products"),
        start,
        Duration::from_secs(10),
    );
}

fn covariance_for<S: CosetSystem>(sys: &S, seed: u64) -> usize {
    let cfg = sys.default_config();
    let subs = cfg.sampled_subgroups(sys);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < 200 {
        let g = if rng.gen_bool(0.5) {
            cfg.g_samples[rng.gen_range(0..cfg.g_samples.len())].clone()
        } else {
            let a = &cfg.g_samples[rng.gen_range(0..cfg.g_samples.len())];
            let b = &cfg.g_samples[rng.gen_range(0..cfg.g_samples.len())];
            sys.g_mul(a, b)
        };
        let c = random_coset(sys, &cfg, &subs, &mut rng);
        let lhs = conjugate_indicator(sys, &g, &c).expect("conjugation within budget");
        let rhs = A0Elem::from_d0(sys, D0Elem::indicator(sys.act(&g, &c)));
        assert!(
            lhs.eq_a0(sys, &rhs).unwrap(),
            "covariance failed on {} at g={g:?} c={c:?}",
            sys.name()
        );
        checked += 1;
    }
    checked
}

#[test]
fn criterion_03_covariance() {
    let start = Instant::now();
    let mut total = 0;
    total += covariance_for(&RationalSystem::new(), 5);
    total += covariance_for(&NumberFieldSystem::sqrt2(), 6);
    total += covariance_for(&LamplighterSystem::new(2).unwrap(), 7);
    report_line(
        "3 covariance g p_c g^-1 = p_{beta_g(c)}",
        format!("{total} sampled pairs"),
        start,
        Duration::from_secs(10),
    );
}

#[test]
fn criterion_04_relation_audits() {
    let start = Instant::now();
    let mut total = 0;

    fn run_families<S: CosetSystem>(sys: &S) -> usize {
        let cfg = sys.default_config();
        let mut count = 0;
        for family in [Family::Sp, Family::Su, Family::Pn, Family::Pnh] {
            let checks = audit_family(sys, &cfg, family, false);
            assert_all_pass(&checks);
            count += checks.len();
        }
        count
    }
    total += run_families(&RationalSystem::new());
    total += run_families(&NumberFieldSystem::sqrt2());
    total += run_families(&LamplighterSystem::new(2).unwrap());
    assert!(total >= 500, "only {total} relation instances audited");

    // negative controls: one corrupted family per audit must fail with a
    // witness
    let sys = RationalSystem::new();
    let cfg = sys.default_config();
    for family in [Family::Sp, Family::Su, Family::Pn, Family::Pnh] {
        let checks = audit_family(&sys, &cfg, family, true);
        let failures: Vec<_> = checks.iter().filter(|c| !c.pass).collect();
        assert!(!failures.is_empty(), "corrupted {family:?} audit passed");
        assert!(failures.iter().all(|c| c.witness.is_some()));
    }

    report_line(
        "4 relation audits (SP, SU, PN, PNH) + negative controls",
        format!("{total} relation instances"),
        start,
        Duration::from_secs(60),
    );
}

fn extensions_for<S: CosetSystem>(sys: &S) -> usize {
    let cfg = sys.default_config();
    let mut checked = 0;
    for h in &cfg.h_all {
        for n in cfg.n_samples.iter().take(8) {
            let ext = extend_pnh(sys, &cfg, h, n).expect("pnh extension");
            let direct = pnh_indicator(sys, h, n);
            assert!(
                ext.eq_d0(sys, &direct).unwrap(),
                "PNH extension mismatch on {}",
                sys.name()
            );
            checked += 1;
        }
    }
    for a in &cfg.h_plus {
        for n in cfg.n_samples.iter().take(6) {
            let ext = extend_pn(sys, &cfg, a, n).expect("pn extension");
            let direct = pn_indicator(sys, a, n).unwrap();
            assert!(
                ext.eq_d0(sys, &direct).unwrap(),
                "PN extension mismatch on {}",
                sys.name()
            );
            checked += 1;
        }
    }
    checked
}

#[test]
fn criterion_05_extensions() {
    let start = Instant::now();
    let mut total = 0;
    total += extensions_for(&RationalSystem::new());
    total += extensions_for(&NumberFieldSystem::sqrt2());
    total += extensions_for(&LamplighterSystem::new(2).unwrap());
    assert!(total >= 100, "only {total} extensions checked");
    report_line(
        "5 projection-family extensions, two-route well-definedness",
        format!("{total} sampled extensions"),
        start,
        Duration::from_secs(60),
    );
}

fn fullness_for<S: CosetSystem>(sys: &S, seed: u64) -> usize {
    let cfg = sys.default_config();
    let subs = cfg.sampled_subgroups(sys);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut checked = 0;
    while checked < 50 {
        let c = random_coset(sys, &cfg, &subs, &mut rng);
        let pairs = corner_factorization(sys, &c).expect("factorization");
        assert!(
            factorization_reconstructs(sys, &c, &pairs).unwrap(),
            "factorization failed on {} at {c:?}",
            sys.name()
        );
        checked += 1;
    }
    checked
}

#[test]
fn criterion_06_corner_fullness() {
    let start = Instant::now();
    let mut total = 0;
    total += fullness_for(&RationalSystem::new(), 11);
    total += fullness_for(&NumberFieldSystem::sqrt2(), 12);
    total += fullness_for(&LamplighterSystem::new(2).unwrap(), 13);
    report_line(
        "6 corner factorization reconstructs p_c",
        format!("{total} sampled cosets"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_07_hecke() {
    let start = Instant::now();
    let mut counts = 0;
    let mut products = 0;

    fn hecke_for<S: CosetSystem>(sys: &S, counts: &mut usize, products: &mut usize) {
        let cfg = sys.default_config();
        let classes = sampled_classes(sys, &cfg);
        for d in &classes {
            let reps = left_coset_decomposition(sys, d).unwrap();
            let idx = hecke_pair_index(sys, d.rep()).unwrap();
            assert_eq!(reps.len() as u64, idx, "count mismatch on {}", sys.name());
            *counts += 1;
        }
        for d1 in classes.iter().take(6) {
            for d2 in classes.iter().take(6) {
                let a = basis_mul(sys, d1, d2).unwrap();
                let b = convolution_oracle(sys, d1, d2).unwrap();
                assert_eq!(a, b, "structure constants differ on {}", sys.name());
                *products += 1;
            }
        }
    }
    hecke_for(&RationalSystem::new(), &mut counts, &mut products);
    hecke_for(&NumberFieldSystem::sqrt2(), &mut counts, &mut products);
    hecke_for(
        &LamplighterSystem::new(2).unwrap(),
        &mut counts,
        &mut products,
    );
    assert!(counts >= 30, "only {counts} double cosets checked");
    assert!(products >= 30, "only {products} basis products checked");

    // the class of (0, 2) splits into exactly two left cosets
    let sys = RationalSystem::new();
    let d = DoubleCoset::canonical(&sys, &sys.g_of(rat(0, 1), rat(2, 1)));
    assert_eq!(left_coset_decomposition(&sys, &d).unwrap().len(), 2);

    // associativity on seeded random triples
    let cfg = sys.default_config();
    let classes = sampled_classes(&sys, &cfg);
    let mut rng = StdRng::seed_from_u64(17);
    for _ in 0..20 {
        let pick = |rng: &mut StdRng| {
            let mut x = HeckeElem::zero();
            for _ in 0..2 {
                let d = classes[rng.gen_range(0..classes.len())].clone();
                x = x.add(&HeckeElem::basis(d).scale(&Scalar::from_int(rng.gen_range(1..4))));
            }
            x
        };
        let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let l = x.mul(&sys, &y).unwrap().mul(&sys, &z).unwrap();
        let r = x.mul(&sys, &y.mul(&sys, &z).unwrap()).unwrap();
        assert_eq!(l, r, "Hecke convolution not associative");
    }

    report_line(
        "7 Hecke counts, convolution oracle, associativity",
        format!("{counts} classes, {products} products, 20 triples"),
        start,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_08_duality() {
    let start = Instant::now();
    let sys = NumberFieldSystem::sqrt2();
    let checks = duality_audit(&sys, &sys.default_config());
    assert_all_pass(&checks);
    let nf = checks.len();
    assert!(nf >= 200, "only {nf} duality checks in the number field");
    let sys = LamplighterSystem::new(2).unwrap();
    let checks = duality_audit(&sys, &sys.default_config());
    assert_all_pass(&checks);
    let lamp = checks.len();
    assert!(lamp >= 200, "only {lamp} duality checks in the lamplighter");
    report_line(
        "8 bicharacter symmetry and self-dual membership",
        format!("{nf} + {lamp} checks"),
        start,
        Duration::from_secs(30),
    );
}

fn oracle_words_for<S: CosetSystem>(sys: &S, words: usize, seed: u64) -> usize {
    let cfg = sys.default_config();
    // at least ten basis vectors δ_y with y ∈ M: pad the samples with
    // pairwise products, which stay in the subgroup
    let mut basis = cfg.m_samples.clone();
    'pad: for a in &cfg.h_plus {
        for (m, k) in cfg.m_samples.iter().zip(cfg.m_samples.iter().rev()) {
            if basis.len() >= 10 {
                break 'pad;
            }
            // β_a(m)·k lies in M since a ∈ H⁺
            let fresh = sys.n_op(&sys.conj(a, m), k);
            if !basis.contains(&fresh) {
                basis.push(fresh);
            }
        }
    }
    assert!(
        basis.len() >= 10,
        "not enough M-basis vectors on {}",
        sys.name()
    );
    let words = random_words(sys, &cfg, words, 5, seed);
    let checks = oracle_check_words(sys, &basis, &words);
    assert_all_pass(&checks);
    checks.len()
}

#[test]
fn criterion_09_operator_oracle() {
    let start = Instant::now();
    // basis vectors for the rational instance: integers −5..5
    let sys = RationalSystem::new();
    let cfg = sys.default_config();
    let basis: Vec<BigRational> = (-5..=5).map(|k| rat(k, 1)).collect();
    assert!(basis.len() >= 10);
    let words = random_words(&sys, &cfg, 100, 5, 23);
    let checks = oracle_check_words(&sys, &basis, &words);
    assert_all_pass(&checks);
    let mut total_words = checks.len();
    total_words += oracle_words_for(&NumberFieldSystem::sqrt2(), 50, 29);
    total_words += oracle_words_for(&LamplighterSystem::new(2).unwrap(), 50, 31);
    assert!(total_words >= 100);

    // intertwining families, exhaustively over the default samples
    let mut intertwine = 0;
    let checks = intertwining_check(&sys, &cfg, false);
    assert_all_pass(&checks);
    intertwine += checks.len();
    let sysn = NumberFieldSystem::sqrt2();
    let checks = intertwining_check(&sysn, &sysn.default_config(), false);
    assert_all_pass(&checks);
    intertwine += checks.len();
    let sysl = LamplighterSystem::new(2).unwrap();
    let checks = intertwining_check(&sysl, &sysl.default_config(), false);
    assert_all_pass(&checks);
    intertwine += checks.len();

    // negative control: dropping the conjugation breaks (sun)
    let corrupted = intertwining_check(&sys, &cfg, true);
    assert!(corrupted
        .iter()
        .any(|c| !c.pass && c.id == "repr.conjugation_law"));

    report_line(
        "9 operator oracle vs symbolic corner words",
        format!("{total_words} words, {intertwine} intertwining checks"),
        start,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let mut bytes = 0;
    fn audit_twice<S: cosetalg::duality::SelfDualSystem>(sys: &S) -> usize {
        let cfg = sys.default_config();
        let a = full_audit(sys, &cfg, 41).unwrap().to_json_string();
        let b = full_audit(sys, &cfg, 41).unwrap().to_json_string();
        assert_eq!(a, b, "audit reports differ between runs on {}", sys.name());
        a.len()
    }
    bytes += audit_twice(&RationalSystem::new());
    bytes += audit_twice(&LamplighterSystem::new(2).unwrap());
    report_line(
        "10 byte-identical audit reports",
        format!("{bytes} bytes compared"),
        start,
        Duration::from_secs(120),
    );
}

/// The action examples and group sanity from the shipped instances also run
/// here so the acceptance binary exercises every instance end to end.
#[test]
fn instance_worked_examples() {
    let sys = RationalSystem::new();
    let g = sys.g_of(rat(1, 2), rat(3, 1));
    let c = sys.coset(&rat(0, 1), &rat(1, 1));
    assert_eq!(sys.act(&g, &c), sys.coset(&rat(1, 2), &rat(3, 1)));

    let sysn = NumberFieldSystem::sqrt2();
    assert_eq!(sysn.phi(&sysn.from_ints(&[3, 5])), rat(5, 1));

    let sysl = LamplighterSystem::new(2).unwrap();
    assert_eq!(sysl.shift_act(2, &sysl.delta(0, 1)), sysl.delta(2, 1));
    let m = GroupElem {
        n: sysl.delta(0, 1),
        h: 0i64,
    };
    assert_eq!(sysl.g_mul(&m, &m), sysl.g_id());
}
