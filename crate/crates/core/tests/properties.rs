mod common;

use approx::assert_abs_diff_eq;
use hardy_locality::cfl::{
    check_derivation, parse_derivation, parse_formula, print_derivation, Semantics, Status,
};
use hardy_locality::hardy::{hardy_state, Event};
use hardy_locality::qcore::{
    conditional_probability, joint_distribution, joint_probability, make_state,
    marginal_probability, post_measurement_state, Complex, LocalEvent, SpinObservable,
};
use hardy_locality::{Outcome, Side, Theta};
use proptest::prelude::*;

fn phi() -> impl Strategy<Value = f64> {
    -10.0f64..10.0
}

fn outcome() -> impl Strategy<Value = Outcome> {
    prop::sample::select(Outcome::ALL.to_vec())
}

fn state() -> impl Strategy<Value = hardy_locality::qcore::StateVector> {
    prop::array::uniform4((-1.0f64..1.0, -1.0f64..1.0))
        .prop_filter("non-zero", |a| {
            a.iter().any(|(re, im)| re.abs() + im.abs() > 1e-3)
        })
        .prop_map(|a| make_state(a.map(|(re, im)| Complex::new(re, im))).unwrap())
}

fn theta() -> impl Strategy<Value = Theta> {
    (-1.5f64..1.5).prop_map(|t| Theta::new(t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn formula_round_trip(f in common::formula_strategy(6)) {
        prop_assert!(f.depth() <= 6);
        let text = f.to_string();
        let back = parse_formula(&text).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn eigen_relation(p in phi(), o in outcome()) {
        let obs = SpinObservable::new(p).unwrap();
        let v = obs.eigenvector(o);
        let mv = obs.apply(v);
        for i in 0..2 {
            prop_assert!((mv[i] - v[i] * o.eigenvalue()).norm() < 1e-12);
        }
        let n: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        prop_assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn joint_table_is_complete(s in state(), a in phi(), b in phi()) {
        let d = joint_distribution(&s, SpinObservable::new(a).unwrap(), SpinObservable::new(b).unwrap());
        prop_assert!((d.total() - 1.0).abs() < 1e-12);
        prop_assert!(d.cells().iter().all(|p| (0.0..=1.0).contains(p)));
    }

    #[test]
    fn no_signalling(s in state(), a in phi(), b1 in phi(), b2 in phi(), o in outcome()) {
        let a = SpinObservable::new(a).unwrap();
        let sum = |b: f64| -> f64 {
            let b = SpinObservable::new(b).unwrap();
            Outcome::ALL.iter().map(|&r| joint_probability(&s, a, b, o, r)).sum()
        };
        prop_assert!((sum(b1) - sum(b2)).abs() < 1e-12);
        let m = marginal_probability(&s, LocalEvent::new(Side::L, a, o));
        prop_assert!((m - sum(b1)).abs() < 1e-12);
    }

    #[test]
    fn projection_consistency(s in state(), a in phi(), b in phi(), oa in outcome(), ob in outcome()) {
        let cond = LocalEvent::new(Side::L, SpinObservable::new(a).unwrap(), oa);
        let target = LocalEvent::new(Side::R, SpinObservable::new(b).unwrap(), ob);
        if marginal_probability(&s, cond) > 1e-6 {
            let post = post_measurement_state(&s, cond).unwrap();
            prop_assert!((post.norm() - 1.0).abs() < 1e-12);
            prop_assert!((marginal_probability(&post, cond) - 1.0).abs() < 1e-9);
            let direct = conditional_probability(&s, cond, target).unwrap();
            prop_assert!((marginal_probability(&post, target) - direct).abs() < 1e-9);
        }
    }

    #[test]
    fn hardy_probabilities_match_oracle(t in theta(), a in 0usize..8, b in 0usize..8) {
        let events: Vec<Event> = Event::all().collect();
        let (a, b) = (events[a], events[b]);
        prop_assume!(a.side() != b.side());
        let (l, r) = if a.side() == Side::L { (a, b) } else { (b, a) };
        let s = hardy_state(t);
        let p = joint_probability(&s, l.setting.observable(t), r.setting.observable(t), l.outcome, r.outcome);
        prop_assert!((p - common::oracle_event_joint(t.value(), l, r)).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn operational_accepts_only_what_realist_accepts(seed in any::<u64>(), t in 0.05f64..1.5, len in 1usize..10) {
        let d = common::random_derivation(seed, Theta::new(t).unwrap(), len);
        let real = check_derivation(&d, Semantics::Realist);
        let op = check_derivation(&d, Semantics::Operational);
        if op.status == Status::Accepted {
            prop_assert_eq!(real.status, Status::Accepted);
        }
        // the operational run is the realist run cut short
        prop_assert!(op.trace.len() <= real.trace.len());
        prop_assert_eq!(&op.trace[..], &real.trace[..op.trace.len()]);
        if real.status == Status::Rejected {
            prop_assert_eq!(op.status, Status::Rejected);
            prop_assert!(op.failing_step <= real.failing_step);
        }
    }

    #[test]
    fn evidence_only_grows(seed in any::<u64>(), len in 1usize..10) {
        let d = common::random_derivation(seed, Theta::new(0.9).unwrap(), len);
        let v = check_derivation(&d, Semantics::Realist);
        for rec in &v.trace {
            let step = &d.steps[rec.index - 1];
            for r in &step.refs {
                let older = &v.trace[r - 1];
                for atom in rec.asserted.keys() {
                    if let (Some(new), Some(old)) = (rec.evidence(*atom), older.evidence(*atom)) {
                        prop_assert!(new.is_superset(&old), "step {} atom {}", rec.index, atom);
                    }
                }
            }
        }
    }

    #[test]
    fn derivation_print_parse(seed in any::<u64>(), len in 1usize..10) {
        let d = common::random_derivation(seed, Theta::new(0.3).unwrap(), len);
        let text = print_derivation(&d);
        let back = parse_derivation(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(print_derivation(&back), text);
    }
}

#[test]
fn generator_covers_both_verdicts() {
    let t = Theta::new(1.0).unwrap();
    let (mut op_ok, mut real_only, mut both_bad) = (0, 0, 0);
    for seed in 0..300 {
        let d = common::random_derivation(seed, t, 6);
        let real = check_derivation(&d, Semantics::Realist).status;
        let op = check_derivation(&d, Semantics::Operational).status;
        match (real, op) {
            (Status::Accepted, Status::Accepted) => op_ok += 1,
            (Status::Accepted, Status::Rejected) => real_only += 1,
            (Status::Rejected, Status::Rejected) => both_bad += 1,
            (Status::Rejected, Status::Accepted) => {
                panic!("seed {seed}: operational accepted alone")
            }
        }
    }
    assert!(
        op_ok > 0 && real_only > 0 && both_bad > 0,
        "{op_ok} {real_only} {both_bad}"
    );
}

#[test]
fn state_is_normalised_over_a_grid() {
    for i in 0..1000 {
        let t = -1.5 + 3.0 * (i as f64 + 0.5) / 1000.0;
        let s = hardy_state(Theta::new(t).unwrap());
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-12);
        let oracle = common::oracle_state(t);
        for (a, o) in s.amplitudes().iter().zip(oracle) {
            assert_abs_diff_eq!(a.re, o, epsilon = 1e-12);
            assert_abs_diff_eq!(a.im, 0.0);
        }
    }
}

#[test]
fn certified_implications_are_the_chain_and_its_contrapositives() {
    use hardy_locality::cfl::certify_qm_implication;
    use hardy_locality::SettingLabel::*;
    let e = |s, o| Event::new(s, o);
    let (p, m) = (Outcome::Plus, Outcome::Minus);
    let expected = [
        (e(L1, p), e(R2, p)),
        (e(R2, p), e(L2, p)),
        (e(L2, p), e(R1, p)),
        (e(R2, m), e(L1, m)),
        (e(L2, m), e(R2, m)),
        (e(R1, m), e(L2, m)),
    ];
    for t in [
        std::f64::consts::FRAC_PI_6,
        std::f64::consts::FRAC_PI_3,
        1.2,
    ] {
        let th = Theta::new(t).unwrap();
        let mut got = Vec::new();
        let mut candidates = 0;
        for a in Event::all() {
            for b in Event::all().filter(|b| b.side() != a.side()) {
                candidates += 1;
                let oracle = (common::oracle_conditional(t, a, b) - 1.0).abs() <= 1e-9;
                let lib = certify_qm_implication(th, a, b).unwrap();
                assert_eq!(lib, oracle, "{a} -> {b} at {t}");
                if lib {
                    got.push((a, b));
                }
            }
        }
        assert_eq!(candidates, 32);
        got.sort();
        let mut want = expected.to_vec();
        want.sort();
        assert_eq!(got, want, "at {t}");
    }
}
