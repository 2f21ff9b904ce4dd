//! One line per acceptance criterion; exits non-zero if any fails.

mod common;

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6};
use std::process::ExitCode;

use hardy_locality::cfl::{
    builtin_script, builtin_scripts, check_derivation, parse_formula, Reason, Semantics, Status,
};
use hardy_locality::correlations::{
    admissible_assignments, chain_report, hardy_contradiction, DEFAULT_EPS, HARDY_EVENT,
};
use hardy_locality::hardy::{hardy_state, verify_decompositions, SettingLabel};
use hardy_locality::mc::{frequency_report, sample_joint, ZERO_CELL};
use hardy_locality::qcore::joint_distribution;
use hardy_locality::Theta;
use proptest::test_runner::{Config, TestRunner};

const CHAIN_THETAS: [f64; 5] = [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3, 1.2, 1.45];
const HV_THETAS: [f64; 3] = [FRAC_PI_6, FRAC_PI_4, FRAC_PI_3];

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn theta(t: f64) -> Theta {
    Theta::new(t).unwrap()
}

fn state_and_decompositions() -> Outcome {
    let (mut worst_norm, mut worst_res) = (0.0f64, 0.0f64);
    for i in 0..1000 {
        let t = -1.5 + 3.0 * (i as f64 + 0.5) / 1000.0;
        let th = theta(t);
        worst_norm = worst_norm.max((hardy_state(th).norm() - 1.0).abs());
        worst_res = worst_res.max(verify_decompositions(th).max());
    }
    ensure(worst_norm < 1e-12, || format!("norm error {worst_norm:e}"))?;
    ensure(worst_res < 1e-11, || format!("residual {worst_res:e}"))?;
    Ok(format!(
        "1000 angles, max norm error {worst_norm:.1e}, max residual {worst_res:.1e}"
    ))
}

fn chain_links() -> Outcome {
    let mut worst = 0.0f64;
    for t in CHAIN_THETAS {
        let r = chain_report(theta(t)).map_err(|e| e.to_string())?;
        for (link, (cond, target)) in r.links.iter().zip(hardy_locality::correlations::CHAIN) {
            let oracle = common::oracle_conditional(t, cond, target);
            ensure((link.probability - oracle).abs() < 1e-9, || {
                format!("oracle disagrees at {t}")
            })?;
            worst = worst.max((link.probability - 1.0).abs());
        }
    }
    ensure(worst <= 1e-9, || format!("link off by {worst:e}"))?;
    Ok(format!("3 links x 5 angles, max |P-1| = {worst:.1e}"))
}

fn chain_conclusion() -> Outcome {
    let mut worst = 0.0f64;
    for t in CHAIN_THETAS {
        let r = chain_report(theta(t)).map_err(|e| e.to_string())?;
        let (cond, target) = (r.links[0].condition, r.chain_conclusion);
        let oracle = common::oracle_conditional(t, cond, target);
        worst = worst.max((r.quantum_conditional - t.cos().powi(2)).abs());
        worst = worst.max((r.quantum_conditional - oracle).abs());
    }
    ensure(worst <= 1e-9, || format!("off by {worst:e}"))?;
    let near = chain_report(theta(1.4708))
        .map_err(|e| e.to_string())?
        .quantum_conditional;
    ensure(near < 0.01, || format!("P at 1.4708 is {near}"))?;
    Ok(format!(
        "P(R1+|L1+) = cos^2 to {worst:.1e}; {near:.2e} at 1.4708"
    ))
}

fn hidden_variables() -> Outcome {
    for t in HV_THETAS {
        let th = theta(t);
        let got: Vec<_> = admissible_assignments(th, DEFAULT_EPS)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|a| a.values())
            .collect();
        let oracle = common::oracle_admissible(t, DEFAULT_EPS);
        ensure(got == oracle, || {
            format!("assignments differ from brute force at {t}")
        })?;
        ensure(got.len() == 5, || {
            format!("{} admissible at {t}", got.len())
        })?;
        let rep = hardy_contradiction(th).map_err(|e| e.to_string())?;
        ensure(!rep.hv_event_possible, || format!("event possible at {t}"))?;
        let (a, b) = HARDY_EVENT;
        ensure(
            rep.admissible
                .iter()
                .all(|h| !(h.realizes(a) && h.realizes(b))),
            || format!("an assignment realises the event at {t}"),
        )?;
        let expect = common::hardy_event_probability(t);
        let oracle_p = common::oracle_event_joint(t, a, b);
        ensure((rep.qm_event_probability - expect).abs() < 1e-12, || {
            format!("P = {} at {t}", rep.qm_event_probability)
        })?;
        ensure((oracle_p - expect).abs() < 1e-12, || {
            format!("oracle P = {oracle_p} at {t}")
        })?;
    }
    let p4 = hardy_contradiction(theta(FRAC_PI_4))
        .unwrap()
        .qm_event_probability;
    let p3 = hardy_contradiction(theta(FRAC_PI_3))
        .unwrap()
        .qm_event_probability;
    ensure((p4 - 1.0 / 12.0).abs() < 1e-12, || {
        format!("P(pi/4) = {p4}")
    })?;
    ensure((p3 - 3.0 / 56.0).abs() < 1e-12, || {
        format!("P(pi/3) = {p3}")
    })?;
    Ok(format!(
        "5 admissible, event impossible; P = {p4:.6} at pi/4, {p3:.6} at pi/3"
    ))
}

fn script_verdicts() -> Outcome {
    let th = theta(FRAC_PI_3);
    let expected = [
        ("stapp-A", 3, Reason::Loc1EvidenceDependsOnReplacedSetting),
        ("stapp-B", 4, Reason::WeakeningDropsEvidence),
    ];
    let mut notes = Vec::new();
    for (name, step, reason) in expected {
        let d = builtin_script(name, th).unwrap();
        let real = check_derivation(&d, Semantics::Realist);
        ensure(real.status == Status::Accepted, || {
            format!("{name} realist {:?}", real.reason)
        })?;
        let c = real
            .contradiction
            .ok_or_else(|| format!("{name}: no contradiction"))?;
        let cos2 = FRAC_PI_3.cos().powi(2);
        ensure((c.quantum_probability - cos2).abs() <= 1e-9, || {
            format!("{name}: q = {}", c.quantum_probability)
        })?;
        ensure(c.claimed_probability == 1.0, || {
            format!("{name}: claimed {}", c.claimed_probability)
        })?;
        let op = check_derivation(&d, Semantics::Operational);
        ensure(
            op.status == Status::Rejected
                && op.failing_step == Some(step)
                && op.reason == Some(reason),
            || {
                format!(
                    "{name} operational {:?} at {:?}",
                    op.reason, op.failing_step
                )
            },
        )?;
        notes.push(format!("{name}: {reason} at step {step}"));
    }
    Ok(notes.join("; "))
}

fn operational_within_realist() -> Outcome {
    let th = theta(FRAC_PI_3);
    let mut ds: Vec<_> = builtin_scripts(th).into_values().collect();
    ds.extend((0..50).map(|seed| common::random_derivation(seed, th, 1 + seed as usize % 8)));
    let mut op_accepted = 0;
    for (i, d) in ds.iter().enumerate() {
        let real = check_derivation(d, Semantics::Realist);
        let op = check_derivation(d, Semantics::Operational);
        if op.status == Status::Accepted {
            op_accepted += 1;
            ensure(real.status == Status::Accepted, || {
                format!("derivation {i} accepted only operationally")
            })?;
        }
    }
    ensure(op_accepted > 0, || {
        "no derivation accepted operationally".into()
    })?;
    Ok(format!(
        "{} derivations, {op_accepted} accepted operationally, all accepted realistically",
        ds.len()
    ))
}

fn sampling() -> Outcome {
    let n = 100_000;
    let mut worst = 0.0f64;
    for t in HV_THETAS {
        let th = theta(t);
        let s = hardy_state(th);
        for l in [SettingLabel::L1, SettingLabel::L2] {
            for r in [SettingLabel::R1, SettingLabel::R2] {
                let (ol, or) = (l.observable(th), r.observable(th));
                let analytic = joint_distribution(&s, ol, or);
                for seed in 1..=10 {
                    let c = sample_joint(&s, ol, or, n, seed);
                    ensure(c == sample_joint(&s, ol, or, n, seed), || {
                        "not deterministic".into()
                    })?;
                    let rep = frequency_report(&c, &analytic).map_err(|e| e.to_string())?;
                    for cell in rep {
                        if cell.probability < ZERO_CELL {
                            ensure(cell.count == 0, || {
                                format!("zero cell drawn: {l}{r} at {t}")
                            })?;
                        }
                        worst = worst.max(cell.z_score.abs());
                    }
                }
            }
        }
    }
    ensure(worst <= 4.75, || format!("|z| = {worst}"))?;
    Ok(format!("120 runs of 1e5, max |z| = {worst:.2}"))
}

fn round_trip() -> Outcome {
    let mut runner = TestRunner::new(Config {
        failure_persistence: None,
        ..Config::with_cases(500)
    });
    runner
        .run(&common::formula_strategy(6), |f| {
            assert!(f.depth() <= 6);
            let text = f.to_string();
            let back = parse_formula(&text).expect("printed formula parses");
            assert_eq!(back, f);
            assert_eq!(back.to_string(), text);
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    Ok("500 formulas up to depth 6".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "state normalisation and decompositions",
            state_and_decompositions,
        ),
        ("chain links are certain", chain_links),
        ("chain conclusion equals cos^2", chain_conclusion),
        ("hidden-variable enumeration", hidden_variables),
        ("builtin script verdicts", script_verdicts),
        (
            "operational acceptance implies realist acceptance",
            operational_within_realist,
        ),
        ("sampling agrees with the Born rule", sampling),
        ("formula print/parse round trip", round_trip),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({why})", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
