#![allow(dead_code)]

use hardy_locality::cfl::{Derivation, Formula, Rule, Step};
use hardy_locality::mc::SplitMix64;
use hardy_locality::{Event, Outcome, OutcomeLabel, SettingLabel, Side, Theta};
use proptest::prelude::*;

// ---- Born-rule oracle -------------------------------------------------------
//
// Real arithmetic only, projectors instead of eigenvectors, and the setting
// angles typed in again here so the library tables are not reused.

pub fn oracle_state(theta: f64) -> [f64; 4] {
    let (s, c) = theta.sin_cos();
    let n = c / (2.0 * (1.0 + s * s)).sqrt();
    [n * c, n * s, n * (1.0 + s * s) / c, -n * s]
}

pub fn oracle_angle(setting: SettingLabel, theta: f64) -> f64 {
    match setting {
        SettingLabel::L1 | SettingLabel::R1 => 0.0,
        SettingLabel::L2 => std::f64::consts::FRAC_PI_2,
        SettingLabel::R2 => 2.0 * theta,
    }
}

fn projector(phi: f64, sign: f64) -> [[f64; 2]; 2] {
    let (s, c) = phi.sin_cos();
    [
        [0.5 * (1.0 + sign * c), 0.5 * sign * s],
        [0.5 * sign * s, 0.5 * (1.0 - sign * c)],
    ]
}

fn sign(o: Outcome) -> f64 {
    match o {
        Outcome::Plus => 1.0,
        Outcome::Minus => -1.0,
    }
}

/// `<psi| P_a (x) P_b |psi>` for real `psi`, with `a` on the left qubit.
pub fn oracle_joint(psi: [f64; 4], left: (f64, Outcome), right: (f64, Outcome)) -> f64 {
    let pl = projector(left.0, sign(left.1));
    let pr = projector(right.0, sign(right.1));
    let mut total = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    total += psi[2 * i + j] * pl[i][k] * pr[j][l] * psi[2 * k + l];
                }
            }
        }
    }
    total
}

pub fn oracle_event_joint(theta: f64, a: Event, b: Event) -> f64 {
    let (l, r) = if a.setting.side() == Side::L {
        (a, b)
    } else {
        (b, a)
    };
    oracle_joint(
        oracle_state(theta),
        (oracle_angle(l.setting, theta), l.outcome),
        (oracle_angle(r.setting, theta), r.outcome),
    )
}

pub fn oracle_conditional(theta: f64, cond: Event, target: Event) -> f64 {
    let both = oracle_event_joint(theta, cond, target);
    let other = Event::new(target.setting, target.outcome.flip());
    both / (both + oracle_event_joint(theta, cond, other))
}

/// Hidden assignments, one outcome per setting, that never realise a pair of
/// cross-side results the oracle gives probability zero. Bit 3 is L1, then
/// L2, R1, R2; a set bit means `-`.
pub fn oracle_admissible(theta: f64, eps: f64) -> Vec<[Outcome; 4]> {
    let settings = [
        SettingLabel::L1,
        SettingLabel::L2,
        SettingLabel::R1,
        SettingLabel::R2,
    ];
    let mut out = Vec::new();
    for bits in 0u32..16 {
        let vals: [Outcome; 4] = std::array::from_fn(|i| {
            if bits >> (3 - i) & 1 == 1 {
                Outcome::Minus
            } else {
                Outcome::Plus
            }
        });
        let ok = (0..2).all(|li| {
            (2..4).all(|ri| {
                let a = Event::new(settings[li], vals[li]);
                let b = Event::new(settings[ri], vals[ri]);
                oracle_event_joint(theta, a, b) > eps
            })
        });
        if ok {
            out.push(vals);
        }
    }
    out
}

pub fn hardy_event_probability(theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let n2 = c * c / (2.0 * (1.0 + s * s));
    n2 * s * s
}

// ---- formula strategy -------------------------------------------------------

pub fn setting_strategy() -> impl Strategy<Value = SettingLabel> {
    prop::sample::select(SettingLabel::ALL.to_vec())
}

pub fn formula_strategy(max_depth: u32) -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        setting_strategy().prop_map(Formula::Setting),
        prop::sample::select(OutcomeLabel::ALL.to_vec()).prop_map(Formula::Outcome),
    ];
    leaf.prop_recursive(max_depth.saturating_sub(1), 64, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (setting_strategy(), inner).prop_map(|(s, b)| Formula::counterfactual(s, b)),
        ]
    })
}

// ---- random derivations -----------------------------------------------------

struct Gen {
    rng: SplitMix64,
}

impl Gen {
    fn below(&mut self, n: usize) -> usize {
        (self.rng.next_u64() % n as u64) as usize
    }

    fn coin(&mut self) -> bool {
        self.rng.next_u64() & 1 == 1
    }

    fn pick<T: Copy>(&mut self, xs: &[T]) -> T {
        xs[self.below(xs.len())]
    }

    fn outcome(&mut self) -> Outcome {
        if self.coin() {
            Outcome::Plus
        } else {
            Outcome::Minus
        }
    }

    fn atom_formula(&mut self) -> Formula {
        if self.coin() {
            Formula::Setting(self.pick(&SettingLabel::ALL))
        } else {
            Formula::Outcome(self.pick(&OutcomeLabel::ALL))
        }
    }

    fn junk(&mut self, depth: u32) -> Formula {
        if depth == 0 || self.below(3) == 0 {
            return self.atom_formula();
        }
        match self.below(3) {
            0 => Formula::and(self.junk(depth - 1), self.junk(depth - 1)),
            1 => Formula::implies(self.junk(depth - 1), self.junk(depth - 1)),
            _ => Formula::counterfactual(self.pick(&SettingLabel::ALL), self.junk(depth - 1)),
        }
    }
}

fn conj(settings: &[SettingLabel], outcomes: &[Event]) -> Formula {
    Formula::conjunction(
        settings
            .iter()
            .map(|s| Formula::Setting(*s))
            .chain(outcomes.iter().map(|e| Formula::event(*e))),
    )
    .expect("non-empty")
}

/// Splits a fact into (frame, settings, outcomes).
fn split_fact(f: &Formula) -> Option<(Option<SettingLabel>, Vec<SettingLabel>, Vec<Event>)> {
    let (frame, body) = match f {
        Formula::Counterfactual(s, b) => (Some(*s), b.as_ref()),
        _ => (None, f),
    };
    let atoms = body.conjunct_atoms()?;
    Some((
        frame,
        atoms.settings.into_iter().collect(),
        atoms.outcomes.into_iter().collect(),
    ))
}

fn framed(frame: Option<SettingLabel>, body: Formula) -> Formula {
    match frame {
        Some(s) => Formula::counterfactual(s, body),
        None => body,
    }
}

/// A derivation of up to `max_steps` steps that mostly follows the rule
/// schemas, with occasional junk, so that both semantics see a spread of
/// accepted and rejected inputs.
pub fn random_derivation(seed: u64, theta: Theta, max_steps: usize) -> Derivation {
    let mut g = Gen {
        rng: SplitMix64::new(seed),
    };
    let l = g.pick(&SettingLabel::on_side(Side::L));
    let r = g.pick(&SettingLabel::on_side(Side::R));
    let mut outcomes = Vec::new();
    if g.coin() {
        outcomes.push(Event::new(l, g.outcome()));
    }
    if outcomes.is_empty() || g.coin() {
        outcomes.push(Event::new(r, g.outcome()));
    }
    let mut steps = vec![Step {
        index: 1,
        formula: conj(&[l, r], &outcomes),
        rule: Rule::Premise,
        refs: vec![],
    }];

    while steps.len() < max_steps {
        let index = steps.len() + 1;
        let src = g.below(steps.len());
        let refd = &steps[src].formula.clone();
        let choice = g.below(12);
        let (formula, rule, refs) = match (choice, split_fact(refd)) {
            (0..=2, Some((frame, ss, os))) => {
                // QM: add an outcome for a present setting that has none
                let free: Vec<_> = ss
                    .iter()
                    .filter(|s| !os.iter().any(|e| e.setting == **s))
                    .copied()
                    .collect();
                if free.is_empty() {
                    continue;
                }
                let mut os2 = os.clone();
                os2.push(Event::new(g.pick(&free), g.outcome()));
                (framed(frame, conj(&ss, &os2)), Rule::Qm, vec![src + 1])
            }
            (3..=4, Some((None, ss, os))) => {
                // LOC1: move the left-hand part to the other right-hand setting
                let Some(ru) = ss.iter().find(|s| s.side() == Side::R).copied() else {
                    continue;
                };
                let lv: Vec<_> = ss.iter().filter(|s| s.side() == Side::L).copied().collect();
                let lo: Vec<_> = os.iter().filter(|e| e.side() == Side::L).copied().collect();
                if lv.is_empty() || lo.is_empty() {
                    continue;
                }
                let alt = ru.alternative();
                let mut body_s = lv.clone();
                if g.coin() {
                    body_s.push(alt);
                }
                (
                    Formula::counterfactual(alt, conj(&body_s, &lo)),
                    Rule::Loc1,
                    vec![src + 1],
                )
            }
            (5..=6, Some((frame, ss, os))) => {
                // weakening to a random non-empty subset
                let keep_s: Vec<_> = ss.iter().filter(|_| g.coin()).copied().collect();
                let keep_o: Vec<_> = os.iter().filter(|_| g.below(3) > 0).copied().collect();
                if keep_s.is_empty() && keep_o.is_empty() {
                    continue;
                }
                (
                    framed(frame, conj(&keep_s, &keep_o)),
                    Rule::Logic,
                    vec![src + 1],
                )
            }
            (7, Some((frame, ss, os))) => {
                // and-intro with another fact under the same frame
                let other = g.below(steps.len());
                let Some((f2, ss2, os2)) = split_fact(&steps[other].formula) else {
                    continue;
                };
                if f2 != frame || other == src {
                    continue;
                }
                let mut s_all = ss.clone();
                s_all.extend(ss2.into_iter().filter(|s| !ss.contains(s)));
                let mut o_all = os.clone();
                o_all.extend(os2.into_iter().filter(|e| !os.contains(e)));
                (
                    framed(frame, conj(&s_all, &o_all)),
                    Rule::Logic,
                    vec![src + 1, other + 1],
                )
            }
            (8..=9, _) => {
                // antecedent introduction, optionally followed by a LOC2 attempt
                let ante = if g.coin() {
                    Formula::Setting(g.pick(&SettingLabel::on_side(Side::L)))
                } else {
                    g.atom_formula()
                };
                (
                    Formula::implies(ante, refd.clone()),
                    Rule::Logic,
                    vec![src + 1],
                )
            }
            (10, _) => match refd {
                Formula::Implies(a, x) => match a.as_ref() {
                    Formula::Setting(s) if s.side() == Side::L => (
                        Formula::implies(Formula::Setting(s.alternative()), (**x).clone()),
                        Rule::Loc2,
                        vec![src + 1],
                    ),
                    _ => continue,
                },
                _ => continue,
            },
            _ => {
                let rule = g.pick(&[Rule::Qm, Rule::Loc1, Rule::Loc2, Rule::Logic]);
                (g.junk(3), rule, vec![src + 1])
            }
        };
        steps.push(Step {
            index,
            formula,
            rule,
            refs,
        });
    }
    Derivation { theta, steps }
}
