//! The chain of perfect correlations and the hidden-variable contradiction.
//!
//! On the Hardy state three cross-side implications hold with certainty:
//! `L1=+ => R2=+`, `R2=+ => L2=+` and `L2=+ => R1=+`. Chaining them suggests
//! `L1=+ => R1=+`, while the Born rule gives that conditional as `cos^2 t`.
//! [`chain_report`] measures the gap; [`admissible_assignments`] shows that
//! no assignment of values to all four settings can reproduce the quantum
//! support pattern together with the event `L1=+, R1=-`.

use std::fmt;

use crate::error::{Error, Result};
use crate::hardy::{hardy_state, Event, SettingLabel, Theta};
use crate::qcore::{
    conditional_probability, joint_probability, Outcome, Side, StateVector, EPS_COND,
};

/// Default threshold for treating a joint cell as impossible.
pub const DEFAULT_EPS: f64 = EPS_COND;

/// `P(target | condition)` on the Hardy state, both events named by setting label.
pub fn event_conditional(theta: Theta, condition: Event, target: Event) -> Result<f64> {
    let state = hardy_state(theta);
    conditional_probability(&state, condition.local(theta), target.local(theta))
}

/// Joint probability of one left and one right event, in either argument order.
pub fn event_joint(state: &StateVector, theta: Theta, a: Event, b: Event) -> Result<f64> {
    let (l, r) = match (a.side(), b.side()) {
        (Side::L, Side::R) => (a, b),
        (Side::R, Side::L) => (b, a),
        _ => return Err(Error::SameSide),
    };
    Ok(joint_probability(
        state,
        l.setting.observable(theta),
        r.setting.observable(theta),
        l.outcome,
        r.outcome,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainLink {
    pub condition: Event,
    pub target: Event,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainReport {
    pub theta: Theta,
    pub links: [ChainLink; 3],
    pub chain_conclusion: Event,
    /// `P(R1=+ | L1=+)`.
    pub quantum_conditional: f64,
    pub discrepancy: f64,
}

impl ChainReport {
    /// True when every link is certain to within `eps`.
    pub fn links_perfect(&self, eps: f64) -> bool {
        self.links
            .iter()
            .all(|l| (l.probability - 1.0).abs() <= eps)
    }
}

/// The three links in chain order.
pub const CHAIN: [(Event, Event); 3] = [
    (
        Event {
            setting: SettingLabel::L1,
            outcome: Outcome::Plus,
        },
        Event {
            setting: SettingLabel::R2,
            outcome: Outcome::Plus,
        },
    ),
    (
        Event {
            setting: SettingLabel::R2,
            outcome: Outcome::Plus,
        },
        Event {
            setting: SettingLabel::L2,
            outcome: Outcome::Plus,
        },
    ),
    (
        Event {
            setting: SettingLabel::L2,
            outcome: Outcome::Plus,
        },
        Event {
            setting: SettingLabel::R1,
            outcome: Outcome::Plus,
        },
    ),
];

pub fn chain_report(theta: Theta) -> Result<ChainReport> {
    let link = |(condition, target): (Event, Event)| -> Result<ChainLink> {
        Ok(ChainLink {
            condition,
            target,
            probability: event_conditional(theta, condition, target)?,
        })
    };
    let links = [link(CHAIN[0])?, link(CHAIN[1])?, link(CHAIN[2])?];
    let start = CHAIN[0].0;
    let conclusion = CHAIN[2].1;
    let quantum_conditional = event_conditional(theta, start, conclusion)?;
    Ok(ChainReport {
        theta,
        links,
        chain_conclusion: conclusion,
        quantum_conditional,
        discrepancy: 1.0 - quantum_conditional,
    })
}

/// One outcome for each of the four settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HiddenAssignment {
    values: [Outcome; 4],
}

impl HiddenAssignment {
    /// Values in `L1, L2, R1, R2` order.
    pub fn new(values: [Outcome; 4]) -> Self {
        Self { values }
    }

    pub fn get(&self, setting: SettingLabel) -> Outcome {
        self.values[setting as usize]
    }

    pub fn values(&self) -> [Outcome; 4] {
        self.values
    }

    pub fn realizes(&self, event: Event) -> bool {
        self.get(event.setting) == event.outcome
    }

    /// All 16 assignments, lexicographic in `L1, L2, R1, R2` with `+ < -`.
    pub fn all() -> impl Iterator<Item = HiddenAssignment> {
        (0u8..16).map(|bits| {
            let pick = |shift: u8| {
                if bits >> shift & 1 == 0 {
                    Outcome::Plus
                } else {
                    Outcome::Minus
                }
            };
            HiddenAssignment::new([pick(3), pick(2), pick(1), pick(0)])
        })
    }
}

impl fmt::Display for HiddenAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in SettingLabel::ALL.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", s, self.get(*s))?;
        }
        Ok(())
    }
}

/// Assignments whose four selected setting-pair cells all have Born
/// probability above `eps`.
pub fn admissible_assignments(theta: Theta, eps: f64) -> Result<Vec<HiddenAssignment>> {
    let theta = theta.require_positive()?;
    let state = hardy_state(theta);
    let mut out = Vec::new();
    for v in HiddenAssignment::all() {
        let mut ok = true;
        for l in SettingLabel::on_side(Side::L) {
            for r in SettingLabel::on_side(Side::R) {
                let p = event_joint(
                    &state,
                    theta,
                    Event::new(l, v.get(l)),
                    Event::new(r, v.get(r)),
                )?;
                ok &= p > eps;
            }
        }
        if ok {
            out.push(v);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardyContradictionReport {
    pub theta: Theta,
    pub admissible: Vec<HiddenAssignment>,
    /// `P(L1=+, R1=-)`.
    pub qm_event_probability: f64,
    pub hv_event_possible: bool,
}

/// The event no admissible assignment can produce.
pub const HARDY_EVENT: (Event, Event) = (
    Event {
        setting: SettingLabel::L1,
        outcome: Outcome::Plus,
    },
    Event {
        setting: SettingLabel::R1,
        outcome: Outcome::Minus,
    },
);

pub fn hardy_contradiction(theta: Theta) -> Result<HardyContradictionReport> {
    hardy_contradiction_with_eps(theta, DEFAULT_EPS)
}

pub fn hardy_contradiction_with_eps(theta: Theta, eps: f64) -> Result<HardyContradictionReport> {
    let admissible = admissible_assignments(theta, eps)?;
    let (left, right) = HARDY_EVENT;
    let qm_event_probability = event_joint(&hardy_state(theta), theta, left, right)?;
    let hv_event_possible = admissible
        .iter()
        .any(|a| a.realizes(left) && a.realizes(right));
    Ok(HardyContradictionReport {
        theta,
        admissible,
        qm_event_probability,
        hv_event_possible,
    })
}
