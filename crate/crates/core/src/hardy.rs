//! The one-parameter Hardy state, its named settings, and the outcome letters.
//!
//! In the z basis of both particles the state is
//!
//! ```text
//! N ( cos t |++> + sin t |+-> + (1 + sin^2 t)/cos t |-+> - sin t |--> ),
//! N = cos t / sqrt(2 (1 + sin^2 t))
//! ```
//!
//! Settings `L1, L2` measure `sz, sx` on the left; `R1, R2` measure `sz` and
//! `s_t = cos(2t) sz + sin(2t) sx` on the right.

use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::qcore::{
    kron, make_state, Complex, LocalEvent, Outcome, Side, SpinObservable, StateVector,
};

/// State parameter, restricted to the open interval `(-pi/2, pi/2)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Theta(f64);

impl Theta {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value.abs() >= FRAC_PI_2 {
            return Err(Error::Domain {
                theta: value,
                domain: "(-pi/2, pi/2)",
            });
        }
        Ok(Theta(value))
    }

    /// For the hidden-variable operations, which need `theta` in `(0, pi/2)`.
    pub fn new_positive(value: f64) -> Result<Self> {
        let t = Theta::new(value).map_err(|_| Error::Domain {
            theta: value,
            domain: "(0, pi/2)",
        })?;
        t.require_positive()
    }

    pub fn require_positive(self) -> Result<Self> {
        if self.0 <= 0.0 {
            return Err(Error::Domain {
                theta: self.0,
                domain: "(0, pi/2)",
            });
        }
        Ok(self)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Squared normalisation `N^2 = cos^2 t / (2 (1 + sin^2 t))`.
    pub fn norm_sq(self) -> f64 {
        let (s, c) = self.0.sin_cos();
        c * c / (2.0 * (1.0 + s * s))
    }
}

impl fmt::Display for Theta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SettingLabel {
    L1,
    L2,
    R1,
    R2,
}

impl SettingLabel {
    pub const ALL: [SettingLabel; 4] = [
        SettingLabel::L1,
        SettingLabel::L2,
        SettingLabel::R1,
        SettingLabel::R2,
    ];

    pub fn side(self) -> Side {
        match self {
            SettingLabel::L1 | SettingLabel::L2 => Side::L,
            SettingLabel::R1 | SettingLabel::R2 => Side::R,
        }
    }

    /// The other setting available on the same side.
    pub fn alternative(self) -> SettingLabel {
        match self {
            SettingLabel::L1 => SettingLabel::L2,
            SettingLabel::L2 => SettingLabel::L1,
            SettingLabel::R1 => SettingLabel::R2,
            SettingLabel::R2 => SettingLabel::R1,
        }
    }

    pub fn on_side(side: Side) -> [SettingLabel; 2] {
        match side {
            Side::L => [SettingLabel::L1, SettingLabel::L2],
            Side::R => [SettingLabel::R1, SettingLabel::R2],
        }
    }

    pub fn observable(self, theta: Theta) -> SpinObservable {
        setting_observable(self, theta).1
    }

    pub fn as_str(self) -> &'static str {
        match self {
            SettingLabel::L1 => "L1",
            SettingLabel::L2 => "L2",
            SettingLabel::R1 => "R1",
            SettingLabel::R2 => "R2",
        }
    }
}

impl fmt::Display for SettingLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SettingLabel {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        SettingLabel::ALL
            .into_iter()
            .find(|l| l.as_str() == s)
            .ok_or_else(|| format!("unknown setting `{s}`"))
    }
}

pub fn setting_observable(label: SettingLabel, theta: Theta) -> (Side, SpinObservable) {
    let phi = match label {
        SettingLabel::L1 | SettingLabel::R1 => 0.0,
        SettingLabel::L2 => FRAC_PI_2,
        SettingLabel::R2 => 2.0 * theta.value(),
    };
    (
        label.side(),
        SpinObservable::new(phi).expect("finite angle"),
    )
}

/// A setting together with the result obtained on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Event {
    pub setting: SettingLabel,
    pub outcome: Outcome,
}

impl Event {
    pub fn new(setting: SettingLabel, outcome: Outcome) -> Self {
        Self { setting, outcome }
    }

    pub fn side(self) -> Side {
        self.setting.side()
    }

    pub fn local(self, theta: Theta) -> LocalEvent {
        LocalEvent::new(self.side(), self.setting.observable(theta), self.outcome)
    }

    pub fn label(self) -> OutcomeLabel {
        OutcomeLabel::from_event(self)
    }

    /// All eight events, settings in label order and `+` before `-`.
    pub fn all() -> impl Iterator<Item = Event> {
        SettingLabel::ALL
            .into_iter()
            .flat_map(|s| Outcome::ALL.into_iter().map(move |o| Event::new(s, o)))
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.setting, self.outcome)
    }
}

/// The outcome letters `a` to `h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OutcomeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl OutcomeLabel {
    pub const ALL: [OutcomeLabel; 8] = [
        OutcomeLabel::A,
        OutcomeLabel::B,
        OutcomeLabel::C,
        OutcomeLabel::D,
        OutcomeLabel::E,
        OutcomeLabel::F,
        OutcomeLabel::G,
        OutcomeLabel::H,
    ];

    pub fn resolve(self) -> Event {
        use Outcome::{Minus, Plus};
        use SettingLabel::*;
        let (s, o) = match self {
            OutcomeLabel::A => (L1, Minus),
            OutcomeLabel::B => (L1, Plus),
            OutcomeLabel::C => (L2, Plus),
            OutcomeLabel::D => (L2, Minus),
            OutcomeLabel::E => (R1, Minus),
            OutcomeLabel::F => (R1, Plus),
            OutcomeLabel::G => (R2, Plus),
            OutcomeLabel::H => (R2, Minus),
        };
        Event::new(s, o)
    }

    pub fn from_event(event: Event) -> OutcomeLabel {
        OutcomeLabel::ALL
            .into_iter()
            .find(|l| l.resolve() == event)
            .expect("label table covers every event")
    }

    pub fn letter(self) -> char {
        (b'a' + self as u8) as char
    }

    pub fn from_letter(c: char) -> Option<OutcomeLabel> {
        OutcomeLabel::ALL.into_iter().find(|l| l.letter() == c)
    }
}

impl fmt::Display for OutcomeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

fn real(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

/// Unnormalised-looking amplitudes `N * (...)`; they already have unit norm.
fn hardy_amplitudes(theta: Theta) -> [Complex; 4] {
    let (s, c) = theta.value().sin_cos();
    let n = c / (2.0 * (1.0 + s * s)).sqrt();
    [c, s, (1.0 + s * s) / c, -s].map(|a| real(n * a))
}

pub fn hardy_state(theta: Theta) -> StateVector {
    make_state(hardy_amplitudes(theta))
        .expect("Hardy amplitudes are finite and nonzero on the domain")
}

/// Max-norm residuals between the z-basis amplitudes and each of the three
/// product-sum rewritings of the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecompositionReport {
    /// Split over the left `sz` basis.
    pub residual_left_z: f64,
    /// Right `s_t` plus state paired with the left `sx` plus state.
    pub residual_right_theta: f64,
    /// Split over the left `sx` basis.
    pub residual_left_x: f64,
}

impl DecompositionReport {
    pub fn max(&self) -> f64 {
        self.residual_left_z
            .max(self.residual_right_theta)
            .max(self.residual_left_x)
    }
}

fn add(a: [Complex; 4], b: [Complex; 4]) -> [Complex; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn scale(k: f64, a: [Complex; 4]) -> [Complex; 4] {
    a.map(|x| x * k)
}

fn max_diff(a: &[Complex; 4], b: &[Complex; 4]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn verify_decompositions(theta: Theta) -> DecompositionReport {
    let (s, c) = theta.value().sin_cos();
    let n = c / (2.0 * (1.0 + s * s)).sqrt();
    let reference = *hardy_state(theta).amplitudes();

    let up = [real(1.0), real(0.0)];
    let down = [real(0.0), real(1.0)];
    let x_plus = [real(1.0), real(1.0)];
    let x_minus = [real(1.0), real(-1.0)];
    let theta_plus = [real(c), real(s)];

    let left_z = scale(
        n,
        add(
            kron(up, theta_plus),
            kron(down, [real((1.0 + s * s) / c), real(-s)]),
        ),
    );
    let right_theta = scale(
        n,
        add(
            kron(x_plus, theta_plus),
            scale(2.0 * theta.value().tan(), kron(down, [real(s), real(-c)])),
        ),
    );
    let left_x = scale(
        n,
        add(
            kron(x_plus, [real(1.0 / c), real(0.0)]),
            kron(x_minus, [real(-s * s / c), real(s)]),
        ),
    );

    DecompositionReport {
        residual_left_z: max_diff(&left_z, &reference),
        residual_right_theta: max_diff(&right_theta, &reference),
        residual_left_x: max_diff(&left_x, &reference),
    }
}
