//! Two spin-1/2 particles in exact double-precision linear algebra.
//!
//! A [`StateVector`] holds four amplitudes in the product basis
//! `|++>, |+->, |-+>, |-->`, left factor first. Observables are restricted to
//! the x-z plane and parameterised by one angle: `cos(phi) sz + sin(phi) sx`.

use std::fmt;

pub use num_complex::Complex64 as Complex;

use crate::error::{Error, Result};

/// Smallest admissible norm for [`make_state`].
pub const NORM_THRESHOLD: f64 = 1e-12;

/// Probability at or below which a conditioning event is treated as impossible.
pub const EPS_COND: f64 = 1e-9;

/// Components with modulus below this are "zero" for the eigenvector phase rule.
const PHASE_ZERO: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L,
    R,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::L => Side::R,
            Side::R => Side::L,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L => "L",
            Side::R => "R",
        })
    }
}

/// Measurement result, the sign of the eigenvalue. `Plus` orders first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const ALL: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn index(self) -> usize {
        match self {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        }
    }

    pub fn eigenvalue(self) -> f64 {
        match self {
            Outcome::Plus => 1.0,
            Outcome::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Outcome {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Outcome::Plus => '+',
            Outcome::Minus => '-',
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Index into the four-cell tables, in the fixed order `++, +-, -+, --`.
pub fn cell_index(left: Outcome, right: Outcome) -> usize {
    2 * left.index() + right.index()
}

/// The four outcome pairs in table order.
pub const CELLS: [(Outcome, Outcome); 4] = [
    (Outcome::Plus, Outcome::Plus),
    (Outcome::Plus, Outcome::Minus),
    (Outcome::Minus, Outcome::Plus),
    (Outcome::Minus, Outcome::Minus),
];

/// Spin component along the direction at angle `phi` from z towards x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinObservable {
    phi: f64,
}

impl SpinObservable {
    pub fn new(phi: f64) -> Result<Self> {
        if !phi.is_finite() {
            return Err(Error::NonFinite {
                what: "observable angle",
            });
        }
        Ok(Self { phi })
    }

    pub fn sigma_z() -> Self {
        Self { phi: 0.0 }
    }

    pub fn sigma_x() -> Self {
        Self {
            phi: std::f64::consts::FRAC_PI_2,
        }
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// The 2x2 matrix in the z basis, row major.
    pub fn matrix(&self) -> [[Complex; 2]; 2] {
        let (s, c) = self.phi.sin_cos();
        [
            [Complex::new(c, 0.0), Complex::new(s, 0.0)],
            [Complex::new(s, 0.0), Complex::new(-c, 0.0)],
        ]
    }

    /// Normalised eigenvector for the given outcome, phase fixed so the
    /// first non-negligible component is real and non-negative.
    pub fn eigenvector(&self, outcome: Outcome) -> [Complex; 2] {
        let (s, c) = (self.phi / 2.0).sin_cos();
        let raw = match outcome {
            Outcome::Plus => [c, s],
            Outcome::Minus => [-s, c],
        };
        let lead = if raw[0].abs() > PHASE_ZERO {
            raw[0]
        } else {
            raw[1]
        };
        let sign = if lead < 0.0 { -1.0 } else { 1.0 };
        [
            Complex::new(sign * raw[0], 0.0),
            Complex::new(sign * raw[1], 0.0),
        ]
    }

    pub fn apply(&self, v: [Complex; 2]) -> [Complex; 2] {
        let m = self.matrix();
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }
}

pub fn plus_eigenvector(obs: SpinObservable) -> [Complex; 2] {
    obs.eigenvector(Outcome::Plus)
}

/// Normalised pure state of the two particles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector {
    amps: [Complex; 4],
}

impl StateVector {
    pub fn amplitudes(&self) -> &[Complex; 4] {
        &self.amps
    }

    pub fn amplitude(&self, left: Outcome, right: Outcome) -> Complex {
        self.amps[cell_index(left, right)]
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    /// `<left (x) right | self>`.
    pub fn overlap(&self, left: [Complex; 2], right: [Complex; 2]) -> Complex {
        let mut acc = Complex::new(0.0, 0.0);
        for (l, el) in left.iter().enumerate() {
            for (r, er) in right.iter().enumerate() {
                acc += el.conj() * er.conj() * self.amps[2 * l + r];
            }
        }
        acc
    }
}

fn norm(amps: &[Complex; 4]) -> f64 {
    amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Builds a normalised state, keeping the amplitude order.
pub fn make_state(amps: [Complex; 4]) -> Result<StateVector> {
    if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::NonFinite {
            what: "state amplitudes",
        });
    }
    let n = norm(&amps);
    if n <= NORM_THRESHOLD {
        return Err(Error::ZeroVector { norm: n });
    }
    Ok(StateVector {
        amps: amps.map(|a| a / n),
    })
}

/// Tensor product of a left and a right single-particle vector.
pub fn kron(left: [Complex; 2], right: [Complex; 2]) -> [Complex; 4] {
    [
        left[0] * right[0],
        left[0] * right[1],
        left[1] * right[0],
        left[1] * right[1],
    ]
}

/// A single-side measurement event: which side, which observable, which result.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalEvent {
    pub side: Side,
    pub observable: SpinObservable,
    pub outcome: Outcome,
}

impl LocalEvent {
    pub fn new(side: Side, observable: SpinObservable, outcome: Outcome) -> Self {
        Self {
            side,
            observable,
            outcome,
        }
    }
}

pub fn joint_probability(
    state: &StateVector,
    obs_l: SpinObservable,
    obs_r: SpinObservable,
    out_l: Outcome,
    out_r: Outcome,
) -> f64 {
    let amp = state.overlap(obs_l.eigenvector(out_l), obs_r.eigenvector(out_r));
    amp.norm_sqr().clamp(0.0, 1.0)
}

/// Probability of a single-side event, summed over the other side in the z basis.
pub fn marginal_probability(state: &StateVector, event: LocalEvent) -> f64 {
    let z = SpinObservable::sigma_z();
    Outcome::ALL
        .iter()
        .map(|&o| match event.side {
            Side::L => joint_probability(state, event.observable, z, event.outcome, o),
            Side::R => joint_probability(state, z, event.observable, o, event.outcome),
        })
        .sum()
}

fn pair_probability(state: &StateVector, a: LocalEvent, b: LocalEvent) -> f64 {
    let (l, r) = if a.side == Side::L { (a, b) } else { (b, a) };
    joint_probability(state, l.observable, r.observable, l.outcome, r.outcome)
}

/// `P(target | cond)` for events on opposite sides.
pub fn conditional_probability(
    state: &StateVector,
    cond: LocalEvent,
    target: LocalEvent,
) -> Result<f64> {
    if cond.side == target.side {
        return Err(Error::SameSide);
    }
    let p_cond = marginal_probability(state, cond);
    if p_cond <= EPS_COND {
        return Err(Error::UndefinedConditional {
            probability: p_cond,
            threshold: EPS_COND,
        });
    }
    Ok((pair_probability(state, cond, target) / p_cond).clamp(0.0, 1.0))
}

/// Born-rule table over the four outcome pairs for one pair of settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointDistribution {
    pub settings: (SpinObservable, SpinObservable),
    p: [f64; 4],
}

impl JointDistribution {
    pub fn get(&self, left: Outcome, right: Outcome) -> f64 {
        self.p[cell_index(left, right)]
    }

    /// Cells in `++, +-, -+, --` order.
    pub fn cells(&self) -> &[f64; 4] {
        &self.p
    }

    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }
}

pub fn joint_distribution(
    state: &StateVector,
    obs_l: SpinObservable,
    obs_r: SpinObservable,
) -> JointDistribution {
    let p = CELLS.map(|(l, r)| joint_probability(state, obs_l, obs_r, l, r));
    JointDistribution {
        settings: (obs_l, obs_r),
        p,
    }
}

/// Projects one side onto the outcome's eigenvector and renormalises.
pub fn post_measurement_state(state: &StateVector, event: LocalEvent) -> Result<StateVector> {
    let p = marginal_probability(state, event);
    if p <= EPS_COND {
        return Err(Error::UndefinedConditional {
            probability: p,
            threshold: EPS_COND,
        });
    }
    let e = event.observable.eigenvector(event.outcome);
    let a = state.amplitudes();
    let projected = match event.side {
        Side::L => {
            // remaining right-side vector: sum_l conj(e_l) a[l][r]
            let rest = [
                e[0].conj() * a[0] + e[1].conj() * a[2],
                e[0].conj() * a[1] + e[1].conj() * a[3],
            ];
            kron(e, rest)
        }
        Side::R => {
            let rest = [
                e[0].conj() * a[0] + e[1].conj() * a[1],
                e[0].conj() * a[2] + e[1].conj() * a[3],
            ];
            kron(rest, e)
        }
    };
    make_state(projected)
}
