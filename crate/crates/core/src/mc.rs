//! Seeded sampling of joint outcomes.
//!
//! The generator is SplitMix64, written out here so that any implementation
//! can reproduce the counts bit for bit:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (wrapping)
//! output z ^ (z >> 31)
//! ```
//!
//! The initial state is the seed. A uniform draw in `[0, 1)` is
//! `(output >> 11) * 2^-53`. Each sample takes one uniform draw `u` and picks
//! the first cell, in `++, +-, -+, --` order, whose cumulative probability
//! exceeds `u`. Cells with probability below `1e-12` are dropped from the
//! cumulative table first, so they are never drawn, and `u` is scaled by the
//! total of the cells that remain.

use crate::error::{Error, Result};
use crate::qcore::{joint_distribution, JointDistribution, SpinObservable, StateVector, CELLS};

/// Analytic cells below this are treated as exactly zero.
pub const ZERO_CELL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Seed for shard `index` of a split run.
pub fn shard_seed(seed: u64, index: u64) -> u64 {
    seed.wrapping_add(index)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SampleCounts {
    pub n: u64,
    /// Cells in `++, +-, -+, --` order.
    pub counts: [u64; 4],
    pub seed: u64,
    pub settings: (SpinObservable, SpinObservable),
}

/// Draws `n` joint outcomes. `n` must be at least 1.
pub fn sample_joint(
    state: &StateVector,
    obs_l: SpinObservable,
    obs_r: SpinObservable,
    n: u64,
    seed: u64,
) -> SampleCounts {
    assert!(n >= 1, "sample size must be at least 1");
    let dist = joint_distribution(state, obs_l, obs_r);
    let mut cumulative = [0.0; 4];
    let mut acc = 0.0;
    let mut last_live = 0;
    for (i, &p) in dist.cells().iter().enumerate() {
        if p >= ZERO_CELL {
            acc += p;
            last_live = i;
        }
        cumulative[i] = acc;
    }
    let live: [bool; 4] = dist.cells().map(|p| p >= ZERO_CELL);

    let mut rng = SplitMix64::new(seed);
    let mut counts = [0u64; 4];
    for _ in 0..n {
        let u = rng.next_f64() * acc;
        let cell = (0..4)
            .find(|&i| live[i] && u < cumulative[i])
            .unwrap_or(last_live);
        counts[cell] += 1;
    }
    SampleCounts {
        n,
        counts,
        seed,
        settings: (obs_l, obs_r),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellFrequency {
    pub count: u64,
    pub frequency: f64,
    pub probability: f64,
    /// `+inf` when the analytic cell is 0 or 1 and the frequency disagrees.
    pub z_score: f64,
}

pub fn frequency_report(
    counts: &SampleCounts,
    analytic: &JointDistribution,
) -> Result<[CellFrequency; 4]> {
    let (al, ar) = analytic.settings;
    let (cl, cr) = counts.settings;
    if al.phi() != cl.phi() || ar.phi() != cr.phi() {
        return Err(Error::SettingsMismatch);
    }
    let n = counts.n as f64;
    Ok(std::array::from_fn(|i| {
        let (l, r) = CELLS[i];
        let p = analytic.get(l, r);
        let count = counts.counts[i];
        let frequency = count as f64 / n;
        let z_score = if p < ZERO_CELL {
            if count == 0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else if p > 1.0 - ZERO_CELL {
            if count == counts.n {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (frequency - p) / (p * (1.0 - p) / n).sqrt()
        };
        CellFrequency {
            count,
            frequency,
            probability: p,
            z_score,
        }
    }))
}
