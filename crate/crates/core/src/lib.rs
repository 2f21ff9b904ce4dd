//! Two-qubit quantum mechanics for the Hardy state, and a checker for
//! counterfactual locality arguments built on it.
//!
//! * [`qcore`]: spin observables, states and Born-rule probabilities.
//! * [`hardy`]: the state, its four measurement settings and the outcome letters `a`-`h`.
//! * [`correlations`]: the certain-correlation chain and local hidden-variable enumeration.
//! * [`cfl`]: formulas, derivations and the checker.
//! * [`mc`]: seeded sampling of joint outcomes.
//!
//! ```
//! use hardy_locality::correlations::chain_report;
//! use hardy_locality::hardy::Theta;
//!
//! let theta = Theta::new(std::f64::consts::FRAC_PI_3).unwrap();
//! let report = chain_report(theta).unwrap();
//! assert!(report.links_perfect(1e-9));
//! assert!((report.quantum_conditional - 0.25).abs() < 1e-12);
//! ```

pub mod cfl;
pub mod correlations;
pub mod error;
pub mod hardy;
pub mod mc;
pub mod qcore;

pub use error::{Error, ParseError, Result};
pub use hardy::{Event, OutcomeLabel, SettingLabel, Theta};
pub use qcore::{Outcome, Side};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    pub struct Intro;
    #[doc = include_str!("../../../book/src/state.md")]
    pub struct State;
    #[doc = include_str!("../../../book/src/chain.md")]
    pub struct Chain;
    #[doc = include_str!("../../../book/src/hidden-variables.md")]
    pub struct HiddenVariables;
    #[doc = include_str!("../../../book/src/calculus.md")]
    pub struct Calculus;
    #[doc = include_str!("../../../book/src/sampling.md")]
    pub struct Sampling;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
