//! A small calculus for counterfactual locality arguments.
//!
//! A [`Derivation`] is a list of steps, each a formula justified by one of
//! five rules: `PREMISE`, `QM`, `LOC1`, `LOC2` and `LOGIC`. The checker in
//! [`check`] validates the steps in order under one of two semantics:
//!
//! * [`Semantics::Realist`]: an outcome, once established, is a property of
//!   the run, independent of how it was established. The locality rules
//!   always apply.
//! * [`Semantics::Operational`]: every outcome carries its evidence, the set
//!   of (setting, outcome) pairs it was inferred from. A locality rule may
//!   not move an outcome away from the measurements that are its evidence.
//!
//! Both semantics run the same bookkeeping; operational only adds refusals,
//! so anything it accepts the realist reading accepts too.

mod check;
mod formula;
mod parse;
mod scripts;

use std::fmt;

use crate::hardy::Theta;

pub use check::{
    certify_qm_implication, check_derivation, Contradiction, EvidenceSet, Provenance, Reason,
    Status, StepRecord, Verdict, CERTAINTY_TOL,
};
pub use formula::{Atoms, Formula};
pub use parse::{parse_derivation, parse_formula, print_derivation};
pub use scripts::{
    builtin_script, builtin_script_text, builtin_scripts, DEFAULT_SCRIPT_THETA, SCRIPT_NAMES,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Premise,
    Qm,
    Loc1,
    Loc2,
    Logic,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Premise => "PREMISE",
            Rule::Qm => "QM",
            Rule::Loc1 => "LOC1",
            Rule::Loc2 => "LOC2",
            Rule::Logic => "LOGIC",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    /// 1-based position in the derivation.
    pub index: usize,
    pub formula: Formula,
    pub rule: Rule,
    /// Earlier steps this one is justified by; all strictly below `index`.
    pub refs: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub theta: Theta,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn with_theta(mut self, theta: Theta) -> Self {
        self.theta = theta;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Semantics {
    Realist,
    Operational,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Realist => "realist",
            Semantics::Operational => "operational",
        })
    }
}

impl std::str::FromStr for Semantics {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "realist" => Ok(Semantics::Realist),
            "operational" => Ok(Semantics::Operational),
            _ => Err(format!(
                "unknown semantics `{s}` (expected realist or operational)"
            )),
        }
    }
}
