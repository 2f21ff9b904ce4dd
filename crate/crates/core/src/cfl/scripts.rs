//! The two derivations shipped with the crate.
//!
//! `stapp-A` infers `c` from a measured `g` by `QM` and then moves `c` to the
//! world where `R1` is chosen. `stapp-B` measures `c` directly, moves it,
//! weakens to a right-hand conditional and swaps the left-hand setting with
//! `LOC2`. Both are accepted under [`Semantics::Realist`](super::Semantics)
//! and end in a certainty the Born rule denies; the operational reading stops
//! each of them at the step that outruns its evidence.

use std::collections::BTreeMap;
use std::f64::consts::FRAC_PI_3;

use crate::hardy::Theta;

use super::{parse_derivation, Derivation};

pub const SCRIPT_NAMES: [&str; 2] = ["stapp-A", "stapp-B"];

pub const DEFAULT_SCRIPT_THETA: f64 = FRAC_PI_3;

const STAPP_A: &str = "\
step 1: L2 & R2 & g by PREMISE
step 2: L2 & R2 & g & c by QM(1)
step 3: R1 []-> (L2 & R1 & c) by LOC1(2)
step 4: R1 []-> (L2 & R1 & c & f) by QM(3)
";

const STAPP_B: &str = "\
step 1: L2 & R2 & c by PREMISE
step 2: R1 []-> (L2 & R1 & c) by LOC1(1)
step 3: R1 []-> (L2 & R1 & c & f) by QM(2)
step 4: R1 []-> (R1 & f) by LOGIC(3)
step 5: L2 => R2 & g => R1 []-> (R1 & f) by LOGIC(4)
step 6: L1 => R2 & g => R1 []-> (R1 & f) by LOC2(5)
";

fn body(name: &str) -> Option<&'static str> {
    match name {
        "stapp-A" => Some(STAPP_A),
        "stapp-B" => Some(STAPP_B),
        _ => None,
    }
}

/// Source text of a builtin with the given angle in its header.
pub fn builtin_script_text(name: &str, theta: Theta) -> Option<String> {
    body(name).map(|b| format!("theta = {:?}\n{b}", theta.value()))
}

pub fn builtin_script(name: &str, theta: Theta) -> Option<Derivation> {
    let text = builtin_script_text(name, theta)?;
    Some(parse_derivation(&text).expect("builtin scripts parse"))
}

pub fn builtin_scripts(theta: Theta) -> BTreeMap<&'static str, Derivation> {
    SCRIPT_NAMES
        .iter()
        .map(|n| (*n, builtin_script(n, theta).expect("listed name")))
        .collect()
}
