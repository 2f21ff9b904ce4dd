use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use hardy_locality::cfl::{
    self, builtin_script, check_derivation, parse_derivation, Derivation, Provenance, Semantics,
    Verdict,
};
use hardy_locality::correlations::{
    chain_report, event_joint, hardy_contradiction_with_eps, ChainReport, HARDY_EVENT,
};
use hardy_locality::hardy::{hardy_state, verify_decompositions, DecompositionReport};
use hardy_locality::mc::{frequency_report, sample_joint};
use hardy_locality::qcore::{joint_distribution, CELLS};
use hardy_locality::{Error, Event, Outcome, SettingLabel, Side, Theta};
use serde::Serialize;

use crate::output::{csv_num, write_csv, write_json, Num};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_USAGE: u8 = 3;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    pub fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let message = match &e {
            Error::Domain { .. } => format!("domain error: {e}"),
            Error::Parse(_) => format!("parse error: {e}"),
            _ => e.to_string(),
        };
        CliError::input(message)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError {
            code: EXIT_FAILED,
            message: format!("output error: {e}"),
        }
    }
}

pub type CmdResult = Result<u8, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

// ---- names ------------------------------------------------------------------

pub fn setting_name(s: SettingLabel) -> &'static str {
    match s {
        SettingLabel::L1 => "Lz",
        SettingLabel::L2 => "Lx",
        SettingLabel::R1 => "Rz",
        SettingLabel::R2 => "Rtheta",
    }
}

fn setting_from_name(name: &str) -> Option<SettingLabel> {
    SettingLabel::ALL
        .into_iter()
        .find(|s| setting_name(*s) == name)
}

pub fn event_name(e: Event) -> String {
    format!("{}{}", setting_name(e.setting), e.outcome.symbol())
}

fn cell_name(l: Outcome, r: Outcome) -> String {
    format!("{}{}", l.symbol(), r.symbol())
}

/// Parses `Lz,Rtheta` style pairs: one left setting, then one right setting.
pub fn parse_settings(text: &str) -> Result<(SettingLabel, SettingLabel), CliError> {
    let bad = || {
        CliError::usage(format!("invalid --settings `{text}`: expected LEFT,RIGHT with LEFT in {{Lz, Lx}} and RIGHT in {{Rz, Rtheta}}"))
    };
    let (l, r) = text.split_once(',').ok_or_else(bad)?;
    let l = setting_from_name(l.trim())
        .filter(|s| s.side() == Side::L)
        .ok_or_else(bad)?;
    let r = setting_from_name(r.trim())
        .filter(|s| s.side() == Side::R)
        .ok_or_else(bad)?;
    Ok((l, r))
}

pub fn theta(value: f64) -> Result<Theta, CliError> {
    Ok(Theta::new(value)?)
}

fn schema(command: &str) -> String {
    format!("hardy-locality/{command}/1")
}

// ---- probs ------------------------------------------------------------------

#[derive(Serialize)]
struct SettingsOut {
    left: &'static str,
    right: &'static str,
    phi_left: Num,
    phi_right: Num,
}

#[derive(Serialize)]
struct ProbsOut {
    schema: String,
    theta: Num,
    settings: SettingsOut,
    cells: BTreeMap<String, Num>,
    total: Num,
}

fn settings_out(t: Theta, l: SettingLabel, r: SettingLabel) -> SettingsOut {
    SettingsOut {
        left: setting_name(l),
        right: setting_name(r),
        phi_left: Num(l.observable(t).phi()),
        phi_right: Num(r.observable(t).phi()),
    }
}

pub fn probs(t: Theta, settings: (SettingLabel, SettingLabel), format: Format) -> CmdResult {
    let (l, r) = settings;
    let d = joint_distribution(&hardy_state(t), l.observable(t), r.observable(t));
    match format {
        Format::Json => write_json(&ProbsOut {
            schema: schema("probs"),
            theta: Num(t.value()),
            settings: settings_out(t, l, r),
            cells: CELLS
                .iter()
                .map(|&(a, b)| (cell_name(a, b), Num(d.get(a, b))))
                .collect(),
            total: Num(d.total()),
        })?,
        Format::Csv => write_csv(
            &["theta", "left", "right", "cell", "probability"],
            &CELLS
                .iter()
                .map(|&(a, b)| {
                    vec![
                        csv_num(t.value()),
                        setting_name(l).into(),
                        setting_name(r).into(),
                        cell_name(a, b),
                        csv_num(d.get(a, b)),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    }
    Ok(EXIT_OK)
}

// ---- chain / correlations ---------------------------------------------------

#[derive(Serialize)]
struct LinkOut {
    condition: String,
    target: String,
    probability: Num,
}

#[derive(Serialize)]
struct ResidualsOut {
    left_z: Num,
    right_theta: Num,
    left_x: Num,
    max: Num,
}

#[derive(Serialize)]
struct ChainOut {
    schema: String,
    theta: Num,
    eps: Num,
    links: Vec<LinkOut>,
    links_perfect: bool,
    chain_start: String,
    chain_conclusion: String,
    quantum_conditional: Num,
    discrepancy: Num,
    #[serde(skip_serializing_if = "Option::is_none")]
    residuals: Option<ResidualsOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    zero_cells: Option<Vec<ZeroCellOut>>,
}

#[derive(Serialize)]
struct ZeroCellOut {
    left: String,
    right: String,
    probability: Num,
}

fn residuals_out(d: &DecompositionReport) -> ResidualsOut {
    ResidualsOut {
        left_z: Num(d.residual_left_z),
        right_theta: Num(d.residual_right_theta),
        left_x: Num(d.residual_left_x),
        max: Num(d.max()),
    }
}

/// The three cross-side pairs the state never produces.
fn zero_cells(t: Theta) -> Result<Vec<ZeroCellOut>, CliError> {
    let s = hardy_state(t);
    let pairs = [
        (
            SettingLabel::L1,
            Outcome::Plus,
            SettingLabel::R2,
            Outcome::Minus,
        ),
        (
            SettingLabel::L2,
            Outcome::Minus,
            SettingLabel::R2,
            Outcome::Plus,
        ),
        (
            SettingLabel::L2,
            Outcome::Plus,
            SettingLabel::R1,
            Outcome::Minus,
        ),
    ];
    pairs
        .into_iter()
        .map(|(a, oa, b, ob)| {
            let (ea, eb) = (Event::new(a, oa), Event::new(b, ob));
            Ok(ZeroCellOut {
                left: event_name(ea),
                right: event_name(eb),
                probability: Num(event_joint(&s, t, ea, eb)?),
            })
        })
        .collect()
}

fn chain_rows(r: &ChainReport) -> Vec<Vec<String>> {
    let th = csv_num(r.theta.value());
    let mut rows: Vec<Vec<String>> = r
        .links
        .iter()
        .map(|l| {
            vec![
                th.clone(),
                "link".into(),
                event_name(l.condition),
                event_name(l.target),
                csv_num(l.probability),
            ]
        })
        .collect();
    let start = event_name(r.links[0].condition);
    let end = event_name(r.chain_conclusion);
    rows.push(vec![
        th.clone(),
        "quantum_conditional".into(),
        start.clone(),
        end.clone(),
        csv_num(r.quantum_conditional),
    ]);
    rows.push(vec![
        th,
        "discrepancy".into(),
        start,
        end,
        csv_num(r.discrepancy),
    ]);
    rows
}

pub const CHAIN_HEADER: [&str; 5] = ["theta", "quantity", "condition", "target", "value"];

pub fn chain(t: Theta, eps: f64, with_decomposition: bool, format: Format) -> CmdResult {
    let r = chain_report(t)?;
    let dec = with_decomposition.then(|| verify_decompositions(t));
    let perfect = r.links_perfect(eps);
    match format {
        Format::Json => write_json(&ChainOut {
            schema: schema(if with_decomposition {
                "correlations"
            } else {
                "chain"
            }),
            theta: Num(t.value()),
            eps: Num(eps),
            links: r
                .links
                .iter()
                .map(|l| LinkOut {
                    condition: event_name(l.condition),
                    target: event_name(l.target),
                    probability: Num(l.probability),
                })
                .collect(),
            links_perfect: perfect,
            chain_start: event_name(r.links[0].condition),
            chain_conclusion: event_name(r.chain_conclusion),
            quantum_conditional: Num(r.quantum_conditional),
            discrepancy: Num(r.discrepancy),
            residuals: dec.as_ref().map(residuals_out),
            zero_cells: if with_decomposition {
                Some(zero_cells(t)?)
            } else {
                None
            },
        })?,
        Format::Csv => {
            let mut rows = chain_rows(&r);
            if let Some(d) = &dec {
                let th = csv_num(t.value());
                for (name, v) in [
                    ("residual_left_z", d.residual_left_z),
                    ("residual_right_theta", d.residual_right_theta),
                    ("residual_left_x", d.residual_left_x),
                ] {
                    rows.push(vec![
                        th.clone(),
                        name.into(),
                        String::new(),
                        String::new(),
                        csv_num(v),
                    ]);
                }
                for z in zero_cells(t)? {
                    rows.push(vec![
                        th.clone(),
                        "zero_cell".into(),
                        z.left,
                        z.right,
                        csv_num(z.probability.0),
                    ]);
                }
            }
            write_csv(&CHAIN_HEADER, &rows)?
        }
    }
    if perfect {
        Ok(EXIT_OK)
    } else {
        eprintln!("verification failed: a chain link differs from 1 by more than {eps}");
        Ok(EXIT_FAILED)
    }
}

// ---- hv-enum ----------------------------------------------------------------

#[derive(Serialize)]
#[allow(non_snake_case)]
struct AssignmentOut {
    Lz: String,
    Lx: String,
    Rz: String,
    Rtheta: String,
}

#[derive(Serialize)]
struct HvOut {
    schema: String,
    theta: Num,
    eps: Num,
    settings: [&'static str; 4],
    admissible: Vec<AssignmentOut>,
    count: usize,
    event: [String; 2],
    qm_event_probability: Num,
    hv_event_possible: bool,
}

pub fn hv_enum(t: Theta, eps: f64, format: Format) -> CmdResult {
    let r = hardy_contradiction_with_eps(t, eps)?;
    let names = SettingLabel::ALL.map(setting_name);
    match format {
        Format::Json => write_json(&HvOut {
            schema: schema("hv-enum"),
            theta: Num(t.value()),
            eps: Num(eps),
            settings: names,
            admissible: r
                .admissible
                .iter()
                .map(|a| {
                    let v = |s: SettingLabel| a.get(s).symbol().to_string();
                    AssignmentOut {
                        Lz: v(SettingLabel::L1),
                        Lx: v(SettingLabel::L2),
                        Rz: v(SettingLabel::R1),
                        Rtheta: v(SettingLabel::R2),
                    }
                })
                .collect(),
            count: r.admissible.len(),
            event: [event_name(HARDY_EVENT.0), event_name(HARDY_EVENT.1)],
            qm_event_probability: Num(r.qm_event_probability),
            hv_event_possible: r.hv_event_possible,
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = r
                .admissible
                .iter()
                .map(|a| {
                    let mut row = vec![csv_num(t.value())];
                    row.extend(
                        SettingLabel::ALL
                            .iter()
                            .map(|s| a.get(*s).symbol().to_string()),
                    );
                    row.push(csv_num(r.qm_event_probability));
                    row.push(r.hv_event_possible.to_string());
                    row
                })
                .collect();
            write_csv(
                &[
                    "theta",
                    "Lz",
                    "Lx",
                    "Rz",
                    "Rtheta",
                    "qm_event_probability",
                    "hv_event_possible",
                ],
                &rows,
            )?
        }
    }
    Ok(EXIT_OK)
}

// ---- check ------------------------------------------------------------------

/// Reads `source` as a file, or failing that as a builtin script name, with
/// or without a `.cfl` suffix.
pub fn load_derivation(source: &str) -> Result<(String, Derivation), CliError> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read {source}: {e}")))?;
        let d = parse_derivation(&text).map_err(|e| CliError::input(format!("{source}:{e}")))?;
        return Ok((source.to_string(), d));
    }
    let name = source.strip_suffix(".cfl").unwrap_or(source);
    let name = Path::new(name)
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or(name);
    let theta = Theta::new(cfl::DEFAULT_SCRIPT_THETA)?;
    match builtin_script(name, theta) {
        Some(d) => Ok((format!("builtin:{name}"), d)),
        None => Err(CliError::input(format!(
            "{source}: no such file, and not a builtin script ({})",
            cfl::SCRIPT_NAMES.join(", ")
        ))),
    }
}

#[derive(Serialize)]
struct AssertedOut {
    event: String,
    provenance: &'static str,
    evidence: Vec<String>,
}

#[derive(Serialize)]
struct TraceOut {
    step: usize,
    rule: String,
    formula: String,
    asserted: Vec<AssertedOut>,
    support: Vec<String>,
}

#[derive(Serialize)]
struct ContradictionOut {
    claimed_probability: Num,
    quantum_probability: Num,
    condition: String,
    target: String,
    via: Option<String>,
}

#[derive(Serialize)]
struct CheckOut {
    schema: String,
    source: String,
    theta: Num,
    semantics: String,
    status: String,
    failing_step: Option<usize>,
    reason: Option<&'static str>,
    detail: Option<String>,
    contradiction: Option<ContradictionOut>,
    trace: Vec<TraceOut>,
}

fn names<'a>(events: impl Iterator<Item = &'a Event>) -> Vec<String> {
    events.map(|e| event_name(*e)).collect()
}

pub fn check(
    source: &str,
    semantics: Semantics,
    theta_override: Option<Theta>,
    format: Format,
) -> CmdResult {
    let (label, mut d) = load_derivation(source)?;
    if let Some(t) = theta_override {
        d = d.with_theta(t);
    }
    let v: Verdict = check_derivation(&d, semantics);
    match format {
        Format::Json => write_json(&CheckOut {
            schema: schema("check"),
            source: label,
            theta: Num(d.theta.value()),
            semantics: semantics.to_string(),
            status: v.status.to_string(),
            failing_step: v.failing_step,
            reason: v.reason.map(|r| r.code()),
            detail: v.detail.clone(),
            contradiction: v.contradiction.map(|c| ContradictionOut {
                claimed_probability: Num(c.claimed_probability),
                quantum_probability: Num(c.quantum_probability),
                condition: event_name(c.condition),
                target: event_name(c.target),
                via: c.via.map(event_name),
            }),
            trace: v
                .trace
                .iter()
                .map(|rec| {
                    let step = &d.steps[rec.index - 1];
                    TraceOut {
                        step: rec.index,
                        rule: step.rule.to_string(),
                        formula: step.formula.to_string(),
                        asserted: rec
                            .asserted
                            .iter()
                            .map(|(e, p)| AssertedOut {
                                event: event_name(*e),
                                provenance: match p {
                                    Provenance::Measured => "measured",
                                    Provenance::Inferred(_) => "inferred",
                                },
                                evidence: names(p.evidence(*e).iter()),
                            })
                            .collect(),
                        support: names(rec.support.iter()),
                    }
                })
                .collect(),
        })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = d
                .steps
                .iter()
                .map(|s| {
                    let (status, reason) = if s.index <= v.trace.len() {
                        ("accepted", String::new())
                    } else if Some(s.index) == v.failing_step {
                        (
                            "rejected",
                            v.reason.map(|r| r.code().to_string()).unwrap_or_default(),
                        )
                    } else {
                        ("unchecked", String::new())
                    };
                    vec![
                        s.index.to_string(),
                        s.rule.to_string(),
                        s.formula.to_string(),
                        status.into(),
                        reason,
                    ]
                })
                .collect();
            write_csv(&["step", "rule", "formula", "status", "reason"], &rows)?
        }
    }
    if v.is_accepted() {
        Ok(EXIT_OK)
    } else {
        eprintln!(
            "rejected at step {}: {} ({})",
            v.failing_step.unwrap_or(0),
            v.reason.map(|r| r.code()).unwrap_or("?"),
            v.detail.as_deref().unwrap_or("")
        );
        Ok(EXIT_FAILED)
    }
}

// ---- sample -----------------------------------------------------------------

#[derive(Serialize)]
struct SampleCellOut {
    cell: String,
    count: u64,
    frequency: Num,
    probability: Num,
    z_score: Num,
}

#[derive(Serialize)]
struct SampleOut {
    schema: String,
    theta: Num,
    settings: SettingsOut,
    n: u64,
    seed: u64,
    cells: Vec<SampleCellOut>,
}

pub fn sample(
    t: Theta,
    settings: (SettingLabel, SettingLabel),
    n: u64,
    seed: u64,
    format: Format,
) -> CmdResult {
    if n == 0 {
        return Err(CliError::usage("--n must be at least 1"));
    }
    let (l, r) = settings;
    let (ol, or) = (l.observable(t), r.observable(t));
    let s = hardy_state(t);
    let counts = sample_joint(&s, ol, or, n, seed);
    let rep = frequency_report(&counts, &joint_distribution(&s, ol, or))?;
    match format {
        Format::Json => write_json(&SampleOut {
            schema: schema("sample"),
            theta: Num(t.value()),
            settings: settings_out(t, l, r),
            n,
            seed,
            cells: CELLS
                .iter()
                .zip(rep)
                .map(|(&(a, b), c)| SampleCellOut {
                    cell: cell_name(a, b),
                    count: c.count,
                    frequency: Num(c.frequency),
                    probability: Num(c.probability),
                    z_score: Num(c.z_score),
                })
                .collect(),
        })?,
        Format::Csv => write_csv(
            &[
                "theta",
                "left",
                "right",
                "n",
                "seed",
                "cell",
                "count",
                "frequency",
                "probability",
                "z_score",
            ],
            &CELLS
                .iter()
                .zip(rep)
                .map(|(&(a, b), c)| {
                    vec![
                        csv_num(t.value()),
                        setting_name(l).into(),
                        setting_name(r).into(),
                        n.to_string(),
                        seed.to_string(),
                        cell_name(a, b),
                        c.count.to_string(),
                        csv_num(c.frequency),
                        csv_num(c.probability),
                        csv_num(c.z_score),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    }
    Ok(EXIT_OK)
}

// ---- sweep ------------------------------------------------------------------

#[derive(Serialize)]
struct SweepRow {
    theta: Num,
    quantum_conditional: Num,
    discrepancy: Num,
    qm_event_probability: Num,
}

#[derive(Serialize)]
struct SweepOut {
    schema: String,
    theta_min: Num,
    theta_max: Num,
    steps: usize,
    rows: Vec<SweepRow>,
}

/// `steps` evenly spaced angles from `min` to `max` inclusive.
pub fn sweep_thetas(min: f64, max: f64, steps: usize) -> Vec<f64> {
    if steps == 1 {
        return vec![min];
    }
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                max
            } else {
                min + (max - min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

pub fn sweep(min: f64, max: f64, steps: usize, format: Format) -> CmdResult {
    if steps == 0 {
        return Err(CliError::usage("--steps must be at least 1"));
    }
    let (lo, hi) = (theta(min)?, theta(max)?);
    if lo > hi {
        return Err(CliError::input(format!(
            "--theta-min {min} exceeds --theta-max {max}"
        )));
    }
    let mut rows = Vec::with_capacity(steps);
    for v in sweep_thetas(min, max, steps) {
        let t = theta(v)?;
        let r = chain_report(t)?;
        let (a, b) = HARDY_EVENT;
        let p = event_joint(&hardy_state(t), t, a, b)?;
        rows.push(SweepRow {
            theta: Num(v),
            quantum_conditional: Num(r.quantum_conditional),
            discrepancy: Num(r.discrepancy),
            qm_event_probability: Num(p),
        });
    }
    match format {
        Format::Json => write_json(&SweepOut {
            schema: schema("sweep"),
            theta_min: Num(min),
            theta_max: Num(max),
            steps,
            rows,
        })?,
        Format::Csv => write_csv(
            &[
                "theta",
                "quantum_conditional",
                "discrepancy",
                "qm_event_probability",
            ],
            &rows
                .iter()
                .map(|r| {
                    vec![
                        csv_num(r.theta.0),
                        csv_num(r.quantum_conditional.0),
                        csv_num(r.discrepancy.0),
                        csv_num(r.qm_event_probability.0),
                    ]
                })
                .collect::<Vec<_>>(),
        )?,
    }
    Ok(EXIT_OK)
}
