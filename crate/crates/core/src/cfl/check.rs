use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::correlations::event_conditional;
use crate::error::{Error, Result};
use crate::hardy::{Event, SettingLabel, Theta};
use crate::qcore::Side;

use super::formula::{Atoms, Formula};
use super::{Derivation, Rule, Semantics, Step};

/// A conditional within this distance of 1 counts as certain.
pub const CERTAINTY_TOL: f64 = 1e-9;

/// The (setting, outcome) pairs a claim depends on. Holds at most one
/// outcome per setting.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvidenceSet(BTreeSet<Event>);

impl EvidenceSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(e: Event) -> Self {
        EvidenceSet([e].into_iter().collect())
    }

    /// Adds `e`; returns false, leaving the set unchanged, if it already
    /// holds the opposite outcome for the same setting.
    pub fn insert(&mut self, e: Event) -> bool {
        if self
            .0
            .iter()
            .any(|x| x.setting == e.setting && x.outcome != e.outcome)
        {
            return false;
        }
        self.0.insert(e);
        true
    }

    /// `None` if the two sets disagree on some setting.
    pub fn union(&self, other: &EvidenceSet) -> Option<EvidenceSet> {
        let mut out = self.clone();
        for e in &other.0 {
            if !out.insert(*e) {
                return None;
            }
        }
        Some(out)
    }

    pub fn contains(&self, e: &Event) -> bool {
        self.0.contains(e)
    }

    pub fn mentions_setting(&self, s: SettingLabel) -> bool {
        self.0.iter().any(|e| e.setting == s)
    }

    pub fn is_superset(&self, other: &EvidenceSet) -> bool {
        self.0.is_superset(&other.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Event> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for EvidenceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    Measured,
    Inferred(EvidenceSet),
}

impl Provenance {
    /// Evidence for the atom `e` carrying this provenance.
    pub fn evidence(&self, e: Event) -> EvidenceSet {
        match self {
            Provenance::Measured => EvidenceSet::singleton(e),
            Provenance::Inferred(ev) => ev.clone(),
        }
    }

    fn merge(&self, other: &Provenance, e: Event) -> Option<Provenance> {
        match (self, other) {
            (Provenance::Measured, Provenance::Measured) => Some(Provenance::Measured),
            _ => self
                .evidence(e)
                .union(&other.evidence(e))
                .map(Provenance::Inferred),
        }
    }
}

/// What the checker established at one accepted step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepRecord {
    pub index: usize,
    /// Outcome atoms the step asserts, with how each was obtained.
    pub asserted: BTreeMap<Event, Provenance>,
    /// Every outcome the step's truth rests on: the asserted atoms and their evidence.
    pub support: EvidenceSet,
}

impl StepRecord {
    fn new(index: usize, asserted: BTreeMap<Event, Provenance>) -> Self {
        let mut support = BTreeSet::new();
        for (e, p) in &asserted {
            support.insert(*e);
            support.extend(p.evidence(*e).iter().copied());
        }
        StepRecord {
            index,
            asserted,
            support: EvidenceSet(support),
        }
    }

    pub fn evidence(&self, e: Event) -> Option<EvidenceSet> {
        self.asserted.get(&e).map(|p| p.evidence(e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Reason {
    Loc1EvidenceDependsOnReplacedSetting,
    Loc2UsesLeftOutcome,
    QmNotCertified,
    LogicInvalid,
    WeakeningDropsEvidence,
    PremiseInvalid,
}

impl Reason {
    pub fn code(self) -> &'static str {
        match self {
            Reason::Loc1EvidenceDependsOnReplacedSetting => {
                "LOC1_EVIDENCE_DEPENDS_ON_REPLACED_SETTING"
            }
            Reason::Loc2UsesLeftOutcome => "LOC2_USES_LEFT_OUTCOME",
            Reason::QmNotCertified => "QM_NOT_CERTIFIED",
            Reason::LogicInvalid => "LOGIC_INVALID",
            Reason::WeakeningDropsEvidence => "WEAKENING_DROPS_EVIDENCE",
            Reason::PremiseInvalid => "PREMISE_INVALID",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Accepted,
    Rejected,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Accepted => "accepted",
            Status::Rejected => "rejected",
        })
    }
}

/// A certainty asserted by an accepted derivation that the Born rule denies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contradiction {
    pub claimed_probability: f64,
    pub quantum_probability: f64,
    pub condition: Event,
    pub target: Event,
    /// Same-side intermediate the claim was routed through, if any.
    pub via: Option<Event>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub semantics: Semantics,
    pub status: Status,
    pub failing_step: Option<usize>,
    pub reason: Option<Reason>,
    pub detail: Option<String>,
    pub contradiction: Option<Contradiction>,
    /// Records of the steps that passed, in order.
    pub trace: Vec<StepRecord>,
}

impl Verdict {
    pub fn is_accepted(&self) -> bool {
        self.status == Status::Accepted
    }
}

/// True iff `P(to | from) = 1` on the Hardy state at `theta`, within [`CERTAINTY_TOL`].
pub fn certify_qm_implication(theta: Theta, from: Event, to: Event) -> Result<bool> {
    if from.side() == to.side() {
        return Err(Error::SameSide);
    }
    let p = event_conditional(theta, from, to)?;
    Ok((p - 1.0).abs() <= CERTAINTY_TOL)
}

fn certified(theta: Theta, from: Event, to: Event) -> bool {
    certify_qm_implication(theta, from, to).unwrap_or(false)
}

/// Why a single rule instantiation did not go through.
#[derive(Debug, Clone)]
enum Attempt {
    /// The step does not have the shape the schema needs.
    Mismatch(String),
    /// The shape fits but the semantics forbids the move.
    Blocked(Reason, String),
}

type Outcome = std::result::Result<BTreeMap<Event, Provenance>, Attempt>;

fn mismatch<T>(msg: impl Into<String>) -> std::result::Result<T, Attempt> {
    Err(Attempt::Mismatch(msg.into()))
}

/// A conjunction of atoms, possibly under one counterfactual.
struct Fact {
    frame: Option<SettingLabel>,
    atoms: Atoms,
}

fn fact(f: &Formula) -> Option<Fact> {
    match f {
        Formula::Counterfactual(s, body) => body.conjunct_atoms().map(|atoms| Fact {
            frame: Some(*s),
            atoms,
        }),
        _ => f.conjunct_atoms().map(|atoms| Fact { frame: None, atoms }),
    }
}

fn settings_on(atoms: &Atoms, side: Side) -> Vec<SettingLabel> {
    atoms
        .settings
        .iter()
        .copied()
        .filter(|s| s.side() == side)
        .collect()
}

struct Checker<'a> {
    theta: Theta,
    semantics: Semantics,
    steps: &'a [Step],
    records: Vec<StepRecord>,
    premise_settings: BTreeMap<Side, SettingLabel>,
    measured: BTreeMap<Side, Event>,
}

impl<'a> Checker<'a> {
    fn operational(&self) -> bool {
        self.semantics == Semantics::Operational
    }

    fn formula(&self, index: usize) -> &'a Formula {
        &self.steps[index - 1].formula
    }

    fn record(&self, index: usize) -> &StepRecord {
        &self.records[index - 1]
    }

    fn provenance(&self, index: usize, e: Event) -> Provenance {
        self.record(index)
            .asserted
            .get(&e)
            .cloned()
            .unwrap_or(Provenance::Inferred(EvidenceSet::new()))
    }

    fn one_ref(step: &Step) -> std::result::Result<usize, Attempt> {
        match step.refs.as_slice() {
            [r] => Ok(*r),
            _ => mismatch(format!("{} takes exactly one reference", step.rule)),
        }
    }

    fn premise(&mut self, step: &Step) -> Outcome {
        let invalid = |msg: String| Err(Attempt::Blocked(Reason::PremiseInvalid, msg));
        let Some(Fact { frame: None, atoms }) = fact(&step.formula) else {
            return invalid("a premise must be a conjunction of settings and outcomes".into());
        };
        let mut settings = BTreeMap::new();
        for s in &atoms.settings {
            if let Some(prev) = settings.insert(s.side(), *s) {
                return invalid(format!("both {prev} and {s} measured on side {}", s.side()));
            }
        }
        let mut outcomes = BTreeMap::new();
        for e in &atoms.outcomes {
            if !atoms.settings.contains(&e.setting) {
                return invalid(format!(
                    "outcome {} given without its setting {}",
                    e.label(),
                    e.setting
                ));
            }
            if outcomes.insert(e.side(), *e).is_some() {
                return invalid(format!(
                    "more than one measured outcome on side {}",
                    e.side()
                ));
            }
        }
        for (side, s) in &settings {
            if self.premise_settings.get(side).is_some_and(|p| p != s) {
                return invalid(format!(
                    "side {side} already has a different measured setting"
                ));
            }
        }
        for (side, e) in &outcomes {
            if self.measured.get(side).is_some_and(|p| p != e) {
                return invalid(format!(
                    "side {side} already has a different measured outcome"
                ));
            }
        }
        self.premise_settings.extend(settings);
        self.measured.extend(outcomes);
        Ok(atoms
            .outcomes
            .iter()
            .map(|e| (*e, Provenance::Measured))
            .collect())
    }

    fn qm(&self, step: &Step) -> Outcome {
        let r = Self::one_ref(step)?;
        let (Some(old), Some(new)) = (fact(self.formula(r)), fact(&step.formula)) else {
            return mismatch("QM relates two conjunctions of atoms");
        };
        if old.frame != new.frame {
            return mismatch("QM may not change the counterfactual frame");
        }
        if old.atoms.settings != new.atoms.settings {
            return mismatch("QM may not change the settings");
        }
        if !old.atoms.outcomes.is_subset(&new.atoms.outcomes) {
            return mismatch("QM may not drop outcomes");
        }
        let added: Vec<Event> = new
            .atoms
            .outcomes
            .difference(&old.atoms.outcomes)
            .copied()
            .collect();
        let [target] = added.as_slice() else {
            return mismatch("QM adds exactly one outcome");
        };
        let target = *target;
        if !new.atoms.settings.contains(&target.setting) {
            return mismatch(format!(
                "setting {} of the inferred outcome is not present",
                target.setting
            ));
        }
        if old
            .atoms
            .outcomes
            .iter()
            .any(|e| e.setting == target.setting)
        {
            return mismatch(format!("{} already has an outcome", target.setting));
        }
        let sources = old
            .atoms
            .outcomes
            .iter()
            .filter(|e| e.side() != target.side() && old.atoms.settings.contains(&e.setting));
        for src in sources {
            if !certified(self.theta, *src, target) {
                continue;
            }
            let Some(ev) = self
                .provenance(r, *src)
                .evidence(*src)
                .union(&EvidenceSet::singleton(*src))
            else {
                continue;
            };
            let mut asserted = self.record(r).asserted.clone();
            asserted.insert(target, Provenance::Inferred(ev));
            return Ok(asserted);
        }
        Err(Attempt::Blocked(
            Reason::QmNotCertified,
            format!(
                "no outcome in step {r} implies {} with certainty",
                target.label()
            ),
        ))
    }

    fn loc1(&self, step: &Step) -> Outcome {
        let r = Self::one_ref(step)?;
        let Some(Fact {
            frame: None,
            atoms: old,
        }) = fact(self.formula(r))
        else {
            return mismatch("LOC1 starts from a conjunction outside any counterfactual");
        };
        let Some(Fact {
            frame: Some(replacement),
            atoms: new,
        }) = fact(&step.formula)
        else {
            return mismatch("LOC1 concludes `Ru' []-> (...)`");
        };
        if replacement.side() != Side::R {
            return mismatch("LOC1 replaces a right-hand setting");
        }
        let replaced = replacement.alternative();
        if settings_on(&old, Side::R) != [replaced] {
            return mismatch(format!(
                "step {r} must have {replaced} as its only right-hand setting"
            ));
        }
        let [left] = settings_on(&old, Side::L)[..] else {
            return mismatch(format!("step {r} must have exactly one left-hand setting"));
        };
        let allowed: BTreeSet<SettingLabel> = [left, replacement].into_iter().collect();
        if !new.settings.is_subset(&allowed) || !new.settings.contains(&left) {
            return mismatch(format!(
                "the counterfactual body keeps {left} and may add {replacement}"
            ));
        }
        let kept_ok = new
            .outcomes
            .iter()
            .all(|e| e.side() == Side::L && old.outcomes.contains(e));
        if !kept_ok || !new.outcomes.iter().any(|e| e.setting == left) {
            return mismatch(format!(
                "the counterfactual body keeps an outcome of {left} from step {r}"
            ));
        }
        let mut asserted = BTreeMap::new();
        for e in &new.outcomes {
            let prov = self.provenance(r, *e);
            if self.operational() && prov.evidence(*e).mentions_setting(replaced) {
                return Err(Attempt::Blocked(
                    Reason::Loc1EvidenceDependsOnReplacedSetting,
                    format!(
                        "{} rests on {}, a result of the replaced setting {replaced}",
                        e.label(),
                        prov.evidence(*e)
                    ),
                ));
            }
            asserted.insert(*e, prov);
        }
        Ok(asserted)
    }

    fn loc2(&self, step: &Step) -> Outcome {
        let r = Self::one_ref(step)?;
        let (Formula::Implies(a, x), Formula::Implies(b, y)) = (self.formula(r), &step.formula)
        else {
            return mismatch("LOC2 maps `Lv => X` to `Lv' => X`");
        };
        let (Formula::Setting(from), Formula::Setting(to)) = (a.as_ref(), b.as_ref()) else {
            return mismatch("LOC2 antecedents are single left-hand settings");
        };
        if from.side() != Side::L || to.side() != Side::L || from == to {
            return mismatch("LOC2 swaps one left-hand setting for the other");
        }
        if x != y {
            return mismatch("LOC2 keeps the consequent unchanged");
        }
        if x.settings().iter().any(|s| s.side() != Side::R)
            || x.outcomes().iter().any(|e| e.side() != Side::R)
        {
            return mismatch("the consequent of LOC2 may mention only right-hand symbols");
        }
        let record = self.record(r);
        if self.operational() && record.support.mentions_setting(*from) {
            return Err(Attempt::Blocked(
                Reason::Loc2UsesLeftOutcome,
                format!(
                    "step {r} rests on {}, which includes a result of {from}",
                    record.support
                ),
            ));
        }
        Ok(record.asserted.clone())
    }

    fn and_intro(&self, step: &Step) -> Outcome {
        if step.refs.len() < 2 {
            return mismatch("conjunction needs two or more references");
        }
        let Some(new) = fact(&step.formula) else {
            return mismatch("conjunction concludes a conjunction");
        };
        let mut union = Atoms::default();
        let mut asserted: BTreeMap<Event, Provenance> = BTreeMap::new();
        for &r in &step.refs {
            let Some(old) = fact(self.formula(r)) else {
                return mismatch(format!("step {r} is not a conjunction"));
            };
            if old.frame != new.frame {
                return mismatch("conjunction needs every premise under the same frame");
            }
            union.settings.extend(old.atoms.settings);
            union.outcomes.extend(old.atoms.outcomes.iter().copied());
            for e in &old.atoms.outcomes {
                let p = self.provenance(r, *e);
                let merged = match asserted.get(e) {
                    Some(q) => q.merge(&p, *e),
                    None => Some(p),
                };
                let Some(merged) = merged else {
                    return mismatch(format!("conflicting evidence for {}", e.label()));
                };
                asserted.insert(*e, merged);
            }
        }
        if !union.is_consistent() {
            return mismatch("conjunction would assert two outcomes for one setting");
        }
        if union != new.atoms {
            return mismatch("conjunction must collect exactly the referenced atoms");
        }
        Ok(asserted)
    }

    fn weakening(&self, step: &Step) -> Outcome {
        let r = Self::one_ref(step)?;
        let (Some(old), Some(new)) = (fact(self.formula(r)), fact(&step.formula)) else {
            return mismatch("weakening relates two conjunctions");
        };
        if old.frame != new.frame || !new.atoms.is_subset(&old.atoms) {
            return mismatch(format!("not a sub-conjunction of step {r}"));
        }
        let mut asserted = BTreeMap::new();
        for e in &new.atoms.outcomes {
            let prov = self.provenance(r, *e);
            if self.operational() {
                if let Provenance::Inferred(ev) = &prov {
                    let dropped: Vec<_> = ev
                        .iter()
                        .filter(|d| {
                            old.atoms.outcomes.contains(d) && !new.atoms.outcomes.contains(d)
                        })
                        .collect();
                    if let Some(d) = dropped.first() {
                        return Err(Attempt::Blocked(
                            Reason::WeakeningDropsEvidence,
                            format!(
                                "dropping {} strips the evidence for {}",
                                d.label(),
                                e.label()
                            ),
                        ));
                    }
                }
            }
            asserted.insert(*e, prov);
        }
        Ok(asserted)
    }

    fn transitivity(&self, step: &Step) -> Outcome {
        let [r1, r2] = step.refs[..] else {
            return mismatch("transitivity takes two references");
        };
        let Formula::Implies(a, c) = &step.formula else {
            return mismatch("transitivity concludes an implication");
        };
        for (first, second) in [(r1, r2), (r2, r1)] {
            if let (Formula::Implies(a1, b1), Formula::Implies(b2, c2)) =
                (self.formula(first), self.formula(second))
            {
                if a1 == a && b1 == b2 && c2 == c {
                    return Ok(self.record(second).asserted.clone());
                }
            }
        }
        mismatch("references do not chain to the conclusion")
    }

    fn antecedent(&self, step: &Step) -> Outcome {
        let r = Self::one_ref(step)?;
        let target = self.formula(r);
        let mut cur = &step.formula;
        let mut layers = 0;
        loop {
            if layers > 0 && cur == target {
                return Ok(self.record(r).asserted.clone());
            }
            match cur {
                Formula::Implies(_, rest) => {
                    cur = rest;
                    layers += 1;
                }
                _ => return mismatch(format!("not step {r} under added hypotheses")),
            }
        }
    }

    fn logic(&self, step: &Step) -> Outcome {
        let attempts = [
            self.and_intro(step),
            self.weakening(step),
            self.transitivity(step),
            self.antecedent(step),
        ];
        let mut mismatches = Vec::new();
        let mut first_blocked = None;
        for a in attempts {
            match a {
                Ok(asserted) => return Ok(asserted),
                Err(Attempt::Blocked(r, msg)) => {
                    first_blocked.get_or_insert((r, msg));
                }
                Err(Attempt::Mismatch(m)) => mismatches.push(m),
            }
        }
        match first_blocked {
            Some((r, msg)) => Err(Attempt::Blocked(r, msg)),
            None => Err(Attempt::Mismatch(mismatches.join("; "))),
        }
    }

    fn step(&mut self, step: &Step) -> Outcome {
        match step.rule {
            Rule::Premise => self.premise(step),
            Rule::Qm => self.qm(step),
            Rule::Loc1 => self.loc1(step),
            Rule::Loc2 => self.loc2(step),
            Rule::Logic => self.logic(step),
        }
    }

    /// Certainty claims read off the final step: each inferred outcome is
    /// claimed certain given the measured outcomes in its evidence, and each
    /// outcome in a consequent is claimed certain given the outcomes in the
    /// enclosing antecedents.
    fn claims(&self, last: &Step, record: &StepRecord) -> Vec<(Event, Event)> {
        let measured: BTreeSet<Event> = self.measured.values().copied().collect();
        let mut out = Vec::new();
        for (target, prov) in &record.asserted {
            if let Provenance::Inferred(ev) = prov {
                for cond in ev.iter().filter(|e| measured.contains(e)) {
                    out.push((*cond, *target));
                }
            }
        }
        fn walk(f: &Formula, conds: &mut Vec<Event>, out: &mut Vec<(Event, Event)>) {
            match f {
                Formula::Implies(a, b) => {
                    let before = conds.len();
                    conds.extend(a.outcomes());
                    walk(b, conds, out);
                    conds.truncate(before);
                }
                Formula::And(a, b) => {
                    walk(a, conds, out);
                    walk(b, conds, out);
                }
                Formula::Counterfactual(_, body) => walk(body, conds, out),
                Formula::Outcome(o) => {
                    let t = o.resolve();
                    out.extend(conds.iter().filter(|c| **c != t).map(|c| (*c, t)));
                }
                Formula::Setting(_) => {}
            }
        }
        walk(&last.formula, &mut Vec::new(), &mut out);
        out
    }

    /// Quantum value of a claimed certainty. Same-side claims have no joint
    /// statistics of their own, so they are pulled back through every
    /// opposite-side outcome that certifies the condition.
    fn evaluate(&self, cond: Event, target: Event) -> Vec<Contradiction> {
        let contradiction = |q: f64, condition, via| Contradiction {
            claimed_probability: 1.0,
            quantum_probability: q,
            condition,
            target,
            via,
        };
        if cond.side() != target.side() {
            return event_conditional(self.theta, cond, target)
                .map(|q| vec![contradiction(q, cond, None)])
                .unwrap_or_default();
        }
        if cond.setting == target.setting {
            return Vec::new();
        }
        Event::all()
            .filter(|e| e.side() != cond.side() && certified(self.theta, *e, cond))
            .filter_map(|e| {
                event_conditional(self.theta, e, target)
                    .ok()
                    .map(|q| contradiction(q, e, Some(cond)))
            })
            .collect()
    }

    fn contradiction(&self) -> Option<Contradiction> {
        let last = self.steps.last()?;
        let record = self.records.last()?;
        let mut worst: Option<Contradiction> = None;
        for (cond, target) in self.claims(last, record) {
            for c in self.evaluate(cond, target) {
                if c.quantum_probability < 1.0 - CERTAINTY_TOL
                    && worst.is_none_or(|w| c.quantum_probability < w.quantum_probability)
                {
                    worst = Some(c);
                }
            }
        }
        worst
    }
}

/// Checks every step in order and stops at the first one that fails.
pub fn check_derivation(d: &Derivation, semantics: Semantics) -> Verdict {
    let mut checker = Checker {
        theta: d.theta,
        semantics,
        steps: &d.steps,
        records: Vec::new(),
        premise_settings: BTreeMap::new(),
        measured: BTreeMap::new(),
    };
    let reject = |checker: Checker, index: usize, reason: Reason, detail: String| Verdict {
        semantics,
        status: Status::Rejected,
        failing_step: Some(index),
        reason: Some(reason),
        detail: Some(detail),
        contradiction: None,
        trace: checker.records,
    };

    for (pos, step) in d.steps.iter().enumerate() {
        if step.index != pos + 1 {
            let detail = format!("step at position {} is numbered {}", pos + 1, step.index);
            return reject(checker, pos + 1, Reason::LogicInvalid, detail);
        }
        if let Some(bad) = step.refs.iter().find(|&&r| r == 0 || r >= step.index) {
            let detail = format!("reference to step {bad}, which is not earlier");
            return reject(checker, step.index, Reason::LogicInvalid, detail);
        }
        match checker.step(step) {
            Ok(asserted) => checker.records.push(StepRecord::new(step.index, asserted)),
            Err(Attempt::Blocked(reason, detail)) => {
                return reject(checker, step.index, reason, detail)
            }
            Err(Attempt::Mismatch(detail)) => {
                return reject(checker, step.index, Reason::LogicInvalid, detail)
            }
        }
    }

    let contradiction = checker.contradiction();
    Verdict {
        semantics,
        status: Status::Accepted,
        failing_step: None,
        reason: None,
        detail: None,
        contradiction,
        trace: checker.records,
    }
}
