use std::collections::BTreeSet;
use std::fmt;

use crate::hardy::{Event, OutcomeLabel, SettingLabel};

/// A formula of the counterfactual calculus.
///
/// `Counterfactual(s, body)` reads "had setting `s` been chosen instead of
/// the other setting on its side, `body` would hold".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Setting(SettingLabel),
    Outcome(OutcomeLabel),
    And(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Counterfactual(SettingLabel, Box<Formula>),
}

impl Formula {
    pub fn setting(s: SettingLabel) -> Self {
        Formula::Setting(s)
    }

    pub fn outcome(o: OutcomeLabel) -> Self {
        Formula::Outcome(o)
    }

    pub fn event(e: Event) -> Self {
        Formula::Outcome(e.label())
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn counterfactual(s: SettingLabel, body: Formula) -> Self {
        Formula::Counterfactual(s, Box::new(body))
    }

    /// Left-nested conjunction of the given formulas; `None` when empty.
    pub fn conjunction(parts: impl IntoIterator<Item = Formula>) -> Option<Self> {
        parts.into_iter().reduce(Formula::and)
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Setting(_) | Formula::Outcome(_) => 1,
            Formula::And(a, b) | Formula::Implies(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Counterfactual(_, b) => 1 + b.depth(),
        }
    }

    /// Atoms of a pure conjunction of atoms, or `None` if any connective
    /// other than `&` occurs.
    pub fn conjunct_atoms(&self) -> Option<Atoms> {
        let mut atoms = Atoms::default();
        fn walk(f: &Formula, out: &mut Atoms) -> bool {
            match f {
                Formula::Setting(s) => {
                    out.settings.insert(*s);
                    true
                }
                Formula::Outcome(o) => {
                    out.outcomes.insert(o.resolve());
                    true
                }
                Formula::And(a, b) => walk(a, out) && walk(b, out),
                _ => false,
            }
        }
        walk(self, &mut atoms).then_some(atoms)
    }

    /// Every setting label mentioned anywhere, including counterfactual heads.
    pub fn settings(&self) -> BTreeSet<SettingLabel> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| match f {
            Formula::Setting(s) | Formula::Counterfactual(s, _) => {
                out.insert(*s);
            }
            _ => {}
        });
        out
    }

    /// Every outcome atom mentioned anywhere.
    pub fn outcomes(&self) -> BTreeSet<Event> {
        let mut out = BTreeSet::new();
        self.visit(&mut |f| {
            if let Formula::Outcome(o) = f {
                out.insert(o.resolve());
            }
        });
        out
    }

    fn visit(&self, f: &mut impl FnMut(&Formula)) {
        f(self);
        match self {
            Formula::And(a, b) | Formula::Implies(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            Formula::Counterfactual(_, b) => b.visit(f),
            _ => {}
        }
    }

    fn fmt_impl(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Implies(a, b) => {
                a.fmt_conj(f)?;
                f.write_str(" => ")?;
                b.fmt_impl(f)
            }
            _ => self.fmt_conj(f),
        }
    }

    fn fmt_conj(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::And(a, b) => {
                a.fmt_conj(f)?;
                f.write_str(" & ")?;
                b.fmt_unit(f)
            }
            _ => self.fmt_unit(f),
        }
    }

    fn fmt_unit(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Setting(s) => write!(f, "{s}"),
            Formula::Outcome(o) => write!(f, "{o}"),
            Formula::Counterfactual(s, body) => {
                write!(f, "{s} []-> ")?;
                body.fmt_unit(f)
            }
            Formula::And(..) | Formula::Implies(..) => {
                f.write_str("(")?;
                self.fmt_impl(f)?;
                f.write_str(")")
            }
        }
    }
}

/// Canonical text: `&` binds tighter than `=>`, `&` is left associative,
/// `=>` is right associative, and parentheses appear only where needed.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_impl(f)
    }
}

/// The settings and outcomes of a conjunction, as sets.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Atoms {
    pub settings: BTreeSet<SettingLabel>,
    pub outcomes: BTreeSet<Event>,
}

impl Atoms {
    pub fn is_subset(&self, other: &Atoms) -> bool {
        self.settings.is_subset(&other.settings) && self.outcomes.is_subset(&other.outcomes)
    }

    /// At most one outcome per setting.
    pub fn is_consistent(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.outcomes.iter().all(|e| seen.insert(e.setting))
    }

    pub fn to_formula(&self) -> Option<Formula> {
        Formula::conjunction(
            self.settings
                .iter()
                .map(|s| Formula::Setting(*s))
                .chain(self.outcomes.iter().map(|e| Formula::event(*e))),
        )
    }
}
