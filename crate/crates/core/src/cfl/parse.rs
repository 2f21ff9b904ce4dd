//! Text format for formulas and derivations.
//!
//! ```text
//! formula := impl
//! impl    := conj [ "=>" impl ]
//! conj    := unit { "&" unit }
//! unit    := SETTING | OUTCOME | SETTING "[]->" unit | "(" formula ")"
//! SETTING := L1 | L2 | R1 | R2
//! OUTCOME := a | b | c | d | e | f | g | h
//! ```
//!
//! A derivation file is a `theta = <radians>` header followed by one step per
//! line, `step <n>: <formula> by <RULE>[(<ref>,...)]`. `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::hardy::{OutcomeLabel, SettingLabel, Theta};

use super::formula::Formula;
use super::{Derivation, Rule, Step};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Number(String),
    Amp,
    Implies,
    BoxArrow,
    LParen,
    RParen,
    Colon,
    Comma,
    Equals,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Number(n) => format!("number `{n}`"),
            Tok::Amp => "`&`".into(),
            Tok::Implies => "`=>`".into(),
            Tok::BoxArrow => "`[]->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Equals => "`=`".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex_line(text: &str, line: usize) -> std::result::Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let rest: String = chars[i..].iter().take(4).collect();
        let push = |tok, out: &mut Vec<Spanned>| out.push(Spanned { tok, line, col });
        if c == '#' {
            break;
        } else if c.is_whitespace() {
            i += 1;
        } else if rest.starts_with("[]->") {
            push(Tok::BoxArrow, &mut out);
            i += 4;
        } else if rest.starts_with("=>") {
            push(Tok::Implies, &mut out);
            i += 2;
        } else if c == '=' {
            push(Tok::Equals, &mut out);
            i += 1;
        } else if c == '&' {
            push(Tok::Amp, &mut out);
            i += 1;
        } else if c == '(' {
            push(Tok::LParen, &mut out);
            i += 1;
        } else if c == ')' {
            push(Tok::RParen, &mut out);
            i += 1;
        } else if c == ':' {
            push(Tok::Colon, &mut out);
            i += 1;
        } else if c == ',' {
            push(Tok::Comma, &mut out);
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            push(Tok::Word(chars[start..i].iter().collect()), &mut out);
        } else if c.is_ascii_digit()
            || c == '.'
            || ((c == '-' || c == '+')
                && chars
                    .get(i + 1)
                    .is_some_and(|d| d.is_ascii_digit() || *d == '.'))
        {
            let start = i;
            i += 1;
            while i < chars.len() {
                let d = chars[i];
                let after_exp = matches!(chars[i - 1], 'e' | 'E');
                if d.is_ascii_digit()
                    || d == '.'
                    || d == 'e'
                    || d == 'E'
                    || ((d == '-' || d == '+') && after_exp)
                {
                    i += 1;
                } else {
                    break;
                }
            }
            push(Tok::Number(chars[start..i].iter().collect()), &mut out);
        } else {
            return Err(ParseError::new(
                line,
                col,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    line: usize,
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn new(toks: &'a [Spanned], line: usize, end_col: usize) -> Self {
        Self {
            toks,
            pos: 0,
            line,
            end_col,
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        match self.toks.get(self.pos) {
            Some(t) => ParseError::new(t.line, t.col, message),
            None => ParseError::new(self.line, self.end_col, message),
        }
    }

    fn found(&self) -> String {
        self.peek().map_or("end of line".to_string(), Tok::describe)
    }

    fn expect(&mut self, tok: Tok) -> std::result::Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error_here(format!(
                "expected {}, found {}",
                tok.describe(),
                self.found()
            )))
        }
    }

    fn expect_word(&mut self, word: &str) -> std::result::Result<(), ParseError> {
        self.expect(Tok::Word(word.to_string()))
    }

    fn number(&mut self) -> std::result::Result<(String, usize), ParseError> {
        match self.toks.get(self.pos) {
            Some(Spanned {
                tok: Tok::Number(n),
                col,
                ..
            }) => {
                self.pos += 1;
                Ok((n.clone(), *col))
            }
            _ => Err(self.error_here(format!("expected a number, found {}", self.found()))),
        }
    }

    fn index(&mut self) -> std::result::Result<usize, ParseError> {
        let col = self.toks.get(self.pos).map_or(self.end_col, |t| t.col);
        let (n, _) = self.number()?;
        n.parse::<usize>()
            .map_err(|_| ParseError::new(self.line, col, format!("`{n}` is not a step number")))
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn formula(&mut self) -> std::result::Result<Formula, ParseError> {
        let lhs = self.conj()?;
        if self.peek() == Some(&Tok::Implies) {
            self.pos += 1;
            let rhs = self.formula()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn conj(&mut self) -> std::result::Result<Formula, ParseError> {
        let mut acc = self.unit()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            acc = Formula::and(acc, self.unit()?);
        }
        Ok(acc)
    }

    fn unit(&mut self) -> std::result::Result<Formula, ParseError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Word(w)) => {
                if let Ok(s) = w.parse::<SettingLabel>() {
                    self.pos += 1;
                    if self.peek() == Some(&Tok::BoxArrow) {
                        self.pos += 1;
                        return Ok(Formula::counterfactual(s, self.unit()?));
                    }
                    return Ok(Formula::Setting(s));
                }
                let mut cs = w.chars();
                if let (Some(c), None) = (cs.next(), cs.next()) {
                    if let Some(o) = OutcomeLabel::from_letter(c) {
                        self.pos += 1;
                        return Ok(Formula::Outcome(o));
                    }
                }
                Err(self.error_here(format!("expected a setting or outcome, found `{w}`")))
            }
            _ => Err(self.error_here(format!(
                "expected a setting, outcome or `(`, found {}",
                self.found()
            ))),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    if text.trim_end().contains('\n') {
        return Err(ParseError::new(2, 1, "a formula must fit on one line").into());
    }
    let toks = lex_line(text, 1)?;
    let mut p = Parser::new(&toks, 1, text.chars().count() + 1);
    let f = p.formula()?;
    if !p.at_end() {
        return Err(p.error_here(format!("unexpected {}", p.found())).into());
    }
    Ok(f)
}

fn parse_rule(word: &str) -> Option<Rule> {
    Some(match word {
        "PREMISE" => Rule::Premise,
        "QM" => Rule::Qm,
        "LOC1" => Rule::Loc1,
        "LOC2" => Rule::Loc2,
        "LOGIC" => Rule::Logic,
        _ => return None,
    })
}

pub fn parse_derivation(text: &str) -> Result<Derivation> {
    let mut theta = None;
    let mut steps: Vec<Step> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let toks = lex_line(raw, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut p = Parser::new(&toks, line, raw.chars().count() + 1);

        if theta.is_none() {
            p.expect_word("theta")?;
            p.expect(Tok::Equals)?;
            let (n, col) = p.number()?;
            if !p.at_end() {
                return Err(p.error_here(format!("unexpected {}", p.found())).into());
            }
            let v: f64 = n
                .parse()
                .map_err(|_| ParseError::new(line, col, format!("`{n}` is not a number")))?;
            let t = Theta::new(v).map_err(|e| ParseError::new(line, col, e.to_string()))?;
            theta = Some(t);
            continue;
        }

        p.expect_word("step")?;
        let number_col = toks.get(p.pos).map_or(1, |t| t.col);
        let index = p.index()?;
        if index != steps.len() + 1 {
            return Err(ParseError::new(
                line,
                number_col,
                format!("expected step {}, found step {index}", steps.len() + 1),
            )
            .into());
        }
        p.expect(Tok::Colon)?;
        let formula = p.formula()?;
        p.expect_word("by")?;
        let rule_col = toks.get(p.pos).map_or(p.end_col, |t| t.col);
        let rule = match p.peek() {
            Some(Tok::Word(w)) => parse_rule(w)
                .ok_or_else(|| ParseError::new(line, rule_col, format!("unknown rule `{w}`")))?,
            _ => {
                return Err(p
                    .error_here(format!("expected a rule name, found {}", p.found()))
                    .into())
            }
        };
        p.pos += 1;

        let mut refs = Vec::new();
        if p.peek() == Some(&Tok::LParen) {
            p.pos += 1;
            refs.push(p.index()?);
            while p.peek() == Some(&Tok::Comma) {
                p.pos += 1;
                refs.push(p.index()?);
            }
            p.expect(Tok::RParen)?;
        }
        if !p.at_end() {
            return Err(p.error_here(format!("unexpected {}", p.found())).into());
        }
        match (rule, refs.is_empty()) {
            (Rule::Premise, false) => {
                return Err(ParseError::new(line, rule_col, "PREMISE takes no references").into())
            }
            (r, true) if r != Rule::Premise => {
                return Err(ParseError::new(
                    line,
                    rule_col,
                    format!("{r} needs at least one reference"),
                )
                .into())
            }
            _ => {}
        }
        if let Some(&bad) = refs.iter().find(|&&r| r == 0 || r >= index) {
            return Err(Error::Index {
                step: index,
                reference: bad,
            });
        }
        steps.push(Step {
            index,
            formula,
            rule,
            refs,
        });
    }

    let Some(theta) = theta else {
        return Err(ParseError::new(last_line.max(1), 1, "missing `theta = ...` header").into());
    };
    if steps.is_empty() {
        return Err(ParseError::new(last_line.max(1), 1, "derivation has no steps").into());
    }
    Ok(Derivation { theta, steps })
}

/// Renders a derivation in the file format; parses back to an equal value.
pub fn print_derivation(d: &Derivation) -> String {
    let mut out = format!("theta = {:?}\n", d.theta.value());
    for step in &d.steps {
        let _ = write!(
            out,
            "step {}: {} by {}",
            step.index, step.formula, step.rule
        );
        if !step.refs.is_empty() {
            let refs: Vec<String> = step.refs.iter().map(|r| r.to_string()).collect();
            let _ = write!(out, "({})", refs.join(","));
        }
        out.push('\n');
    }
    out
}
