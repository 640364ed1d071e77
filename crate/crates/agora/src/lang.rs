//! The propositional language: wff representation, concrete syntax,
//! negation normalization and truth-table tautology checking.
//!
//! Concrete syntax: atoms are identifiers, `~` negation, `&` conjunction,
//! `|` disjunction, `->` implication (right-associative), parentheses.
//! Precedence: `~` > `&` > `|` > `->`.

use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

/// Default cap on distinct atoms for truth-table operations.
pub const DEFAULT_ATOM_BUDGET: usize = 20;

/// A well-formed formula of the propositional language.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Wff {
    Atom(String),
    Not(Box<Wff>),
    And(Box<Wff>, Box<Wff>),
    Or(Box<Wff>, Box<Wff>),
    Implies(Box<Wff>, Box<Wff>),
}

impl Wff {
    pub fn atom(name: impl Into<String>) -> Wff {
        Wff::Atom(name.into())
    }

    pub fn not(inner: Wff) -> Wff {
        Wff::Not(Box::new(inner))
    }

    pub fn and(l: Wff, r: Wff) -> Wff {
        Wff::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Wff, r: Wff) -> Wff {
        Wff::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(a: Wff, c: Wff) -> Wff {
        Wff::Implies(Box::new(a), Box::new(c))
    }

    /// Eliminates double negations everywhere in the formula.
    pub fn normalize(&self) -> Wff {
        match self {
            Wff::Atom(_) => self.clone(),
            Wff::Not(inner) => match inner.as_ref() {
                Wff::Not(twice) => twice.normalize(),
                _ => Wff::not(inner.normalize()),
            },
            Wff::And(l, r) => Wff::and(l.normalize(), r.normalize()),
            Wff::Or(l, r) => Wff::or(l.normalize(), r.normalize()),
            Wff::Implies(a, c) => Wff::implies(a.normalize(), c.normalize()),
        }
    }

    /// The negation, normalized (so `negated` of `~K` is `K`).
    pub fn negated(&self) -> Wff {
        Wff::not(self.clone()).normalize()
    }

    /// Distinct atom names, in sorted order.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut set = BTreeSet::new();
        self.collect_atoms(&mut set);
        set
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Wff::Atom(name) => {
                out.insert(name.clone());
            }
            Wff::Not(inner) => inner.collect_atoms(out),
            Wff::And(l, r) | Wff::Or(l, r) | Wff::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Truth value under an assignment; `true_atoms` holds the atoms set to true.
    pub fn eval(&self, true_atoms: &BTreeSet<&str>) -> bool {
        match self {
            Wff::Atom(name) => true_atoms.contains(name.as_str()),
            Wff::Not(inner) => !inner.eval(true_atoms),
            Wff::And(l, r) => l.eval(true_atoms) && r.eval(true_atoms),
            Wff::Or(l, r) => l.eval(true_atoms) || r.eval(true_atoms),
            Wff::Implies(a, c) => !a.eval(true_atoms) || c.eval(true_atoms),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Wff::Atom(_) | Wff::Not(_) => 3,
            Wff::And(_, _) => 2,
            Wff::Or(_, _) => 1,
            Wff::Implies(_, _) => 0,
        }
    }

    // `min_prec` is the lowest precedence allowed without parentheses;
    // & and | associate left, -> associates right.
    fn render_into(&self, min_prec: u8, out: &mut String) {
        if self.precedence() < min_prec {
            out.push('(');
            self.render_into(0, out);
            out.push(')');
            return;
        }
        match self {
            Wff::Atom(name) => out.push_str(name),
            Wff::Not(inner) => {
                out.push('~');
                inner.render_into(3, out);
            }
            Wff::And(l, r) => {
                l.render_into(2, out);
                out.push_str(" & ");
                r.render_into(3, out);
            }
            Wff::Or(l, r) => {
                l.render_into(1, out);
                out.push_str(" | ");
                r.render_into(2, out);
            }
            Wff::Implies(a, c) => {
                a.render_into(1, out);
                out.push_str(" -> ");
                c.render_into(0, out);
            }
        }
    }
}

impl fmt::Display for Wff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render_into(0, &mut s);
        f.write_str(&s)
    }
}

/// True iff one formula is the negation of the other, after
/// double-negation elimination. Symmetric.
pub fn neg_equivalent(a: &Wff, b: &Wff) -> bool {
    let na = a.normalize();
    let nb = b.normalize();
    na == nb.negated() || nb == na.negated()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LangError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("empty input")]
    Empty,
    #[error("atom budget exceeded: formula has {atoms} atoms, budget is {budget}")]
    AtomBudget { atoms: usize, budget: usize },
}

/// True iff the formula holds under every assignment to its atoms.
pub fn is_tautology(w: &Wff) -> Result<bool, LangError> {
    is_tautology_with_budget(w, DEFAULT_ATOM_BUDGET)
}

pub fn is_tautology_with_budget(w: &Wff, budget: usize) -> Result<bool, LangError> {
    let atoms: Vec<String> = w.atoms().into_iter().collect();
    if atoms.len() > budget {
        return Err(LangError::AtomBudget {
            atoms: atoms.len(),
            budget,
        });
    }
    Ok(all_assignments_satisfy(w, &atoms))
}

fn all_assignments_satisfy(w: &Wff, atoms: &[String]) -> bool {
    for mask in 0u64..(1u64 << atoms.len()) {
        let true_atoms: BTreeSet<&str> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.as_str())
            .collect();
        if !w.eval(&true_atoms) {
            return false;
        }
    }
    true
}

/// True iff every formula in the set holds under some single assignment.
pub fn satisfiable(wffs: &[&Wff], budget: usize) -> Result<bool, LangError> {
    let mut atoms = BTreeSet::new();
    for w in wffs {
        w.collect_atoms(&mut atoms);
    }
    let atoms: Vec<String> = atoms.into_iter().collect();
    if atoms.len() > budget {
        return Err(LangError::AtomBudget {
            atoms: atoms.len(),
            budget,
        });
    }
    for mask in 0u64..(1u64 << atoms.len()) {
        let true_atoms: BTreeSet<&str> = atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, a)| a.as_str())
            .collect();
        if wffs.iter().all(|w| w.eval(&true_atoms)) {
            return Ok(true);
        }
    }
    Ok(false)
}

pub fn parse_wff(text: &str) -> Result<Wff, LangError> {
    let mut parser = WffParser::new(text);
    parser.skip_ws();
    if parser.at_end() {
        return Err(LangError::Empty);
    }
    let wff = parser.parse_implies()?;
    parser.skip_ws();
    if !parser.at_end() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(wff)
}

struct WffParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> WffParser<'a> {
    fn new(text: &'a str) -> Self {
        WffParser { text, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn at_end(&self) -> bool {
        self.pos >= self.text.len()
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn error(&self, message: &str) -> LangError {
        LangError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn parse_implies(&mut self) -> Result<Wff, LangError> {
        let left = self.parse_or()?;
        if self.eat("->") {
            let right = self.parse_implies()?;
            Ok(Wff::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn parse_or(&mut self) -> Result<Wff, LangError> {
        let mut left = self.parse_and()?;
        loop {
            self.skip_ws();
            if self.rest().starts_with('|') {
                self.pos += 1;
                let right = self.parse_and()?;
                left = Wff::or(left, right);
            } else {
                return Ok(left);
            }
        }
    }

    fn parse_and(&mut self) -> Result<Wff, LangError> {
        let mut left = self.parse_unary()?;
        loop {
            self.skip_ws();
            if self.rest().starts_with('&') {
                self.pos += 1;
                let right = self.parse_unary()?;
                left = Wff::and(left, right);
            } else {
                return Ok(left);
            }
        }
    }

    fn parse_unary(&mut self) -> Result<Wff, LangError> {
        self.skip_ws();
        if self.rest().starts_with('~') {
            self.pos += 1;
            let inner = self.parse_unary()?;
            return Ok(Wff::not(inner));
        }
        if self.rest().starts_with('(') {
            self.pos += 1;
            let inner = self.parse_implies()?;
            self.skip_ws();
            if !self.rest().starts_with(')') {
                return Err(self.error("expected ')'"));
            }
            self.pos += 1;
            return Ok(inner);
        }
        self.parse_atom()
    }

    fn parse_atom(&mut self) -> Result<Wff, LangError> {
        self.skip_ws();
        let rest = self.rest();
        let mut len = 0;
        for (i, c) in rest.char_indices() {
            let ok = if i == 0 {
                c.is_alphabetic() || c == '_'
            } else {
                c.is_alphanumeric() || c == '_'
            };
            if ok {
                len = i + c.len_utf8();
            } else {
                break;
            }
        }
        if len == 0 {
            return Err(self.error("expected atom, '~' or '('"));
        }
        let name = &rest[..len];
        self.pos += len;
        Ok(Wff::atom(name))
    }
}
